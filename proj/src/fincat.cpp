#include "freesem/fincat.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace freesem {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw MalformedTable(what);
}

bool in_range(int i, int n) { return i >= 0 && i < n; }

// Shared structural bounds check; every public operation that consumes a
// FinCat assumes this has passed.
void check_shape(const FinCat& c) {
  const int n = c.object_count;
  const int m = c.morphism_count();
  require(n >= 0, "negative object count");
  require(static_cast<int>(c.identity.size()) == n, "identities list length != object count");
  for (const Mor& f : c.mors) {
    require(in_range(f.dom, n), "morphism dom out of range");
    require(in_range(f.cod, n), "morphism cod out of range");
  }
  for (int x = 0; x < n; ++x) require(in_range(c.identity[x], m), "identity index out of range");
  require(static_cast<int>(c.table.size()) == m, "composition table row count != morphism count");
  for (const auto& row : c.table) {
    require(static_cast<int>(row.size()) == m, "composition table row length != morphism count");
    for (int e : row) require(e == -1 || in_range(e, m), "composition entry out of range");
  }
}

}  // namespace

int FinCat::compose(int g, int f) const {
  if (!in_range(f, morphism_count()) || !in_range(g, morphism_count()))
    throw MalformedTable("compose: morphism index out of range");
  const int r = table[g][f];
  if (r < 0) throw MalformedTable("compose: pair not composable");
  return r;
}

std::vector<int> FinCat::hom(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < morphism_count(); ++f)
    if (mors[f].dom == x && mors[f].cod == y) out.push_back(f);
  return out;
}

FinCat terminal_category() { return discrete_category(1); }

FinCat discrete_category(int n) {
  FinCat c;
  c.object_count = n;
  for (int x = 0; x < n; ++x) {
    c.mors.push_back({x, x});
    c.identity.push_back(x);
  }
  c.table.assign(n, std::vector<int>(n, -1));
  for (int x = 0; x < n; ++x) c.table[x][x] = x;
  return c;
}

FinCat chain_category(int n) {
  std::vector<std::pair<int, int>> leq;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) leq.emplace_back(p, q);
  return poset_category(n, leq);
}

FinCat poset_category(int n, const std::vector<std::pair<int, int>>& leq) {
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  for (auto [p, q] : leq) {
    require(in_range(p, n) && in_range(q, n), "poset pair out of range");
    rel[p][q] = true;
  }
  FinCat c;
  c.object_count = n;
  std::vector<std::vector<int>> idx(n, std::vector<int>(n, -1));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (rel[p][q]) {
        idx[p][q] = c.morphism_count();
        c.mors.push_back({p, q});
      }
  c.identity.resize(n);
  for (int p = 0; p < n; ++p) {
    require(idx[p][p] >= 0, "poset not reflexive");
    c.identity[p] = idx[p][p];
  }
  const int m = c.morphism_count();
  c.table.assign(m, std::vector<int>(m, -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (c.mors[f].cod == c.mors[g].dom) {
        const int r = idx[c.mors[f].dom][c.mors[g].cod];
        require(r >= 0, "poset not transitive");
        c.table[g][f] = r;
      }
  return c;
}

FinCat monoid_category(const std::vector<std::vector<int>>& mult, int e) {
  const int m = static_cast<int>(mult.size());
  require(in_range(e, m), "monoid unit out of range");
  FinCat c;
  c.object_count = 1;
  c.mors.assign(m, Mor{0, 0});
  c.identity = {e};
  c.table.assign(m, std::vector<int>(m, -1));
  for (int g = 0; g < m; ++g) {
    require(static_cast<int>(mult[g].size()) == m, "monoid table not square");
    for (int f = 0; f < m; ++f) {
      require(in_range(mult[g][f], m), "monoid table entry out of range");
      c.table[g][f] = mult[g][f];
    }
  }
  return c;
}

Report validate_category(const FinCat& c) {
  check_shape(c);
  Report rep;
  const int m = c.morphism_count();
  for (int x = 0; x < c.object_count; ++x) {
    const int i = c.identity[x];
    if (c.mors[i].dom != x || c.mors[i].cod != x)
      rep.add("identity-endpoints", {{"object", x}, {"id", i}});
  }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      const int r = c.table[g][f];
      if (c.composable(g, f)) {
        if (r < 0) {
          rep.add("undefined-composite", {{"g", g}, {"f", f}});
        } else if (c.mors[r].dom != c.mors[f].dom || c.mors[r].cod != c.mors[g].cod) {
          rep.add("composite-endpoints", {{"g", g}, {"f", f}, {"gf", r}});
        }
      } else if (r != -1) {
        rep.add("spurious-composite", {{"g", g}, {"f", f}});
      }
    }
  if (!rep.ok()) return rep;  // unit/associativity scans need a well-typed table
  for (int f = 0; f < m; ++f) {
    const int il = c.identity[c.mors[f].cod];
    const int ir = c.identity[c.mors[f].dom];
    if (c.table[il][f] != f) rep.add("left-unit", {{"f", f}, {"id", il}});
    if (c.table[f][ir] != f) rep.add("right-unit", {{"f", f}, {"id", ir}});
  }
  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g) {
      if (!c.composable(h, g)) continue;
      for (int f = 0; f < m; ++f) {
        if (!c.composable(g, f)) continue;
        const int left = c.table[c.table[h][g]][f];
        const int right = c.table[h][c.table[g][f]];
        if (left != right)
          rep.add("associativity", {{"h", h}, {"g", g}, {"f", f}, {"hg_f", left}, {"h_gf", right}});
      }
    }
  return rep;
}

FinCat opposite(const FinCat& c) {
  check_shape(c);
  FinCat o;
  o.object_count = c.object_count;
  o.mors.reserve(c.mors.size());
  for (const Mor& f : c.mors) o.mors.push_back({f.cod, f.dom});
  o.identity = c.identity;
  const int m = c.morphism_count();
  o.table.assign(m, std::vector<int>(m, -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (o.mors[f].cod == o.mors[g].dom) o.table[g][f] = c.table[f][g];
  return o;
}

ProductCat product_cat(const FinCat& c, const FinCat& d, const Caps& caps) {
  check_shape(c);
  check_shape(d);
  const long long mm = 1LL * c.morphism_count() * d.morphism_count();
  if (mm > caps.max_morphisms)
    throw CapacityExceeded("product category would have " + std::to_string(mm) + " morphisms");
  ProductCat p;
  p.left_objects = c.object_count;
  p.right_objects = d.object_count;
  p.left_mors = c.morphism_count();
  p.right_mors = d.morphism_count();
  FinCat& e = p.cat;
  e.object_count = c.object_count * d.object_count;
  for (int f = 0; f < c.morphism_count(); ++f)
    for (int g = 0; g < d.morphism_count(); ++g)
      e.mors.push_back({p.obj(c.mors[f].dom, d.mors[g].dom), p.obj(c.mors[f].cod, d.mors[g].cod)});
  e.identity.resize(e.object_count);
  for (int x = 0; x < c.object_count; ++x)
    for (int y = 0; y < d.object_count; ++y)
      e.identity[p.obj(x, y)] = p.mor(c.identity[x], d.identity[y]);
  const int m = e.morphism_count();
  e.table.assign(m, std::vector<int>(m, -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      auto [g1, g2] = p.mor_parts(g);
      auto [f1, f2] = p.mor_parts(f);
      if (c.composable(g1, f1) && d.composable(g2, f2))
        e.table[g][f] = p.mor(c.table[g1][f1], d.table[g2][f2]);
    }
  return p;
}

// --- functors ---------------------------------------------------------------

Report validate_functor(const Functor& f) {
  check_shape(f.source);
  check_shape(f.target);
  require(static_cast<int>(f.object_map.size()) == f.source.object_count,
          "functor object map length mismatch");
  require(static_cast<int>(f.morphism_map.size()) == f.source.morphism_count(),
          "functor morphism map length mismatch");
  for (int o : f.object_map) require(in_range(o, f.target.object_count), "functor object image out of range");
  for (int u : f.morphism_map) require(in_range(u, f.target.morphism_count()), "functor morphism image out of range");

  Report rep;
  const FinCat& a = f.source;
  const FinCat& b = f.target;
  for (int u = 0; u < a.morphism_count(); ++u) {
    const Mor& s = a.mors[u];
    const Mor& t = b.mors[f.morphism_map[u]];
    if (t.dom != f.object_map[s.dom] || t.cod != f.object_map[s.cod])
      rep.add("functor-endpoints", {{"mor", u}});
  }
  for (int x = 0; x < a.object_count; ++x)
    if (f.morphism_map[a.identity[x]] != b.identity[f.object_map[x]])
      rep.add("functor-identity", {{"object", x}});
  for (int g = 0; g < a.morphism_count(); ++g)
    for (int u = 0; u < a.morphism_count(); ++u)
      if (a.composable(g, u)) {
        const int lhs = f.morphism_map[a.table[g][u]];
        if (!b.composable(f.morphism_map[g], f.morphism_map[u])) {
          rep.add("functor-composition", {{"g", g}, {"f", u}});
          continue;
        }
        const int rhs = b.table[f.morphism_map[g]][f.morphism_map[u]];
        if (lhs != rhs) rep.add("functor-composition", {{"g", g}, {"f", u}});
      }
  return rep;
}

Functor identity_functor(const FinCat& c) {
  Functor f;
  f.source = c;
  f.target = c;
  f.object_map.resize(c.object_count);
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  f.morphism_map.resize(c.morphism_count());
  std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0);
  return f;
}

Functor compose_functor(const Functor& g, const Functor& f) {
  require(f.target == g.source, "compose_functor: middle categories differ");
  Functor h;
  h.source = f.source;
  h.target = g.target;
  h.object_map.reserve(f.object_map.size());
  for (int o : f.object_map) h.object_map.push_back(g.object_map[o]);
  h.morphism_map.reserve(f.morphism_map.size());
  for (int u : f.morphism_map) h.morphism_map.push_back(g.morphism_map[u]);
  return h;
}

// --- presheaves -------------------------------------------------------------

Report validate_presheaf(const Presheaf& f) {
  check_shape(f.base);
  const FinCat& c = f.base;
  require(static_cast<int>(f.sizes.size()) == c.object_count, "presheaf sizes length mismatch");
  for (int s : f.sizes) require(s >= 0, "negative presheaf size");
  require(static_cast<int>(f.action.size()) == c.morphism_count(), "presheaf action length mismatch");
  for (int u = 0; u < c.morphism_count(); ++u) {
    require(static_cast<int>(f.action[u].size()) == f.sizes[c.mors[u].cod],
            "presheaf action table length mismatch");
    for (int e : f.action[u])
      require(in_range(e, f.sizes[c.mors[u].dom]), "presheaf action value out of range");
  }

  Report rep;
  for (int x = 0; x < c.object_count; ++x) {
    const int i = c.identity[x];
    for (int e = 0; e < f.sizes[x]; ++e)
      if (f.action[i][e] != e) {
        rep.add("presheaf-identity", {{"object", x}, {"element", e}});
        break;
      }
  }
  // F(u∘v) = F(v)∘F(u) for v: X'' -> X', u: X' -> X.
  for (int u = 0; u < c.morphism_count(); ++u)
    for (int v = 0; v < c.morphism_count(); ++v)
      if (c.composable(u, v)) {
        const int uv = c.table[u][v];
        for (int e = 0; e < f.sizes[c.mors[u].cod]; ++e)
          if (f.action[uv][e] != f.action[v][f.action[u][e]]) {
            rep.add("presheaf-composition", {{"u", u}, {"v", v}, {"element", e}});
            break;
          }
      }
  return rep;
}

Presheaf representable(const FinCat& c, int x) {
  check_shape(c);
  require(in_range(x, c.object_count), "representable: object out of range");
  Presheaf f;
  f.base = c;
  std::vector<std::vector<int>> homs(c.object_count);
  std::vector<int> pos(c.morphism_count(), -1);
  for (int o = 0; o < c.object_count; ++o) {
    homs[o] = c.hom(o, x);
    for (std::size_t i = 0; i < homs[o].size(); ++i) pos[homs[o][i]] = static_cast<int>(i);
  }
  f.sizes.resize(c.object_count);
  for (int o = 0; o < c.object_count; ++o) f.sizes[o] = static_cast<int>(homs[o].size());
  f.action.resize(c.morphism_count());
  for (int u = 0; u < c.morphism_count(); ++u) {
    const auto& at_cod = homs[c.mors[u].cod];
    f.action[u].reserve(at_cod.size());
    for (int k : at_cod) f.action[u].push_back(pos[c.table[k][u]]);
  }
  return f;
}

// --- natural transformations ------------------------------------------------

Report validate_nat(const Functor& f, const Functor& g, const FunctorNat& t) {
  require(f.source == g.source && f.target == g.target, "validate_nat: functors not parallel");
  const FinCat& a = f.source;
  const FinCat& b = f.target;
  require(static_cast<int>(t.components.size()) == a.object_count, "nat component count mismatch");
  for (int k : t.components) require(in_range(k, b.morphism_count()), "nat component out of range");
  Report rep;
  for (int x = 0; x < a.object_count; ++x) {
    const Mor& m = b.mors[t.components[x]];
    if (m.dom != f.object_map[x] || m.cod != g.object_map[x])
      rep.add("nat-component-endpoints", {{"object", x}, {"component", t.components[x]}});
  }
  if (!rep.ok()) return rep;
  for (int u = 0; u < a.morphism_count(); ++u) {
    const int x = a.mors[u].dom, y = a.mors[u].cod;
    const int lhs = b.table[g.morphism_map[u]][t.components[x]];
    const int rhs = b.table[t.components[y]][f.morphism_map[u]];
    if (lhs != rhs) rep.add("naturality", {{"mor", u}});
  }
  return rep;
}

Report validate_nat(const Presheaf& f, const Presheaf& g, const PresheafNat& t) {
  require(f.base == g.base, "validate_nat: presheaves not parallel");
  const FinCat& c = f.base;
  require(static_cast<int>(t.components.size()) == c.object_count, "nat component count mismatch");
  for (int x = 0; x < c.object_count; ++x) {
    require(static_cast<int>(t.components[x].size()) == f.sizes[x], "nat component table length mismatch");
    for (int e : t.components[x]) require(in_range(e, g.sizes[x]), "nat component value out of range");
  }
  Report rep;
  // For u: x' -> x the square is G(u)∘t_x = t_{x'}∘F(u).
  for (int u = 0; u < c.morphism_count(); ++u) {
    const int x = c.mors[u].cod, xp = c.mors[u].dom;
    for (int e = 0; e < f.sizes[x]; ++e)
      if (g.action[u][t.components[x][e]] != t.components[xp][f.action[u][e]]) {
        rep.add("naturality", {{"mor", u}, {"element", e}});
        break;
      }
  }
  return rep;
}

namespace {

// Backtracking enumerator over per-object choices with incremental
// constraint checks. `check(pick, x)` must validate everything that becomes
// decidable once the components for objects 0..x are fixed. `emit` returns
// true to stop the search early.
template <typename Choices, typename Check, typename Emit>
void backtrack(int objects, long long max_nodes, const Choices& choices, const Check& check,
               const Emit& emit) {
  std::vector<int> pick(objects, 0);
  long long nodes = 0;
  // Depth-first, lexicographic.
  auto rec = [&](auto&& self, int x) -> bool {
    if (x == objects) return emit(pick);
    const int n = choices(x);
    for (int v = 0; v < n; ++v) {
      if (++nodes > max_nodes)
        throw EnumerationCapExceeded("enumeration visited more than " + std::to_string(max_nodes) +
                                     " candidates");
      pick[x] = v;
      if (check(pick, x) && self(self, x + 1)) return true;
    }
    return false;
  };
  rec(rec, 0);
}

}  // namespace

std::vector<FunctorNat> nat_transformations(const Functor& f, const Functor& g, const Caps& caps) {
  require(f.source == g.source && f.target == g.target, "nat_transformations: functors not parallel");
  const FinCat& a = f.source;
  const FinCat& b = f.target;
  // Candidate components at x: hom_B(F x, G x), ascending.
  std::vector<std::vector<int>> cand(a.object_count);
  for (int x = 0; x < a.object_count; ++x) cand[x] = b.hom(f.object_map[x], g.object_map[x]);
  // Morphisms checkable once objects 0..x are assigned.
  std::vector<std::vector<int>> due(a.object_count);
  for (int u = 0; u < a.morphism_count(); ++u)
    due[std::max(a.mors[u].dom, a.mors[u].cod)].push_back(u);

  std::vector<FunctorNat> out;
  backtrack(
      a.object_count, caps.max_enum, [&](int x) { return static_cast<int>(cand[x].size()); },
      [&](const std::vector<int>& pick, int x) {
        for (int u : due[x]) {
          const int d = a.mors[u].dom, c = a.mors[u].cod;
          const int lhs = b.table[g.morphism_map[u]][cand[d][pick[d]]];
          const int rhs = b.table[cand[c][pick[c]]][f.morphism_map[u]];
          if (lhs != rhs) return false;
        }
        return true;
      },
      [&](const std::vector<int>& pick) {
        FunctorNat t;
        t.components.resize(a.object_count);
        for (int x = 0; x < a.object_count; ++x) t.components[x] = cand[x][pick[x]];
        out.push_back(std::move(t));
        return false;
      });
  return out;
}

namespace {

// Function tables F(x) -> G(x) enumerated as mixed-radix numbers, rightmost
// slot fastest, so enumeration is lexicographic on the table.
std::vector<int> decode_table(long long index, int slots, int values) {
  std::vector<int> t(slots, 0);
  for (int i = slots - 1; i >= 0; --i) {
    t[i] = static_cast<int>(index % values);
    index /= values;
  }
  return t;
}

long long table_count(int slots, int values, long long cap) {
  if (slots == 0) return 1;
  if (values == 0) return 0;
  long long n = 1;
  for (int i = 0; i < slots; ++i) {
    n *= values;
    if (n > cap) return cap + 1;
  }
  return n;
}

}  // namespace

std::vector<PresheafNat> nat_transformations(const Presheaf& f, const Presheaf& g, const Caps& caps) {
  require(f.base == g.base, "nat_transformations: presheaves not parallel");
  const FinCat& c = f.base;
  std::vector<long long> counts(c.object_count);
  for (int x = 0; x < c.object_count; ++x) {
    counts[x] = table_count(f.sizes[x], g.sizes[x], caps.max_enum);
    if (counts[x] > caps.max_enum)
      throw EnumerationCapExceeded("component hom-set larger than enumeration cap");
  }
  std::vector<std::vector<std::vector<int>>> tables(c.object_count);
  for (int x = 0; x < c.object_count; ++x) {
    tables[x].reserve(static_cast<std::size_t>(counts[x]));
    for (long long i = 0; i < counts[x]; ++i)
      tables[x].push_back(decode_table(i, f.sizes[x], g.sizes[x]));
  }
  std::vector<std::vector<int>> due(c.object_count);
  for (int u = 0; u < c.morphism_count(); ++u)
    due[std::max(c.mors[u].dom, c.mors[u].cod)].push_back(u);

  std::vector<PresheafNat> out;
  if (c.object_count == 0) {
    out.push_back(PresheafNat{});
    return out;
  }
  backtrack(
      c.object_count, caps.max_enum, [&](int x) { return static_cast<int>(tables[x].size()); },
      [&](const std::vector<int>& pick, int x) {
        for (int u : due[x]) {
          const int cod = c.mors[u].cod, dom = c.mors[u].dom;
          const auto& tc = tables[cod][pick[cod]];
          const auto& td = tables[dom][pick[dom]];
          for (int e = 0; e < f.sizes[cod]; ++e)
            if (g.action[u][tc[e]] != td[f.action[u][e]]) return false;
        }
        return true;
      },
      [&](const std::vector<int>& pick) {
        PresheafNat t;
        t.components.resize(c.object_count);
        for (int x = 0; x < c.object_count; ++x) t.components[x] = tables[x][pick[x]];
        out.push_back(std::move(t));
        return false;
      });
  return out;
}

std::optional<PresheafNat> find_natural_iso(const Presheaf& f, const Presheaf& g, const Caps& caps) {
  require(f.base == g.base, "find_natural_iso: presheaves not parallel");
  const FinCat& c = f.base;
  for (int x = 0; x < c.object_count; ++x)
    if (f.sizes[x] != g.sizes[x]) return std::nullopt;  // cardinality obstruction

  // Only bijective components can occur, so enumerate permutation tables.
  std::vector<std::vector<std::vector<int>>> perms(c.object_count);
  for (int x = 0; x < c.object_count; ++x) {
    std::vector<int> p(f.sizes[x]);
    std::iota(p.begin(), p.end(), 0);
    do {
      perms[x].push_back(p);
      if (static_cast<long long>(perms[x].size()) > caps.max_enum)
        throw EnumerationCapExceeded("iso component set larger than enumeration cap");
    } while (std::next_permutation(p.begin(), p.end()));
  }
  std::vector<std::vector<int>> due(c.object_count);
  for (int u = 0; u < c.morphism_count(); ++u)
    due[std::max(c.mors[u].dom, c.mors[u].cod)].push_back(u);

  std::optional<PresheafNat> found;
  backtrack(
      c.object_count, caps.max_enum, [&](int x) { return static_cast<int>(perms[x].size()); },
      [&](const std::vector<int>& pick, int x) {
        for (int u : due[x]) {
          const int cod = c.mors[u].cod, dom = c.mors[u].dom;
          const auto& tc = perms[cod][pick[cod]];
          const auto& td = perms[dom][pick[dom]];
          for (int e = 0; e < f.sizes[cod]; ++e)
            if (g.action[u][tc[e]] != td[f.action[u][e]]) return false;
        }
        return true;
      },
      [&](const std::vector<int>& pick) {
        PresheafNat t;
        t.components.resize(c.object_count);
        for (int x = 0; x < c.object_count; ++x) t.components[x] = perms[x][pick[x]];
        found = std::move(t);
        return true;  // first hit
      });
  return found;
}

std::optional<FunctorNat> find_natural_iso(const Functor& f, const Functor& g, const Caps& caps) {
  require(f.source == g.source && f.target == g.target, "find_natural_iso: functors not parallel");
  const FinCat& b = f.target;
  // Invertible morphisms of the target, by a table scan.
  std::vector<bool> invertible(b.morphism_count(), false);
  for (int u = 0; u < b.morphism_count(); ++u)
    for (int v = 0; v < b.morphism_count(); ++v)
      if (b.composable(v, u) && b.composable(u, v) && b.table[v][u] == b.identity[b.mors[u].dom] &&
          b.table[u][v] == b.identity[b.mors[v].dom])
        invertible[u] = true;
  for (const FunctorNat& t : nat_transformations(f, g, caps)) {
    bool ok = true;
    for (int k : t.components)
      if (!invertible[k]) {
        ok = false;
        break;
      }
    if (ok) return t;
  }
  return std::nullopt;
}

// --- comma categories -------------------------------------------------------

CommaCategory comma_category(const Functor& f, int b) {
  require(in_range(b, f.target.object_count), "comma_category: object out of range");
  const FinCat& a = f.source;
  const FinCat& t = f.target;

  CommaCategory out;
  std::vector<std::vector<int>> obj_at(a.object_count);  // (a,k) -> comma object index
  std::vector<std::vector<int>> homs(a.object_count);
  for (int x = 0; x < a.object_count; ++x) {
    homs[x] = t.hom(f.object_map[x], b);
    obj_at[x].resize(homs[x].size());
    for (std::size_t i = 0; i < homs[x].size(); ++i) {
      obj_at[x][i] = static_cast<int>(out.labels.size());
      out.labels.emplace_back(x, homs[x][i]);
    }
  }
  FinCat& c = out.cat;
  c.object_count = static_cast<int>(out.labels.size());

  std::vector<int> proj_mor;
  // A morphism m: x -> x' induces a comma morphism (x, k'∘F(m)) -> (x', k')
  // for every k' in hom(F x', b).
  for (int m = 0; m < a.morphism_count(); ++m) {
    const int x = a.mors[m].dom, xp = a.mors[m].cod;
    for (std::size_t i = 0; i < homs[xp].size(); ++i) {
      const int kp = homs[xp][i];
      const int k = t.table[kp][f.morphism_map[m]];
      const auto& hx = homs[x];
      const int ki = static_cast<int>(std::lower_bound(hx.begin(), hx.end(), k) - hx.begin());
      c.mors.push_back({obj_at[x][ki], obj_at[xp][i]});
      proj_mor.push_back(m);
    }
  }
  c.identity.assign(c.object_count, -1);
  const int cm = c.morphism_count();
  c.table.assign(cm, std::vector<int>(cm, -1));
  for (int u = 0; u < cm; ++u) {
    const auto [x, k] = out.labels[c.mors[u].dom];
    if (proj_mor[u] == a.identity[x] && c.mors[u].dom == c.mors[u].cod)
      c.identity[c.mors[u].dom] = u;
  }
  // Composition: the composite comma morphism is determined by the composite
  // underlying morphism and the shared target label.
  for (int g = 0; g < cm; ++g)
    for (int u = 0; u < cm; ++u) {
      if (c.mors[u].cod != c.mors[g].dom) continue;
      const int comp = a.table[proj_mor[g]][proj_mor[u]];
      for (int w = 0; w < cm; ++w)
        if (proj_mor[w] == comp && c.mors[w].dom == c.mors[u].dom && c.mors[w].cod == c.mors[g].cod) {
          c.table[g][u] = w;
          break;
        }
    }
  out.projection.source = c;
  out.projection.target = a;
  out.projection.object_map.reserve(out.labels.size());
  for (const auto& [x, k] : out.labels) out.projection.object_map.push_back(x);
  out.projection.morphism_map = proj_mor;
  return out;
}

// --- bifunctors, coends, ends -----------------------------------------------

Report validate_bifunctor(const Bifunctor& t) {
  check_shape(t.base);
  const FinCat& d = t.base;
  const int n = d.object_count, m = d.morphism_count();
  require(static_cast<int>(t.sizes.size()) == n, "bifunctor sizes row count mismatch");
  for (const auto& row : t.sizes) {
    require(static_cast<int>(row.size()) == n, "bifunctor sizes column count mismatch");
    for (int s : row) require(s >= 0, "negative bifunctor size");
  }
  require(static_cast<int>(t.contra.size()) == m && static_cast<int>(t.cov.size()) == m,
          "bifunctor action count mismatch");
  for (int u = 0; u < m; ++u) {
    require(static_cast<int>(t.contra[u].size()) == n && static_cast<int>(t.cov[u].size()) == n,
            "bifunctor action object count mismatch");
    const int dm = d.mors[u].dom, cd = d.mors[u].cod;
    for (int e = 0; e < n; ++e) {
      require(static_cast<int>(t.contra[u][e].size()) == t.sizes[cd][e],
              "bifunctor contra table length mismatch");
      for (int v : t.contra[u][e]) require(in_range(v, t.sizes[dm][e]), "bifunctor contra value out of range");
      require(static_cast<int>(t.cov[u][e].size()) == t.sizes[e][dm],
              "bifunctor cov table length mismatch");
      for (int v : t.cov[u][e]) require(in_range(v, t.sizes[e][cd]), "bifunctor cov value out of range");
    }
  }

  Report rep;
  for (int x = 0; x < n; ++x) {
    const int i = d.identity[x];
    for (int e = 0; e < n; ++e) {
      for (int v = 0; v < t.sizes[x][e]; ++v)
        if (t.contra[i][e][v] != v) {
          rep.add("bifunctor-contra-identity", {{"object", x}, {"at", e}});
          break;
        }
      for (int v = 0; v < t.sizes[e][x]; ++v)
        if (t.cov[i][e][v] != v) {
          rep.add("bifunctor-cov-identity", {{"object", x}, {"at", e}});
          break;
        }
    }
  }
  for (int q = 0; q < m; ++q)
    for (int p = 0; p < m; ++p)
      if (d.composable(q, p)) {
        const int qp = d.table[q][p];
        for (int e = 0; e < n; ++e) {
          for (int v = 0; v < t.sizes[d.mors[q].cod][e]; ++v)
            if (t.contra[qp][e][v] != t.contra[p][e][t.contra[q][e][v]]) {
              rep.add("bifunctor-contra-composition", {{"q", q}, {"p", p}, {"at", e}});
              break;
            }
          for (int v = 0; v < t.sizes[e][d.mors[p].dom]; ++v)
            if (t.cov[qp][e][v] != t.cov[q][e][t.cov[p][e][v]]) {
              rep.add("bifunctor-cov-composition", {{"q", q}, {"p", p}, {"at", e}});
              break;
            }
        }
      }
  // Interchange: acting on different arguments commutes.
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      const int pc = t.base.mors[p].cod, pd = t.base.mors[p].dom;
      const int qd = t.base.mors[q].dom, qc = t.base.mors[q].cod;
      for (int v = 0; v < t.sizes[pc][qd]; ++v) {
        const int a = t.cov[q][pd][t.contra[p][qd][v]];
        const int b = t.contra[p][qc][t.cov[q][pc][v]];
        if (a != b) {
          rep.add("bifunctor-interchange", {{"p", p}, {"q", q}, {"element", v}});
          break;
        }
      }
    }
  return rep;
}

namespace {

struct UnionFind {
  std::vector<int> parent, size;
  explicit UnionFind(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

}  // namespace

CoendResult coend(const Bifunctor& t, const Caps& caps) {
  const FinCat& d = t.base;
  const int n = d.object_count;
  CoendResult r;
  r.offset.resize(n, 0);
  long long total = 0;
  for (int x = 0; x < n; ++x) {
    r.offset[x] = static_cast<int>(total);
    total += t.sizes[x][x];
    if (total > caps.max_enum)
      throw CapacityExceeded("coend carrier larger than enumeration cap");
  }
  UnionFind uf(static_cast<int>(total));
  // For p: d -> d' and e in T(d',d): T(p,id)(e) in T(d,d) ~ T(id,p)(e) in T(d',d').
  for (int p = 0; p < d.morphism_count(); ++p) {
    const int dm = d.mors[p].dom, cd = d.mors[p].cod;
    for (int e = 0; e < t.sizes[cd][dm]; ++e)
      uf.unite(r.offset[dm] + t.contra[p][dm][e], r.offset[cd] + t.cov[p][cd][e]);
  }
  // Canonical numbering: classes ordered by least member flat index.
  std::vector<int> label(static_cast<std::size_t>(total), -1);
  int next = 0;
  for (int i = 0; i < total; ++i) {
    const int root = uf.find(i);
    if (label[root] < 0) label[root] = next++;
  }
  r.classes = next;
  r.cls.resize(n);
  for (int x = 0; x < n; ++x) {
    r.cls[x].resize(t.sizes[x][x]);
    for (int e = 0; e < t.sizes[x][x]; ++e) r.cls[x][e] = label[uf.find(r.offset[x] + e)];
  }
  return r;
}

EndResult end_families(const Bifunctor& t, const Caps& caps) {
  const FinCat& d = t.base;
  const int n = d.object_count;
  std::vector<std::vector<int>> due(n);
  for (int p = 0; p < d.morphism_count(); ++p)
    due[std::max(d.mors[p].dom, d.mors[p].cod)].push_back(p);

  EndResult out;
  if (n == 0) {
    out.families.push_back({});
    return out;
  }
  backtrack(
      n, caps.max_enum, [&](int x) { return t.sizes[x][x]; },
      [&](const std::vector<int>& pick, int x) {
        // For p: a -> b require T(id,p)(x_a) = T(p,id)(x_b) in T(a,b).
        for (int p : due[x]) {
          const int a = d.mors[p].dom, b = d.mors[p].cod;
          if (t.cov[p][a][pick[a]] != t.contra[p][b][pick[b]]) return false;
        }
        return true;
      },
      [&](const std::vector<int>& pick) {
        out.families.push_back(pick);
        return false;
      });
  return out;
}

Report is_universal_cocone(const Functor& diagram, int apex, const std::vector<int>& legs,
                           const Caps& caps) {
  const FinCat& j = diagram.source;
  const FinCat& c = diagram.target;
  require(in_range(apex, c.object_count), "is_universal_cocone: apex out of range");
  require(static_cast<int>(legs.size()) == j.object_count, "is_universal_cocone: one leg per diagram object");
  Report rep;
  for (int x = 0; x < j.object_count; ++x) {
    if (!in_range(legs[x], c.morphism_count()))
      throw MalformedTable("is_universal_cocone: leg out of range");
    if (c.mors[legs[x]].dom != diagram.object_map[x] || c.mors[legs[x]].cod != apex)
      rep.add("leg-endpoints", {{"object", x}, {"leg", legs[x]}});
  }
  if (!rep.ok()) return rep;
  for (int u = 0; u < j.morphism_count(); ++u) {
    const int x = j.mors[u].dom, y = j.mors[u].cod;
    if (c.table[legs[y]][diagram.morphism_map[u]] != legs[x])
      rep.add("cocone-commutes", {{"mor", u}});
  }
  if (!rep.ok()) return rep;

  // For each target object, enumerate all commuting cocones and count
  // mediating morphisms out of the apex.
  for (int tgt = 0; tgt < c.object_count; ++tgt) {
    std::vector<std::vector<int>> cand(j.object_count);
    for (int x = 0; x < j.object_count; ++x) cand[x] = c.hom(diagram.object_map[x], tgt);
    std::vector<std::vector<int>> due(j.object_count);
    for (int u = 0; u < j.morphism_count(); ++u)
      due[std::max(j.mors[u].dom, j.mors[u].cod)].push_back(u);
    const std::vector<int> out_hom = c.hom(apex, tgt);

    bool failed = false;
    backtrack(
        j.object_count, caps.max_enum, [&](int x) { return static_cast<int>(cand[x].size()); },
        [&](const std::vector<int>& pick, int x) {
          for (int u : due[x]) {
            const int a = j.mors[u].dom, b = j.mors[u].cod;
            if (c.table[cand[b][pick[b]]][diagram.morphism_map[u]] != cand[a][pick[a]]) return false;
          }
          return true;
        },
        [&](const std::vector<int>& pick) {
          int mediators = 0;
          int witness = -1;
          for (int h : out_hom) {
            bool ok = true;
            for (int x = 0; x < j.object_count; ++x)
              if (c.table[h][legs[x]] != cand[x][pick[x]]) {
                ok = false;
                break;
              }
            if (ok) {
              ++mediators;
              witness = h;
            }
          }
          if (mediators != 1) {
            std::vector<std::pair<std::string, long long>> where = {{"target", tgt},
                                                                    {"mediators", mediators}};
            for (int x = 0; x < j.object_count; ++x)
              where.emplace_back("cocone" + std::to_string(x), cand[x][pick[x]]);
            if (mediators > 1) where.emplace_back("witness", witness);
            rep.add("not-universal", std::move(where));
            failed = true;
          }
          return failed;
        });
  }
  return rep;
}

}  // namespace freesem
