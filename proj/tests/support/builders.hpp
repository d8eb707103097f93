#ifndef FREESEM_TESTS_BUILDERS_HPP
#define FREESEM_TESTS_BUILDERS_HPP

// Category/presheaf builders and seeded random generators shared by the unit
// and acceptance suites.

#include <numeric>
#include <random>
#include <vector>

#include "freesem/dayconv.hpp"
#include "freesem/fincat.hpp"

namespace freesem::testing {

inline FinCat walking_arrow() { return chain_category(2); }

// Objects 0,1; morphisms id0, id1, a loop l on 0 with l∘l = id0, and the two
// arrows u, u∘l : 0 -> 1. Exercises non-thin composition.
inline FinCat arrow_with_loop() {
  FinCat c;
  c.object_count = 2;
  c.mors = {{0, 0}, {1, 1}, {0, 0}, {0, 1}, {0, 1}};  // id0, id1, l, u, v=u∘l
  c.identity = {0, 1};
  const int id0 = 0, id1 = 1, l = 2, u = 3, v = 4;
  c.table.assign(5, std::vector<int>(5, -1));
  auto set = [&](int g, int f, int r) { c.table[g][f] = r; };
  set(id0, id0, id0);
  set(id0, l, l);
  set(l, id0, l);
  set(l, l, id0);
  set(id1, id1, id1);
  set(u, id0, u);
  set(id1, u, u);
  set(u, l, v);
  set(v, id0, v);
  set(id1, v, v);
  set(v, l, u);
  return c;
}

// All labeled posets on n elements, as leq pair lists.
inline std::vector<std::vector<std::pair<int, int>>> all_labeled_posets(int n) {
  std::vector<std::pair<int, int>> off;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      if (p != q) off.emplace_back(p, q);
  std::vector<std::vector<std::pair<int, int>>> out;
  for (unsigned bits = 0; bits < (1u << off.size()); ++bits) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
    for (int p = 0; p < n; ++p) rel[p][p] = true;
    for (std::size_t i = 0; i < off.size(); ++i)
      if (bits & (1u << i)) rel[off[i].first][off[i].second] = true;
    bool ok = true;
    for (int p = 0; p < n && ok; ++p)
      for (int q = 0; q < n && ok; ++q) {
        if (p != q && rel[p][q] && rel[q][p]) ok = false;
        if (!rel[p][q]) continue;
        for (int r = 0; r < n && ok; ++r)
          if (rel[q][r] && !rel[p][r]) ok = false;
      }
    if (!ok) continue;
    std::vector<std::pair<int, int>> leq;
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (rel[p][q]) leq.emplace_back(p, q);
    out.push_back(std::move(leq));
    if (n == 0) break;  // the single empty bitset
  }
  return out;
}

using Rng = std::mt19937;

inline int rand_int(Rng& rng, int lo, int hi) {  // inclusive
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline std::vector<int> random_map(Rng& rng, int from, int to) {
  std::vector<int> t(from);
  for (int& v : t) v = rand_int(rng, 0, to - 1);
  return t;
}

inline std::vector<int> random_involution(Rng& rng, int n) {
  std::vector<int> t(n);
  std::iota(t.begin(), t.end(), 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i + 1 < n; i += 2)
    if (rand_int(rng, 0, 1)) std::swap(t[order[i]], t[order[i + 1]]);
  return t;
}

// Random presheaf on a thin category in which no composite of two
// non-identity morphisms is a third distinct non-identity morphism beyond
// chains; maps are drawn freely on covering morphisms and composed.
// Handles the bases used in the suites: discrete, chains, V, Λ.
inline Presheaf random_presheaf_poset(const FinCat& c, Rng& rng, int max_size) {
  Presheaf f;
  f.base = c;
  f.sizes.resize(c.object_count);
  for (int& s : f.sizes) s = rand_int(rng, 0, max_size);
  // A morphism x -> y needs a map F(y) -> F(x); empty F(x) forces empty F(y).
  for (bool changed = true; changed;) {
    changed = false;
    for (int u = 0; u < c.morphism_count(); ++u)
      if (f.sizes[c.mors[u].dom] == 0 && f.sizes[c.mors[u].cod] != 0) {
        f.sizes[c.mors[u].cod] = 0;
        changed = true;
      }
  }
  f.action.assign(c.morphism_count(), {});
  // Covers: non-identity morphisms that do not factor through a third object.
  std::vector<bool> is_cover(c.morphism_count(), true);
  for (int u = 0; u < c.morphism_count(); ++u) {
    if (c.mors[u].dom == c.mors[u].cod) is_cover[u] = false;
    for (int a = 0; a < c.morphism_count() && is_cover[u]; ++a)
      for (int b = 0; b < c.morphism_count() && is_cover[u]; ++b)
        if (a != c.identity[c.mors[a].dom] && b != c.identity[c.mors[b].dom] &&
            c.composable(b, a) && c.table[b][a] == u)
          is_cover[u] = false;
  }
  for (int x = 0; x < c.object_count; ++x) {
    f.action[c.identity[x]].resize(f.sizes[x]);
    std::iota(f.action[c.identity[x]].begin(), f.action[c.identity[x]].end(), 0);
  }
  for (int u = 0; u < c.morphism_count(); ++u)
    if (is_cover[u] && f.sizes[c.mors[u].cod] > 0)
      f.action[u] = random_map(rng, f.sizes[c.mors[u].cod], f.sizes[c.mors[u].dom]);
  // Remaining composites, innermost first: for u = b∘a, F(u) = F(a)∘F(b).
  // Tables into empty value sets are correctly empty already.
  auto filled = [&](int u) { return !f.action[u].empty() || f.sizes[c.mors[u].cod] == 0; };
  for (bool progress = true; progress;) {
    progress = false;
    for (int u = 0; u < c.morphism_count(); ++u) {
      if (filled(u) || u == c.identity[c.mors[u].dom] || is_cover[u]) continue;
      for (int a = 0; a < c.morphism_count(); ++a) {
        bool done = false;
        for (int b = 0; b < c.morphism_count(); ++b) {
          if (!c.composable(b, a) || c.table[b][a] != u || a == u || b == u) continue;
          if (!filled(a) || !filled(b)) continue;
          std::vector<int> t(f.sizes[c.mors[u].cod]);
          for (int e = 0; e < f.sizes[c.mors[u].cod]; ++e) t[e] = f.action[a][f.action[b][e]];
          f.action[u] = std::move(t);
          done = true;
          progress = true;
          break;
        }
        if (done) break;
      }
    }
  }
  return f;
}

// Random presheaf on the one-object Z2 category: an involution.
inline Presheaf random_presheaf_z2(const FinCat& z2, Rng& rng, int max_size) {
  Presheaf f;
  f.base = z2;
  const int n = rand_int(rng, 0, max_size);
  f.sizes = {n};
  f.action.resize(2);
  f.action[0].resize(n);
  std::iota(f.action[0].begin(), f.action[0].end(), 0);
  f.action[1] = random_involution(rng, n);
  return f;
}

// Random valid presheaf on any base used by the suites.
inline Presheaf random_presheaf(const FinCat& c, Rng& rng, int max_size) {
  if (c.object_count == 1 && c.morphism_count() == 2 && c.table[1][1] == 0)
    return random_presheaf_z2(c, rng, max_size);
  return random_presheaf_poset(c, rng, max_size);
}

// Presheaves of the given sizes with all actions constant-or-forced are not
// always available; this picks a nonempty presheaf by redrawing until every
// object is nonempty (useful where empty values would trivialize a law).
inline Presheaf random_nonempty_presheaf(const FinCat& c, Rng& rng, int max_size) {
  for (;;) {
    Presheaf f = random_presheaf(c, rng, max_size);
    bool ok = true;
    for (int s : f.sizes)
      if (s == 0) ok = false;
    if (ok) return f;
  }
}

// Product bifunctor P(d1) × Q(d2) from a presheaf and a copresheaf (the
// latter encoded as a presheaf on the opposite category).
inline Bifunctor product_bifunctor(const FinCat& c, const Presheaf& p, const Presheaf& q_op) {
  Bifunctor t;
  t.base = c;
  const int n = c.object_count, m = c.morphism_count();
  t.sizes.assign(n, std::vector<int>(n));
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2) t.sizes[d1][d2] = p.sizes[d1] * q_op.sizes[d2];
  t.contra.assign(m, std::vector<std::vector<int>>(n));
  t.cov.assign(m, std::vector<std::vector<int>>(n));
  for (int u = 0; u < m; ++u) {
    const int ud = c.mors[u].dom, uc = c.mors[u].cod;
    for (int e = 0; e < n; ++e) {
      auto& ct = t.contra[u][e];
      ct.reserve(static_cast<std::size_t>(p.sizes[uc]) * q_op.sizes[e]);
      for (int i = 0; i < p.sizes[uc]; ++i)
        for (int j = 0; j < q_op.sizes[e]; ++j) ct.push_back(p.action[u][i] * q_op.sizes[e] + j);
      auto& cv = t.cov[u][e];
      cv.reserve(static_cast<std::size_t>(p.sizes[e]) * q_op.sizes[ud]);
      for (int i = 0; i < p.sizes[e]; ++i)
        for (int j = 0; j < q_op.sizes[ud]; ++j)
          cv.push_back(i * q_op.sizes[uc] + q_op.action[u][j]);
    }
  }
  return t;
}

// The hom bifunctor of a category.
inline Bifunctor hom_bifunctor(const FinCat& c) {
  Bifunctor t;
  t.base = c;
  const int n = c.object_count, m = c.morphism_count();
  std::vector<std::vector<std::vector<int>>> homs(n, std::vector<std::vector<int>>(n));
  std::vector<int> pos(m, -1);
  for (int u = 0; u < m; ++u) {
    auto& h = homs[c.mors[u].dom][c.mors[u].cod];
    pos[u] = static_cast<int>(h.size());
    h.push_back(u);
  }
  t.sizes.assign(n, std::vector<int>(n));
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2) t.sizes[d1][d2] = static_cast<int>(homs[d1][d2].size());
  t.contra.assign(m, std::vector<std::vector<int>>(n));
  t.cov.assign(m, std::vector<std::vector<int>>(n));
  for (int u = 0; u < m; ++u) {
    const int ud = c.mors[u].dom, uc = c.mors[u].cod;
    for (int e = 0; e < n; ++e) {
      for (int k : homs[uc][e]) t.contra[u][e].push_back(pos[c.table[k][u]]);
      for (int k : homs[e][ud]) t.cov[u][e].push_back(pos[c.table[u][k]]);
    }
  }
  return t;
}

// Hom(F(d2), G(d1)) with the evident actions; its end is Nat(F, G).
inline Bifunctor nat_integrand(const Presheaf& f, const Presheaf& g) {
  const FinCat& c = f.base;
  Bifunctor t;
  t.base = c;
  const int n = c.object_count, m = c.morphism_count();
  auto space = [&](int d1, int d2) {
    long long out = 1;
    for (int i = 0; i < f.sizes[d2]; ++i) out *= g.sizes[d1];
    return out;
  };
  auto decode = [&](long long code, int slots, int radix) {
    std::vector<int> tab(slots);
    for (int i = slots - 1; i >= 0; --i) {
      tab[i] = static_cast<int>(code % radix);
      code /= radix;
    }
    return tab;
  };
  auto encode = [&](const std::vector<int>& tab, int radix) {
    long long code = 0;
    for (int v : tab) code = code * radix + v;
    return code;
  };
  t.sizes.assign(n, std::vector<int>(n));
  for (int d1 = 0; d1 < n; ++d1)
    for (int d2 = 0; d2 < n; ++d2) t.sizes[d1][d2] = static_cast<int>(space(d1, d2));
  t.contra.assign(m, std::vector<std::vector<int>>(n));
  t.cov.assign(m, std::vector<std::vector<int>>(n));
  for (int u = 0; u < m; ++u) {
    const int ud = c.mors[u].dom, uc = c.mors[u].cod;
    for (int e = 0; e < n; ++e) {
      // contra: Hom(F(e), G(uc)) -> Hom(F(e), G(ud)): postcompose G(u).
      for (long long code = 0; code < space(uc, e); ++code) {
        std::vector<int> tab = decode(code, f.sizes[e], g.sizes[uc]);
        for (int& v : tab) v = g.action[u][v];
        t.contra[u][e].push_back(static_cast<int>(encode(tab, g.sizes[ud])));
      }
      // cov: Hom(F(ud), G(e)) -> Hom(F(uc), G(e)): precompose F(u).
      for (long long code = 0; code < space(e, ud); ++code) {
        const std::vector<int> tab = decode(code, f.sizes[ud], g.sizes[e]);
        std::vector<int> mapped(f.sizes[uc]);
        for (int i = 0; i < f.sizes[uc]; ++i) mapped[i] = tab[f.action[u][i]];
        t.cov[u][e].push_back(static_cast<int>(encode(mapped, g.sizes[e])));
      }
    }
  }
  return t;
}

}  // namespace freesem::testing

#endif
