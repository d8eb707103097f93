#include "freesem/kan.hpp"

#include <algorithm>
#include <string>

namespace freesem {

Report validate_triangle(const YonedaTriangleData& t) {
  Report rep;
  if (t.Y.source != t.F.source) rep.add("shape", {}, "Y and F must share their source");
  if (t.G.source != t.F.target) rep.add("shape", {}, "G's source must be F's target");
  if (t.G.target != t.Y.target) rep.add("shape", {}, "G's target must be Y's target");
  if (!rep.ok()) return rep;
  rep.merge(validate_functor(t.Y), "Y-");
  rep.merge(validate_functor(t.F), "F-");
  rep.merge(validate_functor(t.G), "G-");
  if (!rep.ok()) return rep;
  rep.merge(validate_nat(t.Y, compose_functor(t.G, t.F), t.eta), "eta-");
  return rep;
}

Report check_absolute_lifting(const YonedaTriangleData& t) {
  Report rep = validate_triangle(t);
  const bool eta_ok = rep.ok();
  const FinCat& a = t.a();
  const FinCat& b = t.b();
  const FinCat& abar = t.abar();

  // Cardinalities must agree even to state the bijection.
  for (int x = 0; x < a.object_count; ++x)
    for (int y = 0; y < b.object_count; ++y) {
      const auto dom = b.hom(t.F.object_map[x], y);
      const auto cod = abar.hom(t.Y.object_map[x], t.G.object_map[y]);
      if (dom.size() != cod.size())
        rep.add("hom-cardinality",
                {{"a", x},
                 {"b", y},
                 {"hom_B", static_cast<long long>(dom.size())},
                 {"hom_Abar", static_cast<long long>(cod.size())}});
    }
  if (!eta_ok) return rep;

  // Φ_{a,b}(α) = G(α)∘η_a must be a bijection hom_B(F a, b) -> hom_Ā(Y a, G b).
  auto phi = [&](int x, int alpha) { return abar.table[t.G.morphism_map[alpha]][t.eta.components[x]]; };
  for (int x = 0; x < a.object_count; ++x)
    for (int y = 0; y < b.object_count; ++y) {
      const auto dom = b.hom(t.F.object_map[x], y);
      auto cod = abar.hom(t.Y.object_map[x], t.G.object_map[y]);
      std::vector<int> image;
      for (int alpha : dom) image.push_back(phi(x, alpha));
      std::sort(image.begin(), image.end());
      if (std::adjacent_find(image.begin(), image.end()) != image.end()) {
        rep.add("lifting-not-injective", {{"a", x}, {"b", y}});
        continue;
      }
      if (image != cod) rep.add("lifting-not-surjective", {{"a", x}, {"b", y}});
    }
  if (!rep.ok()) return rep;

  // Naturality of the family in a (precompose with F u) and in b (postcompose).
  for (int u = 0; u < a.morphism_count(); ++u) {
    const int xp = a.mors[u].dom, x = a.mors[u].cod;
    for (int y = 0; y < b.object_count; ++y)
      for (int alpha : b.hom(t.F.object_map[x], y)) {
        const int lhs = phi(xp, b.table[alpha][t.F.morphism_map[u]]);
        const int rhs = abar.table[phi(x, alpha)][t.Y.morphism_map[u]];
        if (lhs != rhs) rep.add("lifting-naturality-in-a", {{"u", u}, {"b", y}, {"alpha", alpha}});
      }
  }
  for (int v = 0; v < b.morphism_count(); ++v) {
    const int y = b.mors[v].dom;
    for (int x = 0; x < a.object_count; ++x)
      for (int alpha : b.hom(t.F.object_map[x], y)) {
        const int lhs = phi(x, b.table[v][alpha]);
        const int rhs = abar.table[t.G.morphism_map[v]][phi(x, alpha)];
        if (lhs != rhs) rep.add("lifting-naturality-in-b", {{"v", v}, {"a", x}, {"alpha", alpha}});
      }
  }
  return rep;
}

Report check_pointwise_extension(const YonedaTriangleData& t, const Caps& caps) {
  Report rep = validate_triangle(t);
  if (!rep.ok()) return rep;
  const FinCat& b = t.b();
  const FinCat& abar = t.abar();
  for (int y = 0; y < b.object_count; ++y) {
    const CommaCategory comma = comma_category(t.F, y);
    const Functor diagram = compose_functor(t.Y, comma.projection);
    std::vector<int> legs;
    legs.reserve(comma.labels.size());
    bool legs_ok = true;
    for (const auto& [x, k] : comma.labels) {
      // λ_(x,k) = G(k)∘η_x : Y x -> G b.
      const int gk = t.G.morphism_map[k];
      const int eta = t.eta.components[x];
      if (!abar.composable(gk, eta)) {
        rep.add("leg-not-composable", {{"b", y}, {"a", x}, {"k", k}});
        legs_ok = false;
        break;
      }
      legs.push_back(abar.table[gk][eta]);
    }
    if (!legs_ok) continue;
    Report uni = is_universal_cocone(diagram, t.G.object_map[y], legs, caps);
    if (!uni.ok()) {
      for (Violation v : uni.violations) {
        v.where.insert(v.where.begin(), {"b", y});
        rep.violations.push_back(std::move(v));
      }
    }
  }
  return rep;
}

Report check_yoneda_triangle(const YonedaTriangleData& t, const Caps& caps) {
  Report rep;
  rep.merge(check_absolute_lifting(t), "absolute:");
  rep.merge(check_pointwise_extension(t, caps), "pointwise:");
  return rep;
}

Report check_adjunction(const AdjunctionData& d) {
  Report rep;
  if (d.f.source != d.g.target || d.f.target != d.g.source)
    rep.add("shape", {}, "f and g must be opposed");
  if (!rep.ok()) return rep;
  rep.merge(validate_functor(d.f), "f-");
  rep.merge(validate_functor(d.g), "g-");
  if (!rep.ok()) return rep;
  const FinCat& a = d.f.source;
  const FinCat& b = d.f.target;
  rep.merge(validate_nat(identity_functor(a), compose_functor(d.g, d.f), d.unit), "unit-");
  rep.merge(validate_nat(compose_functor(d.f, d.g), identity_functor(b), d.counit), "counit-");
  if (!rep.ok()) return rep;

  // (ε∘f)·(f∘η) = id_f at every object of A.
  for (int x = 0; x < a.object_count; ++x) {
    const int fx = d.f.object_map[x];
    const int comp = b.table[d.counit.components[fx]][d.f.morphism_map[d.unit.components[x]]];
    if (comp != b.identity[fx]) rep.add("triangle-f", {{"object", x}, {"got", comp}});
  }
  // (g∘ε)·(η∘g) = id_g at every object of B.
  for (int y = 0; y < b.object_count; ++y) {
    const int gy = d.g.object_map[y];
    const int comp = a.table[d.g.morphism_map[d.counit.components[y]]][d.unit.components[gy]];
    if (comp != a.identity[gy]) rep.add("triangle-g", {{"object", y}, {"got", comp}});
  }
  return rep;
}

std::vector<Functor> all_functors(const FinCat& source, const FinCat& target, const Caps& caps) {
  std::vector<Functor> out;
  const int n = source.object_count, m = source.morphism_count();
  std::vector<int> omap(n, 0), mmap(m, -1);
  long long nodes = 0;
  auto bump = [&] {
    if (++nodes > caps.max_enum)
      throw EnumerationCapExceeded("functor enumeration exceeded the cap");
  };

  // Assign morphism images in index order; all constraints that involve only
  // earlier morphisms are checked as soon as they become decidable.
  auto mor_rec = [&](auto&& self, int u) -> void {
    if (u == m) {
      Functor f;
      f.source = source;
      f.target = target;
      f.object_map = omap;
      f.morphism_map = mmap;
      out.push_back(std::move(f));
      return;
    }
    for (int w = 0; w < target.morphism_count(); ++w) {
      bump();
      if (target.mors[w].dom != omap[source.mors[u].dom] ||
          target.mors[w].cod != omap[source.mors[u].cod])
        continue;
      bool ok = true;
      for (int x = 0; x < n && ok; ++x)
        if (source.identity[x] == u && w != target.identity[omap[x]]) ok = false;
      mmap[u] = w;
      // Composition constraints whose three participants are all assigned
      // and which involve u (older ones were checked at earlier steps).
      for (int p = 0; p <= u && ok; ++p)
        for (int q = 0; q <= u && ok; ++q) {
          if (!source.composable(p, q)) continue;
          const int pq = source.table[p][q];
          if (pq > u || (p != u && q != u && pq != u)) continue;
          if (mmap[pq] != target.table[mmap[p]][mmap[q]]) ok = false;
        }
      if (ok) self(self, u + 1);
      mmap[u] = -1;
    }
  };
  auto obj_rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      mor_rec(mor_rec, 0);
      return;
    }
    for (int o = 0; o < target.object_count; ++o) {
      bump();
      omap[x] = o;
      self(self, x + 1);
    }
  };
  if (n == 0) {
    if (m == 0) {
      Functor f;
      f.source = source;
      f.target = target;
      out.push_back(std::move(f));
    }
    return out;
  }
  obj_rec(obj_rec, 0);
  return out;
}

std::optional<AdjunctionData> adjoint_oracle(const Functor& f, const Caps& caps) {
  const FinCat& a = f.source;
  const FinCat& b = f.target;
  const Functor id_a = identity_functor(a);
  const Functor id_b = identity_functor(b);
  for (const Functor& g : all_functors(b, a, caps)) {
    const Functor gf = compose_functor(g, f);
    const Functor fg = compose_functor(f, g);
    for (const FunctorNat& unit : nat_transformations(id_a, gf, caps))
      for (const FunctorNat& counit : nat_transformations(fg, id_b, caps)) {
        AdjunctionData d{f, g, unit, counit};
        if (check_adjunction(d).ok()) return d;
      }
  }
  return std::nullopt;
}

}  // namespace freesem
