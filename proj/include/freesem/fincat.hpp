#ifndef FREESEM_FINCAT_HPP
#define FREESEM_FINCAT_HPP

#include <optional>
#include <utility>
#include <vector>

#include "freesem/errors.hpp"
#include "freesem/report.hpp"

namespace freesem {

// ---------------------------------------------------------------------------
// Finite categories with explicit composition tables.
//
// Morphisms are globally indexed; equality of morphisms is index equality.
// The composition table is total over composable pairs: table[g][f] = g∘f,
// defined (>= 0) exactly when cod(f) == dom(g).
// ---------------------------------------------------------------------------

struct Mor {
  int dom = 0;
  int cod = 0;
  friend bool operator==(const Mor&, const Mor&) = default;
};

struct FinCat {
  int object_count = 0;
  std::vector<Mor> mors;
  std::vector<int> identity;               // per object: its identity morphism
  std::vector<std::vector<int>> table;     // table[g][f] = g∘f, -1 when not composable

  int morphism_count() const { return static_cast<int>(mors.size()); }
  bool composable(int g, int f) const { return mors[f].cod == mors[g].dom; }

  // g∘f; MalformedTable if the pair is not composable.
  int compose(int g, int f) const;

  // Morphism indices x -> y, ascending.
  std::vector<int> hom(int x, int y) const;

  friend bool operator==(const FinCat&, const FinCat&) = default;
};

// Small builders used across the workbench.
FinCat terminal_category();
FinCat discrete_category(int n);
FinCat chain_category(int n);  // poset 0 <= 1 <= ... <= n-1
// Poset as a category; `leq` must already be reflexive/transitive/antisymmetric.
FinCat poset_category(int n, const std::vector<std::pair<int, int>>& leq);
// One-object category from a monoid multiplication table; unit element `e`.
FinCat monoid_category(const std::vector<std::vector<int>>& mult, int e);

// Checks the FinCat invariants: identity dom/cod, unit laws, definedness of
// the table exactly on composable pairs, dom/cod of composites, and
// associativity over every composable triple. Throws MalformedTable when an
// index is out of range (the tables cannot be interpreted at all).
Report validate_category(const FinCat& c);

FinCat opposite(const FinCat& c);

// Product category together with the index conventions for pairs.
struct ProductCat {
  FinCat cat;
  int left_objects = 0, right_objects = 0;
  int left_mors = 0, right_mors = 0;

  int obj(int a, int b) const { return a * right_objects + b; }
  std::pair<int, int> obj_parts(int o) const { return {o / right_objects, o % right_objects}; }
  int mor(int f, int g) const { return f * right_mors + g; }
  std::pair<int, int> mor_parts(int m) const { return {m / right_mors, m % right_mors}; }
};

ProductCat product_cat(const FinCat& c, const FinCat& d, const Caps& caps = {});
inline FinCat product(const FinCat& c, const FinCat& d, const Caps& caps = {}) {
  return product_cat(c, d, caps).cat;
}

// ---------------------------------------------------------------------------
// Functors, presheaves, natural transformations.
// ---------------------------------------------------------------------------

struct Functor {
  FinCat source, target;
  std::vector<int> object_map;
  std::vector<int> morphism_map;

  friend bool operator==(const Functor&, const Functor&) = default;
};

Report validate_functor(const Functor& f);
Functor identity_functor(const FinCat& c);
// g∘f (apply f first).
Functor compose_functor(const Functor& g, const Functor& f);

// Finite-set-valued presheaf: contravariant, so a morphism u: X' -> X acts by
// action[u]: F(X) -> F(X').
struct Presheaf {
  FinCat base;
  std::vector<int> sizes;                  // per object
  std::vector<std::vector<int>> action;    // per morphism u: table of size sizes[cod(u)]

  friend bool operator==(const Presheaf&, const Presheaf&) = default;
};

Report validate_presheaf(const Presheaf& f);
// hom(-, x) with precomposition action.
Presheaf representable(const FinCat& c, int x);

// Natural transformation between parallel functors: components[a] is a
// morphism F(a) -> G(a) in the common target.
struct FunctorNat {
  std::vector<int> components;
  friend bool operator==(const FunctorNat&, const FunctorNat&) = default;
};

// Natural transformation between parallel presheaves: components[x] is a
// function table F(x) -> G(x).
struct PresheafNat {
  std::vector<std::vector<int>> components;
  friend bool operator==(const PresheafNat&, const PresheafNat&) = default;
};

Report validate_nat(const Functor& f, const Functor& g, const FunctorNat& t);
Report validate_nat(const Presheaf& f, const Presheaf& g, const PresheafNat& t);

// All natural transformations in lexicographic component order. The cap
// bounds partial assignments visited by the backtracking search.
std::vector<FunctorNat> nat_transformations(const Functor& f, const Functor& g,
                                            const Caps& caps = {});
std::vector<PresheafNat> nat_transformations(const Presheaf& f, const Presheaf& g,
                                             const Caps& caps = {});

// First invertible natural transformation in search order, if any.
std::optional<PresheafNat> find_natural_iso(const Presheaf& f, const Presheaf& g,
                                            const Caps& caps = {});
std::optional<FunctorNat> find_natural_iso(const Functor& f, const Functor& g,
                                           const Caps& caps = {});

// ---------------------------------------------------------------------------
// Comma categories and (co)ends.
// ---------------------------------------------------------------------------

struct CommaCategory {
  FinCat cat;
  Functor projection;                        // to the source of F
  std::vector<std::pair<int, int>> labels;   // object i is (a, k: F a -> b)
};

// F↓b for F: A -> B and b an object of B. Objects are pairs (a, k: F a -> b);
// a morphism (a,k) -> (a',k') is an A-morphism m with k'∘F(m) = k.
CommaCategory comma_category(const Functor& f, int b);

// Functor of two variables on a single base D, contravariant in the first
// argument and covariant in the second:
//   contra[u][e]: T(cod u, e) -> T(dom u, e)
//   cov[u][d]:    T(d, dom u) -> T(d, cod u)
struct Bifunctor {
  FinCat base;
  std::vector<std::vector<int>> sizes;                  // sizes[d1][d2]
  std::vector<std::vector<std::vector<int>>> contra;
  std::vector<std::vector<std::vector<int>>> cov;
};

Report validate_bifunctor(const Bifunctor& t);

// Coend of T: quotient of the disjoint union of the diagonal sets T(d,d) by
// the relations T(p,id)(t) ~ T(id,p)(t) for p: d -> d', t in T(d',d).
// Classes are numbered by their least flat member index (flat index = diagonal
// offset of d plus element index), so labels are canonical.
struct CoendResult {
  int classes = 0;
  std::vector<std::vector<int>> cls;   // cls[d][t] = class of t in T(d,d)
  std::vector<int> offset;             // flat offset of each diagonal set

  int flat(int d, int t) const { return offset[d] + t; }
};

CoendResult coend(const Bifunctor& t, const Caps& caps = {});

// End of T: all families (x_d in T(d,d))_d with T(id,p)(x_d) = T(p,id)(x_{d'})
// for every p: d -> d'. Families are produced in lexicographic order by a
// backtracking search; the cap bounds visited partial assignments.
struct EndResult {
  std::vector<std::vector<int>> families;  // each: per object d, element of T(d,d)
};

EndResult end_families(const Bifunctor& t, const Caps& caps = {});

// Universal-property check: legs[j]: diagram(j) -> apex must form a cocone,
// and for every object c and every commuting cocone into c there must be
// exactly one mediating morphism apex -> c.
Report is_universal_cocone(const Functor& diagram, int apex, const std::vector<int>& legs,
                           const Caps& caps = {});

}  // namespace freesem

#endif
