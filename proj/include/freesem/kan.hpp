#ifndef FREESEM_KAN_HPP
#define FREESEM_KAN_HPP

#include <optional>

#include "freesem/fincat.hpp"

namespace freesem {

// The data of a Yoneda triangle: Y: A -> Ā, F: A -> B, G: B -> Ā and
// η: Y ⇒ G∘F. A, B, Ā are recovered from the functors.
struct YonedaTriangleData {
  Functor Y, F, G;
  FunctorNat eta;

  const FinCat& a() const { return Y.source; }
  const FinCat& abar() const { return Y.target; }
  const FinCat& b() const { return F.target; }
};

// Shape and η well-formedness (endpoints and naturality).
Report validate_triangle(const YonedaTriangleData& t);

// F is an absolute left Kan lifting of Y along G: for all objects a, b the
// map α ↦ G(α)∘η_a : hom_B(F a, b) -> hom_Ā(Y a, G b) is a bijection, and
// the family is natural in a and b.
Report check_absolute_lifting(const YonedaTriangleData& t);

// G is a pointwise left Kan extension of Y along F: for every b the legs
// G(k)∘η_a over the comma category F↓b form a universal cocone on apex G(b).
Report check_pointwise_extension(const YonedaTriangleData& t, const Caps& caps = {});

// Both halves; violations are prefixed "absolute:" / "pointwise:".
Report check_yoneda_triangle(const YonedaTriangleData& t, const Caps& caps = {});

struct AdjunctionData {
  Functor f;         // A -> B
  Functor g;         // B -> A
  FunctorNat unit;   // Id_A ⇒ g∘f
  FunctorNat counit; // f∘g ⇒ Id_B
};

// Triangle identities (ε∘f)·(f∘η) = id_f and (g∘ε)·(η∘g) = id_g,
// componentwise at every object.
Report check_adjunction(const AdjunctionData& d);

// Exhaustive search for a right adjoint: functors B -> A in lexicographic
// order (object maps, then morphism maps), then candidate units and counits;
// the first pair passing the triangle identities wins.
std::optional<AdjunctionData> adjoint_oracle(const Functor& f, const Caps& caps = {});

// All functors from `source` to `target`, lexicographically. Exposed for the
// oracle-vs-triangle equivalence sweeps.
std::vector<Functor> all_functors(const FinCat& source, const FinCat& target,
                                  const Caps& caps = {});

}  // namespace freesem

#endif
