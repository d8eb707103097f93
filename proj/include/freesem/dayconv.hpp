#ifndef FREESEM_DAYCONV_HPP
#define FREESEM_DAYCONV_HPP

#include <vector>

#include "freesem/fincat.hpp"

namespace freesem {

// A promonoidal structure on a finite base A: a finite-set family M(X,B,C)
// contravariant in X and covariant in B and C, plus a unit presheaf J.
//
//   act_out[u][B][C]: u: X' -> X   gives M(X,B,C)  -> M(X',B,C)
//   act_in1[p][X][C]: p: B -> B'   gives M(X,B,C)  -> M(X,B',C)
//   act_in2[q][X][B]: q: C -> C'   gives M(X,B,C)  -> M(X,B,C')
struct Promonoidal {
  FinCat base;
  std::vector<std::vector<std::vector<int>>> m_sizes;  // [X][B][C]
  std::vector<std::vector<std::vector<std::vector<int>>>> act_out;
  std::vector<std::vector<std::vector<std::vector<int>>>> act_in1;
  std::vector<std::vector<std::vector<std::vector<int>>>> act_in2;
  Presheaf unit;
};

Report validate_promonoidal(const Promonoidal& p);

// A monoidal structure: a tensor functor A×A -> A given by object and
// morphism tables, and a unit object. Associativity and coherence are not
// required; none of the checks below consume them.
struct MonoidalCat {
  FinCat base;
  std::vector<std::vector<int>> tensor_obj;   // [x][y]
  std::vector<std::vector<int>> tensor_mor;   // [f][g]
  int unit_object = 0;
};

Report validate_monoidal(const MonoidalCat& m);

MonoidalCat terminal_monoidal();
MonoidalCat group_z2_monoidal();                // 2-element group as a one-object category
MonoidalCat chain_min_monoidal(int n);          // chain with ⊗ = min, unit = top

// M(X,B,C) = hom(X, B⊗C), J = hom(-, I).
Promonoidal promonoidal_from_monoidal(const MonoidalCat& m);

// (F ⊗_M G)(X) = coend over A×A of F(B) × G(C) × M(X,B,C). The coend data
// is kept so transposition can look up classes of representative triples;
// triple (i,j,m) at diagonal (B,C) has flat index (i·|G(C)| + j)·|M| + m.
struct DayTensor {
  Presheaf sheaf;
  ProductCat square;                 // A×A
  std::vector<CoendResult> coends;   // per object X of the base
};

DayTensor day_tensor_full(const Promonoidal& p, const Presheaf& f, const Presheaf& g,
                          const Caps& caps = {});
Presheaf day_tensor(const Promonoidal& p, const Presheaf& f, const Presheaf& g,
                    const Caps& caps = {});

// (F ⊸L G)(B) = end over A×A of G(A)^(F(C) × M(A,B,C)): families of maps
// φ_{A,C}: F(C)×M(A,B,C) -> G(A) natural in A and C. Elements of the end
// carrier at object B are indices into `ends[B].families`; each family
// component is a function table encoded as a mixed-radix integer with slot
// x·|M| + m and value radix |G(A)|.
struct DayExponent {
  Presheaf sheaf;
  ProductCat square;
  std::vector<EndResult> ends;   // per object of the base
};

DayExponent day_left_exponent(const Promonoidal& p, const Presheaf& f, const Presheaf& g,
                              const Caps& caps = {});
// (F ⊸R G)(C) = end over A×A of G(A)^(F(B) × M(A,B,C)), symmetric in the
// third argument.
DayExponent day_right_exponent(const Promonoidal& p, const Presheaf& f, const Presheaf& g,
                               const Caps& caps = {});

// β = transpose of α: Nat(H⊗F, G) -> Nat(H, F⊸L G), where
// β_B(h) = [φ_{A,C}(x,m) = α_A(class of (h,x,m))]. The result is verified to
// land in the end and to be natural; failures raise InternalLawViolation.
PresheafNat transpose_left(const Promonoidal& p, const Presheaf& h, const Presheaf& f,
                           const Presheaf& g, const PresheafNat& alpha, const Caps& caps = {});

// Inverse direction, by evaluating β at coend representatives.
PresheafNat transpose_left_inverse(const Promonoidal& p, const Presheaf& h, const Presheaf& f,
                                   const Presheaf& g, const PresheafNat& beta,
                                   const Caps& caps = {});

// F⊗J ≅ F and J⊗F ≅ F, decided by natural-iso search.
Report check_unit_laws(const Promonoidal& p, const Presheaf& f, const Caps& caps = {});

// hom(-,X) ⊗ hom(-,Y) ≅ hom(-, X⊗Y) for all object pairs.
Report check_yoneda_monoidality(const MonoidalCat& m, const Caps& caps = {});

// Pointwise convolution of K-tuples of presheaves agrees with convolution
// over the product structure on K×A (diagonal distributor on the discrete K),
// restricted back to each index.
Report indexed_convolution_check(const MonoidalCat& m, const std::vector<Presheaf>& f,
                                 const std::vector<Presheaf>& g, const Caps& caps = {});

}  // namespace freesem

#endif
