#ifndef FREESEM_FRAMES_HPP
#define FREESEM_FRAMES_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "freesem/errors.hpp"
#include "freesem/report.hpp"
#include "freesem/syntax.hpp"

namespace freesem {

// Subsets of a carrier of at most 64 points, as bitmasks.
using Mask = std::uint64_t;

inline Mask full_mask(int size) { return size >= 64 ? ~Mask{0} : (Mask{1} << size) - 1; }
inline bool mask_has(Mask m, int i) { return (m >> i) & 1; }
std::string mask_str(Mask m, int size);
std::vector<int> mask_elements(Mask m, int size);

// A set X with a ternary relation R ⊆ X³. Plain data; operations build their
// own dense lookups, so values are freely shared across threads.
struct TernaryFrame {
  int size = 0;
  std::vector<std::array<int, 3>> triples;
};

Report validate_ternary(const TernaryFrame& fr);

// A poset ⟨S, ≤⟩; `leq_pairs` must contain the full order, not just
// generators.
struct KripkeFrame {
  int size = 0;
  std::vector<std::pair<int, int>> leq_pairs;

  bool leq(int p, int q) const;  // linear scan; hot paths use a dense table
};

// Reflexive/transitive/antisymmetric; indices in range.
Report validate_kripke(const KripkeFrame& fr);
// For the CLI --close flag; never applied implicitly.
KripkeFrame reflexive_transitive_closure(const KripkeFrame& fr);

bool is_up_closed(const KripkeFrame& fr, Mask s);

struct Valuation {
  std::map<std::string, Mask> vars;
};

// f ⊗_R g = { x | ∃a,b. f(a) ∧ g(b) ∧ R(x,a,b) }
Mask conv(const TernaryFrame& fr, Mask f, Mask g);
// f ⊸L g = { a | ∀x,b. f(b) ∧ R(x,a,b) ⇒ g(x) }
Mask left_residual(const TernaryFrame& fr, Mask f, Mask g);
// f ⊸R g = { b | ∀x,a. f(a) ∧ R(x,a,b) ⇒ g(x) }
Mask right_residual(const TernaryFrame& fr, Mask f, Mask g);

// Exhaustive check of both adjunctions over all subset triples:
//   conv(h,f) ⊆ g  ⇔  h ⊆ left_residual(f,g)
//   conv(f,h) ⊆ g  ⇔  h ⊆ right_residual(f,g)
Report check_residuation(const TernaryFrame& fr, const Caps& caps = {});

// Intuitionistic forcing over up-closed valuations; the result is up-closed.
Mask kripke_force(const KripkeFrame& fr, const Valuation& v, const Formula& f);

// Lambek connectives via the frame's convolution, extended by ∨/⊥/⊤ as
// union/empty/full. ∧ and ⇒ are rejected on a bare ternary frame.
Mask eval_lambek(const TernaryFrame& fr, const Valuation& v, const Formula& f);

// R(x,a,b) = (a ≤ x) ∧ (b ≤ x): the relation induced by the diagonal.
TernaryFrame kripke_to_ternary(const KripkeFrame& fr);

// kripke_force agrees with eval_lambek over kripke_to_ternary under both
// residual translations of ⇒ (∧ ↦ ⊗; ⇒ ↦ ⊸L and ⇒ ↦ ⊸R).
Report check_kripke_equivalence(const KripkeFrame& fr, const Valuation& v, const Formula& f);

}  // namespace freesem

#endif
