#ifndef FREESEM_CONSEQUENCE_HPP
#define FREESEM_CONSEQUENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "freesem/errors.hpp"
#include "freesem/report.hpp"

namespace freesem {

// Sets of sentence indices, as bitmasks (at most 64 sentences).
using SenSet = std::uint64_t;

struct SatisfactionRelation {
  std::vector<std::string> model_names;
  std::vector<std::string> sentence_names;
  std::vector<std::vector<bool>> matrix;  // matrix[model][sentence]

  int models() const { return static_cast<int>(model_names.size()); }
  int sentences() const { return static_cast<int>(sentence_names.size()); }
  int model_index(const std::string& name) const;     // UnknownName on miss
  int sentence_index(const std::string& name) const;  // UnknownName on miss
};

Report validate_relation(const SatisfactionRelation& rel);

// The row of M: the sentences it satisfies.
SenSet theory(const SatisfactionRelation& rel, int model);
SenSet theory(const SatisfactionRelation& rel, const std::string& model);

// Γ ⊨ ψ iff every model of all of Γ is a model of ψ.
bool consequence(const SatisfactionRelation& rel, SenSet gamma, int psi);
bool consequence(const SatisfactionRelation& rel, const std::vector<std::string>& gamma,
                 const std::string& psi);

// Sentences preordered by single-premise consequence.
struct KleisliPreorder {
  std::vector<std::string> sentence_names;
  std::vector<std::vector<bool>> relation;  // relation[phi][psi]
};

// Builds the preorder and verifies reflexivity and transitivity before
// returning; a failure there is an InternalLawViolation (defect detector).
KleisliPreorder kleisli(const SatisfactionRelation& rel);

// M ⊨ φ and φ ⊨_Sen ψ must give M ⊨ ψ.
Report check_extension_compatibility(const SatisfactionRelation& rel);

}  // namespace freesem

#endif
