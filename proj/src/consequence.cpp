#include "freesem/consequence.hpp"

#include <set>

namespace freesem {

int SatisfactionRelation::model_index(const std::string& name) const {
  for (int i = 0; i < models(); ++i)
    if (model_names[i] == name) return i;
  throw UnknownName("unknown model '" + name + "'");
}

int SatisfactionRelation::sentence_index(const std::string& name) const {
  for (int i = 0; i < sentences(); ++i)
    if (sentence_names[i] == name) return i;
  throw UnknownName("unknown sentence '" + name + "'");
}

Report validate_relation(const SatisfactionRelation& rel) {
  Report rep;
  if (rel.sentences() > 64) {
    rep.add("too-many-sentences", {{"count", rel.sentences()}});
    return rep;
  }
  if (static_cast<int>(rel.matrix.size()) != rel.models())
    rep.add("matrix-rows", {{"rows", static_cast<long long>(rel.matrix.size())},
                            {"models", rel.models()}});
  for (std::size_t i = 0; i < rel.matrix.size(); ++i)
    if (static_cast<int>(rel.matrix[i].size()) != rel.sentences())
      rep.add("matrix-row-length", {{"row", static_cast<long long>(i)}});
  std::set<std::string> seen;
  for (const auto& n : rel.model_names)
    if (!seen.insert(n).second) rep.add("duplicate-model-name", {}, n);
  seen.clear();
  for (const auto& n : rel.sentence_names)
    if (!seen.insert(n).second) rep.add("duplicate-sentence-name", {}, n);
  return rep;
}

SenSet theory(const SatisfactionRelation& rel, int model) {
  if (model < 0 || model >= rel.models()) throw UnknownName("model index out of range");
  SenSet out = 0;
  for (int s = 0; s < rel.sentences(); ++s)
    if (rel.matrix[model][s]) out |= SenSet{1} << s;
  return out;
}

SenSet theory(const SatisfactionRelation& rel, const std::string& model) {
  return theory(rel, rel.model_index(model));
}

bool consequence(const SatisfactionRelation& rel, SenSet gamma, int psi) {
  if (psi < 0 || psi >= rel.sentences()) throw UnknownName("sentence index out of range");
  for (int m = 0; m < rel.models(); ++m) {
    const SenSet th = theory(rel, m);
    if ((gamma & ~th) == 0 && !rel.matrix[m][psi]) return false;
  }
  return true;
}

bool consequence(const SatisfactionRelation& rel, const std::vector<std::string>& gamma,
                 const std::string& psi) {
  SenSet g = 0;
  for (const auto& name : gamma) g |= SenSet{1} << rel.sentence_index(name);
  return consequence(rel, g, rel.sentence_index(psi));
}

KleisliPreorder kleisli(const SatisfactionRelation& rel) {
  const int s = rel.sentences();
  KleisliPreorder out;
  out.sentence_names = rel.sentence_names;
  out.relation.assign(s, std::vector<bool>(s, false));
  for (int phi = 0; phi < s; ++phi)
    for (int psi = 0; psi < s; ++psi)
      out.relation[phi][psi] = consequence(rel, SenSet{1} << phi, psi);
  for (int phi = 0; phi < s; ++phi)
    if (!out.relation[phi][phi]) throw InternalLawViolation("kleisli: relation not reflexive");
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      if (out.relation[a][b])
        for (int c = 0; c < s; ++c)
          if (out.relation[b][c] && !out.relation[a][c])
            throw InternalLawViolation("kleisli: relation not transitive");
  return out;
}

Report check_extension_compatibility(const SatisfactionRelation& rel) {
  Report rep;
  const KleisliPreorder k = kleisli(rel);
  for (int m = 0; m < rel.models(); ++m)
    for (int phi = 0; phi < rel.sentences(); ++phi)
      if (rel.matrix[m][phi])
        for (int psi = 0; psi < rel.sentences(); ++psi)
          if (k.relation[phi][psi] && !rel.matrix[m][psi])
            rep.add("extension-compatibility", {{"model", m}, {"phi", phi}, {"psi", psi}});
  return rep;
}

}  // namespace freesem
