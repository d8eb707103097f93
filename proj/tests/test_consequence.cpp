#include <doctest.h>

#include <random>

#include "freesem/consequence.hpp"
#include "support/oracles.hpp"

using namespace freesem;
using namespace freesem::testing;

namespace {

SatisfactionRelation make_rel(int models, int sentences, const std::vector<std::vector<bool>>& m) {
  SatisfactionRelation rel;
  for (int i = 0; i < models; ++i) rel.model_names.push_back("M" + std::to_string(i));
  for (int i = 0; i < sentences; ++i) rel.sentence_names.push_back("s" + std::to_string(i));
  rel.matrix = m;
  return rel;
}

SatisfactionRelation random_rel(std::mt19937& rng, int models, int sentences) {
  std::vector<std::vector<bool>> m(models, std::vector<bool>(sentences));
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto& row : m)
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = coin(rng);
  return make_rel(models, sentences, m);
}

}  // namespace

TEST_CASE("theory reads rows") {
  const auto rel = make_rel(2, 3, {{false, false, false}, {true, true, true}});
  CHECK(theory(rel, "M0") == 0);
  CHECK(theory(rel, "M1") == 0b111);
  const auto one = make_rel(1, 2, {{true, false}});
  CHECK(theory(one, "M0") == 0b01);
  CHECK_THROWS_AS(theory(one, "nope"), UnknownName);
}

TEST_CASE("consequence formula") {
  const auto rel = make_rel(1, 2, {{true, false}});  // M1 ⊨ φ only
  CHECK_FALSE(consequence(rel, {"s0"}, "s1"));
  CHECK(consequence(rel, {"s1"}, "s0"));  // vacuous: no model of s1
  // Empty Γ: true iff every model satisfies ψ.
  const auto rel2 = make_rel(2, 1, {{true}, {false}});
  CHECK_FALSE(consequence(rel2, {}, "s0"));
  const auto rel3 = make_rel(2, 1, {{true}, {true}});
  CHECK(consequence(rel3, {}, "s0"));
  CHECK_THROWS_AS(consequence(rel3, {"zzz"}, "s0"), UnknownName);
}

TEST_CASE("consequence agrees with the two-loop oracle on random matrices") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 100; ++round) {
    const auto rel = random_rel(rng, 3, 3);
    for (SenSet gamma = 0; gamma < 8; ++gamma)
      for (int psi = 0; psi < 3; ++psi) {
        std::vector<int> glist;
        for (int i = 0; i < 3; ++i)
          if (gamma & (SenSet{1} << i)) glist.push_back(i);
        CHECK(consequence(rel, gamma, psi) == naive_consequence(rel, glist, psi));
      }
  }
}

TEST_CASE("kleisli examples") {
  SUBCASE("empty Mod gives the total relation") {
    const auto rel = make_rel(0, 2, {});
    const auto k = kleisli(rel);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(k.relation[i][j]);
  }
  SUBCASE("identity-like matrix gives equality only") {
    const auto rel = make_rel(2, 2, {{true, false}, {false, true}});
    const auto k = kleisli(rel);
    CHECK(k.relation[0][0]);
    CHECK(k.relation[1][1]);
    CHECK_FALSE(k.relation[0][1]);
    CHECK_FALSE(k.relation[1][0]);
  }
  SUBCASE("one all-satisfying model keeps the relation total") {
    const auto rel = make_rel(1, 3, {{true, true, true}});
    const auto k = kleisli(rel);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(k.relation[i][j]);
  }
}

TEST_CASE("preorder laws and compatibility on exhaustive small matrices") {
  for (int models = 0; models <= 2; ++models)
    for (int sentences = 0; sentences <= 2; ++sentences) {
      const int bits = models * sentences;
      for (unsigned code = 0; code < (1u << bits); ++code) {
        std::vector<std::vector<bool>> m(models, std::vector<bool>(sentences));
        int i = 0;
        for (int r = 0; r < models; ++r)
          for (int c = 0; c < sentences; ++c, ++i) m[r][c] = code & (1u << i);
        const auto rel = make_rel(models, sentences, m);
        CHECK_NOTHROW(kleisli(rel));  // reflexivity+transitivity verified inside
        CHECK(check_extension_compatibility(rel).ok());
        if (bits == 0) break;
      }
    }
}

TEST_CASE("monotonicity and closure-operator laws") {
  std::mt19937 rng(55);
  for (int round = 0; round < 60; ++round) {
    const auto rel = random_rel(rng, 3, 3);
    const int s = 3;
    auto cn = [&](SenSet gamma) {
      SenSet out = 0;
      for (int psi = 0; psi < s; ++psi)
        if (consequence(rel, gamma, psi)) out |= SenSet{1} << psi;
      return out;
    };
    for (SenSet g1 = 0; g1 < 8; ++g1) {
      CHECK((g1 & ~cn(g1)) == 0);      // Γ ⊆ Cn(Γ)
      CHECK(cn(cn(g1)) == cn(g1));     // idempotence
      for (SenSet g2 = g1;; g2 = ((g2 + 1) | g1)) {
        if (g2 >= 8) break;
        for (int psi = 0; psi < s; ++psi)
          if (consequence(rel, g1, psi)) CHECK(consequence(rel, g2, psi));
      }
    }
  }
}

TEST_CASE("relation validation") {
  auto rel = make_rel(2, 2, {{true, false}, {false, true}});
  CHECK(validate_relation(rel).ok());
  rel.matrix.pop_back();
  CHECK_FALSE(validate_relation(rel).ok());
  auto dup = make_rel(2, 1, {{true}, {false}});
  dup.model_names[1] = dup.model_names[0];
  CHECK_FALSE(validate_relation(dup).ok());
}
