#include <doctest.h>

#include "freesem/json_io.hpp"
#include "support/builders.hpp"

using namespace freesem;
using namespace freesem::testing;

TEST_CASE("category json round trip") {
  for (const FinCat& c : {terminal_category(), chain_category(3), arrow_with_loop(),
                          monoid_category({{0, 1}, {1, 0}}, 0), discrete_category(0)}) {
    CHECK(fincat_from_json(fincat_to_json(c)) == c);
  }
}

TEST_CASE("functor and presheaf json round trip") {
  const FinCat chain = chain_category(2);
  const Functor f = identity_functor(chain);
  CHECK(functor_from_json(functor_to_json(f)) == f);
  const Presheaf r = representable(chain, 1);
  CHECK(presheaf_from_json(presheaf_to_json(r)) == r);
  // Base adoption when omitted.
  json j = presheaf_to_json(r);
  j.erase("base");
  CHECK(presheaf_from_json(j, chain) == r);
  // Base mismatch is an input error.
  CHECK_THROWS_AS(presheaf_from_json(presheaf_to_json(r), terminal_category()), MalformedTable);
}

TEST_CASE("frame and relation json round trip") {
  TernaryFrame tf;
  tf.size = 3;
  tf.triples = {{0, 1, 2}, {2, 2, 2}};
  const TernaryFrame tf2 = ternary_from_json(ternary_to_json(tf));
  CHECK(tf2.size == tf.size);
  CHECK(tf2.triples == tf.triples);

  KripkeFrame kf;
  kf.size = 2;
  kf.leq_pairs = {{0, 0}, {0, 1}, {1, 1}};
  const KripkeFrame kf2 = kripke_from_json(kripke_to_json(kf));
  CHECK(kf2.size == kf.size);
  CHECK(kf2.leq_pairs == kf.leq_pairs);

  SatisfactionRelation rel;
  rel.model_names = {"M0"};
  rel.sentence_names = {"p", "q"};
  rel.matrix = {{true, false}};
  const SatisfactionRelation rel2 = relation_from_json(relation_to_json(rel));
  CHECK(rel2.model_names == rel.model_names);
  CHECK(rel2.sentence_names == rel.sentence_names);
  CHECK(rel2.matrix == rel.matrix);
}

TEST_CASE("malformed json raises MalformedTable") {
  CHECK_THROWS_AS(fincat_from_json(json{{"objects", 1}}), MalformedTable);
  CHECK_THROWS_AS(fincat_from_json(json{{"objects", "one"},
                                        {"morphisms", json::array()},
                                        {"identities", json::array()},
                                        {"compose", json::array()}}),
                  MalformedTable);
  CHECK_THROWS_AS(ternary_from_json(json{{"size", 2}, {"triples", json::array({json{0, 1}})}}),
                  MalformedTable);
  CHECK_THROWS_AS(valuation_from_json(json{{"A", json::array({9})}}, 2), MalformedTable);
  CHECK_THROWS_AS(relation_from_json(json{{"models", json::array()},
                                          {"sentences", json::array()},
                                          {"matrix", json::array({json::array({1})})}}),
                  MalformedTable);
}

TEST_CASE("valuation json uses carrier indices") {
  const Valuation v = valuation_from_json(json{{"A", json::array({0, 2})}}, 3);
  CHECK(v.vars.at("A") == 0b101);
}

TEST_CASE("report json carries rule, data, and detail") {
  Report rep;
  rep.add("some-rule", {{"x", 3}}, "note");
  const json j = report_to_json(rep);
  CHECK(j.at("ok") == false);
  CHECK(j.at("violations")[0].at("rule") == "some-rule");
  CHECK(j.at("violations")[0].at("data").at("x") == 3);
  CHECK(j.at("violations")[0].at("detail") == "note");
  CHECK(report_to_json(Report{}).at("ok") == true);
}
