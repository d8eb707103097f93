#include <doctest.h>

#include "freesem/fincat.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace freesem;
using namespace freesem::testing;

namespace {

// One object, morphisms {id, a, b} with a∘a = b, a∘b = id, b∘a = a, b∘b = b:
// associativity fails at (a∘a)∘a vs a∘(a∘a).
FinCat broken_associativity() {
  FinCat c;
  c.object_count = 1;
  c.mors = {{0, 0}, {0, 0}, {0, 0}};
  c.identity = {0};
  c.table = {{0, 1, 2}, {1, 2, 0}, {2, 1, 2}};
  return c;
}

Presheaf yoneda_example_presheaf() {
  // Walking arrow, F(0) = {s}, F(1) = {t, t'}; F(0->1) is the constant map.
  Presheaf f;
  f.base = walking_arrow();
  f.sizes = {1, 2};
  f.action = {{0}, {0, 0}, {0, 1}};  // id0, u: F(1) -> F(0), id1
  return f;
}

}  // namespace

TEST_CASE("validate_category accepts the builders") {
  CHECK(validate_category(terminal_category()).ok());
  CHECK(validate_category(discrete_category(0)).ok());
  CHECK(validate_category(discrete_category(3)).ok());
  CHECK(validate_category(chain_category(4)).ok());
  CHECK(validate_category(monoid_category({{0, 1}, {1, 0}}, 0)).ok());
  CHECK(validate_category(arrow_with_loop()).ok());
  for (const auto& leq : all_labeled_posets(3))
    CHECK(validate_category(poset_category(3, leq)).ok());
}

TEST_CASE("validate_category finds the forced associativity violation") {
  const Report rep = validate_category(broken_associativity());
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const Violation& v : rep.violations)
    if (v.rule == "associativity" && v.where.size() >= 3 && v.where[0].second == 1 &&
        v.where[1].second == 1 && v.where[2].second == 1)
      found = true;
  CHECK(found);
}

TEST_CASE("validate_category reports unit violations") {
  FinCat c = terminal_category();
  c.mors.push_back({0, 0});
  c.table = {{0, 1}, {1, 1}};  // id∘a = a but a∘id = a ok; corrupt id∘a:
  c.table[0][1] = 0;           // id∘a claims to be id
  const Report rep = validate_category(c);
  CHECK_FALSE(rep.ok());
  bool found = false;
  for (const Violation& v : rep.violations)
    if (v.rule == "left-unit") found = true;
  CHECK(found);
}

TEST_CASE("validate_category throws MalformedTable on ranges") {
  FinCat c = terminal_category();
  c.identity = {7};
  CHECK_THROWS_AS(validate_category(c), MalformedTable);
}

TEST_CASE("opposite") {
  CHECK(opposite(terminal_category()) == terminal_category());
  const FinCat chain = chain_category(2);
  const FinCat op = opposite(chain);
  CHECK(op.mors[1].dom == 1);
  CHECK(op.mors[1].cod == 0);
  CHECK(validate_category(op).ok());
  CHECK(opposite(op) == chain);
  const FinCat loopy = arrow_with_loop();
  CHECK(opposite(opposite(loopy)) == loopy);
  for (const auto& leq : all_labeled_posets(3)) {
    const FinCat c = poset_category(3, leq);
    CHECK(opposite(opposite(c)) == c);
    CHECK(validate_category(opposite(c)).ok());
  }
}

TEST_CASE("product") {
  const FinCat chain = chain_category(2);
  CHECK(product(chain, terminal_category()) == chain);
  const FinCat sq = product(chain, chain);
  CHECK(sq.object_count == 4);
  CHECK(sq.morphism_count() == 9);
  CHECK(validate_category(sq).ok());
  CHECK(product(discrete_category(0), chain).object_count == 0);
  Caps tight;
  tight.max_morphisms = 8;
  CHECK_THROWS_AS(product(chain, chain, tight), CapacityExceeded);
}

TEST_CASE("presheaf validation and representables") {
  const Presheaf f = yoneda_example_presheaf();
  CHECK(validate_presheaf(f).ok());
  const FinCat chain = chain_category(3);
  for (int x = 0; x < 3; ++x) CHECK(validate_presheaf(representable(chain, x)).ok());
  const Presheaf r0 = representable(chain, 0);
  CHECK(r0.sizes == std::vector<int>{1, 0, 0});
  const FinCat z2 = monoid_category({{0, 1}, {1, 0}}, 0);
  const Presheaf rz = representable(z2, 0);
  CHECK(rz.sizes == std::vector<int>{2});
  CHECK(validate_presheaf(rz).ok());
}

TEST_CASE("nat_transformations between presheaves") {
  SUBCASE("identity presheaf on the terminal category") {
    Presheaf f;
    f.base = terminal_category();
    f.sizes = {1};
    f.action = {{0}};
    CHECK(nat_transformations(f, f).size() == 1);
  }
  SUBCASE("discrete base: no constraints") {
    Presheaf f, g;
    f.base = g.base = discrete_category(2);
    f.sizes = {2, 1};
    f.action = {{0, 1}, {0}};
    g.sizes = {3, 2};
    g.action = {{0, 1, 2}, {0, 1}};
    CHECK(nat_transformations(f, g).size() == 9 * 2);  // |G(x)|^|F(x)| per object
  }
  SUBCASE("Yoneda lemma counts") {
    const Presheaf f = yoneda_example_presheaf();
    const FinCat arrow = f.base;
    CHECK(nat_transformations(representable(arrow, 0), f).size() == 1);
    CHECK(nat_transformations(representable(arrow, 1), f).size() == 2);
  }
  SUBCASE("enumeration order is lexicographic and results are natural") {
    const Presheaf f = yoneda_example_presheaf();
    const auto nats = nat_transformations(f, f);
    for (const auto& t : nats) CHECK(validate_nat(f, f, t).ok());
    for (std::size_t i = 1; i < nats.size(); ++i) CHECK(nats[i - 1].components < nats[i].components);
  }
}

TEST_CASE("comma categories") {
  SUBCASE("functor from the terminal category gives a discrete hom-set") {
    const FinCat z2 = monoid_category({{0, 1}, {1, 0}}, 0);
    Functor pick;
    pick.source = terminal_category();
    pick.target = z2;
    pick.object_map = {0};
    pick.morphism_map = {0};
    const CommaCategory comma = comma_category(pick, 0);
    CHECK(comma.cat.object_count == 2);  // hom(*, *) has e and a
    CHECK(comma.cat.morphism_count() == 2);
    CHECK(validate_category(comma.cat).ok());
  }
  SUBCASE("identity on the chain at the top object is the whole chain") {
    const FinCat chain = chain_category(2);
    const CommaCategory comma = comma_category(identity_functor(chain), 1);
    CHECK(comma.cat.object_count == 2);
    CHECK(comma.cat.morphism_count() == 3);
    CHECK(validate_category(comma.cat).ok());
    CHECK(validate_functor(comma.projection).ok());
  }
  SUBCASE("empty hom-sets give the empty category") {
    const FinCat chain = chain_category(2);
    Functor top;  // terminal -> chain picking 1
    top.source = terminal_category();
    top.target = chain;
    top.object_map = {1};
    top.morphism_map = {chain.identity[1]};
    const CommaCategory comma = comma_category(top, 0);
    CHECK(comma.cat.object_count == 0);
    CHECK(comma.cat.morphism_count() == 0);
  }
}

TEST_CASE("coend") {
  SUBCASE("discrete base with diagonal singletons is a coproduct") {
    const FinCat d = discrete_category(3);
    Presheaf p;
    p.base = d;
    p.sizes = {1, 1, 1};
    p.action = {{0}, {0}, {0}};
    Presheaf q = p;  // also a copresheaf on the discrete base
    const Bifunctor t = product_bifunctor(d, p, q);
    CHECK(coend(t).classes == 3);
  }
  SUBCASE("co-Yoneda on the walking arrow") {
    const Presheaf f = yoneda_example_presheaf();
    const FinCat arrow = f.base;
    // T(d1,d2) = F(d1) × hom(X, d2) with X = 1: the copresheaf hom(1,-).
    Presheaf homx;
    homx.base = opposite(arrow);
    homx.sizes = {0, 1};  // hom(1,0), hom(1,1)
    homx.action = {{}, {}, {0}};
    const Bifunctor t = product_bifunctor(arrow, f, homx);
    CHECK(validate_bifunctor(t).ok());
    const CoendResult r = coend(t);
    CHECK(r.classes == 2);
    CHECK(naive_coend_classes(t) == r.cls);
  }
  SUBCASE("empty base") {
    Bifunctor t;
    t.base = discrete_category(0);
    CHECK(coend(t).classes == 0);
  }
}

TEST_CASE("end") {
  SUBCASE("discrete base gives the full product") {
    const FinCat d = discrete_category(2);
    Presheaf p;
    p.base = d;
    p.sizes = {2, 3};
    p.action = {{0, 1}, {0, 1, 2}};
    const Bifunctor t = product_bifunctor(d, p, p);
    CHECK(end_families(t).families.size() == 4 * 9);
  }
  SUBCASE("hom bifunctor of the walking arrow has one family") {
    const Bifunctor t = hom_bifunctor(walking_arrow());
    CHECK(validate_bifunctor(t).ok());
    const EndResult r = end_families(t);
    CHECK(r.families.size() == 1);
    CHECK(naive_end_families(t, 1000) == r.families);
  }
  SUBCASE("an empty diagonal set empties the end") {
    const FinCat d = discrete_category(2);
    Presheaf p;
    p.base = d;
    p.sizes = {0, 3};
    p.action = {{}, {0, 1, 2}};
    const Bifunctor t = product_bifunctor(d, p, p);
    CHECK(end_families(t).families.empty());
  }
  SUBCASE("empty base has exactly the empty family") {
    Bifunctor t;
    t.base = discrete_category(0);
    CHECK(end_families(t).families.size() == 1);
  }
}

TEST_CASE("universal cocones") {
  const FinCat chain = chain_category(2);
  SUBCASE("single-object diagram with the identity leg") {
    Functor d;
    d.source = terminal_category();
    d.target = chain;
    d.object_map = {1};
    d.morphism_map = {chain.identity[1]};
    CHECK(is_universal_cocone(d, 1, {chain.identity[1]}).ok());
  }
  SUBCASE("apex above the diagram is not universal") {
    Functor d;
    d.source = terminal_category();
    d.target = chain;
    d.object_map = {0};
    d.morphism_map = {chain.identity[0]};
    const Report rep = is_universal_cocone(d, 1, {1});  // leg 0 <= 1
    CHECK_FALSE(rep.ok());
    CHECK(rep.violations[0].rule == "not-universal");
  }
  SUBCASE("empty diagram at an initial object") {
    Functor d;
    d.source = discrete_category(0);
    d.target = chain;
    CHECK(is_universal_cocone(d, 0, {}).ok());      // 0 is initial in the chain
    CHECK_FALSE(is_universal_cocone(d, 1, {}).ok());
  }
}

TEST_CASE("find_natural_iso") {
  const Presheaf f = yoneda_example_presheaf();
  SUBCASE("F = G finds the identity") {
    const auto iso = find_natural_iso(f, f);
    REQUIRE(iso.has_value());
    CHECK(iso->components == std::vector<std::vector<int>>{{0}, {0, 1}});
  }
  SUBCASE("cardinality obstruction") {
    Presheaf g = f;
    g.sizes[1] = 1;
    g.action[1] = {0};
    g.action[2] = {0};
    CHECK_FALSE(find_natural_iso(f, g).has_value());
  }
}

TEST_CASE("co-Yoneda property: coend of F x hom(X,-) is F(X)") {
  Rng rng(20240811);
  std::vector<FinCat> bases = {terminal_category(), walking_arrow(), chain_category(3),
                               discrete_category(2), monoid_category({{0, 1}, {1, 0}}, 0)};
  for (const FinCat& c : bases) {
    const FinCat op = opposite(c);
    for (int round = 0; round < 6; ++round) {
      const Presheaf f = random_presheaf(c, rng, 3);
      if (!validate_presheaf(f).ok()) continue;
      for (int x = 0; x < c.object_count; ++x) {
        // hom(X,-) as a presheaf on the opposite category.
        const Presheaf homx = representable(op, x);
        const Bifunctor t = product_bifunctor(c, f, homx);
        REQUIRE(validate_bifunctor(t).ok());
        const CoendResult r = coend(t);
        CHECK(r.classes == f.sizes[x]);
        CHECK(naive_coend_classes(t) == r.cls);
        // The class of (s, u: X -> A) must map bijectively to F(u)(s).
        std::vector<int> image(r.classes, -1);
        const auto homs_from_x = [&](int a) { return c.hom(x, a); };
        for (int a = 0; a < c.object_count; ++a) {
          const auto hom_list = homs_from_x(a);
          for (int s = 0; s < f.sizes[a]; ++s)
            for (std::size_t ui = 0; ui < hom_list.size(); ++ui) {
              const int value = f.action[hom_list[ui]][s];
              const int cls = r.cls[a][s * static_cast<int>(hom_list.size()) + ui];
              if (image[cls] < 0)
                image[cls] = value;
              else
                CHECK(image[cls] == value);
            }
        }
        std::sort(image.begin(), image.end());
        for (int i = 0; i < r.classes; ++i) CHECK(image[i] == i);
      }
    }
  }
}

TEST_CASE("end of G^F counts natural transformations") {
  Rng rng(7);
  std::vector<FinCat> bases = {terminal_category(), walking_arrow(), chain_category(3),
                               discrete_category(2), monoid_category({{0, 1}, {1, 0}}, 0)};
  for (const FinCat& c : bases)
    for (int round = 0; round < 6; ++round) {
      const Presheaf f = random_presheaf(c, rng, 2);
      const Presheaf g = random_presheaf(c, rng, 2);
      const Bifunctor t = nat_integrand(f, g);
      REQUIRE(validate_bifunctor(t).ok());
      CHECK(end_families(t).families.size() == nat_transformations(f, g).size());
    }
}

TEST_CASE("coend union-find agrees with naive closure on random bifunctors") {
  Rng rng(99);
  std::vector<FinCat> bases = {walking_arrow(), chain_category(3), discrete_category(3),
                               monoid_category({{0, 1}, {1, 0}}, 0)};
  for (const FinCat& c : bases)
    for (int round = 0; round < 10; ++round) {
      const Presheaf p = random_presheaf(c, rng, 3);
      const Presheaf q = random_presheaf(opposite(c), rng, 3);
      const Bifunctor t = product_bifunctor(c, p, q);
      REQUIRE(validate_bifunctor(t).ok());
      const CoendResult r = coend(t);
      CHECK(naive_coend_classes(t) == r.cls);
    }
}

TEST_CASE("enumeration caps fail loudly") {
  Presheaf f, g;
  f.base = g.base = discrete_category(1);
  f.sizes = {10};
  f.action = {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}};
  g = f;
  Caps tight;
  tight.max_enum = 100;
  CHECK_THROWS_AS(nat_transformations(f, g, tight), EnumerationCapExceeded);
}
