#include <doctest.h>

#include "urnlift/space.hpp"

using namespace urnlift;

TEST_CASE("colour spaces construct and compare structurally") {
  CHECK(ColourSpace::finite(3) == ColourSpace::finite(3));
  CHECK(ColourSpace::finite(3) != ColourSpace::finite(4));
  CHECK(ColourSpace::lattice(2) != ColourSpace::finite(2));
  CHECK(ColourSpace::unit_interval() == ColourSpace::unit_interval());
  CHECK(ColourSpace::product(ColourSpace::finite(2)) ==
        ColourSpace::product(ColourSpace::finite(2)));
  CHECK(ColourSpace::product(ColourSpace::finite(2)) !=
        ColourSpace::product(ColourSpace::unit_interval()));

  CHECK(ColourSpace::finite(5).size() == 5);
  CHECK(ColourSpace::lattice(3).dim() == 3);
  CHECK(ColourSpace::product(ColourSpace::lattice(1)).base() == ColourSpace::lattice(1));

  CHECK_THROWS_AS(ColourSpace::finite(0), ConfigError);
  CHECK_THROWS_AS(ColourSpace::lattice(0), ConfigError);
  CHECK_THROWS_AS(ColourSpace::product(ColourSpace::product(ColourSpace::finite(2))),
                  ConfigError);
  CHECK_THROWS_AS(ColourSpace::finite(2).dim(), ConfigError);
  CHECK_THROWS_AS(ColourSpace::finite(2).base(), NotProductSpace);
}

TEST_CASE("colours compare exactly, doubles bitwise") {
  CHECK(Colour::index(1) == Colour::index(1));
  CHECK(Colour::index(1) != Colour::index(2));
  CHECK(Colour::index(0) != Colour::real(0.0));
  CHECK(Colour::point({1, -2}) == Colour::point({1, -2}));
  CHECK(Colour::point({1, -2}) != Colour::point({1, 2}));
  CHECK(Colour::real(0.5) == Colour::real(0.5));
  CHECK(Colour::real(0.0) != Colour::real(-0.0));  // bitwise identity
  CHECK(Colour::pair(Colour::index(1), 0.25) == Colour::pair(Colour::index(1), 0.25));
  CHECK(Colour::pair(Colour::index(1), 0.25) != Colour::pair(Colour::index(1), 0.26));

  const Colour p = Colour::pair(Colour::real(0.5), 0.75);
  CHECK(p.is_pair());
  CHECK(p.pair_base() == Colour::real(0.5));
  CHECK(p.pair_u() == 0.75);
  CHECK(p.describe() == "(0.5, 0.75)");

  CHECK_THROWS_AS(Colour::real(1.5), ConfigError);
  CHECK_THROWS_AS(Colour::pair(Colour::index(0), 2.0), ConfigError);
  CHECK_THROWS_AS(Colour::pair(Colour::pair(Colour::index(0), 0.5), 0.5), ConfigError);
  CHECK_THROWS_AS(Colour::point({}), ConfigError);
}

TEST_CASE("colour_in_space enforces structure and bounds") {
  CHECK(colour_in_space(Colour::index(1), ColourSpace::finite(2)));
  CHECK_FALSE(colour_in_space(Colour::index(2), ColourSpace::finite(2)));
  CHECK_FALSE(colour_in_space(Colour::real(0.5), ColourSpace::finite(2)));
  CHECK(colour_in_space(Colour::point({3, -1}), ColourSpace::lattice(2)));
  CHECK_FALSE(colour_in_space(Colour::point({3}), ColourSpace::lattice(2)));
  CHECK(colour_in_space(Colour::real(1.0), ColourSpace::unit_interval()));
  CHECK(colour_in_space(Colour::pair(Colour::index(0), 0.5),
                        ColourSpace::product(ColourSpace::finite(2))));
  CHECK_FALSE(colour_in_space(Colour::index(0), ColourSpace::product(ColourSpace::finite(2))));
  CHECK_FALSE(colour_in_space(Colour::pair(Colour::index(5), 0.5),
                              ColourSpace::product(ColourSpace::finite(2))));
}

TEST_CASE("interval test sets normalize to a disjoint union") {
  const TestSet set = TestSet::intervals({{0.4, 0.6}, {0.0, 0.25}, {0.5, 0.7}});
  REQUIRE(set.interval_values().size() == 2);
  CHECK(set.interval_values()[0].lo == 0.0);
  CHECK(set.interval_values()[0].hi == 0.25);
  CHECK(set.interval_values()[1].lo == 0.4);
  CHECK(set.interval_values()[1].hi == 0.7);
  CHECK(set.lambda_length() == doctest::Approx(0.55).epsilon(1e-12));

  CHECK(set.contains(Colour::real(0.1)));
  CHECK(set.contains(Colour::real(0.65)));
  CHECK_FALSE(set.contains(Colour::real(0.3)));
  CHECK_THROWS_AS(set.contains(Colour::index(0)), UnsupportedTestSet);
  CHECK_THROWS_AS(TestSet::intervals({{0.5, 0.2}}), ConfigError);
  CHECK_THROWS_AS(TestSet::intervals({{-0.1, 0.2}}), ConfigError);
}

TEST_CASE("colour and product test sets") {
  const TestSet cs = TestSet::colours({Colour::index(0), Colour::index(2)});
  CHECK(cs.contains(Colour::index(0)));
  CHECK_FALSE(cs.contains(Colour::index(1)));

  CHECK(TestSet::full().contains(Colour::index(7)));
  CHECK(TestSet::full().contains(Colour::real(0.3)));
  CHECK(TestSet::full().lambda_length() == 1.0);

  const TestSet prod = TestSet::product(cs, {{0.0, 0.5}});
  CHECK(prod.contains(Colour::pair(Colour::index(0), 0.3)));
  CHECK_FALSE(prod.contains(Colour::pair(Colour::index(0), 0.7)));
  CHECK_FALSE(prod.contains(Colour::pair(Colour::index(1), 0.3)));
  CHECK_THROWS_AS(prod.contains(Colour::index(0)), UnsupportedTestSet);
  CHECK(prod.base().contains(Colour::index(2)));
  CHECK_THROWS_AS(TestSet::product(prod, {{0.0, 1.0}}), ConfigError);
  CHECK_THROWS_AS(TestSet::colours({}), ConfigError);
}
