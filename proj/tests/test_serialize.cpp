#include <doctest.h>

#include "urnlift/serialize.hpp"

using namespace urnlift;

namespace {

const ColourSpace kTwo = ColourSpace::finite(2);
const ColourSpace kUnit = ColourSpace::unit_interval();

}  // namespace

TEST_CASE("spaces round-trip through json") {
  for (const ColourSpace& s : {ColourSpace::finite(5), ColourSpace::lattice(3), kUnit,
                               ColourSpace::product(ColourSpace::finite(4)),
                               ColourSpace::product(kUnit)}) {
    CHECK(space_from_json(space_to_json(s)) == s);
  }
  CHECK(space_to_json(ColourSpace::finite(5)) == json({{"kind", "finite"}, {"size", 5}}));

  CHECK_THROWS_AS(space_from_json(json{{"kind", "torus"}}), ConfigError);
  CHECK_THROWS_AS(space_from_json(json{{"kind", "finite"}}), ConfigError);  // size missing
  CHECK_THROWS_AS(space_from_json(json{{"kind", "finite"}, {"size", 0}}), ConfigError);
  CHECK_THROWS_AS(space_from_json(json{{"kind", "finite"}, {"size", 2}, {"extra", 1}}),
                  ConfigError);
  // nested products are rejected the same way the constructor rejects them
  CHECK_THROWS_AS(space_from_json(json{
                      {"kind", "product"},
                      {"base", {{"kind", "product"}, {"base", {{"kind", "finite"}, {"size", 2}}}}}}),
                  ConfigError);
}

TEST_CASE("colours parse under the direction of their space") {
  CHECK(colour_from_json(json(1), kTwo) == Colour::index(1));
  CHECK(colour_from_json(json(0.25), kUnit) == Colour::real(0.25));
  CHECK(colour_from_json(json::array({2, -3}), ColourSpace::lattice(2)) ==
        Colour::point({2, -3}));
  const ColourSpace prod = ColourSpace::product(kTwo);
  const Colour pair = colour_from_json(json::array({1, 0.5}), prod);
  CHECK(pair == Colour::pair(Colour::index(1), 0.5));

  for (const Colour& c : {Colour::index(1), Colour::real(0.25), Colour::point({2, -3}),
                          Colour::pair(Colour::index(0), 0.75)}) {
    const ColourSpace& s = c == Colour::index(1)              ? kTwo
                           : c == Colour::real(0.25)          ? kUnit
                           : c == Colour::point({2, -3})      ? ColourSpace::lattice(2)
                                                              : prod;
    CHECK(colour_from_json(colour_to_json(c), s) == c);
  }

  CHECK_THROWS_AS(colour_from_json(json(5), kTwo), ConfigError);      // out of range
  CHECK_THROWS_AS(colour_from_json(json(1.5), kTwo), ConfigError);    // not an index
  CHECK_THROWS_AS(colour_from_json(json(1.5), kUnit), ConfigError);   // outside [0,1]
  CHECK_THROWS_AS(colour_from_json(json::array({1}), ColourSpace::lattice(2)), ConfigError);
  CHECK_THROWS_AS(colour_from_json(json::array({1, 2.0, 3}), prod), ConfigError);
}

TEST_CASE("measures round-trip with every payload kind") {
  FiniteMeasure atoms(kTwo, {{2.0, Payload::atom(Colour::index(0))},
                             {1.5, Payload::atom(Colour::index(1))}});
  CHECK(approx_equal(measure_from_json(measure_to_json(atoms)), atoms, 0.0));

  FiniteMeasure mixed(kUnit, {{0.5, Payload::continuous(ContinuousFamily::Uniform01)},
                              {2.0, Payload::atom(Colour::real(0.125))}});
  const FiniteMeasure back = measure_from_json(measure_to_json(mixed));
  CHECK(back.space() == kUnit);
  REQUIRE(back.components().size() == 2);
  CHECK(back.components()[0].payload == mixed.components()[0].payload);
  CHECK(back.components()[1].payload == mixed.components()[1].payload);
  CHECK(back.components()[0].weight == 0.5);

  const FiniteMeasure lifted = product_with_uniform(atoms);
  const FiniteMeasure lback = measure_from_json(measure_to_json(lifted));
  CHECK(lback.space() == lifted.space());
  CHECK(lback.components()[0].payload == lifted.components()[0].payload);

  // the zero measure survives too
  const FiniteMeasure zero(kTwo);
  CHECK(measure_from_json(measure_to_json(zero)).is_zero());
}

TEST_CASE("measure parsing is strict") {
  const json good = {{"space", {{"kind", "finite"}, {"size", 2}}},
                     {"components", json::array({{{"w", 1.0}, {"atom", 0}}})}};
  CHECK(measure_from_json(good).total_mass() == 1.0);

  json unknown_top = good;
  unknown_top["extra"] = 1;
  CHECK_THROWS_AS(measure_from_json(unknown_top), ConfigError);

  json unknown_comp = good;
  unknown_comp["components"][0]["typo"] = 1;
  CHECK_THROWS_AS(measure_from_json(unknown_comp), ConfigError);

  json no_weight = good;
  no_weight["components"][0].erase("w");
  CHECK_THROWS_AS(measure_from_json(no_weight), ConfigError);

  json bad_weight = good;
  bad_weight["components"][0]["w"] = -1.0;
  CHECK_THROWS_AS(measure_from_json(bad_weight), ConfigError);

  json two_payloads = good;
  two_payloads["components"][0]["family"] = "uniform";
  CHECK_THROWS_AS(measure_from_json(two_payloads), ConfigError);

  // continuous payloads only exist on the unit interval
  const json diffuse_on_finite = {{"space", {{"kind", "finite"}, {"size", 2}}},
                                  {"components", json::array({{{"w", 1.0}, {"family", "uniform"}}})}};
  CHECK_THROWS_AS(measure_from_json(diffuse_on_finite), ConfigError);
}

TEST_CASE("test sets round-trip") {
  const TestSet full = TestSet::full();
  CHECK(testset_to_json(full) == json({{"kind", "full"}}));
  CHECK(testset_from_json(testset_to_json(full), kTwo).kind() == TestSet::Kind::Full);

  const TestSet cols = TestSet::colours({Colour::index(0), Colour::index(1)});
  const TestSet cback = testset_from_json(testset_to_json(cols), kTwo);
  CHECK(cback.kind() == TestSet::Kind::Colours);
  FiniteMeasure mu(kTwo, {{2.0, Payload::atom(Colour::index(0))}});
  CHECK(evaluate(mu, cback) == 2.0);

  const TestSet ivs = TestSet::intervals({{0.0, 0.25}, {0.5, 0.75}});
  const TestSet iback = testset_from_json(testset_to_json(ivs), kUnit);
  CHECK(iback.lambda_length() == doctest::Approx(0.5).epsilon(1e-15));

  const TestSet prod = TestSet::product(TestSet::colours({Colour::index(1)}), {{0.0, 0.5}});
  const TestSet pback = testset_from_json(testset_to_json(prod), ColourSpace::product(kTwo));
  const FiniteMeasure lifted = product_with_uniform(
      FiniteMeasure(kTwo, {{4.0, Payload::atom(Colour::index(1))}}));
  CHECK(evaluate(lifted, pback) == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(testset_from_json(json{{"kind", "nope"}}, kTwo), ConfigError);
  CHECK_THROWS_AS(testset_from_json(json{{"kind", "full"}, {"values", 1}}, kTwo), ConfigError);
  CHECK_THROWS_AS(
      testset_from_json(json{{"kind", "intervals"}, {"values", json::array({json::array({0.5})})}},
                        kUnit),
      ConfigError);
}

TEST_CASE("statistics round-trip and validate") {
  for (const Statistic& s :
       {Statistic::total_mass(), Statistic::eval_set(TestSet::colours({Colour::index(0)}), "w0"),
        Statistic::eval_fraction(TestSet::full(), "f"), Statistic::distinct_atoms(),
        Statistic::max_atom_fraction(), Statistic::first_atom_fraction()}) {
    const Statistic back = statistic_from_json(statistic_to_json(s), kTwo);
    CHECK(back.kind == s.kind);
    CHECK(back.name == s.name);
    FiniteMeasure mu(kTwo, {{2.0, Payload::atom(Colour::index(0))},
                            {2.0, Payload::atom(Colour::index(1))}});
    CHECK(compute_statistic(back, mu) == compute_statistic(s, mu));
  }

  const Statistic mc = Statistic::mean_coordinate(1, "m1");
  const Statistic mcb = statistic_from_json(statistic_to_json(mc), ColourSpace::lattice(2));
  CHECK(mcb.axis == 1);

  // bare names parse with default labels
  const Statistic mass = statistic_from_json(json{{"name", "mass"}}, kTwo);
  CHECK(mass.kind == StatKind::TotalMass);

  CHECK_THROWS_AS(statistic_from_json(json{{"name", "entropy"}}, kTwo), ConfigError);
  CHECK_THROWS_AS(statistic_from_json(json{{"name", "eval"}}, kTwo), ConfigError);  // no set
  CHECK_THROWS_AS(statistic_from_json(json{{"name", "mass"}, {"bogus", 1}}, kTwo), ConfigError);
}
