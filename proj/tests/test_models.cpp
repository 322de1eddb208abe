#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "urnlift/models.hpp"
#include "urnlift/stats.hpp"

using namespace urnlift;

TEST_CASE("model factories validate their parameters") {
  CHECK_THROWS_AS(eggenberger_polya(0.0, {1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(eggenberger_polya(-1.0, {1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(eggenberger_polya(1.0, {1.0}), ConfigError);
  CHECK_THROWS_AS(eggenberger_polya(1.0, {1.0, -2.0}), ConfigError);
  CHECK_THROWS_AS(eggenberger_polya(1.0, {0.0, 0.0}), ConfigError);  // empty urn
  CHECK_THROWS_AS(blackwell_macqueen(0.0), ConfigError);
  CHECK_THROWS_AS(friedman_random(-0.1), ConfigError);
  CHECK_THROWS_AS(friedman_random(1.1), ConfigError);
  CHECK_THROWS_AS(lattice_walk(0, {{{}, 1.0}}), ConfigError);
  CHECK_THROWS_AS(lattice_walk(1, {}), ConfigError);
  CHECK_THROWS_AS(lattice_walk(1, {{{1, 2}, 1.0}}), ConfigError);   // wrong dim
  CHECK_THROWS_AS(lattice_walk(1, {{{1}, 0.4}, {{-1}, 0.4}}), ConfigError);  // sums to 0.8
  CHECK_THROWS_AS(without_replacement_urn({{1}}, {}), ConfigError);
  CHECK_THROWS_AS(without_replacement_urn({{1, 0}}, {1, 1}), ConfigError);  // one row for two
  CHECK_THROWS_AS(without_replacement_urn({{1}, {1}}, {1, 1}), ConfigError);  // short rows
  CHECK_THROWS_AS(without_replacement_urn({{-1, 0}, {0, 0}}, {1, 1}), ConfigError);
  CHECK_THROWS_AS(without_replacement_urn({{0, 0}, {0, 0}}, {-1, 2}), ConfigError);
  CHECK_THROWS_AS(random_without_replacement({{}, {}}, {1, 1}), ConfigError);
  CHECK_THROWS_AS(random_without_replacement({{{{1, 0}, 0.5}}, {{{0, 1}, 1.0}}}, {1, 1}),
                  ConfigError);  // probs sum to 0.5
}

TEST_CASE("eggenberger_polya grows by a per step and matches the 3-step law") {
  const UrnSpec ep = eggenberger_polya(2.0, {1.0, 1.0});
  const Trajectory traj = run(ep, 50, 9, 0);
  CHECK(check_balanced(traj, 2.0, 2.0, 1e-12));

  // colour-0 weight after 3 steps, against exhaustive enumeration of the
  // a = 2 urn: weights live on 1 + 2k for k draws of colour 0
  const auto law = oracles::draw_count_law({1.0, 1.0}, {{2.0, 0.0}, {0.0, 2.0}}, 3, 0);
  const Statistic w0 = Statistic::eval_set(TestSet::colours({Colour::index(0)}), "w0");
  const std::uint64_t reps = 20000;
  std::vector<std::uint64_t> counts(4, 0);
  for (const double v : monte_carlo(ep, 3, reps, w0, 51)) {
    const int k = static_cast<int>((v - 1.0) / 2.0 + 0.5);
    REQUIRE(k >= 0);
    REQUIRE(k <= 3);
    counts[static_cast<std::size_t>(k)]++;
  }
  std::vector<double> probs;
  for (int k = 0; k <= 3; ++k) probs.push_back(law.at(k));
  CHECK(std::abs(std::accumulate(probs.begin(), probs.end(), 0.0) - 1.0) < 1e-12);
  CHECK(chi_square_gof(counts, probs, 0.001).pass);
}

TEST_CASE("blackwell_macqueen seeds atoms from the continuous part") {
  const UrnSpec bm = blackwell_macqueen(2.0);
  CHECK(bm.space == ColourSpace::unit_interval());
  CHECK(bm.x0.total_mass() == 2.0);
  CHECK(bm.x0.components()[0].payload.kind() == Payload::Kind::Continuous);

  // first draw always hits the continuous part: atom appears at the sampled
  // coordinate with unit weight, the diffuse weight stays theta
  UrnState s = initial_state(bm);
  ReplaySource u({0.5, 0.375});
  s = step(bm, s, StepSources{u, nullptr});
  REQUIRE(s.measure.components().size() == 2);
  CHECK(s.measure.components()[0].weight == 2.0);
  CHECK(s.measure.components()[1].payload == Payload::atom(Colour::real(0.375)));
  CHECK(s.measure.components()[1].weight == 1.0);

  // reinforcing the atom: selection falls in the atom's slice of [0, 3)
  ReplaySource u2({2.5 / 3.0});
  s = step(bm, s, StepSources{u2, nullptr});
  REQUIRE(s.measure.components().size() == 2);
  CHECK(s.measure.components()[1].weight == 2.0);
}

TEST_CASE("blackwell_macqueen distinct-atom count matches the DP oracle") {
  const double theta = 1.0;
  const int n = 30;
  const UrnSpec bm = blackwell_macqueen(theta);
  const std::uint64_t reps = 600;
  const auto finals = monte_carlo(bm, n, reps, Statistic::distinct_atoms(), 77);

  const auto dist = oracles::distinct_count_distribution(theta, n);
  const double mean = oracles::distinct_count_mean(theta, n);
  double var = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k)
    var += dist[k] * (static_cast<double>(k) - mean) * (static_cast<double>(k) - mean);
  const double sample_mean =
      std::accumulate(finals.begin(), finals.end(), 0.0) / static_cast<double>(reps);
  const double se = std::sqrt(var / static_cast<double>(reps));
  CHECK(std::abs(sample_mean - mean) < 3.0 * se);

  // the DP mean is the harmonic-like partial sum
  double direct = 0.0;
  for (int i = 0; i < n; ++i) direct += theta / (theta + i);
  CHECK(mean == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("friedman p=1 walks the same path as the unit Polya urn") {
  // both draw with one channel-0 uniform per step and p = 1 ignores the
  // kernel uniform, so the paths agree bitwise on a shared key
  const UrnSpec fr = friedman_random(1.0);
  const UrnSpec ep = eggenberger_polya(1.0, {1.0, 1.0});
  RunOptions opts;
  opts.stats = {Statistic::total_mass(),
                Statistic::eval_set(TestSet::colours({Colour::index(0)}), "w0")};
  for (std::uint64_t rep = 0; rep < 4; ++rep) {
    const Trajectory a = run(fr, 100, 33, rep, opts);
    const Trajectory b = run(ep, 100, 33, rep, opts);
    for (std::size_t i = 0; i < a.length(); ++i) {
      CHECK(a.values[i][0] == b.values[i][0]);
      CHECK(a.values[i][1] == b.values[i][1]);
    }
  }
}

TEST_CASE("friedman p=0.5 balances the two colours") {
  // the flip dynamics pull the composition to 1/2; crude band check
  const UrnSpec fr = friedman_random(0.5);
  const Statistic f0 = Statistic::eval_fraction(TestSet::colours({Colour::index(0)}), "f0");
  const auto finals = monte_carlo(fr, 400, 200, f0, 21);
  const double mean =
      std::accumulate(finals.begin(), finals.end(), 0.0) / static_cast<double>(finals.size());
  CHECK(std::abs(mean - 0.5) < 0.05);
}

TEST_CASE("lattice_walk kernel picks offsets by cumulative probability") {
  const UrnSpec lw = lattice_walk(2, {{{1, 0}, 0.25}, {{0, 1}, 0.75}});
  const auto& k = std::get<RandomKernel>(lw.kernel);
  auto target = [&](double u) {
    const auto m = std::get<FiniteMeasure>(k.eval(Colour::point({3, -1}), u));
    return m.components()[0].payload.atom_colour();
  };
  CHECK(target(0.1) == Colour::point({4, -1}));
  CHECK(target(0.25) == Colour::point({3, 0}));
  CHECK(target(0.99) == Colour::point({3, 0}));

  const Trajectory traj = run(lw, 30, 8, 0);
  CHECK(check_balanced(traj, 1.0, 1.0, 1e-12));

  // single-offset law: every added atom shifts by (1, 0), so after n steps
  // the mean first coordinate over the n+1 atoms is positive and bounded by n
  const UrnSpec drift = lattice_walk(1, {{{1}, 1.0}});
  RunOptions opts;
  opts.stats = {Statistic::mean_coordinate(0, "m0"), Statistic::distinct_atoms()};
  const Trajectory d = run(drift, 10, 4, 0, opts);
  CHECK(d.values[10][0] > 0.0);
  CHECK(d.values[10][0] <= 10.0);
  CHECK(d.values[1][0] == doctest::Approx(0.5));  // atoms at 0 and 1
}

TEST_CASE("pure-death removal urn stops exactly when the urn empties") {
  const UrnSpec wr = without_replacement_urn({{0, 0}, {0, 0}}, {2, 3});
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    RunOptions opts;
    const Trajectory traj = run(wr, 10, seed, 0, opts);
    REQUIRE(traj.stopped_at.has_value());
    CHECK(*traj.stopped_at == 5);
    for (std::uint64_t i = 0; i <= 5; ++i)
      CHECK(traj.values[i][0] == static_cast<double>(5 - i));
  }
}

TEST_CASE("identity addition keeps the urn in its initial state") {
  const UrnSpec wr = without_replacement_urn({{1, 0}, {0, 1}}, {2, 1});
  CHECK(kernel_balance(wr.kernel) == 0.0);
  RunOptions opts;
  opts.record_states = true;
  const Trajectory traj = run(wr, 20, 6, 0, opts);
  CHECK_FALSE(traj.stopped_at.has_value());
  for (const auto& state : traj.states) {
    CHECK(approx_equal(state, wr.x0, 0.0));
  }
}

TEST_CASE("unequal row sums leave the balance undeclared") {
  const UrnSpec wr = without_replacement_urn({{3, 0}, {0, 1}}, {1, 1});
  CHECK_FALSE(kernel_balance(wr.kernel).has_value());
  const UrnSpec rwr = random_without_replacement(
      {{{{3, 0}, 1.0}}, {{{0, 1}, 1.0}}}, {1, 1});
  CHECK_FALSE(kernel_balance(rwr.kernel).has_value());
}

TEST_CASE("degenerate random removal urn equals its deterministic twin") {
  const std::vector<std::vector<std::int64_t>> rows = {{1, 1}, {2, 0}};
  const UrnSpec wr = without_replacement_urn(rows, {2, 2});
  const UrnSpec rwr = random_without_replacement(
      {{{rows[0], 1.0}}, {{rows[1], 1.0}}}, {2, 2});
  RunOptions opts;
  opts.stats = {Statistic::total_mass(),
                Statistic::eval_set(TestSet::colours({Colour::index(0)}), "w0")};
  for (std::uint64_t rep = 0; rep < 3; ++rep) {
    const Trajectory a = run(wr, 40, 17, rep, opts);
    const Trajectory b = run(rwr, 40, 17, rep, opts);
    for (std::size_t i = 0; i < a.length(); ++i) {
      CHECK(a.values[i][0] == b.values[i][0]);
      CHECK(a.values[i][1] == b.values[i][1]);
    }
  }
}

TEST_CASE("removal urns enforce the integer-urn policy at every step") {
  const UrnSpec rwr = random_without_replacement(
      {{{{0, 2}, 0.5}, {{1, 0}, 0.5}}, {{{1, 1}, 1.0}}}, {2, 2});
  CHECK(rwr.admissibility.kind == AdmissibilityPolicy::Kind::IntegerUrn);
  RunOptions opts;
  opts.record_states = true;
  const Trajectory traj = run(rwr, 60, 23, 0, opts);
  for (const auto& state : traj.states) CHECK(is_integer_urn_state(state));
}

TEST_CASE("a fractional kernel under the integer policy trips at run time") {
  const ColourSpace two = ColourSpace::finite(2);
  DeterministicKernel frac(two, [two](const Colour& s) {
    return Replacement(FiniteMeasure(two, {{0.5, Payload::atom(s)}}));
  });
  const UrnSpec spec(two, Kernel(frac),
                     FiniteMeasure(two, {{1.0, Payload::atom(Colour::index(0))}}),
                     AdmissibilityPolicy::integer_urn());
  RandomnessStream stream(3, 0);
  CHECK_THROWS_AS(step(spec, initial_state(spec), stream), AdmissibilityViolation);
}

TEST_CASE("single-step removal law matches exact enumeration") {
  // drawing from (2, 1) under the zero addition: (1, 1) w.p. 2/3, (2, 0) w.p. 1/3
  const auto law = oracles::removal_one_step_law({2, 1}, {{0, 0}, {0, 0}});
  REQUIRE(law.size() == 2);
  CHECK(law.at({1, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(law.at({2, 0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const UrnSpec wr = without_replacement_urn({{0, 0}, {0, 0}}, {2, 1});
  const Statistic w0 = Statistic::eval_set(TestSet::colours({Colour::index(0)}), "w0");
  std::vector<std::uint64_t> counts(2, 0);  // by colour-0 count: 1 or 2
  for (const double v : monte_carlo(wr, 1, 10000, w0, 91)) {
    REQUIRE((v == 1.0 || v == 2.0));
    counts[v == 1.0 ? 0 : 1]++;
  }
  CHECK(chi_square_gof(counts, {2.0 / 3.0, 1.0 / 3.0}, 0.001).pass);
}
