#include "urnlift/lift.hpp"

#include <cmath>
#include <utility>

namespace urnlift {

namespace {

Replacement lift_replacement(const Replacement& r) {
  struct V {
    Replacement operator()(const FiniteMeasure& m) const { return product_with_uniform(m); }
    Replacement operator()(const SignedAtomicMeasure& m) const {
      return SignedLambdaReplacement{m};
    }
    Replacement operator()(const SignedLambdaReplacement&) const {
      throw SpaceMismatch("base kernel returned a product-space replacement");
    }
  };
  return std::visit(V{}, r);
}

AdmissibilityPolicy lift_policy(const AdmissibilityPolicy& policy) {
  switch (policy.kind) {
    case AdmissibilityPolicy::Kind::None:
    case AdmissibilityPolicy::Kind::IntegerUrn:
      return policy;
    case AdmissibilityPolicy::Kind::Custom: {
      auto inner = policy.predicate;
      return AdmissibilityPolicy::custom(
          [inner](const FiniteMeasure& mu) { return inner && inner(project(mu)); });
    }
  }
  return policy;
}

}  // namespace

UrnSpec lift_spec(const UrnSpec& spec) {
  if (!is_random(spec.kernel))
    throw AlreadyDeterministic("kernel '" + kernel_name(spec.kernel) +
                               "' is deterministic; nothing to lift");
  const RandomKernel base = std::get<RandomKernel>(spec.kernel);
  ColourSpace lifted_space = ColourSpace::product(spec.space);
  DeterministicKernel lifted_kernel(
      lifted_space,
      [base](const Colour& c) {
        // The lifted colour (s, u) routes its second coordinate into the base
        // kernel's randomness: R~_{(s,u)} = f(s, u) x lambda.
        return lift_replacement(base.eval(c.pair_base(), c.pair_u()));
      },
      base.declared_balance(), base.name() + "_lifted");
  return UrnSpec(std::move(lifted_space), std::move(lifted_kernel),
                 product_with_uniform(spec.x0), lift_policy(spec.admissibility));
}

CoupledRun coupled_run(const UrnSpec& spec, std::uint64_t n, std::uint64_t seed,
                       const RunOptions& options) {
  UrnSpec lifted = lift_spec(spec);  // throws AlreadyDeterministic if needed

  CoupledRun out;
  out.base.stats = options.stats;
  out.lifted.stats = options.stats;

  UrnState base_state = initial_state(spec);
  UrnState lifted_state = initial_state(lifted);

  auto record = [&](const UrnState& b, const UrnState& l) {
    std::vector<double> brow, lrow;
    // Lifted statistics are computed on the projected state so both rows are
    // directly comparable (test sets live on the base space).
    FiniteMeasure projected = project(l.measure);
    for (const auto& stat : options.stats) {
      brow.push_back(compute_statistic(stat, b.measure));
      lrow.push_back(compute_statistic(stat, projected));
    }
    out.base.values.push_back(std::move(brow));
    out.lifted.values.push_back(std::move(lrow));
    if (options.record_states) {
      out.base.states.push_back(b.measure);
      out.lifted.states.push_back(l.measure);
    }
  };
  record(base_state, lifted_state);
  out.max_projection_error = max_weight_discrepancy(project(lifted_state.measure),
                                                    base_state.measure);

  RandomnessStream stream(seed, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const double prev_mass = base_state.measure.total_mass();

    // Base step, recording its draw uniforms (channel 0) and kernel uniform
    // (channel 1).
    stream.seek(i, 0);
    RecordingSource recorder(stream);
    double kernel_u = -1.0;
    StepSources base_sources{recorder, [&stream, &kernel_u, i] {
                               stream.seek(i, 1);
                               kernel_u = stream.next();
                               return kernel_u;
                             }};
    base_state = step(spec, base_state, base_sources);

    if (base_state.measure.total_mass() < prev_mass - 1e-12)
      throw ConfigError(
          "coupled_run needs nonnegative replacements; removal urns are "
          "checked with distributional_compare");

    // Lifted step on the same randomness: the base draws select the matching
    // component (the lists are kept in payload bijection by canonical
    // merging), and the one extra uniform a product draw consumes, its
    // trailing lambda coordinate, is exactly the base kernel's u. The lifted
    // chain therefore draws the same (s, u).
    std::vector<double> replay_values = recorder.values();
    replay_values.push_back(kernel_u);
    ReplaySource replay(std::move(replay_values));
    StepSources lifted_sources{replay, []() -> double {
                                 throw UrnError("lifted kernel drew a kernel uniform");
                               }};
    try {
      lifted_state = step(lifted, lifted_state, lifted_sources);
    } catch (const UrnError& e) {
      throw CouplingBroken(i + 1, std::string("lifted step failed: ") + e.what());
    }
    if (replay.consumed() != replay.size())
      throw CouplingBroken(i + 1, "lifted draw consumed fewer uniforms than the base draw");

    for (const auto& c : lifted_state.measure.components()) {
      if (c.payload.kind() != Payload::Kind::ProductLambda)
        throw CouplingBroken(i + 1, "lifted state left the product form");
    }

    double err;
    try {
      err = max_weight_discrepancy(project(lifted_state.measure), base_state.measure);
    } catch (const Incomparable& e) {
      throw CouplingBroken(i + 1, e.what());
    }
    if (!approx_equal(project(lifted_state.measure), base_state.measure, 1e-9))
      throw CouplingBroken(i + 1, "projection drifted from the base chain");
    out.max_projection_error = std::max(out.max_projection_error, err);

    record(base_state, lifted_state);
  }
  return out;
}

namespace {

std::vector<double> final_samples(const UrnSpec& spec, std::uint64_t n, std::uint64_t replicates,
                                  std::uint64_t first_replicate, const Statistic& stat,
                                  std::uint64_t seed, bool project_first) {
  std::vector<double> out;
  out.reserve(replicates);
  for (std::uint64_t r = 0; r < replicates; ++r) {
    UrnState st = initial_state(spec);
    RandomnessStream stream(seed, first_replicate + r);
    for (std::uint64_t i = 1; i <= n && !st.stopped; ++i) st = step(spec, st, stream);
    if (project_first) {
      out.push_back(compute_statistic(stat, project(st.measure)));
    } else {
      out.push_back(compute_statistic(stat, st.measure));
    }
  }
  return out;
}

}  // namespace

CompareReport distributional_compare(const UrnSpec& spec, const UrnSpec& lift_source,
                                     std::uint64_t n, std::uint64_t replicates,
                                     const Statistic& stat, double alpha, std::uint64_t seed) {
  UrnSpec lifted = lift_spec(lift_source);
  // Disjoint stream keys: base runs on replicates [0, R), lifted on [R, 2R).
  std::vector<double> base_samples = final_samples(spec, n, replicates, 0, stat, seed, false);
  std::vector<double> lifted_samples =
      final_samples(lifted, n, replicates, replicates, stat, seed, true);
  KsReport ks = ks_two_sample(std::move(base_samples), std::move(lifted_samples), alpha);
  CompareReport report;
  report.statistic = ks.d;
  report.threshold = ks.critical;
  report.alpha = alpha;
  report.pass = ks.pass;
  report.samples_per_side = replicates;
  return report;
}

CompareReport distributional_compare(const UrnSpec& spec, std::uint64_t n,
                                     std::uint64_t replicates, const Statistic& stat, double alpha,
                                     std::uint64_t seed) {
  return distributional_compare(spec, spec, n, replicates, stat, alpha, seed);
}

}  // namespace urnlift
