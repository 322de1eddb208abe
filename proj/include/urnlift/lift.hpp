#pragma once

#include "urnlift/process.hpp"
#include "urnlift/stats.hpp"

namespace urnlift {

/// Derandomization: turns an urn with a random kernel on S into an urn with
/// a deterministic kernel on S x [0,1]. The lifted kernel at (s, u) is
/// f(s, u) x lambda where f is the random kernel's evaluation map, and the
/// lifted initial state is X_0 x lambda. Projecting the lifted chain onto S
/// recovers the original chain in law (and exactly, under coupled_run).
/// Throws AlreadyDeterministic when the kernel has no randomness to lift.
UrnSpec lift_spec(const UrnSpec& spec);

struct CoupledRun {
  Trajectory base;
  Trajectory lifted;
  /// max over steps of the largest atom-weight difference between the
  /// projected lifted state and the base state.
  double max_projection_error = 0.0;
};

/// Runs the base chain and its lift on shared randomness: each step's draw
/// uniforms are recorded from the base chain and replayed into the lifted
/// chain, whose one extra uniform per draw (the [0,1] coordinate) is the
/// base kernel's u. The two chains then draw the same (s, u) every step, so
/// the projection must match the base state exactly (tolerance 1e-9); a
/// mismatch throws CouplingBroken with the failing step. Addition urns only
/// (nonnegative replacements); removal urns are compared in law instead.
CoupledRun coupled_run(const UrnSpec& spec, std::uint64_t n, std::uint64_t seed,
                       const RunOptions& options = {});

struct CompareReport {
  double statistic = 0.0;  // two-sample KS distance
  double threshold = 0.0;
  double alpha = 0.0;
  bool pass = false;
  std::size_t samples_per_side = 0;
};

/// Two-sample KS test between stat(X_n) under the base spec and stat applied
/// to the projected final state of the lifted chain, replicates independent
/// runs per side on disjoint stream keys (base replicates 0..R-1, lifted
/// R..2R-1).
CompareReport distributional_compare(const UrnSpec& spec, std::uint64_t n,
                                     std::uint64_t replicates, const Statistic& stat,
                                     double alpha, std::uint64_t seed);

/// Same test, but the lifted side is built from lift_source instead of spec.
/// With lift_source != spec this is a negative control: the test should fail
/// when the lifted chain comes from a genuinely different kernel.
CompareReport distributional_compare(const UrnSpec& spec, const UrnSpec& lift_source,
                                     std::uint64_t n, std::uint64_t replicates,
                                     const Statistic& stat, double alpha, std::uint64_t seed);

}  // namespace urnlift
