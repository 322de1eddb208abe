#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "urnlift/kernel.hpp"

namespace urnlift {

/// A measure-valued urn: initial state, replacement kernel, and the
/// admissibility constraint its states must keep satisfying.
struct UrnSpec {
  ColourSpace space;
  Kernel kernel;
  FiniteMeasure x0;
  AdmissibilityPolicy admissibility;

  UrnSpec(ColourSpace space, Kernel kernel, FiniteMeasure x0,
          AdmissibilityPolicy admissibility = AdmissibilityPolicy::none());
};

struct UrnState {
  FiniteMeasure measure;
  std::uint64_t step_index = 0;
  bool stopped = false;  // total mass hit zero; the state is absorbing
};

UrnState initial_state(const UrnSpec& spec);

/// Scalar functionals of a state recorded along a run.
enum class StatKind {
  TotalMass,
  EvalSet,          // X_n(B)
  EvalFraction,     // X_n(B) / X_n(S), 0 on the zero measure
  DistinctAtoms,    // number of atom components (product_lambda-wrapped count)
  MaxAtomFraction,  // largest atom weight / total mass
  FirstAtomFraction,  // weight of the earliest-created atom / total mass
  MeanCoordinate,   // weight-averaged atom coordinate along an axis
};

struct Statistic {
  std::string name;
  StatKind kind = StatKind::TotalMass;
  std::optional<TestSet> set;  // EvalSet / EvalFraction
  int axis = 0;                // MeanCoordinate

  static Statistic total_mass(std::string name = "mass");
  static Statistic eval_set(TestSet set, std::string name = "eval");
  static Statistic eval_fraction(TestSet set, std::string name = "frac");
  static Statistic distinct_atoms(std::string name = "distinct_atoms");
  static Statistic max_atom_fraction(std::string name = "max_atom_frac");
  static Statistic first_atom_fraction(std::string name = "first_atom_frac");
  static Statistic mean_coordinate(int axis = 0, std::string name = "mean_coord");
};

/// Every fraction-style statistic of the zero measure is 0 by convention.
double compute_statistic(const Statistic& stat, const FiniteMeasure& mu);

struct RunOptions {
  std::vector<Statistic> stats = {Statistic::total_mass()};
  bool record_states = false;
};

/// States X_0..X_n summarized by the recorded statistics; values[i][j] is
/// statistic j at step i. Once the chain stops, later rows repeat the stopped
/// state. stopped_at is the first step whose state has zero mass.
struct Trajectory {
  std::vector<Statistic> stats;
  std::vector<std::vector<double>> values;
  std::vector<FiniteMeasure> states;  // filled when record_states
  std::optional<std::uint64_t> stopped_at;

  std::size_t length() const noexcept { return values.size(); }  // n + 1
};

/// Randomness feeding one step: draw uniforms plus (for random kernels) the
/// kernel uniform, pulled lazily so deterministic kernels consume none.
struct StepSources {
  UniformSource& draws;
  std::function<double()> kernel_u;
};

/// One transition: draw s from the normalized state, evaluate the kernel,
/// apply the replacement, enforce admissibility. Throws ZeroMass on a stopped
/// state.
UrnState step(const UrnSpec& spec, const UrnState& state, const StepSources& sources);

/// Same, drawing from the stream's per-step channels: channel 0 the draw,
/// channel 1 the kernel uniform.
UrnState step(const UrnSpec& spec, const UrnState& state, RandomnessStream& stream);

/// Runs n steps from X_0 under the stream keyed (seed, replicate). A pure
/// function of (spec, n, seed, replicate, options).
Trajectory run(const UrnSpec& spec, std::uint64_t n, std::uint64_t seed,
               std::uint64_t replicate, const RunOptions& options = {});

/// stat(X_n) over replicates 0..replicates-1, each on its own stream key.
/// parallelism > 1 splits replicates over threads; results are identical to
/// the serial order because the streams are counter-based.
std::vector<double> monte_carlo(const UrnSpec& spec, std::uint64_t n, std::uint64_t replicates,
                                const Statistic& stat, std::uint64_t seed,
                                unsigned parallelism = 1);

/// Checks total mass along the trajectory against a*n + b at relative
/// tolerance tol. The trajectory must record a TotalMass statistic.
bool check_balanced(const Trajectory& traj, double a, double b, double tol);

/// Trajectory rows as CSV: replicate,step,stat_name,value with floats at 17
/// significant digits.
std::string trajectory_csv_header();
void append_trajectory_csv(std::string& out, std::uint64_t replicate, const Trajectory& traj);

/// Monte Carlo samples as CSV: replicate,value.
std::string monte_carlo_csv(const std::vector<double>& values);

/// 17-significant-digit float formatting shared by every exporter.
std::string format_value(double v);

}  // namespace urnlift
