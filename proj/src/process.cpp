#include "urnlift/process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

namespace urnlift {

UrnSpec::UrnSpec(ColourSpace space_in, Kernel kernel_in, FiniteMeasure x0_in,
                 AdmissibilityPolicy admissibility_in)
    : space(std::move(space_in)), kernel(std::move(kernel_in)), x0(std::move(x0_in)),
      admissibility(std::move(admissibility_in)) {
  if (kernel_space(kernel) != space)
    throw ConfigError("kernel lives on " + kernel_space(kernel).describe() + ", urn is on " +
                      space.describe());
  if (x0.space() != space)
    throw ConfigError("initial state lives on " + x0.space().describe() + ", urn is on " +
                      space.describe());
  if (x0.is_zero()) throw ConfigError("initial state must have positive mass");
}

UrnState initial_state(const UrnSpec& spec) { return UrnState{spec.x0, 0, false}; }

Statistic Statistic::total_mass(std::string name) {
  return Statistic{std::move(name), StatKind::TotalMass, std::nullopt, 0};
}
Statistic Statistic::eval_set(TestSet set, std::string name) {
  return Statistic{std::move(name), StatKind::EvalSet, std::move(set), 0};
}
Statistic Statistic::eval_fraction(TestSet set, std::string name) {
  return Statistic{std::move(name), StatKind::EvalFraction, std::move(set), 0};
}
Statistic Statistic::distinct_atoms(std::string name) {
  return Statistic{std::move(name), StatKind::DistinctAtoms, std::nullopt, 0};
}
Statistic Statistic::max_atom_fraction(std::string name) {
  return Statistic{std::move(name), StatKind::MaxAtomFraction, std::nullopt, 0};
}
Statistic Statistic::first_atom_fraction(std::string name) {
  return Statistic{std::move(name), StatKind::FirstAtomFraction, std::nullopt, 0};
}
Statistic Statistic::mean_coordinate(int axis, std::string name) {
  return Statistic{std::move(name), StatKind::MeanCoordinate, std::nullopt, axis};
}

namespace {

const Payload* unwrap_atom(const Payload& p) {
  const Payload* q = &p;
  while (q->kind() == Payload::Kind::ProductLambda) q = &q->inner();
  return q->kind() == Payload::Kind::Atom ? q : nullptr;
}

double coordinate_of(const Colour& c, int axis) {
  if (c.is_pair()) return coordinate_of(c.pair_base(), axis);
  if (const auto* i = std::get_if<Colour::Index>(&c.rep())) return static_cast<double>(i->k);
  if (const auto* r = std::get_if<Colour::Real>(&c.rep())) return r->x;
  const auto& p = std::get<Colour::Point>(c.rep());
  if (axis < 0 || static_cast<std::size_t>(axis) >= p.coords.size())
    throw SimulationError("coordinate axis out of range");
  return static_cast<double>(p.coords[static_cast<std::size_t>(axis)]);
}

}  // namespace

double compute_statistic(const Statistic& stat, const FiniteMeasure& mu) {
  const double mass = mu.total_mass();
  switch (stat.kind) {
    case StatKind::TotalMass:
      return mass;
    case StatKind::EvalSet:
      if (!stat.set) throw ConfigError("statistic '" + stat.name + "' needs a test set");
      return evaluate(mu, *stat.set);
    case StatKind::EvalFraction:
      if (!stat.set) throw ConfigError("statistic '" + stat.name + "' needs a test set");
      return mass > 0.0 ? evaluate(mu, *stat.set) / mass : 0.0;
    case StatKind::DistinctAtoms: {
      double n = 0.0;
      for (const auto& c : mu.components())
        if (unwrap_atom(c.payload)) n += 1.0;
      return n;
    }
    case StatKind::MaxAtomFraction: {
      if (mass <= 0.0) return 0.0;
      double best = 0.0;
      for (const auto& c : mu.components())
        if (unwrap_atom(c.payload)) best = std::max(best, c.weight);
      return best / mass;
    }
    case StatKind::FirstAtomFraction: {
      // Component order is creation order, so the first atom component is the
      // earliest-created atom (the size-biased first pick in exchangeable urns).
      if (mass <= 0.0) return 0.0;
      for (const auto& c : mu.components())
        if (unwrap_atom(c.payload)) return c.weight / mass;
      return 0.0;
    }
    case StatKind::MeanCoordinate: {
      double w_sum = 0.0, acc = 0.0;
      for (const auto& c : mu.components()) {
        if (const Payload* a = unwrap_atom(c.payload)) {
          w_sum += c.weight;
          acc += c.weight * coordinate_of(a->atom_colour(), stat.axis);
        }
      }
      return w_sum > 0.0 ? acc / w_sum : 0.0;
    }
  }
  throw UrnError("unreachable statistic kind");
}

UrnState step(const UrnSpec& spec, const UrnState& state, const StepSources& sources) {
  if (state.stopped || state.measure.is_zero())
    throw ZeroMass("stepping a stopped urn at step " + std::to_string(state.step_index));
  const std::uint64_t next_index = state.step_index + 1;
  Colour s = sample(state.measure, sources.draws);
  Replacement r = is_random(spec.kernel)
                      ? std::get<RandomKernel>(spec.kernel).eval(s, sources.kernel_u())
                      : std::get<DeterministicKernel>(spec.kernel).eval(s);
  FiniteMeasure next = [&]() -> FiniteMeasure {
    try {
      return apply_replacement(state.measure, r);
    } catch (const NegativeMass& e) {
      throw NegativeMass("step " + std::to_string(next_index) + ": " + e.what());
    }
  }();
  switch (spec.admissibility.kind) {
    case AdmissibilityPolicy::Kind::None:
      break;
    case AdmissibilityPolicy::Kind::IntegerUrn:
      if (!is_integer_urn_state(next))
        throw AdmissibilityViolation("step " + std::to_string(next_index) +
                                     ": state left the integer urn class");
      break;
    case AdmissibilityPolicy::Kind::Custom:
      if (!spec.admissibility.predicate || !spec.admissibility.predicate(next))
        throw AdmissibilityViolation("step " + std::to_string(next_index) +
                                     ": state left the admissible set");
      break;
  }
  const bool stopped = next.is_zero();
  return UrnState{std::move(next), next_index, stopped};
}

UrnState step(const UrnSpec& spec, const UrnState& state, RandomnessStream& stream) {
  stream.seek(state.step_index, 0);
  StepSources sources{stream, [&stream, &state] {
                        stream.seek(state.step_index, 1);
                        return stream.next();
                      }};
  return step(spec, state, sources);
}

Trajectory run(const UrnSpec& spec, std::uint64_t n, std::uint64_t seed, std::uint64_t replicate,
               const RunOptions& options) {
  Trajectory traj;
  traj.stats = options.stats;
  UrnState st = initial_state(spec);
  RandomnessStream stream(seed, replicate);
  auto record = [&](const UrnState& s) {
    std::vector<double> row;
    row.reserve(traj.stats.size());
    for (const auto& stat : traj.stats) row.push_back(compute_statistic(stat, s.measure));
    traj.values.push_back(std::move(row));
    if (options.record_states) traj.states.push_back(s.measure);
  };
  record(st);
  for (std::uint64_t i = 1; i <= n; ++i) {
    if (!st.stopped) {
      st = step(spec, st, stream);
      if (st.stopped && !traj.stopped_at) traj.stopped_at = st.step_index;
    }
    record(st);
  }
  return traj;
}

std::vector<double> monte_carlo(const UrnSpec& spec, std::uint64_t n, std::uint64_t replicates,
                                const Statistic& stat, std::uint64_t seed, unsigned parallelism) {
  std::vector<double> out(replicates, 0.0);
  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t r = lo; r < hi; ++r) {
      UrnState st = initial_state(spec);
      RandomnessStream stream(seed, r);
      for (std::uint64_t i = 1; i <= n && !st.stopped; ++i)
        st = step(spec, st, stream);
      out[r] = compute_statistic(stat, st.measure);
    }
  };
  unsigned workers = std::max(1u, parallelism);
  if (replicates < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(replicates, 1));
  if (workers == 1) {
    run_range(0, replicates);
    return out;
  }
  const std::uint64_t chunk = (replicates + workers - 1) / workers;
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned t = 0; t < workers; ++t) {
    const std::uint64_t lo = t * chunk;
    const std::uint64_t hi = std::min<std::uint64_t>(replicates, lo + chunk);
    threads.emplace_back([&, t, lo, hi] {
      try {
        run_range(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

bool check_balanced(const Trajectory& traj, double a, double b, double tol) {
  const std::vector<Statistic>& stats = traj.stats;
  std::size_t idx = stats.size();
  for (std::size_t j = 0; j < stats.size(); ++j) {
    if (stats[j].kind == StatKind::TotalMass) {
      idx = j;
      break;
    }
  }
  if (idx == stats.size())
    throw ConfigError("balance check needs a trajectory recording total mass");
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    const double expect = a * static_cast<double>(i) + b;
    if (std::abs(traj.values[i][idx] - expect) > tol * std::max(1.0, std::abs(expect)))
      return false;
  }
  return true;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv_header() { return "replicate,step,stat_name,value\n"; }

void append_trajectory_csv(std::string& out, std::uint64_t replicate, const Trajectory& traj) {
  for (std::size_t i = 0; i < traj.values.size(); ++i) {
    for (std::size_t j = 0; j < traj.stats.size(); ++j) {
      out += std::to_string(replicate);
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += traj.stats[j].name;
      out += ',';
      out += format_value(traj.values[i][j]);
      out += '\n';
    }
  }
}

std::string monte_carlo_csv(const std::vector<double>& values) {
  std::string out = "replicate,value\n";
  for (std::size_t r = 0; r < values.size(); ++r) {
    out += std::to_string(r);
    out += ',';
    out += format_value(values[r]);
    out += '\n';
  }
  return out;
}

}  // namespace urnlift
