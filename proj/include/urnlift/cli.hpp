#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "urnlift/lift.hpp"
#include "urnlift/serialize.hpp"

namespace urnlift {

/// Parsed run configuration. The JSON schema is strict: unknown fields are
/// rejected so typos fail loudly instead of silently running defaults.
struct UrnConfig {
  std::optional<json> space;
  /// Registry name, or an inline {"kernel": {...}} object.
  std::variant<std::string, json> model = std::string{};
  json params = json::object();
  std::optional<json> x0;  // component list; overrides the model's default
  std::uint64_t steps = 0;
  std::uint64_t replicates = 1;
  std::uint64_t seed = 0;
  std::vector<json> stats;
};

UrnConfig config_from_json(const json& j);
json config_to_json(const UrnConfig& config);

struct BuiltUrn {
  UrnSpec spec;
  std::vector<Statistic> stats;  // defaults to [total mass] when none given
};

/// Resolves the model registry / inline kernel, x0 override, and statistics
/// into a runnable urn.
BuiltUrn build_urn(const UrnConfig& config);

std::vector<std::string> model_names();
/// One entry per registered model: parameters and a short description.
json models_listing();

/// Trajectory CSV over all replicates (header + one row per
/// replicate/step/statistic). Byte-identical for equal configs regardless of
/// the thread count.
std::string run_simulate(const UrnConfig& config, unsigned threads);

/// Exact-coupling check over couple_seeds seeds: {"seeds", "steps",
/// "max_projection_error", "pass"}.
json run_couple(const UrnConfig& config, std::uint64_t couple_seeds, double tol);

/// Distributional equivalence of the chain and its lift: {"test",
/// "statistic", "threshold", "alpha", "pass"}. corrupt_params, when set,
/// builds the lifted side from the same model with those parameters instead
/// (a negative control that should fail).
json run_compare(const UrnConfig& config, double alpha,
                 const std::optional<json>& corrupt_params);

/// Thread count: explicit flag, else URNLIFT_THREADS, else 1.
unsigned resolve_threads(std::optional<unsigned> flag);

}  // namespace urnlift
