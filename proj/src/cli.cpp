#include "urnlift/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>

#include "urnlift/models.hpp"

namespace urnlift {

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
  if (!j.is_object()) throw ConfigError(what + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end())
      throw ConfigError(what + " has unknown field '" + key + "'");
  }
}

const json& require(const json& j, const char* key, const std::string& what) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(what + " is missing field '" + std::string(key) + "'");
  return *it;
}

double number_param(const json& params, const char* key) {
  const json& v = require(params, key, "params");
  if (!v.is_number()) throw ConfigError(std::string("param '") + key + "' must be a number");
  return v.get<double>();
}

std::uint64_t uint_field(const json& j, const char* key, std::uint64_t fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_unsigned())
    throw ConfigError(std::string("field '") + key + "' must be a nonnegative integer");
  return it->get<std::uint64_t>();
}

std::vector<double> double_vec(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(what + " must contain numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::vector<std::int64_t> int_vec(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of integers");
  std::vector<std::int64_t> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError(what + " must contain integers");
    out.push_back(v.get<std::int64_t>());
  }
  return out;
}

std::vector<std::vector<std::int64_t>> int_matrix(const json& j, const std::string& what) {
  if (!j.is_array()) throw ConfigError(what + " must be an array of rows");
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : j) out.push_back(int_vec(row, what + " row"));
  return out;
}

UrnSpec build_named(const std::string& name, const json& params) {
  if (name == "eggenberger_polya") {
    check_keys(params, {"a", "w"}, "eggenberger_polya params");
    return eggenberger_polya(number_param(params, "a"),
                             double_vec(require(params, "w", "params"), "w"));
  }
  if (name == "blackwell_macqueen") {
    check_keys(params, {"theta"}, "blackwell_macqueen params");
    return blackwell_macqueen(number_param(params, "theta"));
  }
  if (name == "friedman_random") {
    check_keys(params, {"p", "w"}, "friedman_random params");
    std::vector<double> w = {1.0, 1.0};
    if (params.contains("w")) w = double_vec(params.at("w"), "w");
    return friedman_random(number_param(params, "p"), w);
  }
  if (name == "lattice_walk") {
    check_keys(params, {"dim", "steps"}, "lattice_walk params");
    const json& steps = require(params, "steps", "lattice_walk params");
    if (!steps.is_array()) throw ConfigError("lattice_walk steps must be an array");
    std::vector<LatticeStep> law;
    for (const auto& st : steps) {
      check_keys(st, {"offset", "prob"}, "lattice step");
      law.push_back({int_vec(require(st, "offset", "lattice step"), "offset"),
                     number_param(st, "prob")});
    }
    const std::int64_t dim = require(params, "dim", "lattice_walk params").get<std::int64_t>();
    if (dim < 1 || dim > 64) throw ConfigError("lattice_walk dim out of range");
    return lattice_walk(static_cast<std::uint32_t>(dim), law);
  }
  if (name == "without_replacement_urn") {
    check_keys(params, {"addition", "x0"}, "without_replacement_urn params");
    return without_replacement_urn(
        int_matrix(require(params, "addition", "params"), "addition"),
        int_vec(require(params, "x0", "params"), "x0"));
  }
  if (name == "random_without_replacement") {
    check_keys(params, {"law", "x0"}, "random_without_replacement params");
    const json& law_json = require(params, "law", "params");
    if (!law_json.is_array()) throw ConfigError("law must be an array per colour");
    std::vector<std::vector<RandomRow>> law;
    for (const auto& rows : law_json) {
      if (!rows.is_array()) throw ConfigError("law entry must be an array of rows");
      std::vector<RandomRow> parsed;
      for (const auto& rr : rows) {
        check_keys(rr, {"row", "prob"}, "law row");
        parsed.push_back({int_vec(require(rr, "row", "law row"), "row"),
                          number_param(rr, "prob")});
      }
      law.push_back(std::move(parsed));
    }
    return random_without_replacement(law, int_vec(require(params, "x0", "params"), "x0"));
  }
  std::string names;
  for (const auto& n : model_names()) {
    if (!names.empty()) names += ", ";
    names += n;
  }
  throw ConfigError("unknown model '" + name + "'; available: " + names);
}

bool integer_valued(const std::vector<std::vector<double>>& rows) {
  for (const auto& row : rows)
    for (double v : row)
      if (v != static_cast<double>(static_cast<std::int64_t>(v))) return false;
  return true;
}

UrnSpec build_inline(const json& kernel_json, const std::optional<json>& x0_json) {
  check_keys(kernel_json, {"type", "rows"}, "inline kernel");
  const std::string type = require(kernel_json, "type", "inline kernel").get<std::string>();
  if (!x0_json) throw ConfigError("inline kernels need a top-level x0");

  if (type == "matrix" || type == "signed_matrix") {
    const json& rows_json = require(kernel_json, "rows", "inline kernel");
    if (!rows_json.is_array() || rows_json.empty())
      throw ConfigError("kernel rows must be a nonempty array");
    std::vector<std::vector<double>> rows;
    for (const auto& r : rows_json) rows.push_back(double_vec(r, "kernel row"));
    const std::size_t d = rows.size();
    for (const auto& r : rows)
      if (r.size() != d) throw ConfigError("kernel matrix must be square");
    const bool signed_rows = type == "signed_matrix";
    if (signed_rows && !integer_valued(rows))
      throw ConfigError("signed kernel rows must be integer-valued");
    std::optional<double> balance;
    bool balanced = true;
    for (const auto& r : rows) {
      double sum = 0.0;
      for (double v : r) {
        if (!signed_rows && v < 0.0)
          throw ConfigError("matrix kernel entries must be nonnegative; use signed_matrix");
        sum += v;
      }
      if (!balance) {
        balance = sum;
      } else if (*balance != sum) {
        balanced = false;
      }
    }
    ColourSpace space = ColourSpace::finite(static_cast<std::uint32_t>(d));
    DeterministicKernel kernel(
        space,
        [space, rows, signed_rows](const Colour& s) -> Replacement {
          const std::uint32_t k = std::get<Colour::Index>(s.rep()).k;
          if (signed_rows) {
            std::vector<std::pair<Colour, double>> atoms;
            for (std::size_t j = 0; j < rows[k].size(); ++j)
              atoms.emplace_back(Colour::index(static_cast<std::uint32_t>(j)), rows[k][j]);
            return SignedAtomicMeasure(space, std::move(atoms));
          }
          std::vector<Component> comps;
          for (std::size_t j = 0; j < rows[k].size(); ++j) {
            if (rows[k][j] > 0.0)
              comps.push_back(
                  {rows[k][j], Payload::atom(Colour::index(static_cast<std::uint32_t>(j)))});
          }
          return FiniteMeasure(space, std::move(comps));
        },
        balanced ? balance : std::nullopt, type);
    std::vector<Component> comps;
    for (const auto& c : *x0_json) {
      const json& w = require(c, "w", "x0 component");
      if (!w.is_number()) throw ConfigError("x0 component weight must be a number");
      comps.push_back({w.get<double>(), payload_from_json(c, space)});
    }
    return UrnSpec(space, std::move(kernel), FiniteMeasure(space, std::move(comps)),
                   signed_rows ? AdmissibilityPolicy::integer_urn()
                               : AdmissibilityPolicy::none());
  }
  throw ConfigError("unknown inline kernel type '" + type + "'");
}

}  // namespace

UrnConfig config_from_json(const json& j) {
  check_keys(j, {"space", "model", "params", "x0", "steps", "replicates", "seed", "stats"},
             "config");
  UrnConfig config;
  if (j.contains("space")) config.space = j.at("space");
  const json& model = require(j, "model", "config");
  if (model.is_string()) {
    config.model = model.get<std::string>();
  } else if (model.is_object()) {
    check_keys(model, {"kernel"}, "inline model");
    config.model = model;
  } else {
    throw ConfigError("model must be a name or an inline {\"kernel\": ...} object");
  }
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw ConfigError("params must be a JSON object");
    config.params = j.at("params");
  }
  if (j.contains("x0")) {
    if (!j.at("x0").is_array()) throw ConfigError("x0 must be an array of components");
    config.x0 = j.at("x0");
  }
  config.steps = uint_field(j, "steps", 0);
  config.replicates = uint_field(j, "replicates", 1);
  if (config.replicates == 0) throw ConfigError("replicates must be >= 1");
  config.seed = uint_field(j, "seed", 0);
  if (j.contains("stats")) {
    if (!j.at("stats").is_array()) throw ConfigError("stats must be an array");
    for (const auto& s : j.at("stats")) config.stats.push_back(s);
  }
  return config;
}

json config_to_json(const UrnConfig& config) {
  json j;
  if (config.space) j["space"] = *config.space;
  if (const auto* name = std::get_if<std::string>(&config.model)) {
    j["model"] = *name;
  } else {
    j["model"] = std::get<json>(config.model);
  }
  j["params"] = config.params;
  if (config.x0) j["x0"] = *config.x0;
  j["steps"] = config.steps;
  j["replicates"] = config.replicates;
  j["seed"] = config.seed;
  if (!config.stats.empty()) j["stats"] = config.stats;
  return j;
}

BuiltUrn build_urn(const UrnConfig& config) {
  UrnSpec spec = [&] {
    if (const auto* name = std::get_if<std::string>(&config.model)) {
      if (name->empty()) throw ConfigError("config needs a model");
      return build_named(*name, config.params);
    }
    const json& inline_model = std::get<json>(config.model);
    return build_inline(require(inline_model, "kernel", "inline model"), config.x0);
  }();
  if (config.space) {
    ColourSpace declared = space_from_json(*config.space);
    if (declared != spec.space)
      throw ConfigError("declared space " + declared.describe() +
                        " does not match the model's space " + spec.space.describe());
  }
  if (config.x0 && std::holds_alternative<std::string>(config.model)) {
    std::vector<Component> comps;
    for (const auto& c : *config.x0) {
      const json& w = require(c, "w", "x0 component");
      if (!w.is_number()) throw ConfigError("x0 component weight must be a number");
      comps.push_back({w.get<double>(), payload_from_json(c, spec.space)});
    }
    spec = UrnSpec(spec.space, spec.kernel, FiniteMeasure(spec.space, std::move(comps)),
                   spec.admissibility);
  }
  BuiltUrn built{std::move(spec), {}};
  for (const auto& s : config.stats)
    built.stats.push_back(statistic_from_json(s, built.spec.space));
  if (built.stats.empty()) built.stats.push_back(Statistic::total_mass());
  return built;
}

std::vector<std::string> model_names() {
  return {"eggenberger_polya",  "blackwell_macqueen",       "friedman_random",
          "lattice_walk",       "without_replacement_urn",  "random_without_replacement"};
}

json models_listing() {
  json out;
  out["eggenberger_polya"] = {
      {"params", {{"a", "reinforcement mass per draw"}, {"w", "initial weights [w0, w1]"}}},
      {"kernel", "deterministic"},
      {"description", "two-colour urn; drawing s adds a copies of s"}};
  out["blackwell_macqueen"] = {
      {"params", {{"theta", "diffuse seed mass"}}},
      {"kernel", "deterministic"},
      {"description", "urn on [0,1] seeded with theta x lambda; drawing s adds delta_s"}};
  out["friedman_random"] = {
      {"params", {{"p", "probability of reinforcing the drawn colour"},
                  {"w", "initial weights, default [1, 1]"}}},
      {"kernel", "random"},
      {"description", "adds delta_s with probability p, delta_{1-s} otherwise"}};
  out["lattice_walk"] = {
      {"params", {{"dim", "lattice dimension"},
                  {"steps", "[{offset, prob}] step distribution"}}},
      {"kernel", "random"},
      {"description", "urn on Z^dim; drawing s adds delta_{s+xi}, xi from the step law"}};
  out["without_replacement_urn"] = {
      {"params", {{"addition", "d x d nonnegative integer matrix"},
                  {"x0", "initial integer counts"}}},
      {"kernel", "deterministic"},
      {"description", "drawing s removes one s-ball and adds row addition[s]"}};
  out["random_without_replacement"] = {
      {"params", {{"law", "per-colour distributions over integer rows"},
                  {"x0", "initial integer counts"}}},
      {"kernel", "random"},
      {"description", "drawing s removes one s-ball and adds a random row from law[s]"}};
  return out;
}

namespace {

// Runs fn(r) for r in [0, total) over `threads` workers in fixed chunks;
// results land in caller-owned slots so the output order is thread-agnostic.
void parallel_for(std::uint64_t total, unsigned threads,
                  const std::function<void(std::uint64_t)>& fn) {
  unsigned workers = std::max(1u, threads);
  if (total < workers) workers = static_cast<unsigned>(std::max<std::uint64_t>(total, 1));
  if (workers == 1) {
    for (std::uint64_t r = 0; r < total; ++r) fn(r);
    return;
  }
  const std::uint64_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned t = 0; t < workers; ++t) {
    const std::uint64_t lo = t * chunk;
    const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      try {
        for (std::uint64_t r = lo; r < hi; ++r) fn(r);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::string run_simulate(const UrnConfig& config, unsigned threads) {
  BuiltUrn built = build_urn(config);
  RunOptions options{built.stats, false};
  std::vector<std::string> blocks(config.replicates);
  parallel_for(config.replicates, threads, [&](std::uint64_t r) {
    Trajectory traj = run(built.spec, config.steps, config.seed, r, options);
    append_trajectory_csv(blocks[r], r, traj);
  });
  std::string out = trajectory_csv_header();
  for (const auto& b : blocks) out += b;
  return out;
}

json run_couple(const UrnConfig& config, std::uint64_t couple_seeds, double tol) {
  if (couple_seeds == 0) throw ConfigError("couple needs at least one seed");
  BuiltUrn built = build_urn(config);
  double max_err = 0.0;
  for (std::uint64_t k = 0; k < couple_seeds; ++k) {
    CoupledRun cr = coupled_run(built.spec, config.steps, config.seed + k);
    max_err = std::max(max_err, cr.max_projection_error);
  }
  return json{{"seeds", couple_seeds},
              {"steps", config.steps},
              {"max_projection_error", max_err},
              {"pass", max_err <= tol}};
}

json run_compare(const UrnConfig& config, double alpha,
                 const std::optional<json>& corrupt_params) {
  BuiltUrn built = build_urn(config);
  if (config.stats.empty())
    throw ConfigError("compare needs a statistic (config stats or --stat)");
  const Statistic stat = built.stats.front();
  UrnConfig lift_config = config;
  if (corrupt_params) {
    if (!std::holds_alternative<std::string>(config.model))
      throw ConfigError("--corrupt-params needs a named model");
    lift_config.params = *corrupt_params;
  }
  BuiltUrn lift_built = corrupt_params ? build_urn(lift_config) : built;
  CompareReport report = distributional_compare(built.spec, lift_built.spec, config.steps,
                                                config.replicates, stat, alpha, config.seed);
  return json{{"test", "ks_two_sample"},
              {"statistic", report.statistic},
              {"threshold", report.threshold},
              {"alpha", report.alpha},
              {"pass", report.pass}};
}

unsigned resolve_threads(std::optional<unsigned> flag) {
  if (flag) {
    if (*flag == 0) throw ConfigError("thread count must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("URNLIFT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (!end || *end != '\0' || v < 1) throw ConfigError("URNLIFT_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace urnlift
