#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "urnlift/cli.hpp"

namespace {

using urnlift::ConfigError;
using urnlift::json;
using urnlift::UrnConfig;

struct CommonFlags {
  std::string config_path;
  std::string model;
  std::string params_str;
  std::string stat_str;
  std::string out_path;
  std::optional<std::uint64_t> steps;
  std::optional<std::uint64_t> reps;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--model", flags.model, "model name (see the models subcommand)");
  cmd->add_option("--params", flags.params_str, "model parameters as a JSON object");
  cmd->add_option("--steps", flags.steps, "steps per run");
  cmd->add_option("--reps", flags.reps, "number of replicates");
  cmd->add_option("--seed", flags.seed, "stream seed");
  cmd->add_option("--stat", flags.stat_str, "statistic: a name or a JSON object");
  cmd->add_option("--out", flags.out_path, "write output to a file instead of stdout");
}

UrnConfig assemble_config(const CommonFlags& flags) {
  json base = json::object();
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw ConfigError("cannot open config file '" + flags.config_path + "'");
    base = json::parse(in);
  }
  if (!flags.model.empty()) base["model"] = flags.model;
  if (!flags.params_str.empty()) base["params"] = json::parse(flags.params_str);
  if (flags.steps) base["steps"] = *flags.steps;
  if (flags.reps) base["replicates"] = *flags.reps;
  if (flags.seed) base["seed"] = *flags.seed;
  if (!flags.stat_str.empty()) {
    json stat = flags.stat_str.front() == '{' ? json::parse(flags.stat_str)
                                              : json{{"name", flags.stat_str}};
    base["stats"] = json::array({stat});
  }
  if (!base.contains("model")) throw ConfigError("no model given (use --model or --config)");
  return urnlift::config_from_json(base);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"measure-valued urn simulator with derandomized kernel lifts"};
  app.require_subcommand(1);

  CommonFlags sim_flags;
  std::optional<unsigned> sim_threads;
  CLI::App* simulate = app.add_subcommand("simulate", "run trajectories, print statistic CSV");
  add_common(simulate, sim_flags);
  simulate->add_option("--threads", sim_threads, "worker threads (env URNLIFT_THREADS)");

  CommonFlags couple_flags;
  std::uint64_t couple_seeds = 1;
  double couple_tol = 1e-9;
  CLI::App* couple = app.add_subcommand(
      "couple", "exact-coupled run of a random-kernel urn and its deterministic lift");
  add_common(couple, couple_flags);
  couple->add_option("--seeds", couple_seeds, "number of coupled seeds");
  couple->add_option("--tol", couple_tol, "projection error tolerance");

  CommonFlags compare_flags;
  double compare_alpha = 0.01;
  std::string corrupt_params_str;
  CLI::App* compare = app.add_subcommand(
      "compare", "two-sample KS test between the urn and its projected lift");
  add_common(compare, compare_flags);
  compare->add_option("--alpha", compare_alpha, "KS significance level");
  compare->add_option("--corrupt-params", corrupt_params_str,
                      "build the lifted side with these params (negative control)");

  std::string models_out;
  CLI::App* models = app.add_subcommand("models", "list the registered models");
  models->add_option("--out", models_out, "write output to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (simulate->parsed()) {
      const unsigned threads = urnlift::resolve_threads(sim_threads);
      emit(urnlift::run_simulate(assemble_config(sim_flags), threads), sim_flags.out_path);
    } else if (couple->parsed()) {
      json report = urnlift::run_couple(assemble_config(couple_flags), couple_seeds, couple_tol);
      emit(report.dump(2) + "\n", couple_flags.out_path);
    } else if (compare->parsed()) {
      std::optional<json> corrupt;
      if (!corrupt_params_str.empty()) corrupt = json::parse(corrupt_params_str);
      json report = urnlift::run_compare(assemble_config(compare_flags), compare_alpha, corrupt);
      emit(report.dump(2) + "\n", compare_flags.out_path);
    } else if (models->parsed()) {
      emit(urnlift::models_listing().dump(2) + "\n", models_out);
    }
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const urnlift::CouplingBroken& e) {
    std::cerr << "coupling broken: " << e.what() << "\n";
    return 4;
  } catch (const urnlift::UrnError& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
