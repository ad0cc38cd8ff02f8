#include "moran/cli.hpp"

#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moran/csv.hpp"
#include "moran/errors.hpp"
#include "moran/experiments.hpp"
#include "moran/manifest.hpp"
#include "moran/sim.hpp"
#include "moran/svg.hpp"
#include "moran/validate.hpp"
#include "moran/version.hpp"
#include "moran/wave.hpp"

namespace moran {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBudget = 3;
constexpr std::uint64_t kDefaultValidateSeed = 0x6D6F72616E01ULL;

SimMode parse_mode(const std::string& name) {
  if (name == "class_level") return SimMode::class_level;
  if (name == "individual_level") return SimMode::individual_level;
  if (name == "coupled_neutral") return SimMode::coupled_neutral;
  throw std::invalid_argument(
      "unknown mode '" + name +
      "' (expected class_level, individual_level or coupled_neutral)");
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return path + ext;
  return path.substr(0, dot) + ext;
}

struct SimulateArgs {
  std::int64_t pop_size = 0;
  double mu = 0.0, q = 0.0, s = 0.0;
  double horizon = 0.0;
  double record_interval = 1.0;
  std::uint64_t seed = 1;
  std::string mode = "class_level";
  double kd_beta = 0.5;
  std::uint64_t max_events = 2'000'000'000ULL;
  std::string out = "trajectory.csv";
};

int cmd_simulate(const SimulateArgs& args) {
  SimConfig cfg;
  cfg.params = Params{args.pop_size, args.mu, args.q, args.s};
  cfg.horizon = args.horizon;
  cfg.record_interval = args.record_interval;
  cfg.seed = args.seed;
  cfg.mode = parse_mode(args.mode);
  cfg.kd_beta = args.kd_beta;
  cfg.max_events = args.max_events;
  cfg.validate();

  RunManifest manifest;
  manifest.subcommand = "simulate";
  manifest.master_seed = args.seed;
  manifest.started_utc = utc_timestamp_now();
  {
    nlohmann::json j;
    j["pop_size"] = args.pop_size;
    j["mu"] = args.mu;
    j["q"] = args.q;
    j["s"] = args.s;
    j["horizon"] = args.horizon;
    j["record_interval"] = args.record_interval;
    j["seed"] = args.seed;
    j["mode"] = args.mode;
    j["kd_beta"] = args.kd_beta;
    j["max_events"] = args.max_events;
    j["out"] = args.out;
    manifest.config_json = j.dump();
  }

  if (cfg.mode == SimMode::class_level) {
    const auto run =
        simulate_classes(cfg, Population::point_mass(args.pop_size, 0));
    write_text_file(args.out, trajectory_csv(run.records));
    manifest.outputs = {args.out};
    std::cout << "wrote " << args.out << " (" << run.records.size()
              << " records)\n";
  } else if (cfg.mode == SimMode::individual_level) {
    const auto run = simulate_individuals(
        cfg, IndividualState::all_zero(args.pop_size, false));
    write_text_file(args.out, trajectory_csv(run.records));
    manifest.outputs = {args.out};
    std::cout << "wrote " << args.out << " (" << run.records.size()
              << " records)\n";
  } else {
    const auto run =
        simulate_coupled(cfg, IndividualState::all_zero(args.pop_size, true));
    const std::string neutral_out = with_suffix(args.out, "_neutral");
    write_text_file(args.out, trajectory_csv(run.records));
    write_text_file(neutral_out, trajectory_csv(run.neutral_records));
    manifest.outputs = {args.out, neutral_out};
    std::cout << "wrote " << args.out << " and " << neutral_out << " ("
              << run.records.size() << " records each)\n";
  }
  manifest.finished_utc = utc_timestamp_now();
  write_manifest(manifest, args.out + ".manifest.json");
  return kExitOk;
}

// Config file: JSON object with grid (array of {pop_size, mu, q, s}),
// replicates, horizon, burn_in_fraction, record_interval, master_seed.
SweepConfig parse_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("config parse error in " + path + ": " + e.what());
  }

  auto require = [&](const nlohmann::json& node, const char* key,
                     const std::string& at) -> const nlohmann::json& {
    if (!node.contains(key))
      throw std::invalid_argument("config missing field: " + at + key);
    return node.at(key);
  };

  SweepConfig cfg;
  const auto& grid = require(j, "grid", "");
  if (!grid.is_array() || grid.empty())
    throw std::invalid_argument("config field 'grid' must be a nonempty array");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::string at = "grid[" + std::to_string(i) + "].";
    const auto& g = grid[i];
    Params p;
    try {
      p.pop_size = require(g, "pop_size", at).get<std::int64_t>();
      p.mu = require(g, "mu", at).get<double>();
      p.q = require(g, "q", at).get<double>();
      p.s = require(g, "s", at).get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("config type error at " + at + ": " + e.what());
    }
    cfg.grid.push_back(p);
  }
  try {
    cfg.replicates = require(j, "replicates", "").get<std::int64_t>();
    cfg.horizon = require(j, "horizon", "").get<double>();
    cfg.master_seed = require(j, "master_seed", "").get<std::uint64_t>();
    if (j.contains("burn_in_fraction"))
      cfg.burn_in_fraction = j.at("burn_in_fraction").get<double>();
    if (j.contains("record_interval"))
      cfg.record_interval = j.at("record_interval").get<double>();
    if (j.contains("max_events"))
      cfg.max_events = j.at("max_events").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config type error: ") + e.what());
  }
  return cfg;
}

int cmd_sweep(const std::string& config_path, const std::string& out,
              int threads) {
  const SweepConfig cfg = parse_sweep_config(config_path);
  cfg.validate();

  RunManifest manifest;
  manifest.subcommand = "sweep";
  manifest.master_seed = cfg.master_seed;
  manifest.started_utc = utc_timestamp_now();
  {
    nlohmann::json j;
    j["config_file"] = config_path;
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& p : cfg.grid)
      grid.push_back({{"pop_size", p.pop_size}, {"mu", p.mu}, {"q", p.q}, {"s", p.s}});
    j["grid"] = grid;
    j["replicates"] = cfg.replicates;
    j["horizon"] = cfg.horizon;
    j["burn_in_fraction"] = cfg.burn_in_fraction;
    j["record_interval"] = cfg.record_interval;
    j["master_seed"] = cfg.master_seed;
    j["max_events"] = cfg.max_events;
    j["threads"] = threads;
    j["out"] = out;
    manifest.config_json = j.dump();
  }

  const auto cells = run_sweep(cfg, threads);
  const std::string svg_path = replace_extension(out, ".svg");
  write_text_file(out, sweep_csv(cells));
  write_text_file(svg_path, sweep_svg(cells));
  manifest.outputs = {out, svg_path};
  manifest.finished_utc = utc_timestamp_now();
  write_manifest(manifest, out + ".manifest.json");

  std::size_t failed = 0;
  for (const auto& c : cells)
    if (!c.ok) ++failed;
  std::cout << "wrote " << out << " and " << svg_path << " (" << cells.size()
            << " cells, " << failed << " failed)\n";
  if (failed > 0) {
    std::cerr << failed << " cell(s) hit the event budget; rows left empty\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_predict(std::int64_t pop_size, double mu, double q, double s,
                bool as_json) {
  Params params{pop_size, mu, q, s};
  params.validate();
  if (s == 0.0) throw std::invalid_argument("predictor undefined for s = 0");
  if (pop_size < 3) throw std::invalid_argument("predictor requires N >= 3");

  const WavePrediction wp = predict_wave_speed(params);
  const double log_n = std::log(static_cast<double>(pop_size));
  const double residual = wp.K * std::log(s * wp.K) - 2.0 * log_n;
  // Exact Lambert route for the same root, plus the coarse two-term
  // expansion K ~ 2 ln N - ln(2 ln N).
  const double lambert_K = 2.0 * log_n / lambert_w(2.0 * s * log_n);
  const double asymptotic_K = 2.0 * log_n - std::log(2.0 * log_n);

  nlohmann::json j;
  j["pop_size"] = pop_size;
  j["mu"] = mu;
  j["q"] = q;
  j["s"] = s;
  j["K"] = wp.K;
  j["b"] = wp.b;
  j["speed"] = wp.speed;
  j["front_speed_diagnostic"] = wp.front_speed;
  j["residual"] = residual;
  j["lambert_K"] = lambert_K;
  j["asymptotic_K"] = asymptotic_K;

  if (as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    const char* keys[] = {"pop_size", "mu",       "q",
                          "s",        "K",        "b",
                          "speed",    "front_speed_diagnostic", "residual",
                          "lambert_K", "asymptotic_K"};
    for (const char* k : keys) {
      const auto& v = j.at(k);
      if (v.is_number_integer())
        std::cout << k << ": " << v.get<std::int64_t>() << "\n";
      else
        std::cout << k << ": " << format_real(v.get<double>()) << "\n";
    }
  }
  return kExitOk;
}

int cmd_validate(const std::string& suite, std::uint64_t seed,
                 std::int64_t runs, int threads) {
  std::vector<CheckResult> checks;
  auto run_suite = [&](const std::string& name) {
    if (name == "pgf") {
      auto v = validate_pgf(seed, runs);
      checks.insert(checks.end(), v.begin(), v.end());
    } else if (name == "bounds") {
      auto v = validate_bounds(seed);
      checks.insert(checks.end(), v.begin(), v.end());
    } else if (name == "coupling") {
      auto v = validate_coupling(seed, 20);
      checks.insert(checks.end(), v.begin(), v.end());
    } else if (name == "oracle") {
      auto v = validate_oracle(seed, runs);
      checks.insert(checks.end(), v.begin(), v.end());
    } else if (name == "drift") {
      auto v = validate_drift(seed, 8, 2000.0, threads);
      checks.insert(checks.end(), v.begin(), v.end());
    } else {
      throw std::invalid_argument(
          "unknown suite '" + name +
          "' (expected pgf, bounds, coupling, oracle or drift)");
    }
  };
  if (suite.empty()) {
    for (const char* name : {"pgf", "bounds", "coupling", "oracle", "drift"})
      run_suite(name);
  } else {
    run_suite(suite);
  }

  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << " — " << c.detail;
    std::cout << "\n";
    all = all && c.pass;
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << " ("
            << checks.size() << " checks)\n";
  return all ? kExitOk : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{std::string(kToolName) +
               " — exact Moran-model adaptation simulator"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "run one trajectory");
  sim->add_option("--pop-size", sim_args.pop_size, "population size N")->required();
  sim->add_option("--mu", sim_args.mu, "mutation rate per individual per generation")->required();
  sim->add_option("--q", sim_args.q, "probability a mutation is beneficial")->required();
  sim->add_option("--s", sim_args.s, "selection coefficient")->required();
  sim->add_option("--horizon", sim_args.horizon, "generations to simulate")->required();
  sim->add_option("--record-interval", sim_args.record_interval,
                  "generations between records");
  sim->add_option("--seed", sim_args.seed, "RNG seed");
  sim->add_option("--mode", sim_args.mode,
                  "class_level | individual_level | coupled_neutral");
  sim->add_option("--kd-beta", sim_args.kd_beta, "beta for the k_d column");
  sim->add_option("--max-events", sim_args.max_events, "event budget");
  sim->add_option("--out", sim_args.out, "trajectory CSV path");

  std::string sweep_config, sweep_out = "sweep.csv";
  int sweep_threads = 0;
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep from JSON config");
  sweep->add_option("--config", sweep_config, "JSON sweep config")->required();
  sweep->add_option("--out", sweep_out, "sweep CSV path (SVG written alongside)");
  sweep->add_option("--threads", sweep_threads,
                    "worker count (0 = hardware); output-invariant");

  std::int64_t pr_pop = 0;
  double pr_mu = 0.0, pr_q = 0.0, pr_s = 0.0;
  bool pr_json = false;
  auto* predict = app.add_subcommand("predict", "wave-speed prediction");
  predict->add_option("--pop-size", pr_pop, "population size N")->required();
  predict->add_option("--mu", pr_mu, "mutation rate")->required();
  predict->add_option("--q", pr_q, "beneficial fraction")->required();
  predict->add_option("--s", pr_s, "selection coefficient")->required();
  predict->add_flag("--json", pr_json, "emit JSON instead of text");

  std::string val_suite;
  std::uint64_t val_seed = kDefaultValidateSeed;
  std::int64_t val_runs = 100000;
  int val_threads = 0;
  auto* validate = app.add_subcommand("validate", "run validation suites");
  validate->add_option("--suite", val_suite,
                       "pgf | bounds | coupling | oracle | drift (default: all)");
  validate->add_option("--seed", val_seed, "validation seed");
  validate->add_option("--runs", val_runs, "Monte Carlo replicates per cell");
  validate->add_option("--threads", val_threads, "worker count (0 = hardware)");

  try {
    app.parse(argc, const_cast<char**>(argv));
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    std::cout << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() << "\n";
    return kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out, sweep_threads);
    if (predict->parsed())
      return cmd_predict(pr_pop, pr_mu, pr_q, pr_s, pr_json);
    if (validate->parsed())
      return cmd_validate(val_suite, val_seed, val_runs, val_threads);
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}

}  // namespace moran
