// cctf: deterministic red-team / blue-team simulation on scale-free router
// networks. Subcommands: generate (topology), run (single simulation),
// sweep (parameter grid -> dataset CSV), analyze (correlations / surfaces).
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cctf/analysis.hpp"
#include "cctf/config_file.hpp"
#include "cctf/engine.hpp"
#include "cctf/errors.hpp"
#include "cctf/sweep.hpp"
#include "cctf/topology.hpp"

namespace {

constexpr const char* kVersion = "cctf 0.1.0";

// Exit codes: 0 success, 1 usage, 2 config error, 3 runtime failure.
enum ExitCode { kOk = 0, kUsage = 1, kConfigError = 2, kRuntimeError = 3 };

void write_output(const std::string& path,
                  const std::function<void(std::ostream&)>& emit) {
  if (path.empty() || path == "-") {
    emit(std::cout);
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("write to standard output failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  emit(out);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct GenerateArgs {
  int nodes = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_generate(const GenerateArgs& args) {
  std::cerr << "n_routers = " << args.nodes << "\nba_m = " << args.m
            << "\nseed = " << args.seed << "\n";
  const cctf::NetworkGraph graph =
      cctf::generate_scale_free(args.nodes, args.m, args.seed);
  const cctf::TopologyInfo topo = cctf::derive_topology(graph);
  write_output(args.out, [&](std::ostream& out) {
    out << graph.n << ' ' << args.m << ' ' << args.seed << '\n';
    for (const auto& [u, v] : graph.edges) {
      out << u << ' ' << v << '\n';
    }
    out << "# central " << topo.central << '\n';
    out << "# peripheral";
    for (const cctf::RouterId r : topo.peripheral) out << ' ' << r;
    out << '\n';
  });
  return kOk;
}

struct RunArgs {
  std::string config_path;
  cctf::ConfigOverrides overrides;
  std::string trace_path;
  std::string out;
};

int cmd_run(const RunArgs& args) {
  const cctf::ConfigDocument doc = cctf::load_config_file(args.config_path);
  const cctf::SimConfig config = cctf::make_sim_config(doc, args.overrides);
  std::cerr << cctf::describe(config);

  std::vector<cctf::TickTrace> trace;
  const cctf::RunMetrics metrics = cctf::run_simulation(
      config, args.trace_path.empty() ? nullptr : &trace);

  if (!args.trace_path.empty()) {
    write_output(args.trace_path,
                 [&](std::ostream& out) { cctf::write_trace_csv(out, trace); });
  }
  write_output(args.out, [&](std::ostream& out) {
    char buffer[64];
    const auto frac = [&](const char* name, double value) {
      std::snprintf(buffer, sizeof(buffer), "%s = %.6f\n", name, value);
      out << buffer;
    };
    frac("mean_compromised", metrics.mean_compromised);
    frac("max_compromised", metrics.max_compromised);
    frac("mean_offline", metrics.mean_offline);
    frac("max_offline", metrics.max_offline);
    out << "two_thirds_breached = " << (metrics.two_thirds_breached ? 1 : 0)
        << "\n";
    out << "full_network_breached = "
        << (metrics.full_network_breached ? 1 : 0) << "\n";
    out << "center_compromised = " << (metrics.center_compromised ? 1 : 0)
        << "\n";
    out << "ticks_run = " << metrics.ticks_run << "\n";
  });
  return kOk;
}

struct SweepArgs {
  std::string config_path;
  cctf::ConfigOverrides overrides;
  std::string out;
  int jobs = 1;
};

int cmd_sweep(const SweepArgs& args) {
  const cctf::ConfigDocument doc = cctf::load_config_file(args.config_path);
  const cctf::SweepGrid grid = cctf::make_sweep_grid(doc, args.overrides);
  std::cerr << cctf::describe(grid);
  std::cerr << "jobs = " << args.jobs << "\n";
  std::cerr << "configs = " << grid.config_count()
            << ", runs = " << grid.run_count() << "\n";

  const auto start = std::chrono::steady_clock::now();
  const std::vector<cctf::DatasetRow> rows = cctf::run_sweep(grid, args.jobs);
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  std::cerr << rows.size() << " runs in " << elapsed << " s\n";

  write_output(args.out,
               [&](std::ostream& out) { cctf::write_dataset(rows, out); });
  return kOk;
}

struct AnalyzeArgs {
  std::string dataset_path;
  std::string table = "correlations";
  std::string metric = "mean_compromised";
  std::string stat = "mean";
  bool per_config_means = false;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& args) {
  std::cerr << "dataset = " << args.dataset_path << "\ntable = " << args.table;
  if (args.table == "surface") {
    std::cerr << "\nmetric = " << args.metric << "\nstat = " << args.stat;
  } else {
    std::cerr << "\nper_config_means = " << (args.per_config_means ? 1 : 0);
  }
  std::cerr << "\n";

  const std::vector<cctf::DatasetRow> rows =
      cctf::read_dataset(std::filesystem::path(args.dataset_path));
  if (args.table == "correlations") {
    const cctf::CorrelationTable table =
        cctf::correlation_table(rows, args.per_config_means);
    write_output(args.out, [&](std::ostream& out) {
      cctf::write_correlation_csv(out, table);
    });
  } else {
    const cctf::SurfaceStat stat = args.stat == "max"
                                       ? cctf::SurfaceStat::max
                                       : cctf::SurfaceStat::mean;
    const cctf::SurfaceTable table =
        cctf::surface_table(rows, args.metric, stat);
    write_output(args.out, [&](std::ostream& out) {
      cctf::write_surface_csv(out, table);
    });
  }
  return kOk;
}

// Every value is passed through as text and parsed by the config layer, so
// flags accept the same syntax as the file (percentages, lists, spans).
void add_override_flag(CLI::App* cmd, cctf::ConfigOverrides& overrides,
                       const std::string& flag, const std::string& key,
                       const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&overrides, key](const std::string& text) { overrides[key] = text; },
      help);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic cyber-competition simulator on scale-free "
               "router networks"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  GenerateArgs generate_args;
  CLI::App* generate =
      app.add_subcommand("generate", "Generate a scale-free topology");
  generate->add_option("--nodes", generate_args.nodes, "Router count")
      ->required();
  generate->add_option("--m", generate_args.m, "Edges per joining router")
      ->required();
  generate->add_option("--seed", generate_args.seed, "Topology seed")
      ->required();
  generate->add_option("--out", generate_args.out,
                       "Output file (default: stdout)");

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run one simulation");
  run->add_option("--config", run_args.config_path, "Config file")->required();
  run->add_option("--trace", run_args.trace_path, "Per-tick trace CSV file");
  run->add_option("--out", run_args.out, "Metrics output (default: stdout)");
  add_override_flag(run, run_args.overrides, "--seed", "seed", "Run seed");
  add_override_flag(run, run_args.overrides, "--ticks", "max_ticks",
                    "Tick count");
  add_override_flag(run, run_args.overrides, "--n-routers", "n_routers",
                    "Router count");
  add_override_flag(run, run_args.overrides, "--ba-m", "ba_m",
                    "Edges per joining router");
  add_override_flag(run, run_args.overrides, "--team-size", "team_size",
                    "Agents per team");
  add_override_flag(run, run_args.overrides, "--scouts", "scouts",
                    "Attacker scouts (exploiters = team size - scouts)");
  add_override_flag(run, run_args.overrides, "--detectors", "detectors",
                    "Defender detectors (interceptors = team size - "
                    "detectors)");
  add_override_flag(run, run_args.overrides, "--vul-rate", "vul_rate",
                    "Per-tick vulnerability probability (0.02 or 2%)");
  add_override_flag(run, run_args.overrides, "--p-scout", "p_scout",
                    "Scout detection probability");
  add_override_flag(run, run_args.overrides, "--p-exploiter", "p_exploiter",
                    "Exploit success probability");
  add_override_flag(run, run_args.overrides, "--p-det-vuln", "p_det_vuln",
                    "Detector probability on a vulnerable router");
  add_override_flag(run, run_args.overrides, "--p-det-expl", "p_det_expl",
                    "Detector probability on a compromised router");
  add_override_flag(run, run_args.overrides, "--delta", "delta_interceptor",
                    "Interceptor action duration in ticks");
  add_override_flag(run, run_args.overrides, "--mode", "interceptor_mode",
                    "Interceptor action: recover or isolate");

  SweepArgs sweep_args;
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run the parameter grid, write the dataset");
  sweep->add_option("--config", sweep_args.config_path, "Config file")
      ->required();
  sweep->add_option("--out", sweep_args.out, "Dataset CSV path")->required();
  sweep->add_option("--jobs", sweep_args.jobs, "Worker threads")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  add_override_flag(sweep, sweep_args.overrides, "--master-seed",
                    "master_seed", "Master seed for per-run seed derivation");
  add_override_flag(sweep, sweep_args.overrides, "--trials", "trials",
                    "Trials per configuration");
  add_override_flag(sweep, sweep_args.overrides, "--scouts", "scouts",
                    "Scout grid list (e.g. 1-9 or 1,3,5)");
  add_override_flag(sweep, sweep_args.overrides, "--detectors", "detectors",
                    "Detector grid list");
  add_override_flag(sweep, sweep_args.overrides, "--p-det-vuln", "p_det_vuln",
                    "Vulnerability-detection probability list (e.g. "
                    "25%,50%,75%,100%)");
  add_override_flag(sweep, sweep_args.overrides, "--p-det-expl", "p_det_expl",
                    "Exploit-detection probability list");

  AnalyzeArgs analyze_args;
  CLI::App* analyze =
      app.add_subcommand("analyze", "Correlation / surface tables");
  analyze->add_option("--dataset", analyze_args.dataset_path, "Dataset CSV")
      ->required();
  analyze->add_option("--table", analyze_args.table, "Table kind")
      ->default_val("correlations")
      ->check(CLI::IsMember({"correlations", "surface"}));
  analyze->add_option("--metric", analyze_args.metric,
                      "Outcome column for surfaces")
      ->default_val("mean_compromised");
  analyze->add_option("--stat", analyze_args.stat, "Surface statistic")
      ->default_val("mean")
      ->check(CLI::IsMember({"mean", "max"}));
  analyze->add_flag("--per-config-means", analyze_args.per_config_means,
                    "Correlate per-config trial means instead of raw rows");
  analyze->add_option("--out", analyze_args.out,
                      "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);  // --help / --version
      return kOk;
    }
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(generate_args);
    if (run->parsed()) return cmd_run(run_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (analyze->parsed()) return cmd_analyze(analyze_args);
    std::cerr << app.help() << "\n";
    return kUsage;
  } catch (const cctf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
}
