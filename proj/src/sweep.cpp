#include "cctf/sweep.hpp"

#include <atomic>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cctf {

const char* const kDatasetHeader =
    "config_index,trial,seed,n_routers,ba_m,team_size,scouts,exploiters,"
    "detectors,interceptors,vul_rate,p_scout,p_exploiter,p_det_vuln,"
    "p_det_expl,delta_interceptor,max_ticks,mean_compromised,max_compromised,"
    "mean_offline,max_offline,metric2_two_thirds,metric2_full,metric3_center";

std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::uint64_t config_index,
                              std::uint64_t trial) {
  std::uint64_t s = mix64(master_seed);
  s = mix64(s ^ (config_index + 0x9E3779B97F4A7C15ULL));
  s = mix64(s ^ (trial + 0xC2B2AE3D27D4EB4FULL));
  return s;
}

std::size_t SweepGrid::config_count() const {
  return scouts_values.size() * detectors_values.size() *
         p_det_vuln_values.size() * p_det_expl_values.size();
}

void SweepGrid::validate() const {
  if (scouts_values.empty() || detectors_values.empty() ||
      p_det_vuln_values.empty() || p_det_expl_values.empty()) {
    throw std::invalid_argument("sweep grid: all value lists must be non-empty");
  }
  if (trials < 1) {
    throw std::invalid_argument("sweep grid: trials must be >= 1, got " +
                                std::to_string(trials));
  }
  // Range-check every grid member by validating the extreme combinations is
  // not enough (scouts interacts with team_size), so check all values.
  for (int s : scouts_values) {
    for (int d : detectors_values) {
      SimConfig probe = base;
      probe.scouts = s;
      probe.detectors = d;
      probe.p_det_vuln = p_det_vuln_values.front();
      probe.p_det_expl = p_det_expl_values.front();
      probe.validate();
    }
  }
  for (double p : p_det_vuln_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(
          "sweep grid: p_det_vuln value out of [0, 1]: " + std::to_string(p));
    }
  }
  for (double p : p_det_expl_values) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument(
          "sweep grid: p_det_expl value out of [0, 1]: " + std::to_string(p));
    }
  }
}

std::vector<SimConfig> enumerate_grid(const SweepGrid& grid) {
  grid.validate();
  std::vector<SimConfig> configs;
  configs.reserve(grid.config_count());
  for (int s : grid.scouts_values) {
    for (int d : grid.detectors_values) {
      for (double pdv : grid.p_det_vuln_values) {
        for (double pde : grid.p_det_expl_values) {
          SimConfig config = grid.base;
          config.scouts = s;
          config.detectors = d;
          config.p_det_vuln = pdv;
          config.p_det_expl = pde;
          config.seed = 0;  // assigned per (config, trial) by run_sweep
          configs.push_back(config);
        }
      }
    }
  }
  return configs;
}

namespace {

DatasetRow make_row(int config_index, int trial, const SimConfig& config,
                    const RunMetrics& metrics) {
  DatasetRow row;
  row.config_index = config_index;
  row.trial = trial;
  row.seed = config.seed;
  row.n_routers = config.n_routers;
  row.ba_m = config.ba_m;
  row.team_size = config.team_size;
  row.scouts = config.scouts;
  row.exploiters = config.exploiters();
  row.detectors = config.detectors;
  row.interceptors = config.interceptors();
  row.vul_rate = config.vul_rate;
  row.p_scout = config.p_scout;
  row.p_exploiter = config.p_exploiter;
  row.p_det_vuln = config.p_det_vuln;
  row.p_det_expl = config.p_det_expl;
  row.delta_interceptor = config.delta_interceptor;
  row.max_ticks = config.max_ticks;
  row.mean_compromised = metrics.mean_compromised;
  row.max_compromised = metrics.max_compromised;
  row.mean_offline = metrics.mean_offline;
  row.max_offline = metrics.max_offline;
  row.metric2_two_thirds = metrics.two_thirds_breached;
  row.metric2_full = metrics.full_network_breached;
  row.metric3_center = metrics.center_compromised;
  return row;
}

}  // namespace

std::vector<DatasetRow> run_sweep(const SweepGrid& grid, int parallelism) {
  if (parallelism < 1) {
    throw std::invalid_argument("run_sweep: parallelism must be >= 1");
  }
  const std::vector<SimConfig> configs = enumerate_grid(grid);
  const std::size_t total = configs.size() * grid.trials;
  std::vector<DatasetRow> rows(total);

  std::atomic<std::size_t> cursor{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::string error_context;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= total) return;
      if (first_error) return;  // fail fast, other slots are abandoned
      const int config_index = static_cast<int>(i / grid.trials);
      const int trial = static_cast<int>(i % grid.trials);
      SimConfig config = configs[config_index];
      config.seed = derive_run_seed(grid.master_seed, config_index, trial);
      try {
        const RunMetrics metrics = run_simulation(config);
        rows[i] = make_row(config_index, trial, config, metrics);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
          error_context = "config_index=" + std::to_string(config_index) +
                          ", trial=" + std::to_string(trial);
        }
        return;
      }
    }
  };

  if (parallelism == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(parallelism);
    for (int t = 0; t < parallelism; ++t) threads.emplace_back(worker);
    for (auto& thread : threads) thread.join();
  }

  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep run failed at " + error_context + ": " +
                               e.what());
    }
  }
  // Slot i = config_index * trials + trial, so rows are already sorted by
  // (config_index, trial) independent of worker scheduling.
  return rows;
}

void write_dataset(const std::vector<DatasetRow>& rows, std::ostream& out) {
  out << kDatasetHeader << '\n';
  char line[512];
  for (const DatasetRow& r : rows) {
    std::snprintf(line, sizeof(line),
                  "%d,%d,%" PRIu64
                  ",%d,%d,%d,%d,%d,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%d,%d,"
                  "%.6f,%.6f,%.6f,%.6f,%d,%d,%d\n",
                  r.config_index, r.trial, r.seed, r.n_routers, r.ba_m,
                  r.team_size, r.scouts, r.exploiters, r.detectors,
                  r.interceptors, r.vul_rate, r.p_scout, r.p_exploiter,
                  r.p_det_vuln, r.p_det_expl, r.delta_interceptor, r.max_ticks,
                  r.mean_compromised, r.max_compromised, r.mean_offline,
                  r.max_offline, r.metric2_two_thirds ? 1 : 0,
                  r.metric2_full ? 1 : 0, r.metric3_center ? 1 : 0);
    out << line;
  }
}

void write_dataset(const std::vector<DatasetRow>& rows,
                   const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::binary);
  if (!out) {
    throw std::runtime_error("write_dataset: cannot open '" +
                             destination.string() + "' for writing");
  }
  write_dataset(rows, out);
  out.flush();
  if (!out) {
    throw std::runtime_error("write_dataset: write to '" +
                             destination.string() + "' failed");
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

}  // namespace

std::vector<DatasetRow> read_dataset(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("read_dataset: empty input");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetHeader) {
    throw std::runtime_error("read_dataset: unexpected header: " + line);
  }
  std::vector<DatasetRow> rows;
  int line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 24) {
      throw std::runtime_error("read_dataset: line " +
                               std::to_string(line_number) + " has " +
                               std::to_string(fields.size()) +
                               " fields, expected 24");
    }
    try {
      DatasetRow r;
      std::size_t f = 0;
      r.config_index = std::stoi(fields[f++]);
      r.trial = std::stoi(fields[f++]);
      r.seed = std::stoull(fields[f++]);
      r.n_routers = std::stoi(fields[f++]);
      r.ba_m = std::stoi(fields[f++]);
      r.team_size = std::stoi(fields[f++]);
      r.scouts = std::stoi(fields[f++]);
      r.exploiters = std::stoi(fields[f++]);
      r.detectors = std::stoi(fields[f++]);
      r.interceptors = std::stoi(fields[f++]);
      r.vul_rate = std::stod(fields[f++]);
      r.p_scout = std::stod(fields[f++]);
      r.p_exploiter = std::stod(fields[f++]);
      r.p_det_vuln = std::stod(fields[f++]);
      r.p_det_expl = std::stod(fields[f++]);
      r.delta_interceptor = std::stoi(fields[f++]);
      r.max_ticks = std::stoi(fields[f++]);
      r.mean_compromised = std::stod(fields[f++]);
      r.max_compromised = std::stod(fields[f++]);
      r.mean_offline = std::stod(fields[f++]);
      r.max_offline = std::stod(fields[f++]);
      r.metric2_two_thirds = std::stoi(fields[f++]) != 0;
      r.metric2_full = std::stoi(fields[f++]) != 0;
      r.metric3_center = std::stoi(fields[f++]) != 0;
      rows.push_back(r);
    } catch (const std::exception& e) {
      throw std::runtime_error("read_dataset: line " +
                               std::to_string(line_number) +
                               ": " + e.what());
    }
  }
  return rows;
}

std::vector<DatasetRow> read_dataset(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    throw std::runtime_error("read_dataset: cannot open '" + source.string() +
                             "'");
  }
  return read_dataset(in);
}

}  // namespace cctf
