#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "cctf/engine.hpp"

namespace cctf {

// The parameter grid: every combination of the four swept values, repeated
// for `trials` seeds. Non-swept parameters come from `base`.
struct SweepGrid {
  std::vector<int> scouts_values;
  std::vector<int> detectors_values;
  std::vector<double> p_det_vuln_values;
  std::vector<double> p_det_expl_values;
  int trials = 5;
  SimConfig base;
  std::uint64_t master_seed = 0;

  std::size_t config_count() const;
  std::size_t run_count() const { return config_count() * trials; }

  // Throws std::invalid_argument on empty lists, trials < 1, or any value
  // that would make a grid member config invalid.
  void validate() const;
};

// One sweep result record; flat so it maps 1:1 onto a CSV row.
struct DatasetRow {
  int config_index = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  int n_routers = 0;
  int ba_m = 0;
  int team_size = 0;
  int scouts = 0;
  int exploiters = 0;
  int detectors = 0;
  int interceptors = 0;
  double vul_rate = 0.0;
  double p_scout = 0.0;
  double p_exploiter = 0.0;
  double p_det_vuln = 0.0;
  double p_det_expl = 0.0;
  int delta_interceptor = 0;
  int max_ticks = 0;
  double mean_compromised = 0.0;
  double max_compromised = 0.0;
  double mean_offline = 0.0;
  double max_offline = 0.0;
  bool metric2_two_thirds = false;
  bool metric2_full = false;
  bool metric3_center = false;
};

// Exact header of the dataset CSV, in column order.
extern const char* const kDatasetHeader;

// Per-run seed: master seed and the run coordinates pushed through two
// mix64 rounds. Fixed constants, so a dataset is reproducible from
// (master_seed, grid) alone and every run has an unrelated stream.
std::uint64_t derive_run_seed(std::uint64_t master_seed,
                              std::uint64_t config_index, std::uint64_t trial);

// Cartesian product in fixed nesting order: scouts outermost, then
// detectors, then p_det_vuln, then p_det_expl innermost. The position in
// this order is the config_index.
std::vector<SimConfig> enumerate_grid(const SweepGrid& grid);

// All runs of the grid. Workers split the (config, trial) space; output is
// ordered by (config_index, trial) whatever the execution order, so any
// parallelism level yields identical rows. A failed run is reported with
// its (config_index, trial) attached.
std::vector<DatasetRow> run_sweep(const SweepGrid& grid, int parallelism);

// CSV with kDatasetHeader; booleans as 0/1, rates and fractions with six
// decimal digits, every row newline-terminated.
void write_dataset(const std::vector<DatasetRow>& rows, std::ostream& out);
void write_dataset(const std::vector<DatasetRow>& rows,
                   const std::filesystem::path& destination);

std::vector<DatasetRow> read_dataset(std::istream& in);
std::vector<DatasetRow> read_dataset(const std::filesystem::path& source);

}  // namespace cctf
