#include "cctf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "cctf/errors.hpp"

namespace cctf {

double pearson_r(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument(
        "pearson_r: length mismatch (" + std::to_string(x.size()) + " vs " +
        std::to_string(y.size()) + ")");
  }
  if (x.size() < 2) {
    throw std::invalid_argument("pearson_r: need at least 2 points, got " +
                                std::to_string(x.size()));
  }
  // Welford-style running co-moments: one pass, no catastrophic cancellation
  // from subtracting large squared sums.
  double mean_x = 0.0, mean_y = 0.0;
  double m2_x = 0.0, m2_y = 0.0, c2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double k = 1.0 / static_cast<double>(i + 1);
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    mean_x += dx * k;
    mean_y += dy * k;
    // dx is the pre-update delta, (y[i] - mean_y) the post-update one; their
    // product telescopes to the exact co-moment.
    m2_x += dx * (x[i] - mean_x);
    m2_y += dy * (y[i] - mean_y);
    c2 += dx * (y[i] - mean_y);
  }
  if (m2_x <= 0.0 || m2_y <= 0.0) {
    throw UndefinedCorrelationError(
        "pearson_r: undefined for a constant sequence (zero variance in " +
        std::string(m2_x <= 0.0 ? "x" : "y") + ")");
  }
  const double r = c2 / std::sqrt(m2_x * m2_y);
  return std::clamp(r, -1.0, 1.0);
}

namespace {

double column_value(const DatasetRow& row, std::size_t column) {
  switch (column) {
    case 0: return row.mean_compromised;
    case 1: return row.max_compromised;
    case 2: return row.mean_offline;
    case 3: return row.max_offline;
    case 4: return row.metric2_two_thirds ? 1.0 : 0.0;
    case 5: return row.metric3_center ? 1.0 : 0.0;
    default: throw std::logic_error("column_value: bad index");
  }
}

struct Observations {
  std::vector<double> scouts;
  std::vector<double> interceptors;
  std::array<std::vector<double>, 6> outcomes;
};

Observations collect(const std::vector<DatasetRow>& rows,
                     bool per_config_means) {
  Observations obs;
  if (!per_config_means) {
    obs.scouts.reserve(rows.size());
    obs.interceptors.reserve(rows.size());
    for (const DatasetRow& row : rows) {
      obs.scouts.push_back(row.scouts);
      obs.interceptors.push_back(row.interceptors);
      for (std::size_t c = 0; c < 6; ++c) {
        obs.outcomes[c].push_back(column_value(row, c));
      }
    }
    return obs;
  }
  struct Cell {
    double scouts = 0.0;
    double interceptors = 0.0;
    std::array<double, 6> sums{};
    int count = 0;
  };
  std::map<int, Cell> by_config;
  for (const DatasetRow& row : rows) {
    Cell& cell = by_config[row.config_index];
    cell.scouts = row.scouts;
    cell.interceptors = row.interceptors;
    for (std::size_t c = 0; c < 6; ++c) {
      cell.sums[c] += column_value(row, c);
    }
    ++cell.count;
  }
  for (const auto& [index, cell] : by_config) {
    obs.scouts.push_back(cell.scouts);
    obs.interceptors.push_back(cell.interceptors);
    for (std::size_t c = 0; c < 6; ++c) {
      obs.outcomes[c].push_back(cell.sums[c] / cell.count);
    }
  }
  return obs;
}

}  // namespace

CorrelationTable correlation_table(const std::vector<DatasetRow>& rows,
                                   bool per_config_means) {
  if (rows.size() < 2) {
    throw std::invalid_argument(
        "correlation_table: need at least 2 dataset rows, got " +
        std::to_string(rows.size()));
  }
  const Observations obs = collect(rows, per_config_means);
  CorrelationTable table;
  for (std::size_t c = 0; c < 6; ++c) {
    try {
      table.attacker[c] = pearson_r(obs.scouts, obs.outcomes[c]);
    } catch (const UndefinedCorrelationError& e) {
      throw UndefinedCorrelationError(
          "correlation_table: cell (attacker_strategy, " +
          std::string(kCorrelationColumns[c]) + "): " + e.what());
    }
    try {
      table.defender[c] = pearson_r(obs.interceptors, obs.outcomes[c]);
    } catch (const UndefinedCorrelationError& e) {
      throw UndefinedCorrelationError(
          "correlation_table: cell (defender_strategy, " +
          std::string(kCorrelationColumns[c]) + "): " + e.what());
    }
  }
  return table;
}

SurfaceTable surface_table(const std::vector<DatasetRow>& rows,
                           std::string_view metric, SurfaceStat statistic) {
  const auto found =
      std::find(kCorrelationColumns.begin(), kCorrelationColumns.end(), metric);
  if (found == kCorrelationColumns.end()) {
    throw std::invalid_argument("surface_table: unknown metric column '" +
                                std::string(metric) + "'");
  }
  if (rows.empty()) {
    throw std::invalid_argument("surface_table: empty dataset");
  }
  const std::size_t column = found - kCorrelationColumns.begin();

  struct Agg {
    double sum = 0.0;
    double max = 0.0;
    int count = 0;
  };
  std::map<std::pair<int, int>, Agg> cells;
  for (const DatasetRow& row : rows) {
    Agg& agg = cells[{row.exploiters, row.interceptors}];
    const double v = column_value(row, column);
    agg.sum += v;
    agg.max = agg.count == 0 ? v : std::max(agg.max, v);
    ++agg.count;
  }

  SurfaceTable table;
  table.metric = std::string(metric);
  table.statistic = statistic == SurfaceStat::mean ? "mean" : "max";
  for (const auto& [key, agg] : cells) {
    // map iteration is sorted by (exploiters, interceptors), so exploiter
    // keys arrive in ascending runs; interceptors still need dedup.
    if (table.exploiter_values.empty() ||
        table.exploiter_values.back() != key.first) {
      table.exploiter_values.push_back(key.first);
    }
    if (std::find(table.interceptor_values.begin(),
                  table.interceptor_values.end(),
                  key.second) == table.interceptor_values.end()) {
      table.interceptor_values.push_back(key.second);
    }
  }
  std::sort(table.interceptor_values.begin(), table.interceptor_values.end());

  table.values.assign(table.exploiter_values.size(),
                      std::vector<double>(table.interceptor_values.size(),
                                          std::nan("")));
  for (const auto& [key, agg] : cells) {
    const std::size_t e =
        std::find(table.exploiter_values.begin(), table.exploiter_values.end(),
                  key.first) -
        table.exploiter_values.begin();
    const std::size_t i = std::find(table.interceptor_values.begin(),
                                    table.interceptor_values.end(),
                                    key.second) -
                          table.interceptor_values.begin();
    table.values[e][i] =
        statistic == SurfaceStat::mean ? agg.sum / agg.count : agg.max;
  }
  return table;
}

void write_correlation_csv(std::ostream& out, const CorrelationTable& table) {
  out << "strategy";
  for (const std::string_view column : kCorrelationColumns) {
    out << ',' << column;
  }
  out << '\n';
  char cell[32];
  const auto write_row = [&](const char* name,
                             const std::array<double, 6>& values) {
    out << name;
    for (const double v : values) {
      std::snprintf(cell, sizeof(cell), ",%.6f", v);
      out << cell;
    }
    out << '\n';
  };
  write_row("attacker_strategy", table.attacker);
  write_row("defender_strategy", table.defender);
}

void write_surface_csv(std::ostream& out, const SurfaceTable& table) {
  out << "# metric=" << table.metric << " statistic=" << table.statistic
      << '\n';
  out << "exploiters";
  for (const int i : table.interceptor_values) {
    out << ",i" << i;
  }
  out << '\n';
  char cell[32];
  for (std::size_t e = 0; e < table.exploiter_values.size(); ++e) {
    out << table.exploiter_values[e];
    for (std::size_t i = 0; i < table.interceptor_values.size(); ++i) {
      std::snprintf(cell, sizeof(cell), ",%.6f", table.values[e][i]);
      out << cell;
    }
    out << '\n';
  }
}

}  // namespace cctf
