#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cctf/sweep.hpp"

namespace cctf {

// The six outcome columns correlated against team strategy, in table order.
inline constexpr std::array<std::string_view, 6> kCorrelationColumns = {
    "mean_compromised", "max_compromised",    "mean_offline",
    "max_offline",      "metric2_two_thirds", "metric3_center"};

// 2 x 6 Pearson coefficients: attacker strategy (scout count) and defender
// strategy (interceptor count) against each outcome column. The strategy
// axes are the two composition knobs; scouts and exploiters are complements
// (exploiters = team_size - scouts), so correlating against exploiters
// instead merely negates the attacker row.
struct CorrelationTable {
  std::array<double, 6> attacker{};
  std::array<double, 6> defender{};
};

// Mean or max of one outcome column per (exploiters, interceptors) cell,
// aggregated over all probability settings and trials.
struct SurfaceTable {
  std::string metric;
  std::string statistic;
  std::vector<int> exploiter_values;    // ascending, one per grid row
  std::vector<int> interceptor_values;  // ascending, one per grid column
  std::vector<std::vector<double>> values;  // [exploiter][interceptor]
};

enum class SurfaceStat { mean, max };

// Pearson product-moment coefficient, accumulated as running co-moments.
// Throws std::invalid_argument on length mismatch or length < 2, and
// UndefinedCorrelationError when either sequence has zero variance.
double pearson_r(std::span<const double> x, std::span<const double> y);

// Correlates each outcome column of kCorrelationColumns against scout and
// interceptor counts. Booleans enter as 0/1. By default every dataset row
// is one observation; with per_config_means the rows of each config_index
// are averaged first. Zero-variance errors are rethrown with the offending
// cell named.
CorrelationTable correlation_table(const std::vector<DatasetRow>& rows,
                                   bool per_config_means = false);

// Groups rows by (exploiters, interceptors) and aggregates one metric
// column. Throws std::invalid_argument for an unknown column name.
SurfaceTable surface_table(const std::vector<DatasetRow>& rows,
                           std::string_view metric, SurfaceStat statistic);

// 2 x 6 CSV: header row of column names, then the attacker and defender
// strategy rows.
void write_correlation_csv(std::ostream& out, const CorrelationTable& table);

// Dense grid CSV: exploiter count in the first column, interceptor counts
// as the remaining column headers.
void write_surface_csv(std::ostream& out, const SurfaceTable& table);

}  // namespace cctf
