#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "cctf/engine.hpp"
#include "cctf/sweep.hpp"

namespace cctf {

// Config files are plain text, one `key = value` per line:
//
//   - `#` or `;` starts a comment; blank lines are skipped
//   - `[sim]` holds base simulation parameters (also the default section
//     for keys before any header); `[sweep]` holds the grid
//   - probabilities accept `0.25` or `25%`
//   - [sweep] lists accept `a, b, c` and integer spans `1-9`
//
// Keys in [sim]: n_routers, ba_m, team_size, scouts, detectors, vul_rate,
// p_scout, p_exploiter, p_det_vuln, p_det_expl, delta_interceptor,
// max_ticks, interceptor_mode, seed.
// Keys in [sweep]: scouts, detectors, p_det_vuln, p_det_expl, trials,
// master_seed.
//
// Errors carry the file name and line number (ConfigError).
struct ConfigDocument {
  // section -> key -> (raw value, line number)
  std::map<std::string, std::map<std::string, std::pair<std::string, int>>>
      sections;
  std::string source_name;
};

// Flag overrides, applied after the file: key -> raw value text. Keys use
// the same names as the [sim] / [sweep] sections.
using ConfigOverrides = std::map<std::string, std::string>;

ConfigDocument parse_config_file(std::istream& in, const std::string& name);
ConfigDocument parse_config_text(const std::string& text,
                                 const std::string& name);
ConfigDocument load_config_file(const std::string& path);

// Single-run config: [sim] keys with absent fields defaulted (30 routers,
// team size 10, 2% vulnerability rate, 100% scout, 2% exploiter, 10-tick
// interceptor delay, 1000 ticks). scouts, detectors, p_det_vuln and
// p_det_expl have no single-run default and must come from the file or an
// override. The result is range-validated.
SimConfig make_sim_config(const ConfigDocument& doc,
                          const ConfigOverrides& overrides = {});

// Sweep grid: base config from [sim] (the swept fields need no values
// there), grid lists from [sweep]. Absent grid keys default to the full
// demonstration grid: scouts 1-9, detectors 1-9, both detector probability
// lists {0.25, 0.5, 0.75, 1.0}, 5 trials.
SweepGrid make_sweep_grid(const ConfigDocument& doc,
                          const ConfigOverrides& overrides = {});

// One `key = value` line per field, for echoing the effective config.
std::string describe(const SimConfig& config);
std::string describe(const SweepGrid& grid);

}  // namespace cctf
