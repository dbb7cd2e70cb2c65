#include "cctf/config_file.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "cctf/errors.hpp"

namespace cctf {

namespace {

std::string trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(begin, end - begin + 1));
}

constexpr std::array<std::string_view, 14> kSimKeys = {
    "n_routers",   "ba_m",       "team_size",         "scouts",
    "detectors",   "vul_rate",   "p_scout",           "p_exploiter",
    "p_det_vuln",  "p_det_expl", "delta_interceptor", "max_ticks",
    "interceptor_mode", "seed"};

constexpr std::array<std::string_view, 6> kSweepKeys = {
    "scouts", "detectors", "p_det_vuln", "p_det_expl", "trials",
    "master_seed"};

bool known_key(const std::string& key,
               std::span<const std::string_view> keys) {
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

// line >= 1 points into the file; 0 marks a flag override.
[[noreturn]] void fail(const std::string& source, int line,
                       const std::string& key, const std::string& message) {
  if (line >= 1) {
    throw ConfigError(source + ":" + std::to_string(line) + ": key '" + key +
                      "': " + message);
  }
  throw ConfigError(source + ": override '" + key + "': " + message);
}

long long parse_integer(const std::string& text) {
  const std::string value = trim(text);
  if (value.empty()) throw std::invalid_argument("empty value");
  std::size_t consumed = 0;
  long long parsed = 0;
  try {
    parsed = std::stoll(value, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + value + "'");
  }
  if (consumed != value.size()) {
    throw std::invalid_argument("not an integer: '" + value + "'");
  }
  return parsed;
}

std::uint64_t parse_unsigned(const std::string& text) {
  const std::string value = trim(text);
  if (value.empty()) throw std::invalid_argument("empty value");
  if (value.front() == '-') {
    throw std::invalid_argument("must be non-negative: '" + value + "'");
  }
  std::size_t consumed = 0;
  std::uint64_t parsed = 0;
  try {
    parsed = std::stoull(value, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an unsigned integer: '" + value + "'");
  }
  if (consumed != value.size()) {
    throw std::invalid_argument("not an unsigned integer: '" + value + "'");
  }
  return parsed;
}

// Accepts "0.25" or "25%".
double parse_probability(const std::string& text) {
  std::string value = trim(text);
  if (value.empty()) throw std::invalid_argument("empty value");
  double scale = 1.0;
  if (value.back() == '%') {
    value = trim(value.substr(0, value.size() - 1));
    scale = 0.01;
    if (value.empty()) throw std::invalid_argument("empty percentage");
  }
  std::size_t consumed = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &consumed);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + value + "'");
  }
  if (consumed != value.size()) {
    throw std::invalid_argument("not a number: '" + value + "'");
  }
  return parsed * scale;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    const std::string item =
        trim(comma == std::string::npos ? text.substr(start)
                                        : text.substr(start, comma - start));
    if (item.empty()) throw std::invalid_argument("empty list item");
    items.push_back(item);
    if (comma == std::string::npos) return items;
    start = comma + 1;
  }
}

// "1, 3, 5" and spans like "1-9" (inclusive, ascending).
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  for (const std::string& item : split_list(text)) {
    const std::size_t dash = item.find('-', 1);  // pos 0 would be a sign
    if (dash != std::string::npos) {
      const long long lo = parse_integer(item.substr(0, dash));
      const long long hi = parse_integer(item.substr(dash + 1));
      if (lo > hi) {
        throw std::invalid_argument("descending span: '" + item + "'");
      }
      for (long long v = lo; v <= hi; ++v) values.push_back(static_cast<int>(v));
    } else {
      values.push_back(static_cast<int>(parse_integer(item)));
    }
  }
  return values;
}

std::vector<double> parse_probability_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& item : split_list(text)) {
    values.push_back(parse_probability(item));
  }
  return values;
}

struct RawValue {
  std::string text;
  int line = 0;  // 0 = flag override
};

using Entries = std::map<std::string, RawValue>;

Entries section_entries(const ConfigDocument& doc, const std::string& name) {
  Entries entries;
  const auto section = doc.sections.find(name);
  if (section == doc.sections.end()) return entries;
  for (const auto& [key, value] : section->second) {
    entries[key] = RawValue{value.first, value.second};
  }
  return entries;
}

// Applies one [sim]-style entry to `config`. Returns false if the key does
// not belong to the sim section.
bool apply_sim_key(SimConfig& config, const std::string& source,
                   const std::string& key, const RawValue& value) {
  if (!known_key(key, kSimKeys)) return false;
  try {
    if (key == "n_routers") {
      config.n_routers = static_cast<int>(parse_integer(value.text));
    } else if (key == "ba_m") {
      config.ba_m = static_cast<int>(parse_integer(value.text));
    } else if (key == "team_size") {
      config.team_size = static_cast<int>(parse_integer(value.text));
    } else if (key == "scouts") {
      config.scouts = static_cast<int>(parse_integer(value.text));
    } else if (key == "detectors") {
      config.detectors = static_cast<int>(parse_integer(value.text));
    } else if (key == "vul_rate") {
      config.vul_rate = parse_probability(value.text);
    } else if (key == "p_scout") {
      config.p_scout = parse_probability(value.text);
    } else if (key == "p_exploiter") {
      config.p_exploiter = parse_probability(value.text);
    } else if (key == "p_det_vuln") {
      config.p_det_vuln = parse_probability(value.text);
    } else if (key == "p_det_expl") {
      config.p_det_expl = parse_probability(value.text);
    } else if (key == "delta_interceptor") {
      config.delta_interceptor = static_cast<int>(parse_integer(value.text));
    } else if (key == "max_ticks") {
      config.max_ticks = static_cast<int>(parse_integer(value.text));
    } else if (key == "interceptor_mode") {
      config.interceptor_mode = interceptor_mode_from_string(trim(value.text));
    } else if (key == "seed") {
      config.seed = parse_unsigned(value.text);
    }
  } catch (const std::invalid_argument& e) {
    fail(source, value.line, key, e.what());
  }
  return true;
}

}  // namespace

ConfigDocument parse_config_file(std::istream& in, const std::string& name) {
  ConfigDocument doc;
  doc.source_name = name;
  std::string section = "sim";
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line_number == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
      line.erase(0, 3);
    }
    const std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    const std::string content = trim(line);
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') {
        throw ConfigError(name + ":" + std::to_string(line_number) +
                          ": unterminated section header");
      }
      section = trim(content.substr(1, content.size() - 2));
      if (section != "sim" && section != "sweep") {
        throw ConfigError(name + ":" + std::to_string(line_number) +
                          ": unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t equals = content.find('=');
    if (equals == std::string::npos) {
      throw ConfigError(name + ":" + std::to_string(line_number) +
                        ": expected 'key = value', got '" + content + "'");
    }
    const std::string key = trim(content.substr(0, equals));
    const std::string value = trim(content.substr(equals + 1));
    if (key.empty()) {
      throw ConfigError(name + ":" + std::to_string(line_number) +
                        ": empty key");
    }
    // last assignment wins, as in common INI dialects
    doc.sections[section][key] = {value, line_number};
  }
  return doc;
}

ConfigDocument parse_config_text(const std::string& text,
                                 const std::string& name) {
  std::istringstream in(text);
  return parse_config_file(in, name);
}

ConfigDocument load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path + "'");
  }
  return parse_config_file(in, path);
}

SimConfig make_sim_config(const ConfigDocument& doc,
                          const ConfigOverrides& overrides) {
  const std::string& source =
      doc.source_name.empty() ? std::string("<config>") : doc.source_name;
  Entries entries = section_entries(doc, "sim");
  for (const auto& [key, raw] : entries) {
    if (!known_key(key, kSimKeys)) {
      fail(source, raw.line, key, "unknown [sim] key");
    }
  }
  for (const auto& [key, text] : overrides) {
    entries[key] = RawValue{text, 0};
  }

  SimConfig config;
  for (const auto& [key, value] : entries) {
    if (!apply_sim_key(config, source, key, value)) {
      fail(source, value.line, key, "unknown [sim] key");
    }
  }

  std::string missing;
  for (const std::string_view required :
       {std::string_view("scouts"), std::string_view("detectors"),
        std::string_view("p_det_vuln"), std::string_view("p_det_expl")}) {
    if (!entries.count(std::string(required))) {
      if (!missing.empty()) missing += ", ";
      missing += required;
    }
  }
  if (!missing.empty()) {
    throw ConfigError(source + ": missing required key(s): " + missing +
                      " (no single-run default; set them in [sim] or by flag)");
  }

  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

SweepGrid make_sweep_grid(const ConfigDocument& doc,
                          const ConfigOverrides& overrides) {
  const std::string& source =
      doc.source_name.empty() ? std::string("<config>") : doc.source_name;

  SweepGrid grid;
  grid.scouts_values = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  grid.detectors_values = {1, 2, 3, 4, 5, 6, 7, 8, 9};
  grid.p_det_vuln_values = {0.25, 0.5, 0.75, 1.0};
  grid.p_det_expl_values = {0.25, 0.5, 0.75, 1.0};
  grid.trials = 5;
  grid.master_seed = 0;

  Entries sim_entries = section_entries(doc, "sim");
  for (const auto& [key, raw] : sim_entries) {
    if (!known_key(key, kSimKeys)) {
      fail(source, raw.line, key, "unknown [sim] key");
    }
  }
  Entries sweep_entries = section_entries(doc, "sweep");
  for (const auto& [key, raw] : sweep_entries) {
    if (!known_key(key, kSweepKeys)) {
      fail(source, raw.line, key, "unknown [sweep] key");
    }
  }
  // Overrides route by name: grid keys go to [sweep], the rest to [sim].
  for (const auto& [key, text] : overrides) {
    if (known_key(key, kSweepKeys)) {
      sweep_entries[key] = RawValue{text, 0};
    } else {
      sim_entries[key] = RawValue{text, 0};
    }
  }

  for (const auto& [key, value] : sim_entries) {
    // The swept fields are owned by [sweep]; a [sim] value for them would be
    // silently ignored, so reject it outright.
    if (key == "scouts" || key == "detectors" || key == "p_det_vuln" ||
        key == "p_det_expl") {
      fail(source, value.line, key,
           "swept parameter; set it under [sweep], not [sim]");
    }
    if (!apply_sim_key(grid.base, source, key, value)) {
      fail(source, value.line, key, "unknown [sim] key");
    }
  }

  for (const auto& [key, value] : sweep_entries) {
    try {
      if (key == "scouts") {
        grid.scouts_values = parse_int_list(value.text);
      } else if (key == "detectors") {
        grid.detectors_values = parse_int_list(value.text);
      } else if (key == "p_det_vuln") {
        grid.p_det_vuln_values = parse_probability_list(value.text);
      } else if (key == "p_det_expl") {
        grid.p_det_expl_values = parse_probability_list(value.text);
      } else if (key == "trials") {
        grid.trials = static_cast<int>(parse_integer(value.text));
      } else if (key == "master_seed") {
        grid.master_seed = parse_unsigned(value.text);
      } else {
        fail(source, value.line, key, "unknown [sweep] key");
      }
    } catch (const std::invalid_argument& e) {
      fail(source, value.line, key, e.what());
    }
  }

  try {
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return grid;
}

namespace {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", value);
  return buffer;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

void describe_sim_into(std::string& out, const SimConfig& config,
                       bool include_swept) {
  out += "n_routers = " + std::to_string(config.n_routers) + "\n";
  out += "ba_m = " + std::to_string(config.ba_m) + "\n";
  out += "team_size = " + std::to_string(config.team_size) + "\n";
  if (include_swept) {
    out += "scouts = " + std::to_string(config.scouts) + "\n";
    out += "detectors = " + std::to_string(config.detectors) + "\n";
  }
  out += "vul_rate = " + format_double(config.vul_rate) + "\n";
  out += "p_scout = " + format_double(config.p_scout) + "\n";
  out += "p_exploiter = " + format_double(config.p_exploiter) + "\n";
  if (include_swept) {
    out += "p_det_vuln = " + format_double(config.p_det_vuln) + "\n";
    out += "p_det_expl = " + format_double(config.p_det_expl) + "\n";
  }
  out += "delta_interceptor = " + std::to_string(config.delta_interceptor) +
         "\n";
  out += "max_ticks = " + std::to_string(config.max_ticks) + "\n";
  out += std::string("interceptor_mode = ") +
         to_string(config.interceptor_mode) + "\n";
}

}  // namespace

std::string describe(const SimConfig& config) {
  std::string out = "[sim]\n";
  describe_sim_into(out, config, true);
  out += "seed = " + std::to_string(config.seed) + "\n";
  return out;
}

std::string describe(const SweepGrid& grid) {
  std::string out = "[sim]\n";
  describe_sim_into(out, grid.base, false);
  out += "[sweep]\n";
  out += "scouts = " + join_ints(grid.scouts_values) + "\n";
  out += "detectors = " + join_ints(grid.detectors_values) + "\n";
  out += "p_det_vuln = " + join_doubles(grid.p_det_vuln_values) + "\n";
  out += "p_det_expl = " + join_doubles(grid.p_det_expl_values) + "\n";
  out += "trials = " + std::to_string(grid.trials) + "\n";
  out += "master_seed = " + std::to_string(grid.master_seed) + "\n";
  return out;
}

}  // namespace cctf
