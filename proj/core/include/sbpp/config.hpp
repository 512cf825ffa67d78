#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sbpp/harness.hpp"

namespace sbpp {

// Scenario files are plain `key = value` lines grouped in sections:
//
//   [region]      id, consumers, periods_per_day, usage_min, usage_max
//   [attackers]   <consumer id> = multiplicative <alpha>
//                 <consumer id> = fixed_offset <eta> [subtract|add]
//                 <consumer id> = random_offset <theta_max> [subtract|add]
//   [detection]   threshold, min_samples, mode, case2_filter, filter_quantile
//   [billing]     tariff (one value or a comma list, one per period),
//                 elasticity, elasticity_level, elasticity_factor
//   [experiment]  months, seed, repetitions, threads, table_attacker,
//                 durations (comma list of months)
//
// `#` starts a comment. Keys not listed above are errors. Missing keys take
// the ScenarioConfig defaults.

/// Parses and validates a scenario. Throws ConfigError with the line number
/// and key on any problem. `origin` names the source in messages.
ScenarioConfig parse_config(std::string_view text,
                            std::string_view origin = "<config>");

/// Reads `path` and parses it; IoError when unreadable.
ScenarioConfig load_config(const std::filesystem::path& path);

/// Serializes every field; parse_config(write_config(c)) == c.
std::string write_config(const ScenarioConfig& config);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double value);

}  // namespace sbpp
