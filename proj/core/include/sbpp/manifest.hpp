#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbpp/harness.hpp"

namespace sbpp {

std::string_view tool_version();

/// Written beside every CLI output. `config_text` is the fully resolved
/// scenario (write_config), so together with `command` and `master_seed` it
/// reproduces the outputs bit for bit.
struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string config_text;
  std::uint64_t master_seed = 0;
  std::string version;
  std::vector<std::string> outputs;
  double wall_clock_seconds = 0.0;
  std::vector<std::string> notes;
};

std::string to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

}  // namespace sbpp
