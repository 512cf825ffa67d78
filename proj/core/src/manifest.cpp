#include "sbpp/manifest.hpp"

#include <json.hpp>

#include "sbpp/errors.hpp"

namespace sbpp {

std::string_view tool_version() { return "sbpp 0.3.0"; }

std::string to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["arguments"] = m.arguments;
  j["master_seed"] = m.master_seed;
  j["version"] = m.version;
  j["config"] = m.config_text;
  j["outputs"] = m.outputs;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  if (!m.notes.empty()) j["notes"] = m.notes;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.arguments = j.at("arguments").get<std::vector<std::string>>();
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.config_text = j.at("config").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    if (j.contains("notes")) m.notes = j["notes"].get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("manifest: ") + e.what());
  }
}

}  // namespace sbpp
