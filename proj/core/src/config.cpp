#include "sbpp/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include "sbpp/errors.hpp"

namespace sbpp {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view origin) : origin_(origin) {}

  [[noreturn]] void fail(std::string_view key, const std::string& what) const {
    std::ostringstream msg;
    msg << origin_ << ":" << line_ << ": ";
    if (!key.empty()) msg << "'" << key << "': ";
    msg << what;
    throw ConfigError(msg.str());
  }

  double number(std::string_view key, std::string_view v) const {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      fail(key, "expected a number, got '" + std::string(v) + "'");
    }
    return out;
  }

  template <class Int>
  Int integer(std::string_view key, std::string_view v) const {
    Int out{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
      fail(key, "expected an integer, got '" + std::string(v) + "'");
    }
    return out;
  }

  bool boolean(std::string_view key, std::string_view v) const {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(key, "expected true or false, got '" + std::string(v) + "'");
  }

  std::vector<double> numbers(std::string_view key, std::string_view v) const {
    std::vector<double> out;
    for (auto part : split(v, ',')) out.push_back(number(key, part));
    return out;
  }

  OffsetDirection direction(std::string_view key, std::string_view v) const {
    if (v == "subtract") return OffsetDirection::kSubtract;
    if (v == "add") return OffsetDirection::kAdd;
    fail(key, "direction must be subtract or add, got '" + std::string(v) + "'");
  }

  BehaviorModel behavior(std::string_view key, std::string_view v) const {
    const auto w = words(v);
    if (w.empty()) fail(key, "missing behavior");
    if (w[0] == "benign" && w.size() == 1) return Benign{};
    if (w[0] == "multiplicative" && w.size() == 2) {
      return Multiplicative{number(key, w[1])};
    }
    if ((w[0] == "fixed_offset" || w[0] == "random_offset") &&
        (w.size() == 2 || w.size() == 3)) {
      const double amount = number(key, w[1]);
      const OffsetDirection dir =
          w.size() == 3 ? direction(key, w[2]) : OffsetDirection::kSubtract;
      if (w[0] == "fixed_offset") return FixedOffset{amount, dir};
      return RandomOffset{amount, dir};
    }
    fail(key, "unrecognized behavior '" + std::string(v) + "'");
  }

  void assign(ScenarioConfig& c, std::string_view section, std::string_view key,
              std::string_view v) {
    if (section == "region") {
      if (key == "id") return void(c.region_id = integer<int>(key, v));
      if (key == "consumers") {
        return void(c.num_consumers = integer<std::size_t>(key, v));
      }
      if (key == "periods_per_day") {
        return void(c.periods_per_day = integer<int>(key, v));
      }
      if (key == "usage_min") return void(c.usage_min = number(key, v));
      if (key == "usage_max") return void(c.usage_max = number(key, v));
    } else if (section == "attackers") {
      const auto id = integer<ConsumerId>(key, key);
      c.attackers.push_back({id, behavior(key, v)});
      return;
    } else if (section == "detection") {
      if (key == "threshold") return void(c.detection.threshold = number(key, v));
      if (key == "min_samples") {
        return void(c.detection.min_samples = integer<std::size_t>(key, v));
      }
      if (key == "mode") {
        const auto mode = parse_detection_mode(v);
        if (!mode) {
          fail(key, "mode must be threshold, most_negative or strongest");
        }
        return void(c.mode = *mode);
      }
      if (key == "case2_filter") return void(c.case2_filter = boolean(key, v));
      if (key == "filter_quantile") {
        return void(c.filter_quantile = number(key, v));
      }
    } else if (section == "billing") {
      if (key == "tariff") return void(c.tariff = numbers(key, v));
      if (key == "elasticity") {
        return void(c.tariff_response.enabled = boolean(key, v));
      }
      if (key == "elasticity_level") {
        return void(c.tariff_response.level = number(key, v));
      }
      if (key == "elasticity_factor") {
        return void(c.tariff_response.usage_max_factor = number(key, v));
      }
    } else if (section == "experiment") {
      if (key == "months") return void(c.duration_months = number(key, v));
      if (key == "seed") {
        return void(c.master_seed = integer<std::uint64_t>(key, v));
      }
      if (key == "repetitions") {
        return void(c.repetitions = integer<std::size_t>(key, v));
      }
      if (key == "threads") return void(c.threads = integer<unsigned>(key, v));
      if (key == "table_attacker") {
        return void(c.table_attacker = integer<ConsumerId>(key, v));
      }
      if (key == "durations") return void(c.durations = numbers(key, v));
    } else {
      fail({}, "unknown section [" + std::string(section) + "]");
    }
    fail(key, "unknown key in [" + std::string(section) + "]");
  }

  ScenarioConfig parse(std::string_view text) {
    ScenarioConfig c;
    std::string section;
    std::vector<std::string> seen;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_;
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
        raw = raw.substr(0, hash);
      }
      const std::string_view ln = trim(raw);
      if (ln.empty()) continue;
      if (ln.front() == '[') {
        if (ln.back() != ']') fail({}, "malformed section header");
        section = std::string(trim(ln.substr(1, ln.size() - 2)));
        continue;
      }
      const auto eq = ln.find('=');
      if (eq == std::string_view::npos) fail({}, "expected key = value");
      const std::string_view key = trim(ln.substr(0, eq));
      const std::string_view value = trim(ln.substr(eq + 1));
      if (key.empty()) fail({}, "empty key");
      if (section.empty()) fail(key, "key outside of a section");
      std::string qualified = section + "." + std::string(key);
      for (const auto& s : seen) {
        if (s == qualified) fail(key, "duplicate key");
      }
      seen.push_back(std::move(qualified));
      assign(c, section, key, value);
    }
    line_ = 0;
    return c;
  }

 private:
  std::string origin_;
  std::size_t line_ = 0;
};

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_number(values[i]);
  }
  return out;
}

std::string behavior_text(const BehaviorModel& b) {
  const auto dir = [](OffsetDirection d) {
    return d == OffsetDirection::kAdd ? "add" : "subtract";
  };
  if (std::holds_alternative<Multiplicative>(b)) {
    return "multiplicative " + format_number(std::get<Multiplicative>(b).alpha);
  }
  if (const auto* f = std::get_if<FixedOffset>(&b)) {
    return "fixed_offset " + format_number(f->eta) + " " + dir(f->direction);
  }
  if (const auto* r = std::get_if<RandomOffset>(&b)) {
    return "random_offset " + format_number(r->theta_max) + " " +
           dir(r->direction);
  }
  return "benign";
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

ScenarioConfig parse_config(std::string_view text, std::string_view origin) {
  ScenarioConfig c = Parser(origin).parse(text);
  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open config " + path.string() + ": " +
                  std::generic_category().message(errno));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string());
}

std::string write_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "[region]\n"
      << "id = " << c.region_id << "\n"
      << "consumers = " << c.num_consumers << "\n"
      << "periods_per_day = " << c.periods_per_day << "\n"
      << "usage_min = " << format_number(c.usage_min) << "\n"
      << "usage_max = " << format_number(c.usage_max) << "\n\n";
  out << "[attackers]\n";
  for (const auto& a : c.attackers) {
    out << a.id << " = " << behavior_text(a.behavior) << "\n";
  }
  out << "\n[detection]\n"
      << "threshold = " << format_number(c.detection.threshold) << "\n"
      << "min_samples = " << c.detection.min_samples << "\n"
      << "mode = " << to_string(c.mode) << "\n"
      << "case2_filter = " << (c.case2_filter ? "true" : "false") << "\n"
      << "filter_quantile = " << format_number(c.filter_quantile) << "\n\n";
  out << "[billing]\n"
      << "tariff = " << join(c.tariff) << "\n"
      << "elasticity = " << (c.tariff_response.enabled ? "true" : "false")
      << "\n"
      << "elasticity_level = " << format_number(c.tariff_response.level) << "\n"
      << "elasticity_factor = "
      << format_number(c.tariff_response.usage_max_factor) << "\n\n";
  out << "[experiment]\n"
      << "months = " << format_number(c.duration_months) << "\n"
      << "seed = " << c.master_seed << "\n"
      << "repetitions = " << c.repetitions << "\n"
      << "threads = " << c.threads << "\n"
      << "table_attacker = " << c.table_attacker << "\n";
  if (!c.durations.empty()) out << "durations = " << join(c.durations) << "\n";
  return out.str();
}

}  // namespace sbpp
