#include "sbpp/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>

#include "sbpp/config.hpp"
#include "sbpp/csv.hpp"
#include "sbpp/errors.hpp"
#include "sbpp/harness.hpp"
#include "sbpp/manifest.hpp"

namespace sbpp::cli {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  std::optional<double> threshold;
  std::optional<unsigned> threads;
  std::string out_dir = "out";
  std::string records;
};

class Session {
 public:
  Session(std::string command, std::vector<std::string> args, const Flags& flags,
          std::ostream& out)
      : flags_(flags), out_(out) {
    manifest_.command = std::move(command);
    manifest_.arguments = std::move(args);
    manifest_.version = std::string(tool_version());
    config_ = load_config(flags.config);
    if (flags.seed) config_.master_seed = *flags.seed;
    if (flags.reps) config_.repetitions = *flags.reps;
    if (flags.threshold) config_.detection.threshold = *flags.threshold;
    if (flags.threads) config_.threads = *flags.threads;
    validate(config_);
  }

  ScenarioConfig& config() { return config_; }

  void emit(const std::string& name, const std::string& content) {
    const fs::path path = fs::path(flags_.out_dir) / name;
    csv::write_file(path, content);
    manifest_.outputs.push_back(path.string());
    out_ << "wrote " << path.string() << "\n";
  }

  void note(std::string text) { manifest_.notes.push_back(std::move(text)); }

  void finish() {
    manifest_.master_seed = config_.master_seed;
    manifest_.config_text = write_config(config_);
    manifest_.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    const fs::path path =
        fs::path(flags_.out_dir) / (manifest_.command + ".manifest.json");
    csv::write_file(path, to_json(manifest_));
    out_ << "wrote " << path.string() << "\n";
  }

 private:
  Flags flags_;
  std::ostream& out_;
  ScenarioConfig config_;
  RunManifest manifest_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::vector<double> durations_or(const ScenarioConfig& c,
                                 std::vector<double> fallback) {
  return c.durations.empty() ? fallback : c.durations;
}

void check_table_attacker(const ScenarioConfig& c) {
  if (c.table_attacker >= c.num_consumers) {
    throw ConfigError("experiment.table_attacker: consumer id " +
                      std::to_string(c.table_attacker) +
                      " is not in the region");
  }
}

void note_case_parameters(Session& s, const ScenarioConfig& c) {
  for (AttackCase k :
       {AttackCase::kCaseI, AttackCase::kCaseII, AttackCase::kCaseIII}) {
    const ScenarioConfig cell = standard_case(c, k, c.table_attacker, 1.0);
    s.note("case " + std::string(to_string(k)) + ": consumer " +
           std::to_string(c.table_attacker) + " " +
           describe(cell.attackers.front().behavior) + ", mode " +
           std::string(to_string(cell.mode)));
  }
}

void cmd_simulate(Session& s) {
  const auto& c = s.config();
  const SimulationRun run = simulate(c, trial_seed(c, 0));
  s.emit("records.csv", csv::records_text(run.records));
  s.emit("detection.csv", csv::detection_text(run.report));
  s.emit("bills.csv", csv::bills_text(run.bills));
}

void cmd_detect(Session& s, const std::string& records_path) {
  const auto& c = s.config();
  if (records_path.empty()) {
    const SimulationRun run = simulate(c, trial_seed(c, 0), false);
    s.emit("detection.csv", csv::detection_text(run.report));
    return;
  }
  const auto records = csv::read_records(records_path);
  const auto ids = c.region().consumer_ids();
  const auto series = accumulate_samples(records, ids);
  s.note("records: " + records_path);
  s.emit("detection.csv",
         csv::detection_text(detect_region(series, c.effective_detection())));
}

void cmd_bill(Session& s) {
  const auto& c = s.config();
  const SimulationRun run = simulate(c, trial_seed(c, 0));
  s.emit("bills.csv", csv::bills_text(run.bills));
}

void cmd_table1(Session& s) {
  const auto& c = s.config();
  check_table_attacker(c);
  note_case_parameters(s, c);
  const auto cells =
      probability_table(c, c.table_attacker, durations_or(c, {1, 3, 6, 12}));
  s.emit("table1.csv", csv::table_text(cells));
  s.emit("table1_wide.csv", csv::table_wide_text(cells));
}

void cmd_fig_corr(Session& s) {
  const auto& c = s.config();
  std::vector<TrialOutcome> outcomes;
  const auto estimate = estimate_detection_probability(c, &outcomes);
  s.emit("fig_corr.csv", csv::detection_text(outcomes.front().report));
  s.emit("outcomes.csv", csv::outcomes_text(c, outcomes));
  s.note("correct fraction " + format_number(estimate.probability) +
         ", mean precision " + format_number(estimate.mean_precision) +
         ", mean recall " + format_number(estimate.mean_recall));
}

void cmd_fig_concentration(Session& s) {
  const auto& c = s.config();
  const auto points = concentration_experiment(c, durations_or(c, {1, 12}));
  s.emit("concentration.csv", csv::concentration_text(points));
  s.emit("concentration_summary.csv", csv::concentration_summary_text(points));
}

void cmd_fig_duration_sweep(Session& s) {
  const auto& c = s.config();
  std::vector<TableCell> cells;
  const auto months =
      durations_or(c, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});
  if (c.attackers.empty()) check_table_attacker(c);
  for (double m : months) {
    ScenarioConfig cell = c.attackers.empty()
                              ? standard_case(c, AttackCase::kCaseII,
                                              c.table_attacker, m)
                              : c;
    cell.duration_months = m;
    cells.push_back({AttackCase::kCaseII, m, estimate_detection_probability(cell)});
  }
  s.emit("duration_sweep.csv", csv::table_text(cells));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Privacy-preserving aggregation and theft-detection simulator",
               "sbpp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  Flags flags;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config, "Scenario file")->required();
    sub->add_option("--seed", flags.seed, "Master seed (64-bit)");
    sub->add_option("--reps", flags.reps, "Monte-Carlo repetitions")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threshold", flags.threshold, "Detection threshold th");
    sub->add_option("--threads", flags.threads,
                    "Worker threads (0 = all cores; results do not change)");
    sub->add_option("--out-dir", flags.out_dir, "Output directory")
        ->capture_default_str();
  };

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"simulate", "Run one window; write records, detection and bills"},
      {"detect", "Detect from a records CSV (or a fresh simulation)"},
      {"bill", "Run one window and write the bills"},
      {"table1", "Detection probability for cases I-III by duration"},
      {"fig-corr", "Per-consumer correlations and per-trial outcome classes"},
      {"fig-concentration", "Benign correlation spread by duration"},
      {"fig-duration-sweep", "Detection probability against duration"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub);
    if (std::string_view(c.name) == "detect") {
      sub->add_option("--records", flags.records, "records.csv from simulate");
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "sbpp: usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    Session session(name, args, flags, out);
    if (name == "simulate") {
      cmd_simulate(session);
    } else if (name == "detect") {
      cmd_detect(session, flags.records);
    } else if (name == "bill") {
      cmd_bill(session);
    } else if (name == "table1") {
      cmd_table1(session);
    } else if (name == "fig-corr") {
      cmd_fig_corr(session);
    } else if (name == "fig-concentration") {
      cmd_fig_concentration(session);
    } else {
      cmd_fig_duration_sweep(session);
    }
    session.finish();
  } catch (const std::exception& e) {
    err << "sbpp " << name << ": " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace sbpp::cli
