#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "sbpp/aggregation.hpp"
#include "sbpp/billing.hpp"
#include "sbpp/detection.hpp"
#include "sbpp/grid_model.hpp"

namespace sbpp {

inline constexpr int kDaysPerMonth = 30;

enum class DetectionMode {
  kThreshold,     // labeled malicious set must equal the attacker set
  kMostNegative,  // argmin corr must be the (single) attacker
  kStrongest,     // argmax |corr| must be the attacker and clear the threshold
};

std::string_view to_string(DetectionMode mode);
std::optional<DetectionMode> parse_detection_mode(std::string_view text);

struct AttackerAssignment {
  ConsumerId id = 0;
  BehaviorModel behavior = Benign{};

  friend bool operator==(const AttackerAssignment&,
                         const AttackerAssignment&) = default;
};

// Optional demand response: in periods whose tariff exceeds `level`, every
// consumer's usage_max is scaled by `usage_max_factor`.
struct TariffResponse {
  bool enabled = false;
  double level = 0.0;
  double usage_max_factor = 1.0;

  friend bool operator==(const TariffResponse&,
                         const TariffResponse&) = default;
};

struct ScenarioConfig {
  // region
  int region_id = 0;
  std::size_t num_consumers = 100;
  int periods_per_day = 96;
  double usage_min = 0.5;
  double usage_max = 1.5;
  std::vector<AttackerAssignment> attackers;

  // detection
  DetectionOptions detection;
  DetectionMode mode = DetectionMode::kThreshold;
  bool case2_filter = false;
  double filter_quantile = 0.25;

  // billing
  std::vector<double> tariff = {1.0};  // one value = flat
  TariffResponse tariff_response;

  // experiment
  double duration_months = 1.0;
  std::uint64_t master_seed = 1;
  std::size_t repetitions = 1000;
  unsigned threads = 0;  // 0 = hardware concurrency
  ConsumerId table_attacker = 25;  // attacker id for the standard cases
  std::vector<double> durations;   // months; empty = per-command default

  std::size_t periods_per_month() const {
    return static_cast<std::size_t>(periods_per_day) * kDaysPerMonth;
  }
  std::size_t total_periods() const;
  DetectionOptions effective_detection() const;
  billing::TariffSchedule tariff_schedule() const;
  RegionConfig region() const;
  std::vector<ConsumerId> attacker_ids() const;  // malicious ones, ascending

  friend bool operator==(const ScenarioConfig&,
                         const ScenarioConfig&) = default;
};

/// Throws ConfigError naming the offending key.
void validate(const ScenarioConfig& config);

/// Everything a single simulated window produces.
struct SimulationRun {
  std::vector<PeriodRecord> records;
  SampleSeries series;
  DetectionReport report;
  std::vector<billing::BillStatement> bills;  // one window per month
};

/// Generates usage and reports period by period, aggregates, accumulates
/// samples, detects and bills. Deterministic given `seed`.
SimulationRun simulate(const ScenarioConfig& config, std::uint64_t seed,
                       bool with_billing = true);

enum class OutcomeClass {
  kExact,          // labeled malicious set equals the attacker set
  kFalsePositive,  // every attacker labeled, plus benign consumers
  kMissed,         // at least one attacker not labeled
};

std::string_view to_string(OutcomeClass outcome);

struct TrialOutcome {
  DetectionReport report;
  bool exact_match = false;
  std::vector<std::pair<ConsumerId, bool>> attacker_found;
  std::size_t false_positive_count = 0;
  OutcomeClass outcome = OutcomeClass::kExact;
  std::optional<ConsumerId> selected;  // most_negative / strongest pick
  bool correct = false;                // per the configured mode

  double precision() const;
  double recall() const;

  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

TrialOutcome run_trial(const ScenarioConfig& config, std::uint64_t trial_seed);

/// Scores a detection report against the scenario's attacker set.
TrialOutcome score(const ScenarioConfig& config, DetectionReport report);

struct ProbabilityEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::size_t successes = 0;
  std::size_t repetitions = 0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;

  friend bool operator==(const ProbabilityEstimate&,
                         const ProbabilityEstimate&) = default;
};

/// Seed of trial `index` under the config's master seed.
std::uint64_t trial_seed(const ScenarioConfig& config, std::size_t index);

/// Runs `repetitions` trials (in parallel over `threads`) and returns the
/// fraction judged correct plus the binomial standard error. Results do not
/// depend on the thread count. `outcomes`, when given, receives every trial
/// in index order.
ProbabilityEstimate estimate_detection_probability(
    const ScenarioConfig& config, std::vector<TrialOutcome>* outcomes = nullptr);

struct ConcentrationPoint {
  double months = 0.0;
  DetectionReport report;
  double benign_std = 0.0;    // sample std of defined benign correlations
  std::size_t benign_count = 0;
};

/// One seeded trial per duration (trial index 0 of the master seed).
std::vector<ConcentrationPoint> concentration_experiment(
    const ScenarioConfig& config, const std::vector<double>& durations);

// Standard single-attacker scenarios for the probability table, built on the
// region/detection settings of `base`.
enum class AttackCase { kCaseI = 1, kCaseII = 2, kCaseIII = 3 };

std::string_view to_string(AttackCase c);
ScenarioConfig standard_case(const ScenarioConfig& base, AttackCase c,
                             ConsumerId attacker, double months);

struct TableCell {
  AttackCase attack_case = AttackCase::kCaseI;
  double months = 0.0;
  ProbabilityEstimate estimate;
};

std::vector<TableCell> probability_table(const ScenarioConfig& base,
                                         ConsumerId attacker,
                                         const std::vector<double>& months);

/// Runs `fn(i)` for i in [0, count) over `threads` workers (0 = hardware).
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn);

}  // namespace sbpp

#include "sbpp/detail/parallel.hpp"
