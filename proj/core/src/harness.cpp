#include "sbpp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbpp/errors.hpp"

namespace sbpp {

std::string_view to_string(DetectionMode mode) {
  switch (mode) {
    case DetectionMode::kThreshold:
      return "threshold";
    case DetectionMode::kMostNegative:
      return "most_negative";
    case DetectionMode::kStrongest:
      return "strongest";
  }
  return "unknown";
}

std::optional<DetectionMode> parse_detection_mode(std::string_view text) {
  if (text == "threshold") return DetectionMode::kThreshold;
  if (text == "most_negative") return DetectionMode::kMostNegative;
  if (text == "strongest") return DetectionMode::kStrongest;
  return std::nullopt;
}

std::string_view to_string(OutcomeClass outcome) {
  switch (outcome) {
    case OutcomeClass::kExact:
      return "exact";
    case OutcomeClass::kFalsePositive:
      return "false_positive";
    case OutcomeClass::kMissed:
      return "missed";
  }
  return "unknown";
}

std::string_view to_string(AttackCase c) {
  switch (c) {
    case AttackCase::kCaseI:
      return "I";
    case AttackCase::kCaseII:
      return "II";
    case AttackCase::kCaseIII:
      return "III";
  }
  return "?";
}

std::size_t ScenarioConfig::total_periods() const {
  const double periods =
      std::round(duration_months * static_cast<double>(periods_per_month()));
  return periods < 1.0 ? 0 : static_cast<std::size_t>(periods);
}

DetectionOptions ScenarioConfig::effective_detection() const {
  DetectionOptions options = detection;
  if (case2_filter) options.low_report_quantile = filter_quantile;
  return options;
}

billing::TariffSchedule ScenarioConfig::tariff_schedule() const {
  if (tariff.size() == 1) return billing::TariffSchedule::flat(tariff.front());
  return billing::TariffSchedule::per_period(tariff);
}

RegionConfig ScenarioConfig::region() const {
  RegionConfig region;
  region.region_id = region_id;
  region.periods_per_day = periods_per_day;
  const std::size_t days =
      (total_periods() + static_cast<std::size_t>(periods_per_day) - 1) /
      static_cast<std::size_t>(std::max(periods_per_day, 1));
  region.num_days = static_cast<int>(std::max<std::size_t>(days, 1));
  region.consumers.reserve(num_consumers);
  for (std::size_t i = 0; i < num_consumers; ++i) {
    region.consumers.push_back(
        {static_cast<ConsumerId>(i), usage_min, usage_max, Benign{}});
  }
  for (const auto& a : attackers) {
    if (a.id < region.consumers.size()) {
      region.consumers[a.id].behavior = a.behavior;
    }
  }
  return region;
}

std::vector<ConsumerId> ScenarioConfig::attacker_ids() const {
  std::vector<ConsumerId> ids;
  for (const auto& a : attackers) {
    if (is_malicious(a.behavior)) ids.push_back(a.id);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

void validate(const ScenarioConfig& config) {
  if (config.num_consumers < 2) {
    throw ConfigError("region.consumers: at least 2 consumers required");
  }
  if (config.periods_per_day <= 0) {
    throw ConfigError("region.periods_per_day: must be > 0");
  }
  if (!(config.usage_min >= 0.0)) {
    throw ConfigError("region.usage_min: must be >= 0");
  }
  if (!(config.usage_max > config.usage_min) || !std::isfinite(config.usage_max)) {
    throw ConfigError("region.usage_max: must be > usage_min");
  }
  std::vector<ConsumerId> seen;
  for (const auto& a : config.attackers) {
    if (a.id >= config.num_consumers) {
      throw ConfigError("attackers: consumer id " + std::to_string(a.id) +
                        " is not in the region (consumers = " +
                        std::to_string(config.num_consumers) + ")");
    }
    if (std::find(seen.begin(), seen.end(), a.id) != seen.end()) {
      throw ConfigError("attackers: consumer id " + std::to_string(a.id) +
                        " assigned twice");
    }
    seen.push_back(a.id);
    try {
      validate(a.behavior);
    } catch (const ConfigError& e) {
      throw ConfigError("attackers." + std::to_string(a.id) + ": " + e.what());
    }
  }
  try {
    validate(config.effective_detection());
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("detection: ") + e.what());
  }
  if (config.tariff.empty()) throw ConfigError("billing.tariff: missing");
  try {
    config.tariff_schedule().validate(config.total_periods());
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("billing.tariff: ") + e.what());
  }
  if (config.tariff_response.enabled) {
    const double scaled =
        config.usage_max * config.tariff_response.usage_max_factor;
    if (!(config.tariff_response.usage_max_factor > 0.0) ||
        !(scaled > config.usage_min)) {
      throw ConfigError(
          "billing.elasticity_factor: scaled usage_max must stay above "
          "usage_min");
    }
  }
  if (!(config.duration_months > 0.0) || config.total_periods() < 1) {
    throw ConfigError("experiment.months: duration must cover >= 1 period");
  }
  if (config.repetitions < 1) {
    throw ConfigError("experiment.repetitions: must be >= 1");
  }
}

SimulationRun simulate(const ScenarioConfig& config, std::uint64_t seed,
                       bool with_billing) {
  validate(config);
  const RegionConfig region = config.region();
  validate(region);
  const std::vector<ConsumerId> ids = region.consumer_ids();
  const billing::TariffSchedule tariff = config.tariff_schedule();
  const std::size_t total = config.total_periods();
  const std::size_t n = region.consumers.size();
  const std::size_t window = config.periods_per_month();

  SimulationRun run;
  run.records.reserve(total);
  std::vector<double> actual(n);
  std::vector<double> reported(n);
  std::optional<billing::BillingLedger> ledger;
  if (with_billing) ledger.emplace(ids, 0, std::min(window, total));

  std::vector<char> honest(n);
  for (std::size_t i = 0; i < n; ++i) {
    honest[i] = std::holds_alternative<Benign>(region.consumers[i].behavior);
  }

  RandomStream rng(seed);
  for (std::size_t t = 0; t < total; ++t) {
    const double price = tariff.at(t);
    const bool curtailed = config.tariff_response.enabled &&
                           price > config.tariff_response.level;
    for (std::size_t i = 0; i < n; ++i) {
      const ConsumerProfile& profile = region.consumers[i];
      actual[i] =
          curtailed
              ? draw_usage(profile,
                           profile.usage_max *
                               config.tariff_response.usage_max_factor,
                           rng)
              : draw_usage(profile, rng);
      reported[i] = honest[i]
                        ? actual[i]
                        : apply_behavior(profile.behavior, actual[i], rng);
    }
    run.records.push_back(aggregate_period(actual, reported, t, rng, ids));

    if (ledger) {
      ledger->accrue(t, reported, price);
      if (ledger->window_complete()) {
        auto bills = ledger->issue_bills();
        run.bills.insert(run.bills.end(), bills.begin(), bills.end());
        const std::size_t next = t + 1;
        if (next < total) ledger.emplace(ids, next, std::min(window, total - next));
      }
    }
  }

  run.series = accumulate_samples(run.records, ids);
  run.report = detect_region(run.series, config.effective_detection());
  return run;
}

double TrialOutcome::precision() const {
  std::size_t found = 0;
  for (const auto& [id, hit] : attacker_found) found += hit ? 1 : 0;
  const std::size_t labeled = found + false_positive_count;
  return labeled == 0 ? 1.0
                      : static_cast<double>(found) / static_cast<double>(labeled);
}

double TrialOutcome::recall() const {
  if (attacker_found.empty()) return 1.0;
  std::size_t found = 0;
  for (const auto& [id, hit] : attacker_found) found += hit ? 1 : 0;
  return static_cast<double>(found) /
         static_cast<double>(attacker_found.size());
}

TrialOutcome score(const ScenarioConfig& config, DetectionReport report) {
  TrialOutcome out;
  const std::vector<ConsumerId> attackers = config.attacker_ids();
  const std::vector<ConsumerId> labeled = report.malicious_ids();
  const auto is_attacker = [&](ConsumerId id) {
    return std::binary_search(attackers.begin(), attackers.end(), id);
  };

  bool any_missed = false;
  for (ConsumerId id : attackers) {
    const bool hit = std::binary_search(labeled.begin(), labeled.end(), id);
    out.attacker_found.emplace_back(id, hit);
    any_missed = any_missed || !hit;
  }
  for (ConsumerId id : labeled) {
    if (!is_attacker(id)) ++out.false_positive_count;
  }
  out.exact_match = labeled == attackers;
  out.outcome = any_missed                      ? OutcomeClass::kMissed
                : out.false_positive_count > 0 ? OutcomeClass::kFalsePositive
                                               : OutcomeClass::kExact;

  switch (config.mode) {
    case DetectionMode::kThreshold:
      out.correct = out.exact_match;
      break;
    case DetectionMode::kMostNegative:
      try {
        out.selected = most_negative(report);
      } catch (const InsufficientDataError&) {
        out.selected.reset();
      }
      out.correct = out.selected && is_attacker(*out.selected);
      break;
    case DetectionMode::kStrongest: {
      out.selected = strongest(report);
      const ConsumerDetection* pick =
          out.selected ? report.find(*out.selected) : nullptr;
      out.correct = pick != nullptr && is_attacker(pick->id) &&
                    is_malicious(pick->label);
      break;
    }
  }
  out.report = std::move(report);
  return out;
}

TrialOutcome run_trial(const ScenarioConfig& config, std::uint64_t trial_seed) {
  SimulationRun run = simulate(config, trial_seed, /*with_billing=*/false);
  return score(config, std::move(run.report));
}

std::uint64_t trial_seed(const ScenarioConfig& config, std::size_t index) {
  return derive_seed(config.master_seed, index);
}

ProbabilityEstimate estimate_detection_probability(
    const ScenarioConfig& config, std::vector<TrialOutcome>* outcomes) {
  validate(config);
  const std::size_t reps = config.repetitions;
  std::vector<TrialOutcome> trials(reps);
  parallel_for(reps, config.threads, [&](std::size_t i) {
    trials[i] = run_trial(config, trial_seed(config, i));
  });

  ProbabilityEstimate est;
  est.repetitions = reps;
  double precision_sum = 0.0;
  double recall_sum = 0.0;
  for (const auto& t : trials) {
    est.successes += t.correct ? 1 : 0;
    precision_sum += t.precision();
    recall_sum += t.recall();
  }
  const double n = static_cast<double>(reps);
  est.probability = static_cast<double>(est.successes) / n;
  est.standard_error = std::sqrt(est.probability * (1.0 - est.probability) / n);
  est.mean_precision = precision_sum / n;
  est.mean_recall = recall_sum / n;
  if (outcomes != nullptr) *outcomes = std::move(trials);
  return est;
}

std::vector<ConcentrationPoint> concentration_experiment(
    const ScenarioConfig& config, const std::vector<double>& durations) {
  std::vector<ConcentrationPoint> points;
  const std::vector<ConsumerId> attackers = config.attacker_ids();
  for (double months : durations) {
    ScenarioConfig cfg = config;
    cfg.duration_months = months;
    ConcentrationPoint point;
    point.months = months;
    point.report = run_trial(cfg, trial_seed(cfg, 0)).report;

    std::vector<double> benign;
    for (const auto& e : point.report.entries) {
      if (e.corr && !std::binary_search(attackers.begin(), attackers.end(), e.id)) {
        benign.push_back(*e.corr);
      }
    }
    point.benign_count = benign.size();
    if (benign.size() >= 2) {
      double mean = 0.0;
      for (double c : benign) mean += c;
      mean /= static_cast<double>(benign.size());
      double ss = 0.0;
      for (double c : benign) ss += (c - mean) * (c - mean);
      point.benign_std = std::sqrt(ss / static_cast<double>(benign.size() - 1));
    }
    points.push_back(std::move(point));
  }
  return points;
}

ScenarioConfig standard_case(const ScenarioConfig& base, AttackCase c,
                             ConsumerId attacker, double months) {
  ScenarioConfig cfg = base;
  cfg.duration_months = months;
  switch (c) {
    case AttackCase::kCaseI:
      cfg.attackers = {{attacker, Multiplicative{0.1}}};
      cfg.mode = DetectionMode::kStrongest;
      break;
    case AttackCase::kCaseII:
      // Median usage: the report is clipped to zero in about half the
      // periods, the only periods in which leakage varies.
      cfg.attackers = {{attacker,
                        FixedOffset{(base.usage_min + base.usage_max) / 2.0,
                                    OffsetDirection::kSubtract}}};
      cfg.mode = DetectionMode::kThreshold;
      break;
    case AttackCase::kCaseIII:
      cfg.attackers = {{attacker,
                        RandomOffset{base.usage_max - base.usage_min,
                                     OffsetDirection::kSubtract}}};
      cfg.mode = DetectionMode::kMostNegative;
      break;
  }
  return cfg;
}

std::vector<TableCell> probability_table(const ScenarioConfig& base,
                                         ConsumerId attacker,
                                         const std::vector<double>& months) {
  std::vector<TableCell> cells;
  for (AttackCase c :
       {AttackCase::kCaseI, AttackCase::kCaseII, AttackCase::kCaseIII}) {
    for (double m : months) {
      const ScenarioConfig cfg = standard_case(base, c, attacker, m);
      cells.push_back({c, m, estimate_detection_probability(cfg)});
    }
  }
  return cells;
}

}  // namespace sbpp
