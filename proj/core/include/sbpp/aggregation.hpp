#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "sbpp/grid_model.hpp"
#include "sbpp/random.hpp"

namespace sbpp {

/// What the aggregator keeps for one period: regional totals, the leakage
/// (actual - reported) and the one randomly sampled (id, report) pair.
struct PeriodRecord {
  std::size_t period_index = 0;
  double actual_total = 0.0;
  double reported_total = 0.0;
  double leakage = 0.0;
  ConsumerId sampled_id = 0;
  double sampled_report = 0.0;

  friend bool operator==(const PeriodRecord&, const PeriodRecord&) = default;
};

/// Paired (report, leakage) observations for one consumer, one entry per
/// period in which that consumer was sampled.
struct ConsumerSamples {
  std::vector<double> reports;
  std::vector<double> leakages;

  std::size_t size() const { return reports.size(); }
  bool empty() const { return reports.empty(); }
};

class SampleSeries {
 public:
  SampleSeries() = default;
  explicit SampleSeries(std::span<const ConsumerId> consumers);

  /// Adds an empty series for `id` if not already present.
  void add_consumer(ConsumerId id);
  void append(ConsumerId id, double report, double leakage);

  const ConsumerSamples& at(ConsumerId id) const;
  bool contains(ConsumerId id) const { return series_.count(id) != 0; }

  /// Ordered by consumer id.
  const std::map<ConsumerId, ConsumerSamples>& consumers() const {
    return series_;
  }
  std::size_t total_periods() const { return total_periods_; }

 private:
  std::map<ConsumerId, ConsumerSamples> series_;
  std::size_t total_periods_ = 0;
};

/// Runs one aggregation period. Consumer i in the input vectors carries id
/// `ids[i]`; when `ids` is empty the index itself is the id.
/// Throws InputError on length mismatch, fewer than 2 consumers or a
/// negative entry.
PeriodRecord aggregate_period(std::span<const double> actuals,
                              std::span<const double> reports,
                              std::size_t period_index, RandomStream& rng,
                              std::span<const ConsumerId> ids = {});

/// Builds per-consumer sample series from period records. Every id in
/// `consumers` gets a (possibly empty) series; sampled ids not in the list
/// are added. Throws InputError on a duplicate period_index.
SampleSeries accumulate_samples(std::span<const PeriodRecord> records,
                                std::span<const ConsumerId> consumers = {});

}  // namespace sbpp
