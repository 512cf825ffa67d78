#include "sbpp/aggregation.hpp"

#include <string>
#include <unordered_set>

#include "sbpp/errors.hpp"

namespace sbpp {

SampleSeries::SampleSeries(std::span<const ConsumerId> consumers) {
  for (ConsumerId id : consumers) add_consumer(id);
}

void SampleSeries::add_consumer(ConsumerId id) { series_.try_emplace(id); }

void SampleSeries::append(ConsumerId id, double report, double leakage) {
  auto& s = series_[id];
  s.reports.push_back(report);
  s.leakages.push_back(leakage);
  ++total_periods_;
}

const ConsumerSamples& SampleSeries::at(ConsumerId id) const {
  auto it = series_.find(id);
  if (it == series_.end()) {
    throw InputError("no sample series for consumer " + std::to_string(id));
  }
  return it->second;
}

PeriodRecord aggregate_period(std::span<const double> actuals,
                              std::span<const double> reports,
                              std::size_t period_index, RandomStream& rng,
                              std::span<const ConsumerId> ids) {
  const std::size_t n = actuals.size();
  if (reports.size() != n) {
    throw InputError("period " + std::to_string(period_index) + ": " +
                     std::to_string(n) + " actuals but " +
                     std::to_string(reports.size()) + " reports");
  }
  if (!ids.empty() && ids.size() != n) {
    throw InputError("period " + std::to_string(period_index) +
                     ": id list length does not match consumer count");
  }
  if (n < 2) {
    throw InputError("period " + std::to_string(period_index) +
                     ": at least 2 consumers required");
  }

  PeriodRecord rec;
  rec.period_index = period_index;
  for (std::size_t i = 0; i < n; ++i) {
    if (actuals[i] < 0.0 || reports[i] < 0.0) {
      throw InputError("period " + std::to_string(period_index) +
                       ": negative value for consumer index " +
                       std::to_string(i));
    }
    rec.actual_total += actuals[i];
    rec.reported_total += reports[i];
  }
  rec.leakage = rec.actual_total - rec.reported_total;

  const std::size_t pick = rng.index(n);
  rec.sampled_id = ids.empty() ? static_cast<ConsumerId>(pick) : ids[pick];
  rec.sampled_report = reports[pick];
  return rec;
}

SampleSeries accumulate_samples(std::span<const PeriodRecord> records,
                                std::span<const ConsumerId> consumers) {
  SampleSeries series(consumers);
  std::unordered_set<std::size_t> seen;
  seen.reserve(records.size());
  for (const auto& rec : records) {
    if (!seen.insert(rec.period_index).second) {
      throw InputError("duplicate period_index " +
                       std::to_string(rec.period_index));
    }
    series.append(rec.sampled_id, rec.sampled_report, rec.leakage);
  }
  return series;
}

}  // namespace sbpp
