#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sbpp/aggregation.hpp"
#include "sbpp/grid_model.hpp"

namespace sbpp {

enum class Label { kBenign, kMaliciousUnder, kMaliciousOver, kInsufficientData };

std::string_view to_string(Label label);
bool is_malicious(Label label);

/// Pearson correlation of x and y computed on mean-centered copies:
/// <x', y'> / (|x'| |y'|). Undefined (nullopt) with fewer than 2 points or
/// when either centered vector is numerically zero. The result is clamped to
/// [-1, 1]. Throws InputError on length mismatch.
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

/// Threshold rule: corr >= th is under-reporting, corr <= -th is
/// over-reporting, anything strictly between is benign. Throws ConfigError
/// unless 0 < th <= 1.
Label classify(std::optional<double> corr, double threshold);

struct DetectionOptions {
  double threshold = 0.5;
  std::size_t min_samples = 5;
  // When set, each consumer's series is reduced with low_report_filter
  // before correlating.
  std::optional<double> low_report_quantile;

  friend bool operator==(const DetectionOptions&,
                         const DetectionOptions&) = default;
};

void validate(const DetectionOptions& options);

struct ConsumerDetection {
  ConsumerId id = 0;
  std::size_t sample_count = 0;
  std::optional<double> corr;
  Label label = Label::kInsufficientData;

  friend bool operator==(const ConsumerDetection&,
                         const ConsumerDetection&) = default;
};

struct DetectionReport {
  std::vector<ConsumerDetection> entries;  // ascending id

  const ConsumerDetection* find(ConsumerId id) const;
  std::vector<ConsumerId> malicious_ids() const;

  friend bool operator==(const DetectionReport&,
                         const DetectionReport&) = default;
};

DetectionReport detect_region(const SampleSeries& series,
                              const DetectionOptions& options);

/// Consumer with the smallest defined correlation among those with at least
/// `min_samples` samples; ties go to the lowest id. Throws
/// InsufficientDataError when no consumer qualifies.
ConsumerId most_negative(const SampleSeries& series, std::size_t min_samples);
ConsumerId most_negative(const DetectionReport& report);

/// Consumer with the largest |corr| in the report (ties to the lowest id),
/// or nullopt when no correlation is defined.
std::optional<ConsumerId> strongest(const DetectionReport& report);

/// Keeps the (report, leakage) pairs whose report is at or below the
/// q-quantile (linear interpolation between order statistics) of the
/// consumer's reports. Pairing and order are preserved.
ConsumerSamples low_report_filter(const ConsumerSamples& samples, double q);

}  // namespace sbpp
