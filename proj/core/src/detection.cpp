#include "sbpp/detection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbpp/errors.hpp"

namespace sbpp {
namespace {

// Relative scale below which a centered vector counts as zero. Sums over a
// region leave ~1e-14 noise on leakages that are constant in exact
// arithmetic.
constexpr double kDegenerateScale = 1e-12;

double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::optional<double> correlate(const ConsumerSamples& s,
                                const DetectionOptions& options) {
  if (!options.low_report_quantile || s.empty()) {
    return pearson(s.reports, s.leakages);
  }
  const auto filtered = low_report_filter(s, *options.low_report_quantile);
  return pearson(filtered.reports, filtered.leakages);
}

}  // namespace

std::string_view to_string(Label label) {
  switch (label) {
    case Label::kBenign:
      return "benign";
    case Label::kMaliciousUnder:
      return "malicious_under";
    case Label::kMaliciousOver:
      return "malicious_over";
    case Label::kInsufficientData:
      return "insufficient_data";
  }
  return "unknown";
}

bool is_malicious(Label label) {
  return label == Label::kMaliciousUnder || label == Label::kMaliciousOver;
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("pearson: length mismatch (" + std::to_string(x.size()) +
                     " vs " + std::to_string(y.size()) + ")");
  }
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;

  const double mx = mean(x);
  const double my = mean(y);
  double dot = 0.0;
  double xx = 0.0;
  double yy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    dot += dx * dy;
    xx += dx * dx;
    yy += dy * dy;
  }
  const double nx = std::sqrt(xx);
  const double ny = std::sqrt(yy);
  const double root_n = std::sqrt(static_cast<double>(n));
  if (nx <= kDegenerateScale * root_n * max_abs(x) || nx == 0.0) {
    return std::nullopt;
  }
  if (ny <= kDegenerateScale * root_n * max_abs(y) || ny == 0.0) {
    return std::nullopt;
  }
  return std::clamp(dot / (nx * ny), -1.0, 1.0);
}

Label classify(std::optional<double> corr, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw ConfigError("threshold must be in (0, 1], got " +
                      std::to_string(threshold));
  }
  if (!corr) return Label::kInsufficientData;
  if (*corr >= threshold) return Label::kMaliciousUnder;
  if (*corr <= -threshold) return Label::kMaliciousOver;
  return Label::kBenign;
}

void validate(const DetectionOptions& options) {
  if (!(options.threshold > 0.0 && options.threshold <= 1.0)) {
    throw ConfigError("threshold must be in (0, 1]");
  }
  if (options.min_samples < 2) throw ConfigError("min_samples must be >= 2");
  if (options.low_report_quantile) {
    const double q = *options.low_report_quantile;
    if (!(q > 0.0 && q < 1.0)) {
      throw ConfigError("filter_quantile must be in (0, 1)");
    }
  }
}

const ConsumerDetection* DetectionReport::find(ConsumerId id) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), id,
      [](const ConsumerDetection& e, ConsumerId v) { return e.id < v; });
  if (it == entries.end() || it->id != id) return nullptr;
  return &*it;
}

std::vector<ConsumerId> DetectionReport::malicious_ids() const {
  std::vector<ConsumerId> ids;
  for (const auto& e : entries) {
    if (is_malicious(e.label)) ids.push_back(e.id);
  }
  return ids;
}

DetectionReport detect_region(const SampleSeries& series,
                              const DetectionOptions& options) {
  validate(options);
  DetectionReport report;
  report.entries.reserve(series.consumers().size());
  for (const auto& [id, samples] : series.consumers()) {
    ConsumerDetection d;
    d.id = id;
    d.sample_count = samples.size();
    if (d.sample_count >= options.min_samples) {
      d.corr = correlate(samples, options);
      d.label = classify(d.corr, options.threshold);
    }
    report.entries.push_back(d);
  }
  return report;
}

ConsumerId most_negative(const SampleSeries& series, std::size_t min_samples) {
  DetectionOptions options;
  options.min_samples = min_samples;
  return most_negative(detect_region(series, options));
}

ConsumerId most_negative(const DetectionReport& report) {
  const ConsumerDetection* best = nullptr;
  for (const auto& e : report.entries) {
    if (!e.corr) continue;
    // Entries are id-ascending, so strict < keeps the lowest id on ties.
    if (best == nullptr || *e.corr < *best->corr) best = &e;
  }
  if (best == nullptr) {
    throw InsufficientDataError(
        "most_negative: no consumer has a defined correlation");
  }
  return best->id;
}

std::optional<ConsumerId> strongest(const DetectionReport& report) {
  const ConsumerDetection* best = nullptr;
  for (const auto& e : report.entries) {
    if (!e.corr) continue;
    if (best == nullptr || std::abs(*e.corr) > std::abs(*best->corr)) {
      best = &e;
    }
  }
  if (best == nullptr) return std::nullopt;
  return best->id;
}

ConsumerSamples low_report_filter(const ConsumerSamples& samples, double q) {
  if (samples.empty()) return {};
  std::vector<double> sorted = samples.reports;
  std::sort(sorted.begin(), sorted.end());
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double cut = sorted[lo] + (pos - static_cast<double>(lo)) *
                                      (sorted[hi] - sorted[lo]);

  ConsumerSamples out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples.reports[i] <= cut) {
      out.reports.push_back(samples.reports[i]);
      out.leakages.push_back(samples.leakages[i]);
    }
  }
  return out;
}

}  // namespace sbpp
