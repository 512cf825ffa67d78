#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sbpp/random.hpp"

namespace sbpp {

using ConsumerId = std::uint32_t;

enum class OffsetDirection { kSubtract, kAdd };

struct Benign {
  friend bool operator==(const Benign&, const Benign&) = default;
};

// Case I: reports alpha times the actual usage.
struct Multiplicative {
  double alpha = 1.0;

  friend bool operator==(const Multiplicative&, const Multiplicative&) = default;
};

// Case II: adds/subtracts a fixed quantity, clipping the report at zero.
struct FixedOffset {
  double eta = 0.0;
  OffsetDirection direction = OffsetDirection::kSubtract;

  friend bool operator==(const FixedOffset&, const FixedOffset&) = default;
};

// Case III: adds/subtracts theta ~ U(0, theta_max), drawn independently of
// the actual usage, clipping the report at zero.
struct RandomOffset {
  double theta_max = 0.0;
  OffsetDirection direction = OffsetDirection::kSubtract;

  friend bool operator==(const RandomOffset&, const RandomOffset&) = default;
};

using BehaviorModel =
    std::variant<Benign, Multiplicative, FixedOffset, RandomOffset>;

struct ConsumerProfile {
  ConsumerId id = 0;
  double usage_min = 0.5;
  double usage_max = 1.5;
  BehaviorModel behavior = Benign{};

  friend bool operator==(const ConsumerProfile&, const ConsumerProfile&) = default;
};

struct RegionConfig {
  int region_id = 0;
  std::vector<ConsumerProfile> consumers;
  int periods_per_day = 96;
  int num_days = 30;

  std::size_t total_periods() const {
    return static_cast<std::size_t>(periods_per_day) *
           static_cast<std::size_t>(num_days);
  }
  std::vector<ConsumerId> consumer_ids() const;
};

// Each validator throws ConfigError naming the offending field.
void validate(const BehaviorModel& behavior);
void validate(const ConsumerProfile& profile);
void validate(const RegionConfig& region);

/// True when the behavior falsifies reports. Multiplicative{1} is
/// behaviorally benign and returns false.
bool is_malicious(const BehaviorModel& behavior);

std::string describe(const BehaviorModel& behavior);

/// Actual usage for one period: i.i.d. uniform on [usage_min, usage_max].
inline double draw_usage(const ConsumerProfile& profile, RandomStream& rng) {
  return rng.uniform(profile.usage_min, profile.usage_max);
}

/// Same as draw_usage with the upper bound replaced by `usage_max`.
inline double draw_usage(const ConsumerProfile& profile, double usage_max,
                         RandomStream& rng) {
  return rng.uniform(profile.usage_min, usage_max);
}

/// Reported value for an actual usage under the given behavior. Never
/// negative. Draws from `rng` only for RandomOffset.
double apply_behavior(const BehaviorModel& behavior, double actual,
                      RandomStream& rng);

}  // namespace sbpp
