#include "sbpp/grid_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "sbpp/errors.hpp"

namespace sbpp {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double offset(double actual, double amount, OffsetDirection direction) {
  if (direction == OffsetDirection::kAdd) return actual + amount;
  return std::max(actual - amount, 0.0);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

std::vector<ConsumerId> RegionConfig::consumer_ids() const {
  std::vector<ConsumerId> ids;
  ids.reserve(consumers.size());
  for (const auto& c : consumers) ids.push_back(c.id);
  return ids;
}

void validate(const BehaviorModel& behavior) {
  std::visit(
      Overloaded{
          [](const Benign&) {},
          [](const Multiplicative& m) {
            if (!positive_finite(m.alpha))
              throw ConfigError("alpha must be > 0");
          },
          [](const FixedOffset& f) {
            if (!positive_finite(f.eta)) throw ConfigError("eta must be > 0");
          },
          [](const RandomOffset& r) {
            if (!positive_finite(r.theta_max))
              throw ConfigError("theta_max must be > 0");
          },
      },
      behavior);
}

void validate(const ConsumerProfile& profile) {
  if (!std::isfinite(profile.usage_min) || profile.usage_min < 0.0) {
    throw ConfigError("consumer " + std::to_string(profile.id) +
                      ": usage_min must be >= 0");
  }
  if (!std::isfinite(profile.usage_max) ||
      !(profile.usage_min < profile.usage_max)) {
    throw ConfigError("consumer " + std::to_string(profile.id) +
                      ": usage_max must be > usage_min");
  }
  try {
    validate(profile.behavior);
  } catch (const ConfigError& e) {
    throw ConfigError("consumer " + std::to_string(profile.id) + ": " +
                      e.what());
  }
}

void validate(const RegionConfig& region) {
  if (region.consumers.size() < 2) {
    throw ConfigError("region " + std::to_string(region.region_id) +
                      ": at least 2 consumers required");
  }
  if (region.periods_per_day <= 0) {
    throw ConfigError("periods_per_day must be > 0");
  }
  if (region.num_days <= 0) throw ConfigError("num_days must be > 0");
  std::unordered_set<ConsumerId> seen;
  for (const auto& c : region.consumers) {
    if (!seen.insert(c.id).second) {
      throw ConfigError("duplicate consumer id " + std::to_string(c.id));
    }
    validate(c);
  }
}

bool is_malicious(const BehaviorModel& behavior) {
  return std::visit(
      Overloaded{
          [](const Benign&) { return false; },
          [](const Multiplicative& m) { return m.alpha != 1.0; },
          [](const FixedOffset&) { return true; },
          [](const RandomOffset&) { return true; },
      },
      behavior);
}

std::string describe(const BehaviorModel& behavior) {
  std::ostringstream out;
  const auto dir = [](OffsetDirection d) {
    return d == OffsetDirection::kAdd ? "add" : "subtract";
  };
  std::visit(Overloaded{
                 [&](const Benign&) { out << "benign"; },
                 [&](const Multiplicative& m) {
                   out << "multiplicative(alpha=" << m.alpha << ")";
                 },
                 [&](const FixedOffset& f) {
                   out << "fixed_offset(eta=" << f.eta << ", "
                       << dir(f.direction) << ")";
                 },
                 [&](const RandomOffset& r) {
                   out << "random_offset(theta_max=" << r.theta_max << ", "
                       << dir(r.direction) << ")";
                 },
             },
             behavior);
  return out.str();
}

double apply_behavior(const BehaviorModel& behavior, double actual,
                      RandomStream& rng) {
  return std::visit(
      Overloaded{
          [&](const Benign&) { return actual; },
          [&](const Multiplicative& m) { return m.alpha * actual; },
          [&](const FixedOffset& f) {
            return offset(actual, f.eta, f.direction);
          },
          [&](const RandomOffset& r) {
            const double theta = rng.uniform(0.0, r.theta_max);
            return offset(actual, theta, r.direction);
          },
      },
      behavior);
}

}  // namespace sbpp
