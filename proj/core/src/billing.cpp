#include "sbpp/billing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sbpp/errors.hpp"

namespace sbpp::billing {

TariffSchedule TariffSchedule::flat(double price) {
  if (!std::isfinite(price) || price < 0.0) {
    throw ConfigError("tariff must be >= 0");
  }
  TariffSchedule t;
  t.flat_ = price;
  return t;
}

TariffSchedule TariffSchedule::per_period(std::vector<double> prices) {
  if (prices.empty()) throw ConfigError("tariff vector must not be empty");
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (!std::isfinite(prices[i]) || prices[i] < 0.0) {
      throw ConfigError("tariff[" + std::to_string(i) + "] must be >= 0");
    }
  }
  TariffSchedule t;
  t.prices_ = std::move(prices);
  return t;
}

double TariffSchedule::at(std::size_t period_index) const {
  if (prices_.empty()) return flat_;
  if (period_index >= prices_.size()) {
    throw InputError("no tariff for period " + std::to_string(period_index));
  }
  return prices_[period_index];
}

void TariffSchedule::validate(std::size_t total_periods) const {
  if (!prices_.empty() && prices_.size() != total_periods) {
    throw ConfigError("tariff vector has " + std::to_string(prices_.size()) +
                      " entries, expected " + std::to_string(total_periods));
  }
}

BillingLedger::BillingLedger(std::vector<ConsumerId> consumers,
                             std::size_t window_start,
                             std::size_t window_length)
    : consumers_(std::move(consumers)),
      costs_(consumers_.size(), 0.0),
      accrued_(window_length, false),
      window_start_(window_start) {
  if (window_length == 0) throw ConfigError("billing window must be >= 1");
  if (consumers_.empty()) throw ConfigError("ledger needs consumers");
}

void BillingLedger::accrue(std::size_t period_index,
                           std::span<const double> reports, double tariff) {
  if (period_index < window_start_ || period_index >= window_end()) {
    throw InputError("period " + std::to_string(period_index) +
                     " outside billing window [" +
                     std::to_string(window_start_) + ", " +
                     std::to_string(window_end()) + ")");
  }
  if (reports.size() != consumers_.size()) {
    throw InputError("accrue: expected " + std::to_string(consumers_.size()) +
                     " reports, got " + std::to_string(reports.size()));
  }
  if (!(tariff >= 0.0)) throw InputError("accrue: tariff must be >= 0");
  const std::size_t slot = period_index - window_start_;
  if (accrued_[slot]) {
    throw InputError("period " + std::to_string(period_index) +
                     " already accrued");
  }
  for (double r : reports) {
    if (!(r >= 0.0)) throw InputError("accrue: reports must be >= 0");
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    costs_[i] += tariff * reports[i];
  }
  accrued_[slot] = true;
  ++accrued_count_;
}

std::vector<BillStatement> BillingLedger::issue_bills() {
  if (!window_complete()) {
    throw StateError("billing window [" + std::to_string(window_start_) +
                     ", " + std::to_string(window_end()) + ") has " +
                     std::to_string(accrued_.size() - accrued_count_) +
                     " periods not accrued");
  }
  std::vector<BillStatement> bills;
  bills.reserve(consumers_.size());
  for (std::size_t i = 0; i < consumers_.size(); ++i) {
    bills.push_back({consumers_[i], window_start_, window_end(), costs_[i]});
  }
  const std::size_t length = accrued_.size();
  window_start_ += length;
  std::fill(costs_.begin(), costs_.end(), 0.0);
  std::fill(accrued_.begin(), accrued_.end(), false);
  accrued_count_ = 0;
  return bills;
}

double BillingLedger::accumulated(ConsumerId id) const {
  auto it = std::find(consumers_.begin(), consumers_.end(), id);
  if (it == consumers_.end()) {
    throw InputError("consumer " + std::to_string(id) + " not in ledger");
  }
  return costs_[static_cast<std::size_t>(it - consumers_.begin())];
}

}  // namespace sbpp::billing
