#pragma once

// Billing sees reported values only. This library does not link against the
// grid model, so ground-truth usage is unreachable from here.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sbpp::billing {

using ConsumerId = std::uint32_t;

/// Price per energy unit, flat or one value per simulated period.
class TariffSchedule {
 public:
  static TariffSchedule flat(double price);
  static TariffSchedule per_period(std::vector<double> prices);

  double at(std::size_t period_index) const;
  bool is_flat() const { return prices_.empty(); }
  double flat_price() const { return flat_; }
  const std::vector<double>& prices() const { return prices_; }

  /// Throws ConfigError when a vector schedule does not cover exactly
  /// `total_periods` periods.
  void validate(std::size_t total_periods) const;

 private:
  double flat_ = 0.0;
  std::vector<double> prices_;
};

struct BillStatement {
  ConsumerId consumer_id = 0;
  std::size_t window_start = 0;
  std::size_t window_end = 0;  // exclusive
  double amount = 0.0;
};

/// Running per-consumer cost for one billing window [start, start + length).
/// Each period must be accrued exactly once before bills can be issued.
class BillingLedger {
 public:
  BillingLedger(std::vector<ConsumerId> consumers, std::size_t window_start,
                std::size_t window_length);

  /// Adds tariff * report[i] to consumer i. Throws InputError when the period
  /// is outside the window, was already accrued, the report count is wrong,
  /// or tariff/report is negative.
  void accrue(std::size_t period_index, std::span<const double> reports,
              double tariff);

  bool window_complete() const { return accrued_count_ == accrued_.size(); }

  /// Emits one statement per consumer (ledger order) and opens the next
  /// window. Throws StateError when the window is incomplete.
  std::vector<BillStatement> issue_bills();

  double accumulated(ConsumerId id) const;
  const std::vector<ConsumerId>& consumers() const { return consumers_; }
  const std::vector<double>& costs() const { return costs_; }
  std::size_t window_start() const { return window_start_; }
  std::size_t window_end() const { return window_start_ + accrued_.size(); }

 private:
  std::vector<ConsumerId> consumers_;
  std::vector<double> costs_;
  std::vector<bool> accrued_;
  std::size_t accrued_count_ = 0;
  std::size_t window_start_ = 0;
};

}  // namespace sbpp::billing
