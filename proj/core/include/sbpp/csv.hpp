#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "sbpp/aggregation.hpp"
#include "sbpp/billing.hpp"
#include "sbpp/detection.hpp"
#include "sbpp/harness.hpp"

namespace sbpp::csv {

// Every writer produces UTF-8 text with a header row, '\n' line endings,
// shortest round-trip numbers and rows in ascending period / consumer order.
// The `*_text` functions return the content; `write_*` put it in a file and
// throw IoError (path + OS error) on failure.

inline constexpr const char* kRecordsHeader =
    "period,actual_total,reported_total,leakage,sampled_id,sampled_report";
inline constexpr const char* kDetectionHeader =
    "consumer_id,sample_count,corr,label";
inline constexpr const char* kBillsHeader =
    "consumer_id,window_start,window_end,amount";
inline constexpr const char* kTableHeader = "case,months,probability,stderr,reps";
inline constexpr const char* kOutcomesHeader =
    "trial,seed,outcome,correct,false_positives,missed,selected";

std::string records_text(std::span<const PeriodRecord> records);
std::string detection_text(const DetectionReport& report);
std::string bills_text(std::span<const billing::BillStatement> bills);
std::string table_text(std::span<const TableCell> cells);
/// Case per row, one probability column per duration (Table 1 layout).
std::string table_wide_text(std::span<const TableCell> cells);
std::string outcomes_text(const ScenarioConfig& config,
                          std::span<const TrialOutcome> outcomes);
std::string concentration_text(std::span<const ConcentrationPoint> points);
std::string concentration_summary_text(
    std::span<const ConcentrationPoint> points);

/// Writes `content` to `path` (creating parent directories).
void write_file(const std::filesystem::path& path, const std::string& content);

/// Parses a records CSV produced by records_text. Throws InputError.
std::vector<PeriodRecord> read_records(const std::filesystem::path& path);
std::vector<PeriodRecord> parse_records(const std::string& text);

}  // namespace sbpp::csv
