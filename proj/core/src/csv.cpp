#include "sbpp/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "sbpp/config.hpp"
#include "sbpp/errors.hpp"

namespace sbpp::csv {
namespace {

std::string os_error() { return std::strerror(errno); }

std::string month_label(double months) { return format_number(months); }

}  // namespace

std::string records_text(std::span<const PeriodRecord> records) {
  std::vector<const PeriodRecord*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    return a->period_index < b->period_index;
  });
  std::string out = std::string(kRecordsHeader) + "\n";
  for (const auto* r : sorted) {
    out += std::to_string(r->period_index) + "," +
           format_number(r->actual_total) + "," +
           format_number(r->reported_total) + "," + format_number(r->leakage) +
           "," + std::to_string(r->sampled_id) + "," +
           format_number(r->sampled_report) + "\n";
  }
  return out;
}

std::string detection_text(const DetectionReport& report) {
  std::string out = std::string(kDetectionHeader) + "\n";
  for (const auto& e : report.entries) {
    out += std::to_string(e.id) + "," + std::to_string(e.sample_count) + "," +
           (e.corr ? format_number(*e.corr) : std::string()) + "," +
           std::string(to_string(e.label)) + "\n";
  }
  return out;
}

std::string bills_text(std::span<const billing::BillStatement> bills) {
  std::vector<const billing::BillStatement*> sorted;
  for (const auto& b : bills) sorted.push_back(&b);
  std::stable_sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) {
    if (a->window_start != b->window_start) {
      return a->window_start < b->window_start;
    }
    return a->consumer_id < b->consumer_id;
  });
  std::string out = std::string(kBillsHeader) + "\n";
  for (const auto* b : sorted) {
    out += std::to_string(b->consumer_id) + "," +
           std::to_string(b->window_start) + "," +
           std::to_string(b->window_end) + "," + format_number(b->amount) + "\n";
  }
  return out;
}

std::string table_text(std::span<const TableCell> cells) {
  std::string out = std::string(kTableHeader) + "\n";
  for (const auto& c : cells) {
    out += std::string(to_string(c.attack_case)) + "," +
           month_label(c.months) + "," + format_number(c.estimate.probability) +
           "," + format_number(c.estimate.standard_error) + "," +
           std::to_string(c.estimate.repetitions) + "\n";
  }
  return out;
}

std::string table_wide_text(std::span<const TableCell> cells) {
  std::vector<double> months;
  std::map<int, std::map<double, double>> grid;
  for (const auto& c : cells) {
    if (std::find(months.begin(), months.end(), c.months) == months.end()) {
      months.push_back(c.months);
    }
    grid[static_cast<int>(c.attack_case)][c.months] = c.estimate.probability;
  }
  std::string out = "case";
  for (double m : months) out += ",months_" + month_label(m);
  out += "\n";
  for (const auto& [case_id, row] : grid) {
    out += std::string(to_string(static_cast<AttackCase>(case_id)));
    for (double m : months) {
      auto it = row.find(m);
      out += "," + (it == row.end() ? std::string() : format_number(it->second));
    }
    out += "\n";
  }
  return out;
}

std::string outcomes_text(const ScenarioConfig& config,
                          std::span<const TrialOutcome> outcomes) {
  std::string out = std::string(kOutcomesHeader) + "\n";
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& t = outcomes[i];
    std::size_t missed = 0;
    for (const auto& [id, hit] : t.attacker_found) missed += hit ? 0 : 1;
    out += std::to_string(i) + "," + std::to_string(trial_seed(config, i)) +
           "," + std::string(to_string(t.outcome)) + "," +
           (t.correct ? "1" : "0") + "," +
           std::to_string(t.false_positive_count) + "," +
           std::to_string(missed) + "," +
           (t.selected ? std::to_string(*t.selected) : std::string()) + "\n";
  }
  return out;
}

std::string concentration_text(std::span<const ConcentrationPoint> points) {
  std::string out = "months,consumer_id,sample_count,corr,label\n";
  for (const auto& p : points) {
    for (const auto& e : p.report.entries) {
      out += month_label(p.months) + "," + std::to_string(e.id) + "," +
             std::to_string(e.sample_count) + "," +
             (e.corr ? format_number(*e.corr) : std::string()) + "," +
             std::string(to_string(e.label)) + "\n";
    }
  }
  return out;
}

std::string concentration_summary_text(
    std::span<const ConcentrationPoint> points) {
  std::string out = "months,benign_count,benign_std\n";
  for (const auto& p : points) {
    out += month_label(p.months) + "," + std::to_string(p.benign_count) + "," +
           format_number(p.benign_std) + "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) {
      throw IoError("cannot create directory " + path.parent_path().string() +
                    ": " + ec.message());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + ": " + os_error());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("cannot write " + path.string() + ": " + os_error());
}

std::vector<PeriodRecord> parse_records(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw InputError("records CSV: missing or unexpected header");
  }
  std::vector<PeriodRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 6) {
      throw InputError("records CSV line " + std::to_string(line_no) +
                       ": expected 6 fields");
    }
    const auto num = [&](std::string_view f, auto& out) {
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw InputError("records CSV line " + std::to_string(line_no) +
                         ": bad field '" + std::string(f) + "'");
      }
    };
    PeriodRecord r;
    num(fields[0], r.period_index);
    num(fields[1], r.actual_total);
    num(fields[2], r.reported_total);
    num(fields[3], r.leakage);
    num(fields[4], r.sampled_id);
    num(fields[5], r.sampled_report);
    records.push_back(r);
  }
  return records;
}

std::vector<PeriodRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + ": " + os_error());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_records(text.str());
}

}  // namespace sbpp::csv
