// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "sbpp/billing.hpp"
#include "sbpp/config.hpp"
#include "sbpp/csv.hpp"
#include "sbpp/harness.hpp"

namespace {

using namespace sbpp;
namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string&)> check;
};

constexpr ConsumerId kAttacker = 25;
constexpr std::size_t kTableReps = 1000;
const std::vector<double> kTableMonths{1, 3, 6, 12};

ScenarioConfig default_region(std::uint64_t seed) {
  ScenarioConfig cfg;  // 100 consumers, 96 periods/day, U[0.5, 1.5], th 0.5
  cfg.master_seed = seed;
  cfg.repetitions = kTableReps;
  return cfg;
}

// Detection-table rows are shared by criteria 2-4; computed once.
std::vector<TableCell> table_cells;
fs::path out_dir = "acceptance_out";

const std::vector<TableCell>& table() {
  if (table_cells.empty()) {
    table_cells = probability_table(default_region(42), kAttacker, kTableMonths);
    csv::write_file(out_dir / "table1.csv", csv::table_text(table_cells));
    csv::write_file(out_dir / "table1_wide.csv",
                    csv::table_wide_text(table_cells));
  }
  return table_cells;
}

std::vector<ProbabilityEstimate> row(AttackCase c) {
  std::vector<ProbabilityEstimate> out;
  for (const auto& cell : table()) {
    if (cell.attack_case == c) out.push_back(cell.estimate);
  }
  return out;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0,
                double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

std::string row_text(const std::vector<ProbabilityEstimate>& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    s += fmt("%gmo=%.3f(±%.3f) ", kTableMonths[i], r[i].probability,
             r[i].standard_error);
  }
  return s;
}

bool nondecreasing_with_slack(const std::vector<ProbabilityEstimate>& r) {
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i].probability + r[i - 1].standard_error < r[i - 1].probability) {
      return false;
    }
  }
  return true;
}

// 1. Case-I exactness.
bool case_one_exactness(std::string& detail) {
  ScenarioConfig cfg = default_region(42);
  cfg.attackers = {{kAttacker, Multiplicative{0.1}}};
  const auto t0 = Clock::now();
  const auto under = run_trial(cfg, trial_seed(cfg, 0));
  const double under_seconds = seconds_since(t0);
  cfg.attackers = {{kAttacker, Multiplicative{10.0}}};
  const auto t1 = Clock::now();
  const auto over = run_trial(cfg, trial_seed(cfg, 0));
  const double over_seconds = seconds_since(t1);

  const double c_under = *under.report.find(kAttacker)->corr;
  const double c_over = *over.report.find(kAttacker)->corr;
  double max_benign = 0.0;
  for (const auto& e : under.report.entries) {
    if (e.id != kAttacker && e.corr) {
      max_benign = std::max(max_benign, std::abs(*e.corr));
    }
  }

  // How often the benign bound holds over seeds (informational).
  cfg.attackers = {{kAttacker, Multiplicative{0.1}}};
  cfg.repetitions = 200;
  std::vector<TrialOutcome> many;
  estimate_detection_probability(cfg, &many);
  std::size_t bound_holds = 0;
  for (const auto& t : many) {
    bool ok = true;
    for (const auto& e : t.report.entries) {
      if (e.id != kAttacker && e.corr && std::abs(*e.corr) >= 0.5) ok = false;
    }
    bound_holds += ok ? 1 : 0;
  }

  detail = fmt("corr(a=0.1)=%.12f corr(a=10)=%.12f max|benign|=%.3f", c_under,
               c_over, max_benign) +
           fmt(" trial=%.3fs/%.3fs; benign bound held in %g/200 seeds",
               under_seconds, over_seconds, static_cast<double>(bound_holds));
  return std::abs(c_under - 1.0) <= 1e-9 && std::abs(c_over + 1.0) <= 1e-9 &&
         max_benign < 0.5 && under_seconds < 1.0 && over_seconds < 1.0;
}

// 2. Detection table Case-I row.
bool case_one_row(std::string& detail) {
  const auto r = row(AttackCase::kCaseI);
  bool ok = true;
  for (const auto& e : r) ok = ok && e.successes == e.repetitions;

  // Informational: the plain threshold rule (labeled set == {attacker}).
  ScenarioConfig cfg = standard_case(default_region(42), AttackCase::kCaseI,
                                     kAttacker, 1);
  cfg.mode = DetectionMode::kThreshold;
  cfg.repetitions = 200;
  const auto threshold_rule = estimate_detection_probability(cfg);
  detail = row_text(r) + fmt("| threshold-rule exact-set at 1mo: %.3f",
                             threshold_rule.probability);
  return ok;
}

// 3. Case-III qualitative.
bool case_three_row(std::string& detail) {
  const auto r = row(AttackCase::kCaseIII);
  detail = row_text(r) + "| theta ~ U(0, usage_max - usage_min), subtract";
  bool ok = r[0].probability >= 0.85;
  for (std::size_t i = 1; i < r.size(); ++i) ok = ok && r[i].probability >= 0.99;
  return ok;
}

// 4. Case-II qualitative.
bool case_two_row(std::string& detail) {
  const auto r = row(AttackCase::kCaseII);
  detail = row_text(r) + "| eta = median usage, subtract, threshold rule";
  return nondecreasing_with_slack(r) && r[2].probability >= 0.95 &&
         r[3].probability >= 0.95;
}

// 5. Benign correlation concentration.
bool concentration(std::string& detail) {
  ScenarioConfig cfg = default_region(42);
  cfg.attackers = {{kAttacker, Multiplicative{0.1}}};
  const auto points = concentration_experiment(cfg, {1, 12});
  csv::write_file(out_dir / "concentration.csv", csv::concentration_text(points));
  const double ratio = points[1].benign_std / points[0].benign_std;
  const double target = 1.0 / std::sqrt(12.0);
  detail = fmt("std(1mo)=%.4f std(12mo)=%.4f ratio=%.4f target=%.4f±30%%",
               points[0].benign_std, points[1].benign_std, ratio, target);
  return points[1].benign_std < points[0].benign_std &&
         std::abs(ratio - target) <= 0.3 * target;
}

// 6. Property suite.
bool property_suite(std::string& detail) {
  const auto t0 = Clock::now();
  RandomStream rng(6);
  double worst_oracle = 0.0;
  double worst_affine = 0.0;
  for (int trial = 0; trial < 20000; ++trial) {
    const std::size_t n = 2 + rng.index(9);
    std::vector<double> x(n), y(n), ax(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.uniform(-2, 2);
      y[i] = rng.uniform(-2, 2);
    }
    const auto r = pearson(x, y);
    if (!r) continue;
    worst_oracle =
        std::max(worst_oracle, std::abs(*r - oracle::pearson_centered(x, y)));
    const double a = (rng.index(2) ? 1 : -1) * rng.uniform(0.1, 10);
    const double b = rng.uniform(-10, 10);
    for (std::size_t i = 0; i < n; ++i) ax[i] = a * x[i] + b;
    worst_affine = std::max(
        worst_affine, std::abs(*pearson(ax, y) - (a > 0 ? 1 : -1) * *r));
  }

  ScenarioConfig cfg = default_region(9);
  cfg.attackers = {{25, Multiplicative{0.1}}, {50, RandomOffset{1.0}}};
  cfg.tariff = {0.17};
  const auto run = simulate(cfg, 123);
  double worst_conservation = 0.0;
  double reported = 0.0;
  for (const auto& rec : run.records) {
    worst_conservation = std::max(
        worst_conservation,
        std::abs(rec.actual_total - rec.reported_total - rec.leakage) /
            rec.actual_total);
    reported += rec.reported_total;
  }
  double billed = 0.0;
  for (const auto& b : run.bills) billed += b.amount;
  const double billing_rel = std::abs(billed - 0.17 * reported) / billed;

  std::map<unsigned, std::size_t> counts;
  for (const auto& rec : run.records) ++counts[rec.sampled_id];
  const double chi2 = oracle::chi_square_uniform(counts, 100, run.records.size());

  ScenarioConfig det = standard_case(default_region(3), AttackCase::kCaseIII,
                                     kAttacker, 1);
  det.repetitions = 16;
  det.threads = 1;
  std::vector<TrialOutcome> serial, parallel;
  const auto est1 = estimate_detection_probability(det, &serial);
  det.threads = 4;
  const auto est4 = estimate_detection_probability(det, &parallel);
  const bool deterministic = est1 == est4 && serial == parallel &&
                             simulate(cfg, 123).records == run.records;

  const double elapsed = seconds_since(t0);
  detail = fmt("oracle=%.2e affine=%.2e conservation=%.2e billing=%.2e", worst_oracle,
               worst_affine, worst_conservation, billing_rel) +
           fmt(" chi2=%.1f(<%.1f) deterministic=%g %.1fs", chi2,
               oracle::kChiSquare99At001, deterministic ? 1.0 : 0.0, elapsed);
  return worst_oracle <= 1e-12 && worst_affine <= 1e-9 &&
         worst_conservation <= 1e-12 && billing_rel <= 1e-9 &&
         chi2 < oracle::kChiSquare99At001 && deterministic && elapsed < 120.0;
}

// Population correlation of an under-reporter's report with the leakage when
// the leakage is 0.9 c25 + 0.9 c75 - 9 c50 with iid usage.
double under_ceiling() {
  return 0.9 / std::sqrt(0.9 * 0.9 * 2 + 9.0 * 9.0);
}

// 7. Multi-attacker outcome classes.
bool multi_attacker(std::string& detail) {
  ScenarioConfig cfg = default_region(42);
  cfg.attackers = {{25, Multiplicative{0.1}},
                   {50, Multiplicative{10.0}},
                   {75, Multiplicative{0.1}}};
  cfg.repetitions = 100;
  std::vector<TrialOutcome> trials;
  const auto est = estimate_detection_probability(cfg, &trials);
  csv::write_file(out_dir / "multi_outcomes.csv", csv::outcomes_text(cfg, trials));
  std::size_t counts[3] = {0, 0, 0};
  bool directions = true;
  for (const auto& t : trials) {
    ++counts[static_cast<int>(t.outcome)];
    if (t.outcome == OutcomeClass::kExact) {
      directions = directions &&
                   t.report.find(25)->label == Label::kMaliciousUnder &&
                   t.report.find(75)->label == Label::kMaliciousUnder &&
                   t.report.find(50)->label == Label::kMaliciousOver;
    }
  }
  detail = fmt("exact=%g false_positive=%g missed=%g", double(counts[0]),
               double(counts[1]), double(counts[2])) +
           fmt(" precision=%.3f recall=%.3f", est.mean_precision, est.mean_recall) +
           fmt("; population corr ceiling for #25/#75: %.3f", under_ceiling());
  return counts[0] > trials.size() / 2 && directions;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--out-dir") out_dir = argv[i + 1];
  }
  fs::create_directories(out_dir);

  const std::vector<Criterion> criteria{
      {1, "Case-I exactness (corr = +1 / -1, benign |corr| < 0.5, < 1 s)",
       case_one_exactness},
      {6, "Property suite (< 2 min)", property_suite},
      {5, "Benign concentration (std ratio ~ 1/sqrt(12) +-30%)", concentration},
      {7, "Multi-attacker outcome classes, exact in majority", multi_attacker},
      {2, "Detection table Case I = 1.0 at 1/3/6/12 months, 1000 reps", case_one_row},
      {3, "Detection table Case III >= 0.85 at 1 mo, >= 0.99 after", case_three_row},
      {4, "Detection table Case II nondecreasing, >= 0.95 by 6 months", case_two_row},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = Clock::now();
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %d: %s -- %s (%.1fs)\n", ok ? "PASS" : "FAIL",
                c.number, c.title.c_str(), detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
