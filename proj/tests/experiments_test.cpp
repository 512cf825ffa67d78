// Seeded Monte-Carlo experiments behind individual operations. Expected
// values come from the stated statistical argument, not from the code.

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sbpp/harness.hpp"

namespace sbpp {
namespace {

TEST(ExperimentTest, AllBenignRegionRaisesNoLabels) {
  ScenarioConfig cfg;
  cfg.repetitions = 100;
  cfg.master_seed = 5;
  std::vector<TrialOutcome> trials;
  estimate_detection_probability(cfg, &trials);
  std::size_t clean = 0;
  for (const auto& t : trials) clean += t.report.malicious_ids().empty() ? 1 : 0;
  EXPECT_GE(static_cast<double>(clean) / trials.size(), 0.99);
}

TEST(ExperimentTest, ExpectedSamplesPerConsumer) {
  ScenarioConfig cfg;
  const auto run = simulate(cfg, 3, false);
  std::size_t total = 0;
  for (const auto& e : run.report.entries) total += e.sample_count;
  EXPECT_EQ(run.report.entries.size(), 100u);
  EXPECT_DOUBLE_EQ(static_cast<double>(total) / 100.0, 28.8);
}

TEST(ExperimentTest, BenignCorrelationCentersOnZero) {
  // Consumer 3 is benign next to a Case-I attacker; its (report, leakage)
  // pairs are independent, so the mean correlation over seeds is ~0.
  ScenarioConfig cfg;
  cfg.attackers = {{25, Multiplicative{0.1}}};
  constexpr int kTrials = 300;
  double sum = 0.0;
  int defined = 0;
  for (int s = 0; s < kTrials; ++s) {
    const auto out = run_trial(cfg, derive_seed(77, s));
    if (const auto c = out.report.find(3)->corr) {
      sum += *c;
      ++defined;
    }
  }
  ASSERT_EQ(defined, kTrials);
  EXPECT_LT(std::abs(sum / kTrials), 3.0 / std::sqrt(kTrials));
}

TEST(ExperimentTest, LowReportFilterStrengthensCaseTwoSignal) {
  // Clip fraction 10% (eta = 0.6 on U[0.5, 1.5]) below q = 0.25.
  ScenarioConfig cfg;
  cfg.attackers = {{25, FixedOffset{0.6, OffsetDirection::kSubtract}}};
  cfg.duration_months = 3;
  int compared = 0;
  int stronger = 0;
  for (int s = 0; s < 200; ++s) {
    const auto run = simulate(cfg, derive_seed(11, s), false);
    const auto& samples = run.series.at(25);
    const auto unfiltered = pearson(samples.reports, samples.leakages);
    const auto f = low_report_filter(samples, 0.25);
    const auto filtered = pearson(f.reports, f.leakages);
    if (!unfiltered || !filtered) continue;
    ++compared;
    stronger += *filtered >= *unfiltered ? 1 : 0;
  }
  ASSERT_GE(compared, 190);
  EXPECT_GE(static_cast<double>(stronger) / compared, 0.90);
}

TEST(ExperimentTest, CaseTwoDefaultLeakageVariesOnAboutHalfThePeriods) {
  const auto cfg = standard_case(ScenarioConfig{}, AttackCase::kCaseII, 25, 1);
  const auto run = simulate(cfg, 8, false);
  const auto& s = run.series.at(25);
  std::size_t zero = 0;
  for (double r : s.reports) zero += r == 0.0 ? 1 : 0;
  const double frac = static_cast<double>(zero) / s.size();
  EXPECT_GT(frac, 0.2);
  EXPECT_LT(frac, 0.8);
}

}  // namespace
}  // namespace sbpp
