#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mobistress/error.hpp"
#include "mobistress/evaluation.hpp"

using namespace mobistress;

namespace {

// Per-class then weighted, written out independently of the library.
Prf oracle_prf(const ConfusionMatrix& cm) {
  double n = 0;
  for (auto& r : cm.counts)
    for (auto c : r) n += static_cast<double>(c);
  Prf out;
  for (int c = 0; c < 3; ++c) {
    const double tp = static_cast<double>(cm.counts[c][c]);
    const double fn = static_cast<double>(cm.counts[c][(c + 1) % 3] + cm.counts[c][(c + 2) % 3]);
    const double fp = static_cast<double>(cm.counts[(c + 1) % 3][c] + cm.counts[(c + 2) % 3][c]);
    const double p = tp + fp == 0 ? 0 : tp / (tp + fp);
    const double r = tp + fn == 0 ? 0 : tp / (tp + fn);
    const double f = p + r == 0 ? 0 : 2 * p * r / (p + r);
    out.precision += (tp + fn) / n * p;
    out.recall += (tp + fn) / n * r;
    out.f1 += (tp + fn) / n * f;
  }
  return out;
}

ConfusionMatrix mode_matrix(const std::array<std::uint64_t, 3>& support, int mode) {
  ConfusionMatrix cm;
  for (int c = 0; c < 3; ++c) cm.counts[c][mode] = support[c];
  return cm;
}

std::vector<DayRecord> synthetic_records(Rng& rng, std::size_t n, const std::array<double, 3>& mix,
                                         bool planted) {
  std::vector<DayRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    DayRecord r;
    r.user_id = "u";
    r.date = Date{std::chrono::year{2013} / 1 / 1} + std::chrono::days{static_cast<int>(i)};
    for (double& f : r.features) f = rng.normal();
    const double u = rng.uniform();
    const int c = u < mix[0] ? 0 : u < mix[0] + mix[1] ? 1 : 2;
    r.label = static_cast<StressClass>(c);
    if (planted) r.features[0] = c - 1.0 + 0.1 * rng.normal();
    out.push_back(r);
  }
  return out;
}

CvConfig quick_cv(std::uint64_t seed) {
  CvConfig cfg;
  cfg.seed = seed;
  cfg.train.max_epochs = 200;
  cfg.train.patience = 10;
  return cfg;
}

}  // namespace

TEST(WeightedPrf, Diagonal) {
  ConfusionMatrix cm;
  cm.counts[0][0] = 5;
  cm.counts[1][1] = 9;
  cm.counts[2][2] = 1;
  const Prf m = weighted_prf(cm);
  EXPECT_EQ(m.precision, 1.0);
  EXPECT_EQ(m.recall, 1.0);
  EXPECT_EQ(m.f1, 1.0);
}

TEST(WeightedPrf, MajorityAt47Percent) {
  const Prf m = weighted_prf(mode_matrix({28, 47, 25}, 1));
  EXPECT_NEAR(m.recall, 0.47, 1e-12);
  EXPECT_NEAR(m.precision, 0.47 * 0.47, 1e-12);
  EXPECT_NEAR(m.f1, 0.47 * 2 * 0.47 / 1.47, 1e-12);
  EXPECT_NEAR(m.f1, 0.30, 0.005);
  EXPECT_NEAR(m.precision, 0.22, 0.005);
}

TEST(WeightedPrf, MatchesOracleOnRandomMatrices) {
  Rng rng(91);
  for (int t = 0; t < 1000; ++t) {
    ConfusionMatrix cm;
    for (auto& r : cm.counts)
      for (auto& c : r) c = rng.bernoulli(0.2) ? 0 : rng.index(50);
    if (cm.total() == 0) continue;
    const Prf a = weighted_prf(cm), b = oracle_prf(cm);
    EXPECT_NEAR(a.precision, b.precision, 1e-12);
    EXPECT_NEAR(a.recall, b.recall, 1e-12);
    EXPECT_NEAR(a.f1, b.f1, 1e-12);
    double diag = 0;
    for (int c = 0; c < 3; ++c) diag += static_cast<double>(cm.counts[c][c]);
    EXPECT_NEAR(a.recall, diag / static_cast<double>(cm.total()), 1e-12);
    for (double v : {a.precision, a.recall, a.f1}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
  }
}

TEST(WeightedPrf, EmptyMatrixThrows) {
  try {
    weighted_prf(ConfusionMatrix{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyMatrix);
  }
}

TEST(WeightedPrf, OrderOfRecordsDoesNotMatter) {
  Rng rng(92);
  std::vector<int> truth(200), pred(200);
  for (int& v : truth) v = static_cast<int>(rng.index(3));
  for (int& v : pred) v = static_cast<int>(rng.index(3));
  const ConfusionMatrix ref = confusion(truth, pred);
  std::vector<std::size_t> perm(200);
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(std::span<std::size_t>(perm));
  std::vector<int> t2, p2;
  for (std::size_t i : perm) {
    t2.push_back(truth[i]);
    p2.push_back(pred[i]);
  }
  EXPECT_EQ(confusion(t2, p2), ref);
  EXPECT_EQ(ref.total(), 200u);
}

TEST(ModeBaseline, MostFrequentAndTies) {
  EXPECT_EQ(mode_baseline(std::vector<int>{1, 1, 2}), 1);
  EXPECT_EQ(mode_baseline(std::vector<int>{0, 0, 1, 1}), 0);
  EXPECT_EQ(mode_baseline(std::vector<int>{2, 1, 2, 1}), 1);
  EXPECT_EQ(mode_baseline(std::vector<int>{2}), 2);
}

TEST(ModeBaseline, PaperMixGivesPointThree) {
  const int mode = mode_baseline(std::vector<int>{0, 1, 1, 2});
  const Prf m = weighted_prf(mode_matrix({25, 47, 28}, mode));
  EXPECT_NEAR(m.f1, 0.30, 0.005);
  EXPECT_NEAR(m.precision, 0.22, 0.005);
  EXPECT_NEAR(m.recall, 0.47, 0.005);
}

TEST(ModeBaseline, ClosedFormOverRandomMajority) {
  Rng rng(93);
  for (int t = 0; t < 100; ++t) {
    const double p = rng.uniform(0.34, 0.9);
    const std::uint64_t n = 1'000'000;
    const std::uint64_t major = static_cast<std::uint64_t>(std::llround(p * n));
    const std::uint64_t rest = n - major, a = rest / 2, b = rest - a;
    const double q = static_cast<double>(major) / n;
    const Prf m = weighted_prf(mode_matrix({a, major, b}, 1));
    EXPECT_NEAR(m.f1, 2 * q * q / (1 + q), 1e-9);
    EXPECT_NEAR(m.precision, q * q, 1e-9);
    EXPECT_NEAR(m.recall, q, 1e-9);
  }
}

TEST(Summarize, MeanAndPopulationStd) {
  std::vector<FoldReport> r(4);
  const double f1[4] = {0.2, 0.4, 0.6, 0.8};
  for (int i = 0; i < 4; ++i) r[i].metrics = {f1[i], 0.5, f1[i] / 2};
  const MetricSummary s = summarize(r);
  EXPECT_NEAR(s.mean.precision, 0.5, 1e-15);
  EXPECT_NEAR(s.stddev.precision, std::sqrt(0.05), 1e-12);
  EXPECT_NEAR(s.stddev.recall, 0.0, 1e-15);
}

TEST(CrossValidate, PlantedSignalIsRecovered) {
  Rng rng(94);
  const auto records = synthetic_records(rng, 500, {0.3, 0.4, 0.3}, true);
  const FoldSpec folds = stratified_kfold(labels_of(records), 5, 1);
  const CrossValidation cv = cross_validate(records, folds, FeatureSubset::All, quick_cv(2));
  EXPECT_GE(cv.model_summary.mean.f1, 0.95);
  ASSERT_EQ(cv.model.size(), 5u);
  for (int f = 0; f < 5; ++f) {
    EXPECT_EQ(cv.model[f].fold, f);
    EXPECT_EQ(cv.model[f].confusion.total(), folds.test_indices(f).size());
    EXPECT_EQ(cv.networks[f].input_dim(), 12u);
  }
  // GPS columns include the planted feature; Temporal does not.
  const CrossValidation temporal = cross_validate(records, folds, FeatureSubset::Temporal, quick_cv(2));
  EXPECT_EQ(temporal.networks[0].input_dim(), 4u);
  EXPECT_LT(temporal.model_summary.mean.f1, 0.8);
}

// Best weighted F1 any classifier that ignores its input can expect: class c
// predicted with probability q_c gives F1_c = 2 p_c q_c / (p_c + q_c).
double best_blind_f1(const std::array<double, 3>& p) {
  double best = 0;
  for (int a = 0; a <= 100; ++a)
    for (int b = 0; a + b <= 100; ++b) {
      const double q[3] = {a / 100.0, b / 100.0, (100 - a - b) / 100.0};
      double f = 0;
      for (int c = 0; c < 3; ++c)
        if (q[c] > 0) f += p[c] * 2 * p[c] * q[c] / (p[c] + q[c]);
      best = std::max(best, f);
    }
  return best;
}

TEST(CrossValidate, ShuffledLabelsInventNoSignal) {
  Rng rng(95);
  auto records = synthetic_records(rng, 600, {0.28, 0.47, 0.25}, true);
  std::vector<StressClass> labels = labels_of(records);
  rng.shuffle(std::span<StressClass>(labels));
  for (std::size_t i = 0; i < records.size(); ++i) records[i].label = labels[i];
  std::array<double, 3> p{};
  for (StressClass c : labels) p[static_cast<int>(c)] += 1.0 / labels.size();
  const FoldSpec folds = stratified_kfold(labels, 5, 3);
  const CrossValidation cv = cross_validate(records, folds, FeatureSubset::All, quick_cv(4));
  EXPECT_LE(cv.model_summary.mean.f1, best_blind_f1(p) + 0.05);
  EXPECT_NEAR(cv.baseline_summary.mean.f1, 2 * p[1] * p[1] / (1 + p[1]), 0.01);
}

TEST(CrossValidate, BaselineOnStratifiedPaperMix) {
  // 1078 records at 47% median (the rest 28/25).
  std::vector<DayRecord> records(1078);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].label = i < 507 ? StressClass::Median : i < 809 ? StressClass::BelowMedian : StressClass::AboveMedian;
  }
  const FoldSpec folds = stratified_kfold(labels_of(records), 5, 9);
  std::vector<FoldReport> reports;
  for (int f = 0; f < 5; ++f) {
    std::vector<int> train, truth;
    for (std::size_t i : folds.train_indices(f)) train.push_back(static_cast<int>(records[i].label));
    for (std::size_t i : folds.test_indices(f)) truth.push_back(static_cast<int>(records[i].label));
    const int mode = mode_baseline(train);
    EXPECT_EQ(mode, 1);
    reports.push_back({f, FeatureSubset::All, weighted_prf(confusion(truth, std::vector<int>(truth.size(), mode))), {}});
  }
  const MetricSummary s = summarize(reports);
  EXPECT_NEAR(s.mean.f1, 0.30, 0.005);
  EXPECT_NEAR(s.mean.precision, 0.22, 0.005);
  EXPECT_NEAR(s.mean.recall, 0.47, 0.005);
}
