#include "mobistress/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "mobistress/error.hpp"
#include "mobistress/rng.hpp"

namespace mobistress {

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t t = 0;
  for (const auto& row : counts) {
    for (auto c : row) t += c;
  }
  return t;
}

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorKind::ConfigInvalid, "truth and prediction counts differ");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
  return cm;
}

Prf weighted_prf(const ConfusionMatrix& cm) {
  const double total = static_cast<double>(cm.total());
  if (total == 0) throw Error(ErrorKind::EmptyMatrix, "confusion matrix has no entries");
  Prf out;
  for (int c = 0; c < kClassCount; ++c) {
    double support = 0.0, predicted = 0.0;
    for (int k = 0; k < kClassCount; ++k) {
      support += static_cast<double>(cm.counts[c][k]);
      predicted += static_cast<double>(cm.counts[k][c]);
    }
    const double tp = static_cast<double>(cm.counts[c][c]);
    const double precision = predicted > 0 ? tp / predicted : 0.0;
    const double recall = support > 0 ? tp / support : 0.0;
    const double f1 = precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    const double w = support / total;
    out.precision += w * precision;
    out.recall += w * recall;
    out.f1 += w * f1;
  }
  return out;
}

int mode_baseline(std::span<const int> train_labels) {
  std::array<std::size_t, kClassCount> counts{};
  for (int y : train_labels) ++counts[static_cast<std::size_t>(y)];
  // max_element returns the first maximum, i.e. the lowest class on ties.
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

MetricSummary summarize(std::span<const FoldReport> reports) {
  MetricSummary s;
  if (reports.empty()) return s;
  const double k = static_cast<double>(reports.size());
  for (const FoldReport& r : reports) {
    s.mean.precision += r.metrics.precision / k;
    s.mean.recall += r.metrics.recall / k;
    s.mean.f1 += r.metrics.f1 / k;
  }
  for (const FoldReport& r : reports) {
    s.stddev.precision += std::pow(r.metrics.precision - s.mean.precision, 2) / k;
    s.stddev.recall += std::pow(r.metrics.recall - s.mean.recall, 2) / k;
    s.stddev.f1 += std::pow(r.metrics.f1 - s.mean.f1, 2) / k;
  }
  s.stddev.precision = std::sqrt(s.stddev.precision);
  s.stddev.recall = std::sqrt(s.stddev.recall);
  s.stddev.f1 = std::sqrt(s.stddev.f1);
  return s;
}

nn::Matrix feature_matrix(std::span<const DayRecord> records, std::span<const std::size_t> rows,
                          std::span<const std::size_t> columns) {
  nn::Matrix x(rows.size(), columns.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      x(r, c) = records[rows[r]].features[columns[c]];
    }
  }
  return x;
}

namespace {

std::vector<int> class_indices(std::span<const DayRecord> records,
                               std::span<const std::size_t> rows) {
  std::vector<int> y;
  y.reserve(rows.size());
  for (std::size_t r : rows) y.push_back(static_cast<int>(records[r].label));
  return y;
}

}  // namespace

CrossValidation cross_validate(std::span<const DayRecord> records, const FoldSpec& folds,
                               FeatureSubset subset, const CvConfig& cfg) {
  if (folds.assignments.size() != records.size()) {
    throw Error(ErrorKind::ConfigInvalid, "fold assignments do not cover the dataset");
  }
  const std::vector<std::size_t> columns = subset_columns(subset);
  nn::Architecture arch = cfg.architecture;
  arch.input_dim = columns.size();
  arch.validate();

  const int k = folds.k;
  CrossValidation cv;
  cv.subset = subset;
  cv.model.resize(static_cast<std::size_t>(k));
  cv.baseline.resize(static_cast<std::size_t>(k));
  cv.histories.resize(static_cast<std::size_t>(k));
  cv.networks.assign(static_cast<std::size_t>(k), nn::Network::zeros(arch));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(k));

#pragma omp parallel for schedule(dynamic, 1)
  for (int fold = 0; fold < k; ++fold) {
    const auto f = static_cast<std::size_t>(fold);
    try {
      const std::vector<std::size_t> train_rows = folds.train_indices(fold);
      const std::vector<std::size_t> test_rows = folds.test_indices(fold);
      if (test_rows.empty()) throw Error(ErrorKind::ClassTooSmall, "fold has no test records");

      std::vector<StressClass> train_labels;
      for (std::size_t r : train_rows) train_labels.push_back(records[r].label);
      const Holdout split = stratified_holdout(train_labels, cfg.val_fraction,
                                               Rng::derive(cfg.seed, 200 + f));
      std::vector<std::size_t> fit_rows, val_rows;
      for (std::size_t p : split.fit) fit_rows.push_back(train_rows[p]);
      for (std::size_t p : split.val) val_rows.push_back(train_rows[p]);

      nn::Network net(arch, Rng::derive(cfg.seed, 100 + f));
      nn::TrainConfig tc = cfg.train;
      tc.seed = Rng::derive(cfg.seed, 300 + f);
      cv.histories[f] = nn::train(net, feature_matrix(records, fit_rows, columns),
                                  class_indices(records, fit_rows),
                                  feature_matrix(records, val_rows, columns),
                                  class_indices(records, val_rows), tc);

      const std::vector<int> truth = class_indices(records, test_rows);
      const std::vector<int> predicted = nn::predict(net, feature_matrix(records, test_rows, columns));
      const ConfusionMatrix cm = confusion(truth, predicted);
      cv.model[f] = {fold, subset, weighted_prf(cm), cm};

      const int mode = mode_baseline(class_indices(records, train_rows));
      const ConfusionMatrix base_cm = confusion(truth, std::vector<int>(truth.size(), mode));
      cv.baseline[f] = {fold, subset, weighted_prf(base_cm), base_cm};
      cv.networks[f] = std::move(net);
    } catch (...) {
      errors[f] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  cv.model_summary = summarize(cv.model);
  cv.baseline_summary = summarize(cv.baseline);
  return cv;
}

}  // namespace mobistress
