#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mobistress/dataset.hpp"
#include "mobistress/neural_net.hpp"

namespace mobistress {

/// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  std::array<std::array<std::uint64_t, kClassCount>, kClassCount> counts{};

  void add(int truth, int predicted) { ++counts[truth][predicted]; }
  std::uint64_t total() const;

  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

ConfusionMatrix confusion(std::span<const int> truth, std::span<const int> predicted);

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Per-class precision/recall/F1 (0 on a zero denominator) averaged with
/// true-class support weights. Throws Error(EmptyMatrix).
Prf weighted_prf(const ConfusionMatrix& cm);

/// Most frequent label; ties go to the lowest class index.
int mode_baseline(std::span<const int> train_labels);

struct FoldReport {
  int fold = 0;
  FeatureSubset subset = FeatureSubset::All;
  Prf metrics;
  ConfusionMatrix confusion;
};

struct MetricSummary {
  Prf mean;
  Prf stddev;  // population std across folds
};

MetricSummary summarize(std::span<const FoldReport> reports);

struct CvConfig {
  nn::Architecture architecture = nn::Architecture::stress_default();  // input_dim is overridden
  nn::TrainConfig train;
  double val_fraction = 0.15;
  std::uint64_t seed = 0;
};

struct CrossValidation {
  FeatureSubset subset = FeatureSubset::All;
  std::vector<FoldReport> model;
  std::vector<FoldReport> baseline;
  MetricSummary model_summary;
  MetricSummary baseline_summary;
  std::vector<nn::TrainHistory> histories;
  std::vector<nn::Network> networks;
};

nn::Matrix feature_matrix(std::span<const DayRecord> records, std::span<const std::size_t> rows,
                          std::span<const std::size_t> columns);

/// Trains one network per fold on the subset's columns (input layer narrowed
/// to match), early-stopping on a stratified holdout of the training part,
/// and scores it plus the mode baseline on the held-out fold. Folds run in
/// parallel; results are ordered by fold.
CrossValidation cross_validate(std::span<const DayRecord> records, const FoldSpec& folds,
                               FeatureSubset subset, const CvConfig& cfg);

}  // namespace mobistress
