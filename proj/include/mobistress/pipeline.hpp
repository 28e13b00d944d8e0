#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "mobistress/config.hpp"
#include "mobistress/error.hpp"
#include "mobistress/csv_io.hpp"
#include "mobistress/evaluation.hpp"

namespace mobistress {

/// Runs `fn`, re-throwing any Error with the stage name prepended.
template <typename Fn>
auto run_stage(std::string_view stage, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.message());
  }
}

FeatureTable extract_stage(const std::map<std::string, std::vector<GeoPoint>>& gps,
                           const PipelineConfig& cfg);
LabelSet label_stage(std::span<const StressResponse> responses, const PipelineConfig& cfg);
AssembleResult assemble_stage(const FeatureTable& features, std::span<const LabelRow> labels,
                              const PipelineConfig& cfg);

struct TrainedModel {
  nn::Network network;
  nn::TrainHistory history;
};

/// One network on the whole dataset (configured subset), early-stopped on a
/// stratified holdout.
TrainedModel train_stage(std::span<const DayRecord> records, const PipelineConfig& cfg);

std::vector<CrossValidation> evaluate_stage(std::span<const DayRecord> records,
                                            const FoldSpec& folds,
                                            std::span<const FeatureSubset> subsets,
                                            const PipelineConfig& cfg);

struct PipelineOptions {
  bool strict = false;
  bool emit_svg = false;
};

struct PipelineSummary {
  std::size_t gps_rows = 0;
  std::size_t gps_skipped = 0;
  std::size_t users_with_gps = 0;
  std::size_t ema_responses = 0;
  std::size_t ema_skipped = 0;
  std::size_t feature_days = 0;
  std::size_t label_days = 0;
  std::size_t excluded_label_users = 0;
  std::size_t label_days_without_gps = 0;
  std::size_t out_of_term = 0;
  std::size_t records = 0;
  std::array<std::size_t, kClassCount> class_counts{};
  std::vector<CrossValidation> runs;  // gps, temporal, all
};

std::string summary_text(const PipelineSummary& s);

/// Full pipeline from raw CSVs to reports. Writes features.csv, labels.csv,
/// dataset.csv, folds.csv, reports.csv, training_log_fold{i}.csv,
/// model_fold{i}.bin (for the configured subset) and summary.txt into
/// `out_dir`; comparison.svg too when requested.
PipelineSummary run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& gps_path,
                             const std::filesystem::path& ema_path,
                             const std::filesystem::path& out_dir, const PipelineOptions& opts);

}  // namespace mobistress
