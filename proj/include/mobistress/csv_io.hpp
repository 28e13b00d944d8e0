#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobistress/dataset.hpp"
#include "mobistress/evaluation.hpp"
#include "mobistress/labels.hpp"
#include "mobistress/mobility_metrics.hpp"
#include "mobistress/neural_net.hpp"
#include "mobistress/synth.hpp"

namespace mobistress {

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);
std::optional<double> parse_double(std::string_view s);

std::vector<std::string> split_csv_line(std::string_view line);

void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

struct GpsTable {
  std::map<std::string, std::vector<GeoPoint>> points;
  std::size_t rows = 0;
  std::size_t skipped = 0;
};

/// Header `user_id,timestamp,lat,lon`. Malformed or out-of-range rows are
/// skipped and counted, or throw Error(MalformedRow) when `strict`.
GpsTable read_gps_csv(const std::filesystem::path& path, bool strict = false);
std::string gps_csv(const std::map<std::string, std::vector<GeoPoint>>& points);

struct EmaTable {
  std::vector<StressResponse> responses;
  std::size_t skipped = 0;
  std::size_t unknown_choices = 0;
  bool choice_format = false;
};

/// Header `user_id,timestamp,level` (1..5) or `user_id,timestamp,choice`
/// with the five response texts.
EmaTable read_ema_csv(const std::filesystem::path& path, bool strict = false);
std::string ema_csv(std::span<const StressResponse> responses);

using FeatureTable = std::map<UserDay, MobilityVector>;

FeatureTable flatten(std::span<const UserFeatures> users);
std::string features_csv(const FeatureTable& table);
FeatureTable read_features_csv(const std::filesystem::path& path);

std::string labels_csv(std::span<const LabelRow> rows);
std::vector<LabelRow> read_labels_csv(const std::filesystem::path& path);

std::string dataset_csv(std::span<const DayRecord> records);
std::vector<DayRecord> read_dataset_csv(const std::filesystem::path& path);

std::string folds_csv(const FoldSpec& folds);
FoldSpec read_folds_csv(const std::filesystem::path& path);

struct ReportRow {
  std::string subset;  // gps, temporal, all, or mode (the baseline)
  std::string fold;    // fold index, or mean / std
  Prf metrics;
};

/// `subset,fold,precision,recall,f1`: per-fold rows, then mean and std rows
/// for each subset, then the same block for the mode baseline.
std::string reports_csv(std::span<const CrossValidation> runs);
std::vector<ReportRow> read_reports_csv(const std::filesystem::path& path);

std::string training_log_csv(const nn::TrainHistory& history);
nn::TrainHistory read_training_log_csv(const std::filesystem::path& path);

std::string ground_truth_csv(std::span<const GroundTruthDay> days);

}  // namespace mobistress
