#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobistress/labels.hpp"
#include "mobistress/mobility_metrics.hpp"

namespace mobistress {

struct TermCalendar {
  Date first_day;
  Date last_day;

  int day_count() const;
  bool contains(Date d) const { return first_day <= d && d <= last_day; }
};

inline constexpr std::size_t kTemporalFeatureCount = 4;
inline constexpr std::size_t kFeatureCount = kGpsFeatureCount + kTemporalFeatureCount;

/// Column order: total_distance, max_displacement, distance_stddev,
/// distinct_tiles, hull_area, tile_seq_diff, cluster_seq_diff,
/// distance_entropy, weekend, term_start, term_mid, term_end.
using FeatureRow = std::array<double, kFeatureCount>;

struct DayRecord {
  std::string user_id;
  Date date;
  FeatureRow features{};
  StressClass label = StressClass::Median;
};

enum class FeatureSubset { Gps, Temporal, All };

std::string_view to_string(FeatureSubset subset);
FeatureSubset parse_feature_subset(std::string_view text);
std::vector<std::size_t> subset_columns(FeatureSubset subset);

using StandardizedTable = std::map<UserDay, std::array<double, kGpsFeatureCount>>;

/// Per-user z-scores (population std) of the eight metrics. Missing values
/// are imputed with the user's mean of present values first; a
/// zero-variance metric maps to 0.
StandardizedTable standardize_per_user(const std::map<UserDay, MobilityVector>& rows);

/// Same z-scoring applied to an already complete table.
StandardizedTable standardize_per_user(const StandardizedTable& rows);

/// [weekend, first third, middle third, last third]. Thirds split the term by
/// day count with remainder days going to the earlier thirds. Throws
/// Error(DateOutOfTerm).
std::array<double, kTemporalFeatureCount> temporal_onehots(Date date, const TermCalendar& cal);

struct AssembleResult {
  std::vector<DayRecord> records;  // sorted by (user_id, date)
  std::size_t unmatched_feature_days = 0;
  std::size_t unmatched_label_days = 0;
  std::size_t out_of_term = 0;
};

/// Inner join of features and labels on (user, date).
AssembleResult assemble(const StandardizedTable& features, std::span<const LabelRow> labels,
                        const TermCalendar& cal);

struct FoldSpec {
  int k = 5;
  std::uint64_t seed = 0;
  std::vector<int> assignments;  // record index -> fold

  std::vector<std::size_t> test_indices(int fold) const;
  std::vector<std::size_t> train_indices(int fold) const;
};

/// Shuffles each class with the seed, then deals its members round-robin
/// to folds, largest class first, continuing the deal position across
/// classes. Throws
/// Error(ClassTooSmall) if a class present has fewer than k members.
FoldSpec stratified_kfold(std::span<const StressClass> labels, int k, std::uint64_t seed);

struct Holdout {
  std::vector<std::size_t> fit;  // positions into the input label list
  std::vector<std::size_t> val;
};

/// Class-stratified validation split: round(frac * n_c) of each class goes
/// to validation. Throws Error(ClassTooSmall) when validation would be empty.
Holdout stratified_holdout(std::span<const StressClass> labels, double frac, std::uint64_t seed);

std::array<std::size_t, kClassCount> class_counts(std::span<const StressClass> labels);
std::vector<StressClass> labels_of(std::span<const DayRecord> records);

}  // namespace mobistress
