#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mobistress/dataset.hpp"
#include "mobistress/evaluation.hpp"
#include "mobistress/mobility_metrics.hpp"
#include "mobistress/synth.hpp"

namespace mobistress {

/// Flat `key = value` text with `#` comments. Duplicate keys and lines
/// without '=' are rejected with Error(ConfigInvalid).
std::map<std::string, std::string> parse_key_values(std::string_view text);
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

struct PipelineConfig {
  int tz_offset_hours = -4;
  MetricConfig metrics;
  TermCalendar term{Date{std::chrono::year{2013} / 3 / 27}, Date{std::chrono::year{2013} / 5 / 25}};
  int min_days_per_user = 3;
  std::vector<std::size_t> hidden_layers{57, 35, 35};
  std::vector<double> dropout_rates{0.35, 0.25, 0.15};
  double bn_momentum = 0.9;
  double bn_eps = 1e-7;
  nn::AdamConfig adam;
  std::size_t batch_size = 32;
  int max_epochs = 500;
  int patience = 20;
  double min_delta = 1e-4;
  double val_fraction = 0.15;
  int k_folds = 5;
  std::uint64_t seed = 42;
  FeatureSubset feature_subset = FeatureSubset::All;

  /// Throws Error(ConfigInvalid) for out-of-range values.
  void validate() const;

  nn::Architecture architecture(std::size_t input_dim) const;
  CvConfig cv_config() const;
};

/// Applies recognized keys on top of the defaults; unknown keys throw.
PipelineConfig pipeline_config_from(const std::map<std::string, std::string>& kv);
CohortConfig cohort_config_from(const std::map<std::string, std::string>& kv);

/// Key/value rendering that pipeline_config_from reads back unchanged.
std::string to_key_values(const PipelineConfig& cfg);

}  // namespace mobistress
