#include "mobistress/pipeline.hpp"

#include <iostream>
#include <sstream>

#include "mobistress/error.hpp"
#include "mobistress/svg.hpp"

namespace mobistress {

FeatureTable extract_stage(const std::map<std::string, std::vector<GeoPoint>>& gps,
                           const PipelineConfig& cfg) {
  return flatten(extract_features(gps, cfg.tz_offset_hours, cfg.metrics));
}

LabelSet label_stage(std::span<const StressResponse> responses, const PipelineConfig& cfg) {
  return label_responses(responses, cfg.tz_offset_hours, cfg.min_days_per_user);
}

AssembleResult assemble_stage(const FeatureTable& features, std::span<const LabelRow> labels,
                              const PipelineConfig& cfg) {
  return assemble(standardize_per_user(features), labels, cfg.term);
}

namespace {

std::vector<int> class_indices(std::span<const DayRecord> records,
                               std::span<const std::size_t> rows) {
  std::vector<int> y;
  for (std::size_t r : rows) y.push_back(static_cast<int>(records[r].label));
  return y;
}

}  // namespace

TrainedModel train_stage(std::span<const DayRecord> records, const PipelineConfig& cfg) {
  if (records.empty()) throw Error(ErrorKind::EmptyDataset, "no records to train on");
  const std::vector<std::size_t> columns = subset_columns(cfg.feature_subset);
  const std::vector<StressClass> labels = labels_of(records);
  const Holdout split = stratified_holdout(labels, cfg.val_fraction, Rng::derive(cfg.seed, 1));
  nn::Network net(cfg.architecture(columns.size()), Rng::derive(cfg.seed, 2));
  nn::TrainConfig tc = cfg.cv_config().train;
  tc.seed = Rng::derive(cfg.seed, 3);
  nn::TrainHistory history =
      nn::train(net, feature_matrix(records, split.fit, columns), class_indices(records, split.fit),
                feature_matrix(records, split.val, columns), class_indices(records, split.val), tc);
  return {std::move(net), std::move(history)};
}

std::vector<CrossValidation> evaluate_stage(std::span<const DayRecord> records,
                                            const FoldSpec& folds,
                                            std::span<const FeatureSubset> subsets,
                                            const PipelineConfig& cfg) {
  std::vector<CrossValidation> runs;
  const CvConfig cv = cfg.cv_config();
  for (FeatureSubset s : subsets) runs.push_back(cross_validate(records, folds, s, cv));
  return runs;
}

std::string summary_text(const PipelineSummary& s) {
  std::ostringstream out;
  out << "gps_rows " << s.gps_rows << "\n"
      << "gps_rows_skipped " << s.gps_skipped << "\n"
      << "users_with_gps " << s.users_with_gps << "\n"
      << "ema_responses " << s.ema_responses << "\n"
      << "ema_rows_skipped " << s.ema_skipped << "\n"
      << "feature_days " << s.feature_days << "\n"
      << "label_days " << s.label_days << "\n"
      << "label_users_excluded " << s.excluded_label_users << "\n"
      << "label_days_without_gps " << s.label_days_without_gps << "\n"
      << "label_days_out_of_term " << s.out_of_term << "\n"
      << "records " << s.records << "\n"
      << "class_counts " << s.class_counts[0] << " " << s.class_counts[1] << " "
      << s.class_counts[2] << "\n";
  auto line = [&](std::string_view who, const MetricSummary& m) {
    out << who << " f1 " << format_double(m.mean.f1) << " +- " << format_double(m.stddev.f1)
        << " precision " << format_double(m.mean.precision) << " +- "
        << format_double(m.stddev.precision) << " recall " << format_double(m.mean.recall)
        << " +- " << format_double(m.stddev.recall) << "\n";
  };
  if (!s.runs.empty()) line("baseline", s.runs.front().baseline_summary);
  for (const CrossValidation& cv : s.runs) line("model_" + std::string(to_string(cv.subset)), cv.model_summary);
  return out.str();
}

PipelineSummary run_pipeline(const PipelineConfig& cfg, const std::filesystem::path& gps_path,
                             const std::filesystem::path& ema_path,
                             const std::filesystem::path& out_dir, const PipelineOptions& opts) {
  cfg.validate();
  std::filesystem::create_directories(out_dir);
  PipelineSummary s;

  const GpsTable gps = run_stage("ingest-gps", [&] { return read_gps_csv(gps_path, opts.strict); });
  s.gps_rows = gps.rows;
  s.gps_skipped = gps.skipped;
  s.users_with_gps = gps.points.size();
  const EmaTable ema = run_stage("ingest-ema", [&] { return read_ema_csv(ema_path, opts.strict); });
  s.ema_responses = ema.responses.size();
  s.ema_skipped = ema.skipped;

  const FeatureTable features = run_stage("extract", [&] { return extract_stage(gps.points, cfg); });
  write_text_file(out_dir / "features.csv", features_csv(features));
  s.feature_days = features.size();

  const LabelSet labels = run_stage("label", [&] { return label_stage(ema.responses, cfg); });
  write_text_file(out_dir / "labels.csv", labels_csv(labels.rows));
  s.label_days = labels.rows.size();
  s.excluded_label_users = labels.excluded_users;

  const AssembleResult assembled =
      run_stage("assemble", [&] { return assemble_stage(features, labels.rows, cfg); });
  write_text_file(out_dir / "dataset.csv", dataset_csv(assembled.records));
  s.records = assembled.records.size();
  s.label_days_without_gps = assembled.unmatched_label_days;
  s.out_of_term = assembled.out_of_term;
  const std::vector<StressClass> classes = labels_of(assembled.records);
  s.class_counts = class_counts(classes);
  if (assembled.records.empty()) {
    write_text_file(out_dir / "summary.txt", summary_text(s));
    throw Error(ErrorKind::EmptyDataset,
                "assemble: no (user, date) has both GPS features and a stress label");
  }
  if (assembled.unmatched_label_days > 0) {
    std::clog << "assemble: dropped " << assembled.unmatched_label_days
              << " labeled days without GPS fixes\n";
  }

  const FoldSpec folds =
      run_stage("folds", [&] { return stratified_kfold(classes, cfg.k_folds, cfg.seed); });
  write_text_file(out_dir / "folds.csv", folds_csv(folds));

  const std::array<FeatureSubset, 3> subsets{FeatureSubset::Gps, FeatureSubset::Temporal,
                                             FeatureSubset::All};
  s.runs = run_stage("evaluate", [&] { return evaluate_stage(assembled.records, folds, subsets, cfg); });
  write_text_file(out_dir / "reports.csv", reports_csv(s.runs));

  for (const CrossValidation& cv : s.runs) {
    if (cv.subset != cfg.feature_subset) continue;
    for (std::size_t f = 0; f < cv.histories.size(); ++f) {
      write_text_file(out_dir / ("training_log_fold" + std::to_string(f) + ".csv"),
                      training_log_csv(cv.histories[f]));
      nn::save_model(cv.networks[f], out_dir / ("model_fold" + std::to_string(f) + ".bin"));
    }
  }
  write_text_file(out_dir / "summary.txt", summary_text(s));
  if (opts.emit_svg) {
    write_text_file(out_dir / "comparison.svg",
                    render_subset_comparison(read_reports_csv(out_dir / "reports.csv")));
  }
  return s;
}

}  // namespace mobistress
