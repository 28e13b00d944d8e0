// Command-line front end. Exit status: 0 ok, 2 usage, 3 input, 4 pipeline.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mobistress/config.hpp"
#include "mobistress/csv_io.hpp"
#include "mobistress/error.hpp"
#include "mobistress/pipeline.hpp"
#include "mobistress/svg.hpp"
#include "mobistress/synth.hpp"

namespace fs = std::filesystem;
using namespace mobistress;

namespace {

enum Exit { kOk = 0, kUsage = 2, kInput = 3, kPipeline = 4 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConfigInvalid:
      return kUsage;
    case ErrorKind::FileMissing:
    case ErrorKind::HeaderMismatch:
    case ErrorKind::MalformedRow:
    case ErrorKind::FormatError:
    case ErrorKind::UnknownChoice:
      return kInput;
    default:
      return kPipeline;
  }
}

struct Common {
  std::string config;
  std::optional<std::uint64_t> seed;
  bool strict = false;
  std::string subset;
  std::string out = ".";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "key = value config file");
  cmd->add_option("--seed", c.seed, "overrides the configured seed");
  cmd->add_flag("--strict", c.strict, "fail on the first malformed row");
  cmd->add_option("--subset", c.subset, "feature subset")
      ->check(CLI::IsMember({"gps", "temporal", "all"}));
  cmd->add_option("--out", c.out, "output directory");
}

PipelineConfig load_pipeline_config(const Common& c) {
  std::map<std::string, std::string> kv;
  if (!c.config.empty()) kv = read_key_values(c.config);
  PipelineConfig cfg = pipeline_config_from(kv);
  if (c.seed) cfg.seed = *c.seed;
  if (!c.subset.empty()) cfg.feature_subset = parse_feature_subset(c.subset);
  cfg.validate();
  return cfg;
}

void report_skips(std::string_view what, std::size_t skipped) {
  if (skipped > 0) std::clog << what << ": skipped " << skipped << " malformed rows\n";
}

int cmd_synth(const Common& c) {
  std::map<std::string, std::string> kv;
  if (!c.config.empty()) kv = read_key_values(c.config);
  CohortConfig cfg = cohort_config_from(kv);
  if (c.seed) cfg.seed = *c.seed;
  const Cohort cohort = generate(cfg);
  const fs::path out(c.out);
  fs::create_directories(out);
  write_text_file(out / "gps.csv", gps_csv(cohort.gps));
  write_text_file(out / "ema.csv", ema_csv(cohort.ema));
  write_text_file(out / "ground_truth.csv", ground_truth_csv(cohort.truth));
  // Pipeline settings that must match the cohort.
  write_text_file(out / "cohort.cfg",
                  "tz_offset_hours = " + std::to_string(cfg.utc_offset_hours) + "\n" +
                      "term_first_day = " + format_date(cfg.term.first_day) + "\n" +
                      "term_last_day = " + format_date(cfg.term.last_day) + "\n");
  std::size_t fixes = 0;
  for (const auto& [user, pts] : cohort.gps) fixes += pts.size();
  std::cout << "users " << cohort.gps.size() << " fixes " << fixes << " responses "
            << cohort.ema.size() << "\n";
  return kOk;
}

int cmd_extract(const Common& c, const std::string& gps_path) {
  const PipelineConfig cfg = load_pipeline_config(c);
  const GpsTable gps = run_stage("ingest-gps", [&] { return read_gps_csv(gps_path, c.strict); });
  report_skips("gps", gps.skipped);
  const FeatureTable features = run_stage("extract", [&] { return extract_stage(gps.points, cfg); });
  fs::create_directories(c.out);
  write_text_file(fs::path(c.out) / "features.csv", features_csv(features));
  std::cout << "feature_days " << features.size() << "\n";
  return kOk;
}

int cmd_label(const Common& c, const std::string& ema_path) {
  const PipelineConfig cfg = load_pipeline_config(c);
  const EmaTable ema = run_stage("ingest-ema", [&] { return read_ema_csv(ema_path, c.strict); });
  report_skips("ema", ema.skipped);
  const LabelSet labels = run_stage("label", [&] { return label_stage(ema.responses, cfg); });
  fs::create_directories(c.out);
  write_text_file(fs::path(c.out) / "labels.csv", labels_csv(labels.rows));
  std::cout << "label_days " << labels.rows.size() << " users_excluded " << labels.excluded_users
            << "\n";
  return kOk;
}

int cmd_assemble(const Common& c, const std::string& features_path,
                 const std::string& labels_path) {
  const PipelineConfig cfg = load_pipeline_config(c);
  const FeatureTable features = read_features_csv(features_path);
  const std::vector<LabelRow> labels = read_labels_csv(labels_path);
  const AssembleResult r = run_stage("assemble", [&] { return assemble_stage(features, labels, cfg); });
  fs::create_directories(c.out);
  write_text_file(fs::path(c.out) / "dataset.csv", dataset_csv(r.records));
  std::cout << "records " << r.records.size() << " label_days_without_gps "
            << r.unmatched_label_days << " out_of_term " << r.out_of_term << "\n";
  if (r.records.empty()) throw Error(ErrorKind::EmptyDataset, "assemble: no matched user-days");
  return kOk;
}

int cmd_train(const Common& c, const std::string& dataset_path) {
  const PipelineConfig cfg = load_pipeline_config(c);
  const std::vector<DayRecord> records = read_dataset_csv(dataset_path);
  const TrainedModel m = run_stage("train", [&] { return train_stage(records, cfg); });
  fs::create_directories(c.out);
  nn::save_model(m.network, fs::path(c.out) / "model.bin");
  write_text_file(fs::path(c.out) / "training_log.csv", training_log_csv(m.history));
  std::cout << "best_epoch " << m.history.best_epoch << " best_val_loss "
            << format_double(m.history.best_val_loss) << "\n";
  return kOk;
}

int cmd_evaluate(const Common& c, const std::string& dataset_path, const std::string& folds_path,
                 bool emit_svg) {
  const PipelineConfig cfg = load_pipeline_config(c);
  const std::vector<DayRecord> records = read_dataset_csv(dataset_path);
  if (records.empty()) throw Error(ErrorKind::EmptyDataset, "evaluate: dataset is empty");
  const FoldSpec folds =
      folds_path.empty()
          ? run_stage("folds",
                      [&] { return stratified_kfold(labels_of(records), cfg.k_folds, cfg.seed); })
          : read_folds_csv(folds_path);
  if (folds.assignments.size() != records.size()) {
    throw Error(ErrorKind::FormatError, "folds file does not match the dataset size");
  }
  std::vector<FeatureSubset> subsets{FeatureSubset::Gps, FeatureSubset::Temporal,
                                     FeatureSubset::All};
  if (!c.subset.empty()) subsets = {cfg.feature_subset};
  const auto runs = run_stage("evaluate", [&] { return evaluate_stage(records, folds, subsets, cfg); });
  const fs::path out(c.out);
  fs::create_directories(out);
  write_text_file(out / "folds.csv", folds_csv(folds));
  write_text_file(out / "reports.csv", reports_csv(runs));
  if (emit_svg) {
    write_text_file(out / "comparison.svg", render_subset_comparison(read_reports_csv(out / "reports.csv")));
  }
  std::cout << "baseline f1 " << format_double(runs.front().baseline_summary.mean.f1) << "\n";
  for (const auto& r : runs) {
    std::cout << to_string(r.subset) << " f1 " << format_double(r.model_summary.mean.f1) << " +- "
              << format_double(r.model_summary.stddev.f1) << "\n";
  }
  return kOk;
}

int cmd_run_all(const Common& c, const std::string& gps_path, const std::string& ema_path,
                bool emit_svg) {
  const PipelineConfig cfg = load_pipeline_config(c);
  const PipelineSummary s = run_pipeline(cfg, gps_path, ema_path, c.out, {c.strict, emit_svg});
  report_skips("gps", s.gps_skipped);
  report_skips("ema", s.ema_skipped);
  std::cout << summary_text(s);
  return kOk;
}

int cmd_grad_check(const Common& c, std::size_t batch_rows) {
  const PipelineConfig cfg = load_pipeline_config(c);
  const std::size_t dim = subset_columns(cfg.feature_subset).size();
  const nn::Network net(cfg.architecture(dim), cfg.seed);
  Rng rng(Rng::derive(cfg.seed, 1));
  nn::Matrix x(batch_rows, dim);
  for (double& v : x.data()) v = rng.normal();
  std::vector<int> y(batch_rows);
  for (int& v : y) v = static_cast<int>(rng.index(kClassCount));
  const nn::GradCheckResult r = nn::grad_check(net, x, y, 1e-5, Rng::derive(cfg.seed, 2));
  std::cout << "parameters " << r.analytic.size() << " max_relative_error "
            << format_double(r.max_relative_error) << "\n";
  return r.max_relative_error <= 1e-4 ? kOk : kPipeline;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mobistress: daily stress prediction from GPS mobility"};
  app.require_subcommand(1);
  Common common;
  std::string gps, ema, features, labels, dataset, folds;
  bool emit_svg = false;
  std::size_t batch_rows = 16;

  auto* synth = app.add_subcommand("synth", "generate a synthetic cohort (gps.csv, ema.csv)");
  add_common(synth, common);

  auto* extract = app.add_subcommand("extract", "GPS fixes -> features.csv");
  add_common(extract, common);
  extract->add_option("--gps", gps, "gps.csv")->required();

  auto* label = app.add_subcommand("label", "EMA responses -> labels.csv");
  add_common(label, common);
  label->add_option("--ema", ema, "ema.csv")->required();

  auto* assemble = app.add_subcommand("assemble", "features + labels -> dataset.csv");
  add_common(assemble, common);
  assemble->add_option("--features", features, "features.csv")->required();
  assemble->add_option("--labels", labels, "labels.csv")->required();

  auto* train = app.add_subcommand("train", "fit one network -> model.bin, training_log.csv");
  add_common(train, common);
  train->add_option("--dataset", dataset, "dataset.csv")->required();

  auto* evaluate = app.add_subcommand("evaluate", "cross-validate -> folds.csv, reports.csv");
  add_common(evaluate, common);
  evaluate->add_option("--dataset", dataset, "dataset.csv")->required();
  evaluate->add_option("--folds", folds, "reuse an existing folds.csv");
  evaluate->add_flag("--emit-svg", emit_svg, "also write comparison.svg");

  auto* run_all = app.add_subcommand("run-all", "every stage from raw CSVs to reports");
  add_common(run_all, common);
  run_all->add_option("--gps", gps, "gps.csv")->required();
  run_all->add_option("--ema", ema, "ema.csv")->required();
  run_all->add_flag("--emit-svg", emit_svg, "also write comparison.svg");

  auto* grad = app.add_subcommand("grad-check", "finite-difference check of backprop");
  add_common(grad, common);
  grad->add_option("--batch", batch_rows, "rows in the random batch")->check(CLI::Range(2, 4096));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*synth) return cmd_synth(common);
    if (*extract) return cmd_extract(common, gps);
    if (*label) return cmd_label(common, ema);
    if (*assemble) return cmd_assemble(common, features, labels);
    if (*train) return cmd_train(common, dataset);
    if (*evaluate) return cmd_evaluate(common, dataset, folds, emit_svg);
    if (*run_all) return cmd_run_all(common, gps, ema, emit_svg);
    if (*grad) return cmd_grad_check(common, batch_rows);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kPipeline;
  }
  return kUsage;
}
