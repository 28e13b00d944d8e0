#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mobistress/csv_io.hpp"
#include "mobistress/error.hpp"
#include "mobistress/pipeline.hpp"
#include "mobistress/synth.hpp"
#include "temp_dir.hpp"

using namespace mobistress;
namespace fs = std::filesystem;

namespace {

CohortConfig small_cohort() {
  CohortConfig c;
  c.n_users = 5;
  c.term.last_day = c.term.first_day + std::chrono::days{24};
  return c;
}

PipelineConfig quick_config() {
  PipelineConfig cfg;
  cfg.hidden_layers = {16, 8};
  cfg.dropout_rates = {0.2, 0.1};
  cfg.max_epochs = 30;
  cfg.patience = 5;
  cfg.k_folds = 3;
  cfg.min_days_per_user = 3;
  return cfg;
}

void write_cohort(const fs::path& dir, const CohortConfig& c) {
  const Cohort cohort = generate(c);
  write_text_file(dir / "gps.csv", gps_csv(cohort.gps));
  write_text_file(dir / "ema.csv", ema_csv(cohort.ema));
}

std::size_t data_rows(const fs::path& csv) {
  std::ifstream in(csv);
  std::string line;
  std::size_t n = 0;
  std::getline(in, line);
  while (std::getline(in, line))
    if (!line.empty()) ++n;
  return n;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MOBISTRESS_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Pipeline, RunsAndIsDeterministic) {
  TempDir in, out1, out2;
  write_cohort(in.path(), small_cohort());
  const PipelineConfig cfg = quick_config();
  const PipelineSummary s1 = run_pipeline(cfg, in / "gps.csv", in / "ema.csv", out1.path(), {false, true});
  run_pipeline(cfg, in / "gps.csv", in / "ema.csv", out2.path(), {});
  ASSERT_EQ(s1.runs.size(), 3u);
  for (const char* name : {"features.csv", "labels.csv", "dataset.csv", "folds.csv", "reports.csv",
                           "summary.txt", "training_log_fold0.csv", "model_fold0.bin",
                           "model_fold2.bin"}) {
    ASSERT_TRUE(fs::exists(out1 / name)) << name;
    EXPECT_EQ(read_text_file(out1 / name), read_text_file(out2 / name)) << name;
  }
  EXPECT_TRUE(fs::exists(out1 / "comparison.svg"));
  EXPECT_FALSE(fs::exists(out1 / "model_fold3.bin"));

  // summary record count matches dataset.csv
  EXPECT_EQ(data_rows(out1 / "dataset.csv"), s1.records);
  EXPECT_NE(read_text_file(out1 / "summary.txt").find("records " + std::to_string(s1.records) + "\n"),
            std::string::npos);

  // every artifact re-parses
  EXPECT_EQ(read_dataset_csv(out1 / "dataset.csv").size(), s1.records);
  EXPECT_EQ(read_features_csv(out1 / "features.csv").size(), s1.feature_days);
  EXPECT_EQ(read_labels_csv(out1 / "labels.csv").size(), s1.label_days);
  EXPECT_EQ(read_folds_csv(out1 / "folds.csv").assignments.size(), s1.records);
  EXPECT_FALSE(read_reports_csv(out1 / "reports.csv").empty());
  const nn::Network net = nn::load_model(out1 / "model_fold0.bin");
  EXPECT_EQ(net, s1.runs[2].networks[0]);
}

TEST(Pipeline, EmptyEmaFailsWithSummary) {
  TempDir in, out;
  write_cohort(in.path(), small_cohort());
  write_text_file(in / "ema.csv", "user_id,timestamp,level\n");
  try {
    run_pipeline(quick_config(), in / "gps.csv", in / "ema.csv", out.path(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptyDataset);
  }
  EXPECT_EQ(data_rows(out / "dataset.csv"), 0u);
  EXPECT_NE(read_text_file(out / "summary.txt").find("records 0\n"), std::string::npos);
}

TEST(Pipeline, StageNameInErrors) {
  try {
    run_stage("extract", [] {
      throw Error(ErrorKind::DomainTooWide, "wide");
      return 0;
    });
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainTooWide);
    EXPECT_EQ(e.message().rfind("extract: ", 0), 0u);
  }
}

TEST(Cli, ExitCodes) {
  TempDir dir;
  const std::string d = dir.path().string();
  write_text_file(dir / "cohort.txt", "n_users = 5\nterm_last_day = 2013-04-20\n");
  write_text_file(dir / "pipe.txt",
                  "hidden_layers = 16,8\ndropout_rates = 0.2,0.1\nmax_epochs = 20\nk_folds = 3\n");
  write_text_file(dir / "bad.txt", "no_such_key = 1\n");
  write_text_file(dir / "empty_ema.csv", "user_id,timestamp,level\n");

  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("run-all --gps " + d + "/gps.csv"), 2);  // --ema missing
  EXPECT_EQ(run_cli("synth --config " + d + "/bad.txt --out " + d), 2);
  EXPECT_EQ(run_cli("synth --subset nope --out " + d), 2);
  EXPECT_EQ(run_cli("synth --config " + d + "/cohort.txt --out " + d), 0);
  EXPECT_TRUE(fs::exists(dir / "gps.csv"));
  EXPECT_TRUE(fs::exists(dir / "ema.csv"));
  EXPECT_EQ(run_cli("extract --gps " + d + "/missing.csv --out " + d), 3);
  EXPECT_EQ(run_cli("label --ema " + d + "/gps.csv --out " + d), 3);
  EXPECT_EQ(run_cli("run-all --config " + d + "/pipe.txt --gps " + d + "/gps.csv --ema " + d +
                    "/empty_ema.csv --out " + d + "/empty"),
            4);

  // staged commands agree with run-all
  const std::string cfg = " --config " + d + "/pipe.txt";
  EXPECT_EQ(run_cli("extract" + cfg + " --gps " + d + "/gps.csv --out " + d + "/s"), 0);
  EXPECT_EQ(run_cli("label" + cfg + " --ema " + d + "/ema.csv --out " + d + "/s"), 0);
  EXPECT_EQ(run_cli("assemble" + cfg + " --features " + d + "/s/features.csv --labels " + d +
                    "/s/labels.csv --out " + d + "/s"),
            0);
  EXPECT_EQ(run_cli("evaluate" + cfg + " --dataset " + d + "/s/dataset.csv --out " + d + "/s"), 0);
  EXPECT_EQ(run_cli("train" + cfg + " --dataset " + d + "/s/dataset.csv --out " + d + "/s"), 0);
  EXPECT_TRUE(fs::exists(dir / "s/model.bin"));
  EXPECT_EQ(run_cli("run-all" + cfg + " --gps " + d + "/gps.csv --ema " + d + "/ema.csv --out " + d + "/r"), 0);
  EXPECT_EQ(read_text_file(dir / "s/dataset.csv"), read_text_file(dir / "r/dataset.csv"));
  EXPECT_EQ(read_text_file(dir / "s/reports.csv"), read_text_file(dir / "r/reports.csv"));
  EXPECT_EQ(run_cli("grad-check --batch 8"), 0);
}
