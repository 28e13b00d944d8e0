#include "mobistress/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mobistress/error.hpp"

namespace mobistress {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error(ErrorKind::FormatError, "cannot format number");
  return std::string(buf, ptr);
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

namespace {

template <typename T>
std::optional<T> parse_int(std::string_view s) {
  T v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path) : path_(path), in_(path) {
    if (!in_) throw Error(ErrorKind::FileMissing, "cannot open " + path.string());
  }

  std::string header() {
    std::string line;
    if (!next_line(line)) throw Error(ErrorKind::HeaderMismatch, path_.string() + " is empty");
    return line;
  }

  void expect_header(std::string_view expected) {
    const std::string got = header();
    if (got != expected) {
      throw Error(ErrorKind::HeaderMismatch, path_.string() + ": expected header '" +
                                                 std::string(expected) + "', got '" + got + "'");
    }
  }

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (next_line(line)) {
      if (line.empty()) continue;
      fields = split_csv_line(line);
      return true;
    }
    return false;
  }

  std::size_t line_number() const { return line_; }

  [[noreturn]] void malformed(const std::string& why) const {
    throw Error(ErrorKind::MalformedRow,
                path_.string() + ":" + std::to_string(line_) + ": " + why);
  }

 private:
  bool next_line(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t line_ = 0;
};

Date date_field(const CsvFile& f, const std::string& s) {
  try {
    return parse_date(s);
  } catch (const Error&) {
    f.malformed("bad date '" + s + "'");
  }
}

double double_field(const CsvFile& f, const std::string& s) {
  auto v = parse_double(s);
  if (!v) f.malformed("bad number '" + s + "'");
  return *v;
}

StressClass class_field(const CsvFile& f, const std::string& s) {
  auto v = parse_int<int>(s);
  if (!v || *v < 0 || *v >= kClassCount) f.malformed("bad class '" + s + "'");
  return static_cast<StressClass>(*v);
}

void expect_width(const CsvFile& f, const std::vector<std::string>& fields, std::size_t n) {
  if (fields.size() != n) {
    f.malformed("expected " + std::to_string(n) + " fields, got " + std::to_string(fields.size()));
  }
}

std::string feature_header(std::string_view prefix, std::size_t n, std::string_view suffix) {
  std::string h(prefix);
  for (std::size_t i = 1; i <= n; ++i) h += ",f" + std::to_string(i);
  h += suffix;
  return h;
}

}  // namespace

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::FileMissing, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorKind::FileMissing, "failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileMissing, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

GpsTable read_gps_csv(const std::filesystem::path& path, bool strict) {
  CsvFile f(path);
  f.expect_header("user_id,timestamp,lat,lon");
  GpsTable table;
  std::vector<std::string> fields;
  while (f.next(fields)) {
    ++table.rows;
    const char* why = nullptr;
    GeoPoint p;
    if (fields.size() != 4) {
      why = "expected 4 fields";
    } else if (fields[0].empty()) {
      why = "empty user_id";
    } else {
      auto ts = parse_int<std::int64_t>(fields[1]);
      auto lat = parse_double(fields[2]);
      auto lon = parse_double(fields[3]);
      if (!ts || !lat || !lon) {
        why = "unparseable timestamp or coordinate";
      } else {
        p = {*ts, *lat, *lon};
        if (!is_valid(p)) why = "coordinate or timestamp out of range";
      }
    }
    if (why != nullptr) {
      if (strict) f.malformed(why);
      ++table.skipped;
      continue;
    }
    table.points[fields[0]].push_back(p);
  }
  return table;
}

std::string gps_csv(const std::map<std::string, std::vector<GeoPoint>>& points) {
  std::string out = "user_id,timestamp,lat,lon\n";
  for (const auto& [user, pts] : points) {
    for (const GeoPoint& p : pts) {
      out += user + "," + std::to_string(p.timestamp) + "," + format_double(p.lat) + "," +
             format_double(p.lon) + "\n";
    }
  }
  return out;
}

EmaTable read_ema_csv(const std::filesystem::path& path, bool strict) {
  CsvFile f(path);
  const std::string header = f.header();
  EmaTable table;
  if (header == "user_id,timestamp,choice") {
    table.choice_format = true;
  } else if (header != "user_id,timestamp,level") {
    throw Error(ErrorKind::HeaderMismatch,
                path.string() + ": expected 'user_id,timestamp,level' or "
                                "'user_id,timestamp,choice', got '" + header + "'");
  }
  std::vector<std::string> fields;
  while (f.next(fields)) {
    const char* why = nullptr;
    StressResponse r;
    if (fields.size() != 3) {
      why = "expected 3 fields";
    } else if (fields[0].empty()) {
      why = "empty user_id";
    } else if (auto ts = parse_int<std::int64_t>(fields[1]); !ts || *ts < 0) {
      why = "bad timestamp";
    } else {
      r.user_id = fields[0];
      r.timestamp = *ts;
      if (table.choice_format) {
        try {
          r.level = response_to_level(fields[2]);
        } catch (const Error&) {
          ++table.unknown_choices;
          why = "unknown response choice";
        }
      } else if (auto level = parse_int<int>(fields[2]); !level || *level < 1 || *level > 5) {
        why = "level must be an integer in 1..5";
      } else {
        r.level = *level;
      }
    }
    if (why != nullptr) {
      if (strict) f.malformed(why);
      ++table.skipped;
      continue;
    }
    table.responses.push_back(std::move(r));
  }
  return table;
}

std::string ema_csv(std::span<const StressResponse> responses) {
  std::string out = "user_id,timestamp,level\n";
  for (const StressResponse& r : responses) {
    out += r.user_id + "," + std::to_string(r.timestamp) + "," + std::to_string(r.level) + "\n";
  }
  return out;
}

FeatureTable flatten(std::span<const UserFeatures> users) {
  FeatureTable table;
  for (const UserFeatures& u : users) {
    for (const auto& [date, v] : u.days) table.emplace(UserDay{u.user_id, date}, v);
  }
  return table;
}

std::string features_csv(const FeatureTable& table) {
  std::string out = feature_header("user_id,date", kGpsFeatureCount, "") + "\n";
  for (const auto& [key, v] : table) {
    out += key.first + "," + format_date(key.second);
    for (const auto& x : v.as_array()) {
      out += ",";
      if (x) out += format_double(*x);
    }
    out += "\n";
  }
  return out;
}

FeatureTable read_features_csv(const std::filesystem::path& path) {
  CsvFile f(path);
  f.expect_header(feature_header("user_id,date", kGpsFeatureCount, ""));
  FeatureTable table;
  std::vector<std::string> fields;
  while (f.next(fields)) {
    expect_width(f, fields, 2 + kGpsFeatureCount);
    std::array<std::optional<double>, kGpsFeatureCount> values;
    for (std::size_t i = 0; i < kGpsFeatureCount; ++i) {
      if (!fields[2 + i].empty()) values[i] = double_field(f, fields[2 + i]);
    }
    table[{fields[0], date_field(f, fields[1])}] = MobilityVector::from_array(values);
  }
  return table;
}

std::string labels_csv(std::span<const LabelRow> rows) {
  std::string out = "user_id,date,daily_mean,class\n";
  for (const LabelRow& r : rows) {
    out += r.user_id + "," + format_date(r.date) + "," + format_double(r.daily_mean) + "," +
           std::to_string(static_cast<int>(r.label)) + "\n";
  }
  return out;
}

std::vector<LabelRow> read_labels_csv(const std::filesystem::path& path) {
  CsvFile f(path);
  f.expect_header("user_id,date,daily_mean,class");
  std::vector<LabelRow> rows;
  std::vector<std::string> fields;
  while (f.next(fields)) {
    expect_width(f, fields, 4);
    rows.push_back({fields[0], date_field(f, fields[1]), double_field(f, fields[2]),
                    class_field(f, fields[3])});
  }
  return rows;
}

std::string dataset_csv(std::span<const DayRecord> records) {
  std::string out = feature_header("user_id,date", kFeatureCount, ",class") + "\n";
  for (const DayRecord& r : records) {
    out += r.user_id + "," + format_date(r.date);
    for (double x : r.features) out += "," + format_double(x);
    out += "," + std::to_string(static_cast<int>(r.label)) + "\n";
  }
  return out;
}

std::vector<DayRecord> read_dataset_csv(const std::filesystem::path& path) {
  CsvFile f(path);
  f.expect_header(feature_header("user_id,date", kFeatureCount, ",class"));
  std::vector<DayRecord> records;
  std::vector<std::string> fields;
  while (f.next(fields)) {
    expect_width(f, fields, 3 + kFeatureCount);
    DayRecord r{fields[0], date_field(f, fields[1]), {}, class_field(f, fields.back())};
    for (std::size_t i = 0; i < kFeatureCount; ++i) r.features[i] = double_field(f, fields[2 + i]);
    records.push_back(std::move(r));
  }
  return records;
}

std::string folds_csv(const FoldSpec& folds) {
  std::string out = "record_index,fold\n";
  for (std::size_t i = 0; i < folds.assignments.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(folds.assignments[i]) + "\n";
  }
  return out;
}

FoldSpec read_folds_csv(const std::filesystem::path& path) {
  CsvFile f(path);
  f.expect_header("record_index,fold");
  FoldSpec spec;
  spec.k = 0;
  std::vector<std::string> fields;
  while (f.next(fields)) {
    expect_width(f, fields, 2);
    auto idx = parse_int<std::size_t>(fields[0]);
    auto fold = parse_int<int>(fields[1]);
    if (!idx || !fold || *fold < 0 || *idx != spec.assignments.size()) {
      f.malformed("record indices must be consecutive from 0 with non-negative folds");
    }
    spec.assignments.push_back(*fold);
    spec.k = std::max(spec.k, *fold + 1);
  }
  return spec;
}

namespace {

void append_report(std::string& out, std::string_view subset, std::string_view fold, const Prf& m) {
  out += std::string(subset) + "," + std::string(fold) + "," + format_double(m.precision) + "," +
         format_double(m.recall) + "," + format_double(m.f1) + "\n";
}

void append_block(std::string& out, std::string_view subset, std::span<const FoldReport> folds,
                  const MetricSummary& summary) {
  for (const FoldReport& r : folds) append_report(out, subset, std::to_string(r.fold), r.metrics);
  append_report(out, subset, "mean", summary.mean);
  append_report(out, subset, "std", summary.stddev);
}

}  // namespace

std::string reports_csv(std::span<const CrossValidation> runs) {
  std::string out = "subset,fold,precision,recall,f1\n";
  for (const CrossValidation& cv : runs) {
    append_block(out, to_string(cv.subset), cv.model, cv.model_summary);
  }
  if (!runs.empty()) append_block(out, "mode", runs.front().baseline, runs.front().baseline_summary);
  return out;
}

std::vector<ReportRow> read_reports_csv(const std::filesystem::path& path) {
  CsvFile f(path);
  f.expect_header("subset,fold,precision,recall,f1");
  std::vector<ReportRow> rows;
  std::vector<std::string> fields;
  while (f.next(fields)) {
    expect_width(f, fields, 5);
    rows.push_back({fields[0], fields[1],
                    {double_field(f, fields[2]), double_field(f, fields[3]),
                     double_field(f, fields[4])}});
  }
  return rows;
}

std::string training_log_csv(const nn::TrainHistory& history) {
  std::string out = "epoch,train_loss,val_loss\n";
  for (std::size_t e = 0; e < history.train_loss.size(); ++e) {
    out += std::to_string(e + 1) + "," + format_double(history.train_loss[e]) + "," +
           format_double(history.val_loss[e]) + "\n";
  }
  return out;
}

nn::TrainHistory read_training_log_csv(const std::filesystem::path& path) {
  CsvFile f(path);
  f.expect_header("epoch,train_loss,val_loss");
  nn::TrainHistory h;
  std::vector<std::string> fields;
  while (f.next(fields)) {
    expect_width(f, fields, 3);
    h.train_loss.push_back(double_field(f, fields[1]));
    h.val_loss.push_back(double_field(f, fields[2]));
    const int epoch = static_cast<int>(h.val_loss.size());
    if (epoch == 1 || h.val_loss.back() < h.best_val_loss) {
      h.best_val_loss = h.val_loss.back();
      h.best_epoch = epoch;
    }
    h.stopped_epoch = epoch;
  }
  return h;
}

std::string ground_truth_csv(std::span<const GroundTruthDay> days) {
  std::string out =
      "user_id,date,weekend,places_visited,planned_entropy,planned_distance_m,stress_mean,"
      "responses\n";
  for (const GroundTruthDay& d : days) {
    out += d.user_id + "," + format_date(d.date) + "," + (d.weekend ? "1" : "0") + "," +
           std::to_string(d.places_visited) + "," + format_double(d.planned_entropy) + "," +
           format_double(d.planned_distance_m) + "," + format_double(d.stress_mean) + "," +
           std::to_string(d.responses) + "\n";
  }
  return out;
}

}  // namespace mobistress
