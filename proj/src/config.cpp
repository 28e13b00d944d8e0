#include "mobistress/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "mobistress/csv_io.hpp"
#include "mobistress/error.hpp"

namespace mobistress {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(ErrorKind::ConfigInvalid, "bad value '" + value + "' for key '" + key + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) bad_value(key, value);
  return out;
}

template <typename T>
std::vector<T> parse_list(const std::string& key, const std::string& value) {
  std::vector<T> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(parse_number<T>(key, std::string(trim(item))));
  if (out.empty()) bad_value(key, value);
  return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

using Setter = std::function<void(const std::string& key, const std::string& value)>;

void apply(const std::map<std::string, std::string>& kv, const std::map<std::string, Setter>& setters,
           std::string_view what) {
  for (const auto& [key, value] : kv) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw Error(ErrorKind::ConfigInvalid, "unknown " + std::string(what) + " key '" + key + "'");
    }
    it->second(key, value);
  }
}

Date parse_config_date(const std::string& key, const std::string& value) {
  try {
    return parse_date(value);
  } catch (const Error&) {
    bad_value(key, value);
  }
}

}  // namespace

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(lineno) + " has no '='");
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(lineno) + " has an empty key");
    if (!out.emplace(key, value).second) {
      throw Error(ErrorKind::ConfigInvalid, "duplicate key '" + key + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileMissing, "cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str());
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::ConfigInvalid, msg); };
  if (tz_offset_hours < -12 || tz_offset_hours > 14) fail("tz_offset_hours must lie in [-12, 14]");
  if (!(metrics.tile_size_m > 0.0)) fail("tile_size_m must be positive");
  if (!(metrics.eps_m > 0.0)) fail("eps_m must be positive");
  if (metrics.min_pts < 1) fail("min_pts must be at least 1");
  if (metrics.bin_minutes < 1) fail("bin_minutes must be at least 1");
  if (term.first_day > term.last_day) fail("term_first_day is after term_last_day");
  if (min_days_per_user < 1) fail("min_days_per_user must be at least 1");
  if (hidden_layers.size() != dropout_rates.size()) {
    fail("hidden_layers and dropout_rates must have the same length");
  }
  if (batch_size < 2) fail("batch_size must be at least 2");
  if (max_epochs < 1) fail("max_epochs must be at least 1");
  if (patience < 0) fail("patience must be non-negative");
  if (!(min_delta >= 0.0)) fail("min_delta must be non-negative");
  if (!(val_fraction > 0.0 && val_fraction < 0.5)) fail("val_fraction must lie in (0, 0.5)");
  if (k_folds < 2) fail("k_folds must be at least 2");
  if (!(adam.learning_rate > 0.0)) fail("adam_lr must be positive");
  if (!(adam.beta1 >= 0.0 && adam.beta1 < 1.0) || !(adam.beta2 >= 0.0 && adam.beta2 < 1.0)) {
    fail("Adam betas must lie in [0, 1)");
  }
  if (!(adam.epsilon > 0.0)) fail("adam_eps must be positive");
  architecture(kFeatureCount).validate();
}

nn::Architecture PipelineConfig::architecture(std::size_t input_dim) const {
  nn::Architecture arch;
  arch.input_dim = input_dim;
  arch.bn_momentum = bn_momentum;
  arch.bn_eps = bn_eps;
  for (std::size_t i = 0; i < hidden_layers.size(); ++i) {
    arch.layers.push_back({hidden_layers[i], nn::Activation::Tanh,
                           i < dropout_rates.size() ? dropout_rates[i] : 0.0, true});
  }
  arch.layers.push_back({kClassCount, nn::Activation::Softmax, 0.0, true});
  return arch;
}

CvConfig PipelineConfig::cv_config() const {
  CvConfig cv;
  cv.architecture = architecture(kFeatureCount);
  cv.train.adam = adam;
  cv.train.batch_size = batch_size;
  cv.train.max_epochs = max_epochs;
  cv.train.patience = patience;
  cv.train.min_delta = min_delta;
  cv.val_fraction = val_fraction;
  cv.seed = seed;
  return cv;
}

PipelineConfig pipeline_config_from(const std::map<std::string, std::string>& kv) {
  PipelineConfig c;
  const std::map<std::string, Setter> setters{
      {"tz_offset_hours", [&](auto& k, auto& v) { c.tz_offset_hours = parse_number<int>(k, v); }},
      {"tile_size_m", [&](auto& k, auto& v) { c.metrics.tile_size_m = parse_number<double>(k, v); }},
      {"eps_m", [&](auto& k, auto& v) { c.metrics.eps_m = parse_number<double>(k, v); }},
      {"min_pts", [&](auto& k, auto& v) { c.metrics.min_pts = parse_number<int>(k, v); }},
      {"bin_minutes", [&](auto& k, auto& v) { c.metrics.bin_minutes = parse_number<int>(k, v); }},
      {"term_first_day", [&](auto& k, auto& v) { c.term.first_day = parse_config_date(k, v); }},
      {"term_last_day", [&](auto& k, auto& v) { c.term.last_day = parse_config_date(k, v); }},
      {"min_days_per_user", [&](auto& k, auto& v) { c.min_days_per_user = parse_number<int>(k, v); }},
      {"hidden_layers", [&](auto& k, auto& v) { c.hidden_layers = parse_list<std::size_t>(k, v); }},
      {"dropout_rates", [&](auto& k, auto& v) { c.dropout_rates = parse_list<double>(k, v); }},
      {"bn_momentum", [&](auto& k, auto& v) { c.bn_momentum = parse_number<double>(k, v); }},
      {"bn_eps", [&](auto& k, auto& v) { c.bn_eps = parse_number<double>(k, v); }},
      {"adam_lr", [&](auto& k, auto& v) { c.adam.learning_rate = parse_number<double>(k, v); }},
      {"adam_beta1", [&](auto& k, auto& v) { c.adam.beta1 = parse_number<double>(k, v); }},
      {"adam_beta2", [&](auto& k, auto& v) { c.adam.beta2 = parse_number<double>(k, v); }},
      {"adam_eps", [&](auto& k, auto& v) { c.adam.epsilon = parse_number<double>(k, v); }},
      {"batch_size", [&](auto& k, auto& v) { c.batch_size = parse_number<std::size_t>(k, v); }},
      {"max_epochs", [&](auto& k, auto& v) { c.max_epochs = parse_number<int>(k, v); }},
      {"patience", [&](auto& k, auto& v) { c.patience = parse_number<int>(k, v); }},
      {"min_delta", [&](auto& k, auto& v) { c.min_delta = parse_number<double>(k, v); }},
      {"val_fraction", [&](auto& k, auto& v) { c.val_fraction = parse_number<double>(k, v); }},
      {"k_folds", [&](auto& k, auto& v) { c.k_folds = parse_number<int>(k, v); }},
      {"seed", [&](auto& k, auto& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"feature_subset", [&](auto&, auto& v) { c.feature_subset = parse_feature_subset(v); }},
  };
  apply(kv, setters, "pipeline config");
  c.validate();
  return c;
}

CohortConfig cohort_config_from(const std::map<std::string, std::string>& kv) {
  CohortConfig c;
  const std::map<std::string, Setter> setters{
      {"n_users", [&](auto& k, auto& v) { c.n_users = parse_number<int>(k, v); }},
      {"term_first_day", [&](auto& k, auto& v) { c.term.first_day = parse_config_date(k, v); }},
      {"term_last_day", [&](auto& k, auto& v) { c.term.last_day = parse_config_date(k, v); }},
      {"tz_offset_hours", [&](auto& k, auto& v) { c.utc_offset_hours = parse_number<int>(k, v); }},
      {"anchor_lat", [&](auto& k, auto& v) { c.anchor.lat = parse_number<double>(k, v); }},
      {"anchor_lon", [&](auto& k, auto& v) { c.anchor.lon = parse_number<double>(k, v); }},
      {"places_per_user", [&](auto& k, auto& v) { c.places_per_user = parse_number<int>(k, v); }},
      {"place_spread_m", [&](auto& k, auto& v) { c.place_spread_m = parse_number<double>(k, v); }},
      {"min_radius_m", [&](auto& k, auto& v) { c.min_radius_m = parse_number<double>(k, v); }},
      {"max_radius_m", [&](auto& k, auto& v) { c.max_radius_m = parse_number<double>(k, v); }},
      {"gps_noise_scale", [&](auto& k, auto& v) { c.gps_noise_scale = parse_number<double>(k, v); }},
      {"day_start_hour", [&](auto& k, auto& v) { c.day_start_hour = parse_number<int>(k, v); }},
      {"day_end_hour", [&](auto& k, auto& v) { c.day_end_hour = parse_number<int>(k, v); }},
      {"fix_interval_s", [&](auto& k, auto& v) { c.fix_interval_s = parse_number<int>(k, v); }},
      {"fix_jitter_s", [&](auto& k, auto& v) { c.fix_jitter_s = parse_number<int>(k, v); }},
      {"walking_speed_mps", [&](auto& k, auto& v) { c.walking_speed_mps = parse_number<double>(k, v); }},
      {"response_day_prob", [&](auto& k, auto& v) { c.response_day_prob = parse_number<double>(k, v); }},
      {"second_response_prob", [&](auto& k, auto& v) { c.second_response_prob = parse_number<double>(k, v); }},
      {"base_min", [&](auto& k, auto& v) { c.base_min = parse_number<double>(k, v); }},
      {"base_max", [&](auto& k, auto& v) { c.base_max = parse_number<double>(k, v); }},
      {"entropy_coef", [&](auto& k, auto& v) { c.signal.entropy_coef = parse_number<double>(k, v); }},
      {"weekend_coef", [&](auto& k, auto& v) { c.signal.weekend_coef = parse_number<double>(k, v); }},
      {"distance_coef", [&](auto& k, auto& v) { c.signal.distance_coef = parse_number<double>(k, v); }},
      {"weekday_campus", [&](auto& k, auto& v) { c.day_types.weekday_campus = parse_number<double>(k, v); }},
      {"weekday_leisure", [&](auto& k, auto& v) { c.day_types.weekday_leisure = parse_number<double>(k, v); }},
      {"weekend_campus", [&](auto& k, auto& v) { c.day_types.weekend_campus = parse_number<double>(k, v); }},
      {"weekend_leisure", [&](auto& k, auto& v) { c.day_types.weekend_leisure = parse_number<double>(k, v); }},
      {"noise", [&](auto& k, auto& v) { c.noise = parse_number<double>(k, v); }},
      {"seed", [&](auto& k, auto& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
  };
  apply(kv, setters, "cohort config");
  c.validate();
  return c;
}

std::string to_key_values(const PipelineConfig& c) {
  std::ostringstream out;
  out << "tz_offset_hours = " << c.tz_offset_hours << "\n"
      << "tile_size_m = " << format_double(c.metrics.tile_size_m) << "\n"
      << "eps_m = " << format_double(c.metrics.eps_m) << "\n"
      << "min_pts = " << c.metrics.min_pts << "\n"
      << "bin_minutes = " << c.metrics.bin_minutes << "\n"
      << "term_first_day = " << format_date(c.term.first_day) << "\n"
      << "term_last_day = " << format_date(c.term.last_day) << "\n"
      << "min_days_per_user = " << c.min_days_per_user << "\n"
      << "hidden_layers = " << join(c.hidden_layers) << "\n"
      << "dropout_rates = " << join(c.dropout_rates) << "\n"
      << "bn_momentum = " << format_double(c.bn_momentum) << "\n"
      << "bn_eps = " << format_double(c.bn_eps) << "\n"
      << "adam_lr = " << format_double(c.adam.learning_rate) << "\n"
      << "adam_beta1 = " << format_double(c.adam.beta1) << "\n"
      << "adam_beta2 = " << format_double(c.adam.beta2) << "\n"
      << "adam_eps = " << format_double(c.adam.epsilon) << "\n"
      << "batch_size = " << c.batch_size << "\n"
      << "max_epochs = " << c.max_epochs << "\n"
      << "patience = " << c.patience << "\n"
      << "min_delta = " << format_double(c.min_delta) << "\n"
      << "val_fraction = " << format_double(c.val_fraction) << "\n"
      << "k_folds = " << c.k_folds << "\n"
      << "seed = " << c.seed << "\n"
      << "feature_subset = " << to_string(c.feature_subset) << "\n";
  return out.str();
}

}  // namespace mobistress
