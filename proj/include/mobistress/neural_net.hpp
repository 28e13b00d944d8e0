#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobistress/kernels.hpp"
#include "mobistress/rng.hpp"

namespace mobistress::nn {

/// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  kernels::MatrixView view() const { return {data_.data(), rows_, cols_}; }
  kernels::MutableMatrixView mutable_view() { return {data_.data(), rows_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

enum class Activation : std::uint8_t { Tanh = 0, Softmax = 1 };
enum class Mode { Train, Infer };

struct LayerSpec {
  std::size_t out_dim = 0;
  Activation activation = Activation::Tanh;
  double dropout_rate = 0.0;
  bool batch_norm = true;

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

struct Architecture {
  std::size_t input_dim = 12;
  std::vector<LayerSpec> layers;
  double bn_momentum = 0.9;
  double bn_eps = 1e-7;

  /// 57-35-35 tanh hidden layers with dropout 0.35/0.25/0.15, then a
  /// 3-way softmax; batch norm on every layer.
  static Architecture stress_default(std::size_t input_dim = 12);

  /// Throws Error(ConfigInvalid) for empty stacks, zero widths, dropout
  /// outside [0, 1), or a softmax layer that is not last / has dropout.
  void validate() const;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

/// Offsets of one layer's tensors inside the flat parameter and
/// running-statistics buffers. `bias` is only present without batch norm,
/// where batch norm's shift takes its place.
struct LayerLayout {
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;
  std::size_t weight = 0;  // out x in, row-major
  std::size_t bias = 0;
  std::size_t gamma = 0;
  std::size_t beta = 0;
  std::size_t running_mean = 0;
  std::size_t running_var = 0;
};

class Network {
 public:
  /// Glorot-uniform weights, zero bias/shift, unit scale, running stats (0, 1).
  Network(Architecture arch, std::uint64_t init_seed);

  /// Network with all parameters zero and running stats (0, 1).
  static Network zeros(Architecture arch);

  const Architecture& architecture() const { return arch_; }
  const LayerLayout& layout(std::size_t layer) const { return layouts_[layer]; }
  std::size_t layer_count() const { return layouts_.size(); }
  std::size_t input_dim() const { return arch_.input_dim; }
  std::size_t output_dim() const { return arch_.layers.back().out_dim; }

  std::span<const double> parameters() const { return params_; }
  std::span<const double> running_stats() const { return running_; }

  /// Mutable access bumps the generation, which invalidates forward caches.
  std::span<double> mutable_parameters() {
    ++generation_;
    return params_;
  }
  std::span<double> mutable_running_stats() {
    ++generation_;
    return running_;
  }
  std::uint64_t generation() const { return generation_; }

  friend bool operator==(const Network& a, const Network& b) {
    return a.arch_ == b.arch_ && a.params_ == b.params_ && a.running_ == b.running_;
  }

 private:
  explicit Network(Architecture arch);

  Architecture arch_;
  std::vector<LayerLayout> layouts_;
  std::vector<double> params_;
  std::vector<double> running_;
  std::uint64_t generation_ = 0;
};

/// Inverted-dropout masks (0 or 1/(1-rate)) per layer; empty for layers
/// without dropout.
struct DropoutMasks {
  std::vector<Matrix> layers;
};

struct LayerCache {
  Matrix input;
  Matrix affine;      // x W^T (+ b)
  Matrix normalized;  // batch-norm xhat (Train) or standardized input (Infer)
  std::vector<double> batch_mean;
  std::vector<double> batch_var;
  std::vector<double> inv_std;
  Matrix activated;  // tanh or softmax output
  Matrix output;     // after dropout
};

struct ForwardCache {
  Mode mode = Mode::Infer;
  std::uint64_t generation = 0;
  std::vector<LayerCache> layers;
  DropoutMasks masks;
  const Matrix& probabilities() const { return layers.back().output; }
};

/// Train mode needs at least two rows (Error(BatchTooSmall)) and either
/// `rng` for fresh dropout masks or `frozen` masks to reuse.
ForwardCache forward(const Network& net, const Matrix& batch, Mode mode, Rng* rng = nullptr,
                     const DropoutMasks* frozen = nullptr);

Matrix predict_proba(const Network& net, const Matrix& batch);
std::vector<int> predict(const Network& net, const Matrix& batch);

/// Mean of -ln max(p[label], 1e-12).
double cross_entropy(const Matrix& probs, std::span<const int> labels);

/// Gradient of loss_scale * cross_entropy w.r.t. every parameter, laid out
/// like Network::parameters(). Throws Error(StaleCache) if the cache was not
/// produced in Train mode by this network generation for this batch.
std::vector<double> backward(const Network& net, const ForwardCache& cache,
                             std::span<const int> labels, double loss_scale = 1.0);

/// Blends Train-mode batch statistics into the running statistics.
void update_running_stats(Network& net, const ForwardCache& cache);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamConfig config;
  std::uint64_t step = 0;
  std::vector<double> m;
  std::vector<double> v;

  AdamState(std::size_t parameter_count, AdamConfig cfg)
      : config(cfg), m(parameter_count, 0.0), v(parameter_count, 0.0) {}
};

/// One bias-corrected Adam update in place.
void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads);

struct TrainConfig {
  AdamConfig adam;
  std::size_t batch_size = 32;
  int max_epochs = 500;
  int patience = 20;
  double min_delta = 1e-4;
  std::uint64_t seed = 0;
};

struct TrainHistory {
  std::vector<double> train_loss;  // per epoch, mean over mini-batches
  std::vector<double> val_loss;    // per epoch, Infer mode
  int best_epoch = 0;              // 1-based
  int stopped_epoch = 0;           // 1-based, last epoch run
  double best_val_loss = 0.0;

  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

/// Mini-batch Adam with per-epoch seeded shuffling and early stopping on
/// validation loss. On return `net` holds the parameters and running
/// statistics from the best validation epoch.
TrainHistory train(Network& net, const Matrix& fit_x, std::span<const int> fit_y,
                   const Matrix& val_x, std::span<const int> val_y, const TrainConfig& cfg);

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

/// Analytic gradients against central differences with dropout masks frozen
/// from one Train-mode pass seeded by `mask_seed`.
GradCheckResult grad_check(const Network& net, const Matrix& batch, std::span<const int> labels,
                           double h, std::uint64_t mask_seed);

double relative_error(double analytic, double numeric);

/// Self-describing little-endian binary model format.
std::string serialize(const Network& net);
Network deserialize(std::string_view bytes);
void save_model(const Network& net, const std::filesystem::path& path);
Network load_model(const std::filesystem::path& path);

}  // namespace mobistress::nn
