#include "mobistress/neural_net.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numeric>
#include <sstream>

#include "mobistress/error.hpp"

namespace mobistress::nn {

Architecture Architecture::stress_default(std::size_t input_dim) {
  Architecture arch;
  arch.input_dim = input_dim;
  arch.layers = {
      {57, Activation::Tanh, 0.35, true},
      {35, Activation::Tanh, 0.25, true},
      {35, Activation::Tanh, 0.15, true},
      {3, Activation::Softmax, 0.0, true},
  };
  return arch;
}

void Architecture::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::ConfigInvalid, msg); };
  if (input_dim == 0) fail("input dimension must be positive");
  if (layers.empty()) fail("network needs at least one layer");
  if (!(bn_momentum >= 0.0 && bn_momentum < 1.0)) fail("batch-norm momentum must lie in [0, 1)");
  if (!(bn_eps > 0.0)) fail("batch-norm epsilon must be positive");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& l = layers[i];
    if (l.out_dim == 0) fail("layer widths must be positive");
    if (!(l.dropout_rate >= 0.0 && l.dropout_rate < 1.0)) fail("dropout rate must lie in [0, 1)");
    const bool last = i + 1 == layers.size();
    if (l.activation == Activation::Softmax && !last) fail("softmax is only valid on the output layer");
    if (last && l.activation != Activation::Softmax) fail("the output layer must be softmax");
    if (last && l.dropout_rate != 0.0) fail("the output layer takes no dropout");
  }
}

Network::Network(Architecture arch) : arch_(std::move(arch)) {
  arch_.validate();
  std::size_t in = arch_.input_dim;
  std::size_t p = 0, r = 0;
  for (const LayerSpec& spec : arch_.layers) {
    LayerLayout lay;
    lay.in_dim = in;
    lay.out_dim = spec.out_dim;
    lay.weight = p;
    p += spec.out_dim * in;
    if (spec.batch_norm) {
      lay.gamma = p;
      p += spec.out_dim;
      lay.beta = p;
      p += spec.out_dim;
      lay.running_mean = r;
      r += spec.out_dim;
      lay.running_var = r;
      r += spec.out_dim;
    } else {
      lay.bias = p;
      p += spec.out_dim;
    }
    layouts_.push_back(lay);
    in = spec.out_dim;
  }
  params_.assign(p, 0.0);
  running_.assign(r, 0.0);
  for (std::size_t l = 0; l < layouts_.size(); ++l) {
    if (!arch_.layers[l].batch_norm) continue;
    const LayerLayout& lay = layouts_[l];
    std::fill_n(params_.begin() + static_cast<std::ptrdiff_t>(lay.gamma), lay.out_dim, 1.0);
    std::fill_n(running_.begin() + static_cast<std::ptrdiff_t>(lay.running_var), lay.out_dim, 1.0);
  }
}

Network::Network(Architecture arch, std::uint64_t init_seed) : Network(std::move(arch)) {
  Rng rng(init_seed);
  for (const LayerLayout& lay : layouts_) {
    const double limit = std::sqrt(6.0 / static_cast<double>(lay.in_dim + lay.out_dim));
    for (std::size_t i = 0; i < lay.out_dim * lay.in_dim; ++i) {
      params_[lay.weight + i] = rng.uniform(-limit, limit);
    }
  }
}

Network Network::zeros(Architecture arch) {
  Network net(std::move(arch));
  for (std::size_t l = 0; l < net.layouts_.size(); ++l) {
    if (!net.arch_.layers[l].batch_norm) continue;
    const LayerLayout& lay = net.layouts_[l];
    std::fill_n(net.params_.begin() + static_cast<std::ptrdiff_t>(lay.gamma), lay.out_dim, 0.0);
  }
  return net;
}

namespace {

void softmax_rows(Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    const double mx = *std::max_element(row.begin(), row.end());
    double sum = 0.0;
    for (double& v : row) {
      v = std::exp(v - mx);
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
}

}  // namespace

ForwardCache forward(const Network& net, const Matrix& batch, Mode mode, Rng* rng,
                     const DropoutMasks* frozen) {
  const Architecture& arch = net.architecture();
  if (batch.cols() != arch.input_dim) {
    throw Error(ErrorKind::ConfigInvalid, "batch has " + std::to_string(batch.cols()) +
                                              " columns, network expects " +
                                              std::to_string(arch.input_dim));
  }
  const std::size_t n = batch.rows();
  if (mode == Mode::Train && n < 2) {
    throw Error(ErrorKind::BatchTooSmall, "Train mode batch norm needs at least 2 rows");
  }
  const std::span<const double> params = net.parameters();
  const std::span<const double> running = net.running_stats();

  ForwardCache cache;
  cache.mode = mode;
  cache.generation = net.generation();
  cache.layers.resize(net.layer_count());
  cache.masks.layers.resize(net.layer_count());

  const Matrix* current = &batch;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const LayerSpec& spec = arch.layers[l];
    const LayerLayout& lay = net.layout(l);
    LayerCache& lc = cache.layers[l];
    lc.input = *current;
    lc.affine = Matrix(n, lay.out_dim);
    kernels::gemm_nt(lc.input.view(), {params.data() + lay.weight, lay.out_dim, lay.in_dim},
                     lc.affine.mutable_view());

    Matrix pre(n, lay.out_dim);
    if (spec.batch_norm) {
      lc.normalized = Matrix(n, lay.out_dim);
      lc.batch_mean.assign(lay.out_dim, 0.0);
      lc.batch_var.assign(lay.out_dim, 0.0);
      lc.inv_std.assign(lay.out_dim, 0.0);
      for (std::size_t j = 0; j < lay.out_dim; ++j) {
        double mean, var;
        if (mode == Mode::Train) {
          mean = 0.0;
          for (std::size_t i = 0; i < n; ++i) mean += lc.affine(i, j);
          mean /= static_cast<double>(n);
          var = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            const double d = lc.affine(i, j) - mean;
            var += d * d;
          }
          var /= static_cast<double>(n);
        } else {
          mean = running[lay.running_mean + j];
          var = running[lay.running_var + j];
        }
        const double inv_std = 1.0 / std::sqrt(var + arch.bn_eps);
        lc.batch_mean[j] = mean;
        lc.batch_var[j] = var;
        lc.inv_std[j] = inv_std;
        const double gamma = params[lay.gamma + j];
        const double beta = params[lay.beta + j];
        for (std::size_t i = 0; i < n; ++i) {
          const double xhat = (lc.affine(i, j) - mean) * inv_std;
          lc.normalized(i, j) = xhat;
          pre(i, j) = gamma * xhat + beta;
        }
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < lay.out_dim; ++j) {
          lc.affine(i, j) += params[lay.bias + j];
          pre(i, j) = lc.affine(i, j);
        }
      }
    }

    lc.activated = std::move(pre);
    if (spec.activation == Activation::Softmax) {
      softmax_rows(lc.activated);
    } else {
      for (double& v : lc.activated.data()) v = std::tanh(v);
    }

    if (mode == Mode::Train && spec.dropout_rate > 0.0) {
      Matrix& mask = cache.masks.layers[l];
      if (frozen != nullptr) {
        mask = frozen->layers.at(l);
        if (mask.rows() != n || mask.cols() != lay.out_dim) {
          throw Error(ErrorKind::StaleCache, "frozen dropout mask does not match the batch");
        }
      } else {
        if (rng == nullptr) {
          throw Error(ErrorKind::ConfigInvalid, "Train mode dropout needs an rng or frozen masks");
        }
        const double keep_scale = 1.0 / (1.0 - spec.dropout_rate);
        mask = Matrix(n, lay.out_dim);
        for (double& v : mask.data()) v = rng->bernoulli(spec.dropout_rate) ? 0.0 : keep_scale;
      }
      lc.output = lc.activated;
      for (std::size_t i = 0; i < lc.output.data().size(); ++i) lc.output.data()[i] *= mask.data()[i];
    } else {
      lc.output = lc.activated;
    }
    current = &lc.output;
  }
  return cache;
}

Matrix predict_proba(const Network& net, const Matrix& batch) {
  ForwardCache cache = forward(net, batch, Mode::Infer);
  return std::move(cache.layers.back().output);
}

std::vector<int> predict(const Network& net, const Matrix& batch) {
  const Matrix probs = predict_proba(net, batch);
  std::vector<int> out(probs.rows());
  for (std::size_t r = 0; r < probs.rows(); ++r) {
    const auto row = probs.row(r);
    out[r] = static_cast<int>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return out;
}

double cross_entropy(const Matrix& probs, std::span<const int> labels) {
  if (labels.size() != probs.rows() || labels.empty()) {
    throw Error(ErrorKind::ConfigInvalid, "label count does not match the probability rows");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sum -= std::log(std::max(probs(i, static_cast<std::size_t>(labels[i])), 1e-12));
  }
  return sum / static_cast<double>(labels.size());
}

std::vector<double> backward(const Network& net, const ForwardCache& cache,
                             std::span<const int> labels, double loss_scale) {
  if (cache.mode != Mode::Train) {
    throw Error(ErrorKind::StaleCache, "backward needs a Train-mode forward cache");
  }
  if (cache.generation != net.generation() || cache.layers.size() != net.layer_count()) {
    throw Error(ErrorKind::StaleCache, "forward cache was produced by a different network state");
  }
  const std::size_t n = cache.layers.front().input.rows();
  if (labels.size() != n) {
    throw Error(ErrorKind::StaleCache, "label count does not match the cached batch");
  }
  const Architecture& arch = net.architecture();
  const std::span<const double> params = net.parameters();
  std::vector<double> grads(params.size(), 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);

  Matrix upstream;  // d loss / d output of layer l
  for (std::size_t l = net.layer_count(); l-- > 0;) {
    const LayerSpec& spec = arch.layers[l];
    const LayerLayout& lay = net.layout(l);
    const LayerCache& lc = cache.layers[l];

    Matrix dpre(n, lay.out_dim);
    if (spec.activation == Activation::Softmax) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < lay.out_dim; ++j) {
          const double target = static_cast<std::size_t>(labels[i]) == j ? 1.0 : 0.0;
          dpre(i, j) = loss_scale * (lc.activated(i, j) - target) * inv_n;
        }
      }
    } else {
      const Matrix& mask = cache.masks.layers[l];
      const bool masked = mask.rows() == n;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < lay.out_dim; ++j) {
          double g = upstream(i, j);
          if (masked) g *= mask(i, j);
          const double a = lc.activated(i, j);
          dpre(i, j) = g * (1.0 - a * a);
        }
      }
    }

    Matrix daffine(n, lay.out_dim);
    if (spec.batch_norm) {
      for (std::size_t j = 0; j < lay.out_dim; ++j) {
        double sum_g = 0.0, sum_gx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          sum_g += dpre(i, j);
          sum_gx += dpre(i, j) * lc.normalized(i, j);
        }
        grads[lay.gamma + j] = sum_gx;
        grads[lay.beta + j] = sum_g;
        const double gamma = params[lay.gamma + j];
        // d xhat = dpre * gamma; full Jacobian through batch mean and variance.
        const double scale = gamma * lc.inv_std[j] * inv_n;
        for (std::size_t i = 0; i < n; ++i) {
          daffine(i, j) = scale * (static_cast<double>(n) * dpre(i, j) - sum_g -
                                   lc.normalized(i, j) * sum_gx);
        }
      }
    } else {
      for (std::size_t j = 0; j < lay.out_dim; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += dpre(i, j);
        grads[lay.bias + j] = sum;
      }
      daffine = std::move(dpre);
    }

    kernels::gemm_tn_accumulate(daffine.view(), lc.input.view(),
                                {grads.data() + lay.weight, lay.out_dim, lay.in_dim});
    if (l > 0) {
      upstream = Matrix(n, lay.in_dim);
      kernels::gemm_nn(daffine.view(), {params.data() + lay.weight, lay.out_dim, lay.in_dim},
                       upstream.mutable_view());
    }
  }
  return grads;
}

void update_running_stats(Network& net, const ForwardCache& cache) {
  if (cache.mode != Mode::Train) return;
  const Architecture& arch = net.architecture();
  const double m = arch.bn_momentum;
  std::span<double> running = net.mutable_running_stats();
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    if (!arch.layers[l].batch_norm) continue;
    const LayerLayout& lay = net.layout(l);
    const LayerCache& lc = cache.layers[l];
    for (std::size_t j = 0; j < lay.out_dim; ++j) {
      double& rm = running[lay.running_mean + j];
      double& rv = running[lay.running_var + j];
      rm = m * rm + (1.0 - m) * lc.batch_mean[j];
      rv = m * rv + (1.0 - m) * lc.batch_var[j];
    }
  }
}

void adam_step(AdamState& state, std::span<double> params, std::span<const double> grads) {
  if (params.size() != grads.size() || params.size() != state.m.size()) {
    throw Error(ErrorKind::ConfigInvalid, "Adam state, parameter and gradient sizes differ");
  }
  const AdamConfig& c = state.config;
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(c.beta1, t);
  const double bias2 = 1.0 - std::pow(c.beta2, t);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    state.m[i] = c.beta1 * state.m[i] + (1.0 - c.beta1) * g;
    state.v[i] = c.beta2 * state.v[i] + (1.0 - c.beta2) * g * g;
    const double m_hat = state.m[i] / bias1;
    const double v_hat = state.v[i] / bias2;
    params[i] -= c.learning_rate * m_hat / (std::sqrt(v_hat) + c.epsilon);
  }
}

namespace {

Matrix gather_rows(const Matrix& x, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), x.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto src = x.row(rows[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace

TrainHistory train(Network& net, const Matrix& fit_x, std::span<const int> fit_y,
                   const Matrix& val_x, std::span<const int> val_y, const TrainConfig& cfg) {
  if (fit_x.rows() != fit_y.size() || val_x.rows() != val_y.size()) {
    throw Error(ErrorKind::ConfigInvalid, "feature and label counts differ");
  }
  if (fit_x.rows() < 2) throw Error(ErrorKind::BatchTooSmall, "training needs at least 2 records");
  if (val_x.rows() == 0) throw Error(ErrorKind::ConfigInvalid, "validation set is empty");
  if (cfg.batch_size < 2) throw Error(ErrorKind::BatchTooSmall, "batch size must be at least 2");
  if (cfg.max_epochs < 1 || cfg.patience < 0) {
    throw Error(ErrorKind::ConfigInvalid, "max_epochs must be >= 1 and patience >= 0");
  }

  const std::size_t n = fit_x.rows();
  AdamState adam(net.parameters().size(), cfg.adam);
  Rng rng(cfg.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  // Batch boundaries; a trailing single row is folded into the previous batch.
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s < n; s += cfg.batch_size) starts.push_back(s);
  if (starts.size() > 1 && n - starts.back() < 2) starts.pop_back();
  starts.push_back(n);

  TrainHistory history;
  std::vector<double> best_params(net.parameters().begin(), net.parameters().end());
  std::vector<double> best_running(net.running_stats().begin(), net.running_stats().end());
  double best = std::numeric_limits<double>::infinity();
  double reference = std::numeric_limits<double>::infinity();
  int wait = 0;
  std::vector<int> batch_y;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double epoch_loss = 0.0;
    for (std::size_t b = 0; b + 1 < starts.size(); ++b) {
      const std::span<const std::size_t> rows(order.data() + starts[b], starts[b + 1] - starts[b]);
      const Matrix bx = gather_rows(fit_x, rows);
      batch_y.clear();
      for (std::size_t r : rows) batch_y.push_back(fit_y[r]);
      const ForwardCache cache = forward(net, bx, Mode::Train, &rng);
      epoch_loss += cross_entropy(cache.probabilities(), batch_y) * static_cast<double>(rows.size());
      const std::vector<double> grads = backward(net, cache, batch_y);
      update_running_stats(net, cache);
      adam_step(adam, net.mutable_parameters(), grads);
    }
    history.train_loss.push_back(epoch_loss / static_cast<double>(n));
    const double val = cross_entropy(predict_proba(net, val_x), val_y);
    history.val_loss.push_back(val);
    history.stopped_epoch = epoch;

    if (val < best) {
      best = val;
      history.best_epoch = epoch;
      history.best_val_loss = val;
      std::copy(net.parameters().begin(), net.parameters().end(), best_params.begin());
      std::copy(net.running_stats().begin(), net.running_stats().end(), best_running.begin());
    }
    if (val < reference - cfg.min_delta) {
      reference = val;
      wait = 0;
    } else if (++wait >= cfg.patience) {
      break;
    }
  }

  std::copy(best_params.begin(), best_params.end(), net.mutable_parameters().begin());
  std::copy(best_running.begin(), best_running.end(), net.mutable_running_stats().begin());
  return history;
}

double relative_error(double analytic, double numeric) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
  return std::abs(analytic - numeric) / denom;
}

GradCheckResult grad_check(const Network& net, const Matrix& batch, std::span<const int> labels,
                           double h, std::uint64_t mask_seed) {
  Rng rng(mask_seed);
  const ForwardCache cache = forward(net, batch, Mode::Train, &rng);
  GradCheckResult result;
  result.analytic = backward(net, cache, labels);
  result.numeric.assign(result.analytic.size(), 0.0);

  Network work = net;
  for (std::size_t i = 0; i < result.analytic.size(); ++i) {
    const double original = work.parameters()[i];
    work.mutable_parameters()[i] = original + h;
    const double plus =
        cross_entropy(forward(work, batch, Mode::Train, nullptr, &cache.masks).probabilities(), labels);
    work.mutable_parameters()[i] = original - h;
    const double minus =
        cross_entropy(forward(work, batch, Mode::Train, nullptr, &cache.masks).probabilities(), labels);
    work.mutable_parameters()[i] = original;
    result.numeric[i] = (plus - minus) / (2.0 * h);
    result.max_relative_error =
        std::max(result.max_relative_error, relative_error(result.analytic[i], result.numeric[i]));
  }
  return result;
}

// Model file layout (all little-endian):
//   8 bytes  magic "MSNNMODL"
//   u32      format version
//   u64      input_dim, u64 layer count, f64 bn_momentum, f64 bn_eps
//   per layer: u64 out_dim, u8 activation, u8 batch_norm, f64 dropout_rate
//   u64 parameter count, f64 parameters...
//   u64 running-stat count, f64 running stats...
namespace {

constexpr char kMagic[8] = {'M', 'S', 'N', 'N', 'M', 'O', 'D', 'L'};
constexpr std::uint32_t kFormatVersion = 1;

template <typename U>
void put_uint(std::string& out, U value) {
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xFF));
  }
}

void put_f64(std::string& out, double v) { put_uint(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename U>
  U uint() {
    need(sizeof(U));
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      value |= static_cast<U>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += sizeof(U);
    return value;
  }
  double f64() { return std::bit_cast<double>(uint<std::uint64_t>()); }
  std::string_view raw(std::size_t n) {
    need(n);
    auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(ErrorKind::FormatError, "model file is truncated");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(const Network& net) {
  std::string out(kMagic, sizeof kMagic);
  const Architecture& arch = net.architecture();
  put_uint<std::uint32_t>(out, kFormatVersion);
  put_uint<std::uint64_t>(out, arch.input_dim);
  put_uint<std::uint64_t>(out, arch.layers.size());
  put_f64(out, arch.bn_momentum);
  put_f64(out, arch.bn_eps);
  for (const LayerSpec& l : arch.layers) {
    put_uint<std::uint64_t>(out, l.out_dim);
    put_uint<std::uint8_t>(out, static_cast<std::uint8_t>(l.activation));
    put_uint<std::uint8_t>(out, l.batch_norm ? 1 : 0);
    put_f64(out, l.dropout_rate);
  }
  put_uint<std::uint64_t>(out, net.parameters().size());
  for (double v : net.parameters()) put_f64(out, v);
  put_uint<std::uint64_t>(out, net.running_stats().size());
  for (double v : net.running_stats()) put_f64(out, v);
  return out;
}

Network deserialize(std::string_view bytes) {
  Reader in(bytes);
  if (in.raw(sizeof kMagic) != std::string_view(kMagic, sizeof kMagic)) {
    throw Error(ErrorKind::FormatError, "not a model file");
  }
  if (const auto version = in.uint<std::uint32_t>(); version != kFormatVersion) {
    throw Error(ErrorKind::FormatError, "unsupported model version " + std::to_string(version));
  }
  Architecture arch;
  arch.input_dim = in.uint<std::uint64_t>();
  const auto layer_count = in.uint<std::uint64_t>();
  if (layer_count > 1024) throw Error(ErrorKind::FormatError, "implausible layer count");
  arch.bn_momentum = in.f64();
  arch.bn_eps = in.f64();
  for (std::uint64_t i = 0; i < layer_count; ++i) {
    LayerSpec l;
    l.out_dim = in.uint<std::uint64_t>();
    const auto act = in.uint<std::uint8_t>();
    if (act > 1) throw Error(ErrorKind::FormatError, "unknown activation code");
    l.activation = static_cast<Activation>(act);
    l.batch_norm = in.uint<std::uint8_t>() != 0;
    l.dropout_rate = in.f64();
    arch.layers.push_back(l);
  }
  Network net = Network::zeros(arch);
  auto read_block = [&](std::span<double> dst) {
    if (in.uint<std::uint64_t>() != dst.size()) {
      throw Error(ErrorKind::FormatError, "tensor block size does not match the architecture");
    }
    for (double& v : dst) v = in.f64();
  };
  read_block(net.mutable_parameters());
  read_block(net.mutable_running_stats());
  if (!in.done()) throw Error(ErrorKind::FormatError, "trailing bytes after model data");
  return net;
}

void save_model(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::FileMissing, "cannot write " + path.string());
  const std::string bytes = serialize(net);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Network load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::FileMissing, "cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

}  // namespace mobistress::nn
