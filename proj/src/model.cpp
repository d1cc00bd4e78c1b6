#include "cprlab/model.hpp"

#include "cprlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cprlab {

Activation activation_from_string(const std::string& name) {
  if (name == "relu") {
    return Activation::ReLU;
  }
  if (name == "tanh") {
    return Activation::Tanh;
  }
  throw ConfigError("unknown activation '" + name + "'");
}

LossKind loss_from_string(const std::string& name) {
  if (name == "mse") {
    return LossKind::Mse;
  }
  if (name == "cross_entropy") {
    return LossKind::SoftmaxCrossEntropy;
  }
  throw ConfigError("unknown loss '" + name + "'");
}

namespace {

void validate_spec(const MlpSpec& spec) {
  if (spec.layer_widths.size() < 2) {
    throw ParameterError("mlp: need at least input and output widths");
  }
  for (std::size_t w : spec.layer_widths) {
    if (w == 0) {
      throw ParameterError("mlp: zero layer width");
    }
  }
}

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fingerprint_params(const std::vector<ParamGroup>& params) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& g : params) {
    h = fnv1a(h, g.name.data(), g.name.size());
    auto d = g.theta.data();
    h = fnv1a(h, d.data(), d.size() * sizeof(double));
  }
  return h;
}

double apply_activation(Activation act, double z) {
  return act == Activation::ReLU ? (z > 0.0 ? z : 0.0) : std::tanh(z);
}

double activation_slope(Activation act, double z) {
  if (act == Activation::ReLU) {
    return z > 0.0 ? 1.0 : 0.0;
  }
  const double t = std::tanh(z);
  return 1.0 - t * t;
}

std::size_t layer_count(const MlpSpec& spec) { return spec.layer_widths.size() - 1; }

const ParamGroup& weight_of(const MlpSpec& spec, const std::vector<ParamGroup>& params,
                            std::size_t layer) {
  return params[spec.bias ? 2 * layer : layer];
}

} // namespace

std::vector<ParamGroup> mlp_init_params(const MlpSpec& spec, Rng& rng) {
  validate_spec(spec);
  std::vector<ParamGroup> params;
  for (std::size_t l = 0; l + 1 < spec.layer_widths.size(); ++l) {
    const std::size_t fan_in = spec.layer_widths[l];
    const std::size_t fan_out = spec.layer_widths[l + 1];
    ParamGroup weight;
    weight.name = "layer" + std::to_string(l) + "/weight";
    weight.theta = uniform_matrix(fan_in, fan_out, spec.init_half_width, rng);
    weight.grad = DenseMatrix(fan_in, fan_out, 0.0);
    weight.regularized = true;
    params.push_back(std::move(weight));
    if (spec.bias) {
      ParamGroup bias;
      bias.name = "layer" + std::to_string(l) + "/bias";
      bias.theta = DenseMatrix(1, fan_out, 0.0);
      bias.grad = DenseMatrix(1, fan_out, 0.0);
      bias.regularized = false;
      params.push_back(std::move(bias));
    }
  }
  return params;
}

double mlp_forward(const MlpSpec& spec, const std::vector<ParamGroup>& params,
                   const Batch& batch, ForwardCache& cache) {
  validate_spec(spec);
  const std::size_t layers = layer_count(spec);
  const std::size_t expected_groups = spec.bias ? 2 * layers : layers;
  if (params.size() != expected_groups) {
    throw DimensionError("mlp_forward: parameter group count does not match spec");
  }
  if (batch.inputs.cols() != spec.layer_widths.front()) {
    throw DimensionError("mlp_forward: input width mismatch");
  }
  if (batch.inputs.rows() != batch.targets.rows()) {
    throw DimensionError("mlp_forward: inputs/targets row mismatch");
  }

  cache.activations.clear();
  cache.pre_acts.clear();
  cache.activations.push_back(batch.inputs);
  for (std::size_t l = 0; l < layers; ++l) {
    const auto& w = weight_of(spec, params, l);
    DenseMatrix z = matmul(cache.activations.back(), w.theta);
    if (spec.bias) {
      const auto& b = params[2 * l + 1].theta;
      for (std::size_t i = 0; i < z.rows(); ++i) {
        for (std::size_t j = 0; j < z.cols(); ++j) {
          z(i, j) += b(0, j);
        }
      }
    }
    DenseMatrix a = z;
    if (l + 1 < layers) { // final layer stays linear
      for (double& v : a.data()) {
        v = apply_activation(spec.activation, v);
      }
    }
    cache.pre_acts.push_back(std::move(z));
    cache.activations.push_back(std::move(a));
  }

  const DenseMatrix& out = cache.activations.back();
  const double n = static_cast<double>(out.rows());
  double loss = 0.0;
  if (spec.loss == LossKind::Mse) {
    if (!batch.targets.same_shape(out)) {
      throw DimensionError("mlp_forward: MSE target shape mismatch");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double d = out.data()[i] - batch.targets.data()[i];
      loss += 0.5 * d * d;
    }
    loss /= n;
  } else {
    if (batch.targets.cols() != 1) {
      throw DimensionError("mlp_forward: cross-entropy expects an n x 1 index column");
    }
    cache.probabilities = out;
    for (std::size_t i = 0; i < out.rows(); ++i) {
      double row_max = out(i, 0);
      for (std::size_t j = 1; j < out.cols(); ++j) {
        row_max = std::max(row_max, out(i, j));
      }
      double denom = 0.0;
      for (std::size_t j = 0; j < out.cols(); ++j) {
        const double e = std::exp(out(i, j) - row_max);
        cache.probabilities(i, j) = e;
        denom += e;
      }
      const auto target = static_cast<std::size_t>(batch.targets(i, 0));
      if (target >= out.cols()) {
        throw DimensionError("mlp_forward: class index out of range");
      }
      for (std::size_t j = 0; j < out.cols(); ++j) {
        cache.probabilities(i, j) /= denom;
      }
      loss -= std::log(cache.probabilities(i, target));
    }
    loss /= n;
  }
  cache.param_fingerprint = fingerprint_params(params);
  return loss;
}

void mlp_backward(const MlpSpec& spec, std::vector<ParamGroup>& params, const ForwardCache& cache,
                  const Batch& batch) {
  if (cache.activations.empty()) {
    throw ContractError("mlp_backward: no forward cache");
  }
  if (fingerprint_params(params) != cache.param_fingerprint) {
    throw ContractError("mlp_backward: parameters changed since the forward pass");
  }
  const std::size_t layers = layer_count(spec);
  const DenseMatrix& out = cache.activations.back();
  const double n = static_cast<double>(out.rows());

  DenseMatrix delta(out.rows(), out.cols(), 0.0);
  if (spec.loss == LossKind::Mse) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      delta.data()[i] = (out.data()[i] - batch.targets.data()[i]) / n;
    }
  } else {
    delta = cache.probabilities;
    for (std::size_t i = 0; i < out.rows(); ++i) {
      delta(i, static_cast<std::size_t>(batch.targets(i, 0))) -= 1.0;
    }
    for (double& v : delta.data()) {
      v /= n;
    }
  }

  for (std::size_t l = layers; l-- > 0;) {
    auto& w = params[spec.bias ? 2 * l : l];
    w.grad = matmul_trans_a(cache.activations[l], delta);
    if (spec.bias) {
      auto& b = params[2 * l + 1];
      for (std::size_t j = 0; j < delta.cols(); ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < delta.rows(); ++i) {
          acc += delta(i, j);
        }
        b.grad(0, j) = acc;
      }
    }
    if (l == 0) {
      break;
    }
    DenseMatrix upstream = matmul_trans_b(delta, w.theta);
    const DenseMatrix& z = cache.pre_acts[l - 1];
    for (std::size_t i = 0; i < upstream.size(); ++i) {
      upstream.data()[i] *= activation_slope(spec.activation, z.data()[i]);
    }
    delta = std::move(upstream);
  }
}

namespace {

// Solves A X = B for SPD A via in-place Cholesky.
DenseMatrix cholesky_solve(DenseMatrix a, const DenseMatrix& b) {
  const std::size_t d = a.rows();
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) {
      diag -= a(j, k) * a(j, k);
    }
    if (!(diag > 0.0)) {
      throw NumericError("ridge_closed_form: system is singular or not positive definite");
    }
    a(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < d; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) {
        v -= a(i, k) * a(j, k);
      }
      a(i, j) = v / a(j, j);
    }
  }
  DenseMatrix x = b;
  for (std::size_t col = 0; col < b.cols(); ++col) {
    for (std::size_t i = 0; i < d; ++i) { // L y = b
      double v = x(i, col);
      for (std::size_t k = 0; k < i; ++k) {
        v -= a(i, k) * x(k, col);
      }
      x(i, col) = v / a(i, i);
    }
    for (std::size_t i = d; i-- > 0;) { // L^T x = y
      double v = x(i, col);
      for (std::size_t k = i + 1; k < d; ++k) {
        v -= a(k, i) * x(k, col);
      }
      x(i, col) = v / a(i, i);
    }
  }
  return x;
}

} // namespace

DenseMatrix ridge_closed_form(const DenseMatrix& x, const DenseMatrix& y, double gamma) {
  if (x.rows() != y.rows()) {
    throw DimensionError("ridge_closed_form: X and y row counts differ");
  }
  if (gamma < 0.0) {
    throw ParameterError("ridge_closed_form: gamma must be >= 0");
  }
  DenseMatrix gram = matmul_trans_a(x, x);
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    gram(i, i) += gamma;
  }
  return cholesky_solve(std::move(gram), matmul_trans_a(x, y));
}

MlpModel::MlpModel(MlpSpec spec, Rng& rng) : spec_(std::move(spec)) {
  params_ = mlp_init_params(spec_, rng);
}

double MlpModel::loss_and_gradients(const Batch& batch) {
  ForwardCache cache;
  const double loss = mlp_forward(spec_, params_, batch, cache);
  mlp_backward(spec_, params_, cache, batch);
  return loss;
}

double MlpModel::loss(const Batch& batch) {
  ForwardCache cache;
  return mlp_forward(spec_, params_, batch, cache);
}

RidgeModel::RidgeModel(std::size_t dim_in, std::size_t dim_out) {
  ParamGroup w;
  w.name = "w";
  w.theta = DenseMatrix(dim_in, dim_out, 0.0);
  w.grad = DenseMatrix(dim_in, dim_out, 0.0);
  w.regularized = true;
  params_.push_back(std::move(w));
}

double RidgeModel::loss_and_gradients(const Batch& batch) {
  auto& w = params_.front();
  DenseMatrix residual = matmul(batch.inputs, w.theta);
  axpy_inplace(-1.0, batch.targets, residual);
  w.grad = matmul_trans_a(batch.inputs, residual);
  return 0.5 * sum_squares(residual);
}

double RidgeModel::loss(const Batch& batch) {
  DenseMatrix residual = matmul(batch.inputs, params_.front().theta);
  axpy_inplace(-1.0, batch.targets, residual);
  return 0.5 * sum_squares(residual);
}

} // namespace cprlab
