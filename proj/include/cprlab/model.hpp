#ifndef CPRLAB_MODEL_HPP
#define CPRLAB_MODEL_HPP

#include "cprlab/matrix.hpp"
#include "cprlab/optimizer.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace cprlab {

enum class Activation { ReLU, Tanh };
enum class LossKind { Mse, SoftmaxCrossEntropy };

Activation activation_from_string(const std::string& name);
LossKind loss_from_string(const std::string& name);

struct MlpSpec {
  std::vector<std::size_t> layer_widths; // input, hidden..., output
  Activation activation = Activation::Tanh;
  bool bias = true;
  double init_half_width = 0.1;
  LossKind loss = LossKind::Mse;
};

/// Inputs are n x d_in. Targets are n x d_out for MSE and an n x 1 column of
/// class indices for cross-entropy.
struct Batch {
  DenseMatrix inputs;
  DenseMatrix targets;
};

/// Activations and pre-activations recorded by the forward pass, plus a
/// fingerprint of the parameters it ran against. The backward pass refuses
/// to run if the parameters changed in between.
struct ForwardCache {
  std::vector<DenseMatrix> activations; // a_0 = inputs ... a_L = network output
  std::vector<DenseMatrix> pre_acts;    // z_1 ... z_L
  DenseMatrix probabilities;            // softmax rows (cross-entropy only)
  std::uint64_t param_fingerprint = 0;
};

/// Weight groups "layer<i>/weight" (regularized) and, when spec.bias is set,
/// zero-initialized "layer<i>/bias" groups (never regularized).
std::vector<ParamGroup> mlp_init_params(const MlpSpec& spec, Rng& rng);

/// Forward pass; returns the batch-mean loss and fills the cache.
double mlp_forward(const MlpSpec& spec, const std::vector<ParamGroup>& params,
                   const Batch& batch, ForwardCache& cache);

/// Writes dLoss/dTheta into every group's grad buffer (biases included).
/// Throws ContractError when params were mutated since the forward pass.
void mlp_backward(const MlpSpec& spec, std::vector<ParamGroup>& params, const ForwardCache& cache,
                  const Batch& batch);

/// Minimizer of 1/2 ||Xw - y||^2 + gamma * 1/2 ||w||^2, i.e.
/// w = (X^T X + gamma I)^{-1} X^T y, solved by Cholesky factorization.
/// Throws NumericError when the system is singular (possible at gamma = 0).
DenseMatrix ridge_closed_form(const DenseMatrix& x, const DenseMatrix& y, double gamma);

/// What the training loop drives: named parameter groups plus loss/gradient
/// evaluation on a batch.
class Model {
public:
  virtual ~Model() = default;
  virtual std::vector<ParamGroup>& groups() = 0;
  virtual const std::vector<ParamGroup>& groups() const = 0;
  /// Fills every group's grad buffer and returns the loss.
  virtual double loss_and_gradients(const Batch& batch) = 0;
  /// Forward-only evaluation.
  virtual double loss(const Batch& batch) = 0;
};

class MlpModel : public Model {
public:
  MlpModel(MlpSpec spec, Rng& rng);

  std::vector<ParamGroup>& groups() override { return params_; }
  const std::vector<ParamGroup>& groups() const override { return params_; }
  double loss_and_gradients(const Batch& batch) override;
  double loss(const Batch& batch) override;
  const MlpSpec& spec() const { return spec_; }

private:
  MlpSpec spec_;
  std::vector<ParamGroup> params_;
};

/// Linear least squares with the sum-normalized objective 1/2 ||Xw - y||^2,
/// matching ridge_closed_form's normalization so the constrained run and the
/// closed-form solution share their KKT algebra.
class RidgeModel : public Model {
public:
  RidgeModel(std::size_t dim_in, std::size_t dim_out);

  std::vector<ParamGroup>& groups() override { return params_; }
  const std::vector<ParamGroup>& groups() const override { return params_; }
  double loss_and_gradients(const Batch& batch) override;
  double loss(const Batch& batch) override;

private:
  std::vector<ParamGroup> params_; // single group "w"
};

} // namespace cprlab

#endif
