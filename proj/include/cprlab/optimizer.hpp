#ifndef CPRLAB_OPTIMIZER_HPP
#define CPRLAB_OPTIMIZER_HPP

#include "cprlab/matrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cprlab {

/// One named parameter matrix with its gradient buffer. Groups with
/// regularized == false are never touched by weight decay or CPR.
struct ParamGroup {
  std::string name;
  DenseMatrix theta;
  DenseMatrix grad;
  bool regularized = true;
};

enum class OptimizerKind { Sgd, Adam, AdamW };

struct OptimizerHyperparams {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double eps = 1e-9;
  double momentum = 0.0;
  double weight_decay = 0.0;
};

/// Per-group moment buffers. Adam uses m and v; SGD uses only m as the
/// momentum buffer.
struct MomentBuffers {
  DenseMatrix m;
  DenseMatrix v;
};

/// Per-run optimizer state: hyperparameters, step counter, and one moment
/// slot per group. Buffers are allocated lazily on the first step so the
/// state can be constructed before the model.
struct OptimizerState {
  OptimizerHyperparams hp;
  std::int64_t step_t = 0;
  std::vector<MomentBuffers> moments;
};

/// Momentum SGD: b <- momentum*b + g; theta <- theta - lr*b; then, on
/// regularized groups with weight_decay > 0, theta <- theta - lr*wd*theta_pre
/// where theta_pre is the value before this step.
/// Throws NumericError naming the group when a gradient is non-finite.
void sgd_step(OptimizerState& state, std::vector<ParamGroup>& groups);

/// Bias-corrected Adam. weight_decay is ignored (use adamw_step).
void adam_step(OptimizerState& state, std::vector<ParamGroup>& groups);

/// Adam followed by decoupled decay theta -= lr*wd*theta_pre on regularized
/// groups. The decay never enters the m/v buffers, so the moments of an
/// AdamW run are bit-identical to an Adam run on the same gradient stream.
void adamw_step(OptimizerState& state, std::vector<ParamGroup>& groups);

/// Dispatcher used by the training loop.
class Optimizer {
public:
  Optimizer(OptimizerKind kind, OptimizerHyperparams hp) : kind_(kind) { state_.hp = hp; }

  void step(std::vector<ParamGroup>& groups);

  OptimizerKind kind() const { return kind_; }
  OptimizerState& state() { return state_; }
  const OptimizerState& state() const { return state_; }

private:
  OptimizerKind kind_;
  OptimizerState state_;
};

} // namespace cprlab

#endif
