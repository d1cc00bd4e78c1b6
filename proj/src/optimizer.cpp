#include "cprlab/optimizer.hpp"

#include "cprlab/errors.hpp"

#include <cmath>

namespace cprlab {

namespace {

void check_gradients(const std::vector<ParamGroup>& groups) {
  for (const auto& g : groups) {
    if (!g.theta.same_shape(g.grad)) {
      throw DimensionError("optimizer: theta/grad shape mismatch in group '" + g.name + "'");
    }
    if (!g.grad.all_finite()) {
      throw NumericError("optimizer: non-finite gradient in group '" + g.name + "'");
    }
  }
}

void ensure_buffers(OptimizerState& state, const std::vector<ParamGroup>& groups, bool need_v) {
  if (state.moments.size() == groups.size()) {
    return;
  }
  state.moments.clear();
  state.moments.reserve(groups.size());
  for (const auto& g : groups) {
    MomentBuffers b;
    b.m = DenseMatrix(g.theta.rows(), g.theta.cols(), 0.0);
    if (need_v) {
      b.v = DenseMatrix(g.theta.rows(), g.theta.cols(), 0.0);
    }
    state.moments.push_back(std::move(b));
  }
}

// Shared Adam core; decay is applied against the pre-step parameter value
// and never touches m or v.
void adam_impl(OptimizerState& state, std::vector<ParamGroup>& groups, bool decoupled_decay) {
  check_gradients(groups);
  ensure_buffers(state, groups, /*need_v=*/true);
  state.step_t += 1;
  const auto& hp = state.hp;
  const double t = static_cast<double>(state.step_t);
  const double bias1 = 1.0 - std::pow(hp.beta1, t);
  const double bias2 = 1.0 - std::pow(hp.beta2, t);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    auto& group = groups[gi];
    auto theta = group.theta.data();
    auto grad = group.grad.data();
    auto m = state.moments[gi].m.data();
    auto v = state.moments[gi].v.data();
    const bool decay = decoupled_decay && group.regularized && hp.weight_decay > 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double g = grad[i];
      m[i] = hp.beta1 * m[i] + (1.0 - hp.beta1) * g;
      v[i] = hp.beta2 * v[i] + (1.0 - hp.beta2) * g * g;
      const double m_hat = m[i] / bias1;
      const double v_hat = v[i] / bias2;
      const double pre = theta[i];
      theta[i] = pre - hp.lr * m_hat / (std::sqrt(v_hat) + hp.eps);
      if (decay) {
        theta[i] -= hp.lr * hp.weight_decay * pre;
      }
    }
  }
}

} // namespace

void sgd_step(OptimizerState& state, std::vector<ParamGroup>& groups) {
  check_gradients(groups);
  ensure_buffers(state, groups, /*need_v=*/false);
  state.step_t += 1;
  const auto& hp = state.hp;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    auto& group = groups[gi];
    auto theta = group.theta.data();
    auto grad = group.grad.data();
    auto buf = state.moments[gi].m.data();
    const bool decay = group.regularized && hp.weight_decay > 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      buf[i] = hp.momentum * buf[i] + grad[i];
      const double pre = theta[i];
      theta[i] = pre - hp.lr * buf[i];
      if (decay) {
        theta[i] -= hp.lr * hp.weight_decay * pre;
      }
    }
  }
}

void adam_step(OptimizerState& state, std::vector<ParamGroup>& groups) {
  adam_impl(state, groups, /*decoupled_decay=*/false);
}

void adamw_step(OptimizerState& state, std::vector<ParamGroup>& groups) {
  adam_impl(state, groups, /*decoupled_decay=*/true);
}

void Optimizer::step(std::vector<ParamGroup>& groups) {
  switch (kind_) {
  case OptimizerKind::Sgd:
    sgd_step(state_, groups);
    return;
  case OptimizerKind::Adam:
    adam_step(state_, groups);
    return;
  case OptimizerKind::AdamW:
    adamw_step(state_, groups);
    return;
  }
  throw ParameterError("Optimizer::step: bad kind");
}

} // namespace cprlab
