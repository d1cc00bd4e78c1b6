#include "cprlab/cpr.hpp"

#include "cprlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace cprlab {

KappaInitMode kappa_init_from_string(const std::string& name) {
  if (name == "kappa_k") {
    return KappaInitMode::KappaK;
  }
  if (name == "kappa_ki0") {
    return KappaInitMode::KappaKI0;
  }
  if (name == "kappa_ws") {
    return KappaInitMode::KappaWS;
  }
  if (name == "kappa_ip") {
    return KappaInitMode::KappaIP;
  }
  throw ConfigError("unknown kappa init mode '" + name + "'");
}

std::string to_string(KappaInitMode mode) {
  switch (mode) {
  case KappaInitMode::KappaK:
    return "kappa_k";
  case KappaInitMode::KappaKI0:
    return "kappa_ki0";
  case KappaInitMode::KappaWS:
    return "kappa_ws";
  case KappaInitMode::KappaIP:
    return "kappa_ip";
  }
  return "?";
}

double lambda_update(double lambda, double mu, double r_val, double kappa) {
  if (lambda < 0.0 || !(mu > 0.0)) {
    throw ParameterError("lambda_update: require lambda >= 0 and mu > 0");
  }
  return std::max(0.0, lambda + mu * (r_val - kappa));
}

void cpr_constraint_step(ParamGroup& group, CprGroupState& state, const DenseMatrix& theta_pre) {
  if (!state.kappa.has_value()) {
    return; // unbounded sentinel: identity
  }
  const double r_val = reg_value(state.measure, theta_pre);
  if (!std::isfinite(r_val)) {
    throw NumericError("cpr: non-finite measure for group '" + group.name + "'");
  }
  state.prev_lambda = state.lambda;
  state.lambda = lambda_update(state.lambda, state.mu, r_val, *state.kappa);
  if (state.lambda > 0.0) {
    const DenseMatrix grad = reg_grad(state.measure, theta_pre);
    axpy_inplace(-state.lambda, grad, group.theta);
  }
}

void kappa_init_uniform(const std::vector<ParamGroup>& groups,
                        std::vector<CprGroupState>& states, double kappa) {
  if (!(kappa > 0.0)) {
    throw ParameterError("kappa_init_uniform: kappa must be > 0");
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].regularized) {
      states[i].kappa = kappa;
    }
  }
}

void kappa_init_factor(const std::vector<ParamGroup>& groups,
                       std::vector<CprGroupState>& states, double k) {
  if (!(k > 0.0)) {
    throw ParameterError("kappa_init_factor: factor must be > 0");
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!groups[i].regularized) {
      continue;
    }
    const double r0 = reg_value(states[i].measure, groups[i].theta);
    states[i].kappa = k * r0;
    if (r0 == 0.0) {
      std::cerr << "warning: group '" << groups[i].name
                << "' has zero initial measure; kappa = 0 makes the constraint "
                   "immediately active\n";
    }
  }
}

void kappa_init_warm_start(CprGroupState& state, std::int64_t step_t, std::int64_t s,
                           double r_val) {
  if (step_t == s) {
    state.kappa = r_val;
  }
}

namespace {

// Value the second differences run on: raw sample, or trailing moving
// average of the last `window` raw samples.
double smoothed_sample(const std::vector<RSample>& samples, std::size_t idx,
                       std::int64_t window) {
  if (window <= 1) {
    return samples[idx].r;
  }
  const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(window), idx + 1);
  double acc = 0.0;
  for (std::size_t j = idx + 1 - w; j <= idx; ++j) {
    acc += samples[j].r;
  }
  return acc / static_cast<double>(w);
}

} // namespace

void kappa_init_inflection(CprGroupState& state, std::int64_t step_t, double r_val,
                           std::int64_t sample_interval, std::int64_t smooth_window) {
  if (sample_interval < 1) {
    throw ParameterError("kappa_init_inflection: sample_interval must be >= 1");
  }
  if (state.ip_found || step_t % sample_interval != 0) {
    return;
  }
  state.r_samples.push_back({step_t, r_val});
  const std::size_t k = state.r_samples.size() - 1;
  if (k < 2) {
    return;
  }
  const double rk = smoothed_sample(state.r_samples, k, smooth_window);
  const double rk1 = smoothed_sample(state.r_samples, k - 1, smooth_window);
  const double rk2 = smoothed_sample(state.r_samples, k - 2, smooth_window);
  if (rk - 2.0 * rk1 + rk2 < 0.0) {
    state.kappa = state.r_samples[k].r;
    state.ip_found = true;
  }
}

void adacpr_update(CprGroupState& state, double r_val) {
  if (!state.kappa.has_value()) {
    return;
  }
  if (state.lambda == 0.0 && state.prev_lambda > 0.0) {
    state.kappa = r_val;
  }
}

CprEngine::CprEngine(CprOptions options, const std::vector<ParamGroup>& groups)
    : options_(options) {
  if (!(options_.mu > 0.0)) {
    throw ParameterError("cpr: mu must be > 0");
  }
  states_.resize(groups.size());
  snapshots_.resize(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto& s = states_[i];
    s.mu = options_.mu;
    s.measure = options_.measure;
    s.init_mode = options_.init_mode;
    s.init_param = options_.init_param;
  }
  // The constant-bound modes are resolved from the step-0 parameters; the
  // warm-start and inflection modes start at the unbounded sentinel.
  switch (options_.init_mode) {
  case KappaInitMode::KappaK:
    kappa_init_uniform(groups, states_, options_.init_param);
    break;
  case KappaInitMode::KappaKI0:
    kappa_init_factor(groups, states_, options_.init_param);
    break;
  case KappaInitMode::KappaWS:
    if (options_.init_param < 0.0) {
      throw ParameterError("cpr: warm-start step must be >= 0");
    }
    break;
  case KappaInitMode::KappaIP:
    if (options_.sample_interval < 1) {
      throw ParameterError("cpr: sample_interval must be >= 1");
    }
    break;
  }
}

void CprEngine::snapshot_pre_step(const std::vector<ParamGroup>& groups) {
  if (groups.size() != states_.size()) {
    throw DimensionError("cpr: group count changed mid-run");
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].regularized) {
      snapshots_[i] = groups[i].theta;
    }
  }
  have_snapshot_ = true;
}

void CprEngine::apply(std::vector<ParamGroup>& groups, std::int64_t step_t) {
  if (!have_snapshot_) {
    throw ContractError("cpr: apply() called without a pre-step snapshot");
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    auto& group = groups[i];
    if (!group.regularized) {
      continue;
    }
    auto& state = states_[i];
    const DenseMatrix& pre = snapshots_[i];
    const double r_val = reg_value(state.measure, pre);
    if (!std::isfinite(r_val)) {
      throw NumericError("cpr: non-finite measure for group '" + group.name + "'");
    }

    switch (state.init_mode) {
    case KappaInitMode::KappaWS:
      kappa_init_warm_start(state, step_t, state.warm_start_step(), r_val);
      break;
    case KappaInitMode::KappaIP:
      kappa_init_inflection(state, step_t, r_val, options_.sample_interval,
                            options_.ip_smooth_window);
      break;
    default:
      break;
    }

    if (state.kappa.has_value()) {
      state.prev_lambda = state.lambda;
      state.lambda = lambda_update(state.lambda, state.mu, r_val, *state.kappa);
      if (state.lambda > 0.0) {
        const DenseMatrix grad = reg_grad(state.measure, pre);
        axpy_inplace(-state.lambda, grad, group.theta);
      }
      if (options_.adaptive) {
        adacpr_update(state, r_val);
      }
    }
  }
  have_snapshot_ = false;
}

std::vector<std::string> CprEngine::groups_without_bound(
    const std::vector<ParamGroup>& groups) const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (groups[i].regularized && !states_[i].kappa.has_value()) {
      names.push_back(groups[i].name);
    }
  }
  return names;
}

} // namespace cprlab
