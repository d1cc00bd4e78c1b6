#ifndef CPRLAB_CPR_HPP
#define CPRLAB_CPR_HPP

#include "cprlab/optimizer.hpp"
#include "cprlab/regularizer.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cprlab {

/// Strategy for choosing the per-group upper bound kappa.
enum class KappaInitMode {
  KappaK,   // one shared constant for every group
  KappaKI0, // factor k times the group's measure at step 0
  KappaWS,  // value of the measure after s warm-start steps
  KappaIP,  // value of the measure at the first inflection point of its trajectory
};

KappaInitMode kappa_init_from_string(const std::string& name);
std::string to_string(KappaInitMode mode);

struct RSample {
  std::int64_t step = 0;
  double r = 0.0;
};

/// Per-group constraint state. kappa == nullopt is the "unbounded" sentinel:
/// the constraint step is a no-op and lambda stays 0 until a bound is set.
struct CprGroupState {
  double lambda = 0.0;      // Lagrange multiplier, >= 0 at all times
  double prev_lambda = 0.0; // multiplier before the latest update
  std::optional<double> kappa;
  double mu = 1.0;
  RegMeasure measure = RegMeasure::SquaredL2;
  KappaInitMode init_mode = KappaInitMode::KappaK;
  double init_param = 0.0; // kappa for KappaK, k for KappaKI0, s for KappaWS

  // Kappa-IP bookkeeping: sampled (step, R) pairs and detection flag.
  std::vector<RSample> r_samples;
  bool ip_found = false;

  std::int64_t warm_start_step() const { return static_cast<std::int64_t>(init_param); }
};

/// Multiplier update of the constraint R(theta) - kappa <= 0:
///   max(0, lambda + mu * (r_val - kappa)).
/// This is the closed-form maximizer of the smoothed inner problem shifted
/// by the proximal point (the (.)^+ clamp of the derivation).
double lambda_update(double lambda, double mu, double r_val, double kappa);

/// Constraint step, run after the base optimizer step. theta_pre must hold
/// the group's parameters from before the base step: both the measure and
/// its gradient are evaluated there. No learning-rate factor is applied.
/// A no-op (including bitwise) when the bound is unset or the new multiplier
/// is zero.
void cpr_constraint_step(ParamGroup& group, CprGroupState& state, const DenseMatrix& theta_pre);

/// Kappa-K: the same bound for every regularized group. kappa must be > 0.
void kappa_init_uniform(const std::vector<ParamGroup>& groups,
                        std::vector<CprGroupState>& states, double kappa);

/// Kappa-kI0: per-group bound k * R(theta at step 0). A group whose initial
/// measure is zero gets kappa = 0 with a warning (constraint immediately
/// active).
void kappa_init_factor(const std::vector<ParamGroup>& groups,
                       std::vector<CprGroupState>& states, double k);

/// Kappa-WS: at step_t == s exactly, freeze kappa at r_val; earlier steps
/// leave the sentinel in place.
void kappa_init_warm_start(CprGroupState& state, std::int64_t step_t, std::int64_t s,
                           double r_val);

/// Kappa-IP: every sample_interval steps append (step, r_val) to the sample
/// history; once three samples exist, detect the first sample whose backward
/// second difference R_k - 2 R_{k-1} + R_{k-2} is negative, freeze kappa at
/// that sample's value, and stop sampling. smooth_window > 1 differences a
/// trailing moving average of the raw samples instead (default off).
void kappa_init_inflection(CprGroupState& state, std::int64_t step_t, double r_val,
                           std::int64_t sample_interval, std::int64_t smooth_window = 0);

/// Adaptive bound: when the constraint just deactivated (lambda == 0,
/// prev_lambda > 0), lower kappa to the current measure value. Never raises
/// the bound.
void adacpr_update(CprGroupState& state, double r_val);

struct CprOptions {
  double mu = 1.0;
  RegMeasure measure = RegMeasure::SquaredL2;
  KappaInitMode init_mode = KappaInitMode::KappaK;
  double init_param = 0.0;
  bool adaptive = false;
  std::int64_t sample_interval = 1;  // Kappa-IP sampling stride
  std::int64_t ip_smooth_window = 0; // 0/1 = raw samples
};

/// Owns the per-group constraint states and runs the full per-step loop:
/// bound-initializer bookkeeping, constraint step, adaptive update. Groups
/// are always traversed in declaration order so runs reproduce bitwise.
class CprEngine {
public:
  CprEngine(CprOptions options, const std::vector<ParamGroup>& groups);

  /// Copy the parameters of every regularized group; must be called before
  /// the base optimizer step of each iteration.
  void snapshot_pre_step(const std::vector<ParamGroup>& groups);

  /// Per-iteration CPR pass, after the base optimizer step. step_t is the
  /// 0-based index of the iteration whose pre-step parameters were
  /// snapshotted.
  void apply(std::vector<ParamGroup>& groups, std::int64_t step_t);

  const CprOptions& options() const { return options_; }
  const std::vector<CprGroupState>& states() const { return states_; }
  const CprGroupState& state(std::size_t group_index) const { return states_[group_index]; }

  /// Names of regularized groups still waiting for an inflection point; the
  /// harness warns about these at run end.
  std::vector<std::string> groups_without_bound(const std::vector<ParamGroup>& groups) const;

private:
  CprOptions options_;
  std::vector<CprGroupState> states_;    // parallel to groups
  std::vector<DenseMatrix> snapshots_;   // parallel to groups, regularized only
  bool have_snapshot_ = false;
};

} // namespace cprlab

#endif
