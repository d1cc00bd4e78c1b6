#ifndef CPRLAB_SCHEDULE_HPP
#define CPRLAB_SCHEDULE_HPP

#include <cstdint>
#include <string>

namespace cprlab {

enum class LrScheduleKind { Constant, CosineWarmup, PolynomialWarmup };

/// Pure function of the step index; no internal state.
struct LrSchedule {
  LrScheduleKind kind = LrScheduleKind::Constant;
  double base_lr = 1e-3;
  std::int64_t warmup_steps = 0;
  std::int64_t total_steps = 1;
  double decay_factor = 0.1; // final lr = decay_factor * base_lr
  double poly_exponent = 0.9;
};

/// Learning rate at step t in [0, total_steps).
///
/// Warmup is linear with a nonzero floor: lr(0) = base_lr / warmup_steps and
/// lr(warmup_steps) = base_lr exactly. The anneal phase then interpolates
/// from base_lr down to decay_factor * base_lr at t = total_steps (cosine or
/// polynomial in the remaining progress).
double lr_at(const LrSchedule& sched, std::int64_t t);

enum class WdScheduleKind { ConstantWd, CosineWd };

struct WdSchedule {
  WdScheduleKind kind = WdScheduleKind::ConstantWd;
  double base_gamma = 0.0;
  double final_factor = 1.0; // gamma(total-1) = final_factor * base_gamma
  std::int64_t total_steps = 1;
};

/// Weight-decay coefficient at step t; cosine interpolation runs from
/// base_gamma at t = 0 to final_factor * base_gamma at t = total_steps - 1.
double wd_at(const WdSchedule& sched, std::int64_t t);

LrScheduleKind lr_schedule_kind_from_string(const std::string& name);
WdScheduleKind wd_schedule_kind_from_string(const std::string& name);

} // namespace cprlab

#endif
