#include "cprlab/schedule.hpp"

#include "cprlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace cprlab {

double lr_at(const LrSchedule& sched, std::int64_t t) {
  if (t < 0 || t >= sched.total_steps) {
    throw ParameterError("lr_at: step " + std::to_string(t) + " outside [0, " +
                         std::to_string(sched.total_steps) + ")");
  }
  if (sched.kind == LrScheduleKind::Constant) {
    return sched.base_lr;
  }
  const std::int64_t w = sched.warmup_steps;
  if (w > 0 && t < w) {
    return sched.base_lr * static_cast<double>(std::max<std::int64_t>(t, 1)) /
           static_cast<double>(w);
  }
  const double floor_lr = sched.decay_factor * sched.base_lr;
  const double span = static_cast<double>(sched.total_steps - w);
  const double progress = static_cast<double>(t - w) / span; // in [0, 1)
  double shape = 0.0;
  switch (sched.kind) {
  case LrScheduleKind::CosineWarmup:
    shape = 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
    break;
  case LrScheduleKind::PolynomialWarmup:
    shape = std::pow(1.0 - progress, sched.poly_exponent);
    break;
  case LrScheduleKind::Constant:
    break; // unreachable
  }
  return floor_lr + (sched.base_lr - floor_lr) * shape;
}

double wd_at(const WdSchedule& sched, std::int64_t t) {
  if (t < 0 || t >= sched.total_steps) {
    throw ParameterError("wd_at: step " + std::to_string(t) + " outside [0, " +
                         std::to_string(sched.total_steps) + ")");
  }
  if (sched.kind == WdScheduleKind::ConstantWd) {
    return sched.base_gamma;
  }
  const double denom = static_cast<double>(std::max<std::int64_t>(sched.total_steps - 1, 1));
  const double progress = static_cast<double>(t) / denom; // [0, 1] inclusive
  const double shape = 0.5 * (1.0 + std::cos(std::numbers::pi * progress));
  return sched.base_gamma * (sched.final_factor + (1.0 - sched.final_factor) * shape);
}

LrScheduleKind lr_schedule_kind_from_string(const std::string& name) {
  if (name == "constant") {
    return LrScheduleKind::Constant;
  }
  if (name == "cosine_warmup") {
    return LrScheduleKind::CosineWarmup;
  }
  if (name == "polynomial_warmup") {
    return LrScheduleKind::PolynomialWarmup;
  }
  throw ConfigError("unknown lr schedule kind '" + name + "'");
}

WdScheduleKind wd_schedule_kind_from_string(const std::string& name) {
  if (name == "constant_wd") {
    return WdScheduleKind::ConstantWd;
  }
  if (name == "cosine_wd") {
    return WdScheduleKind::CosineWd;
  }
  throw ConfigError("unknown wd schedule kind '" + name + "'");
}

} // namespace cprlab
