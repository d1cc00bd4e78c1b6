#ifndef CPRLAB_REGULARIZER_HPP
#define CPRLAB_REGULARIZER_HPP

#include "cprlab/matrix.hpp"

#include <cstddef>
#include <string>

namespace cprlab {

/// Statistical measure R(theta) of a parameter matrix.
enum class RegMeasure {
  SquaredL2, // 1/2 * sum(theta^2); gradient is theta itself
  StdDev,    // population standard deviation of the entries
};

RegMeasure reg_measure_from_string(const std::string& name);
std::string to_string(RegMeasure measure);

/// R(theta). StdDev of a single-element matrix is 0 by definition.
double reg_value(RegMeasure measure, const DenseMatrix& theta);

/// Analytic gradient of reg_value. The StdDev gradient of a constant matrix
/// is defined as zero (the measure has a removable singularity there).
DenseMatrix reg_grad(RegMeasure measure, const DenseMatrix& theta);

/// Proximal point and update rate of the smoothed maximization over the
/// multiplier: max_{l >= 0} f + l*c - (l - lambda_t)^2 / (2 mu).
struct SmoothedLagrangianParams {
  double lambda_t = 0.0; // >= 0
  double mu = 1.0;       // > 0
};

/// Closed-form value of the smoothed objective:
///   f + c*(lambda_t + mu/2 * c)   when lambda_t + mu*c >= 0
///   f - lambda_t^2 / (2 mu)       otherwise.
double smoothed_lagrangian(double f_val, double c_val, const SmoothedLagrangianParams& p);

struct GridMaxResult {
  double value = 0.0;
  double argmax = 0.0;
};

/// Brute-force oracle for the same maximization: scans a uniform grid of
/// grid_n points over [0, lambda_t + mu*|c| + 10]. Kept in the library (not
/// test code) so the CLI oracle command can print agreement reports.
GridMaxResult smoothed_lagrangian_bruteforce(double f_val, double c_val,
                                             const SmoothedLagrangianParams& p,
                                             std::size_t grid_n);

} // namespace cprlab

#endif
