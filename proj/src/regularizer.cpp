#include "cprlab/regularizer.hpp"

#include "cprlab/errors.hpp"

#include <cmath>
#include <limits>

namespace cprlab {

RegMeasure reg_measure_from_string(const std::string& name) {
  if (name == "squared_l2") {
    return RegMeasure::SquaredL2;
  }
  if (name == "std_dev") {
    return RegMeasure::StdDev;
  }
  throw ConfigError("unknown regularization measure '" + name + "'");
}

std::string to_string(RegMeasure measure) {
  return measure == RegMeasure::SquaredL2 ? "squared_l2" : "std_dev";
}

namespace {

double population_std(const DenseMatrix& theta, double& mean_out) {
  const auto d = theta.data();
  double mean = 0.0;
  for (double v : d) {
    mean += v;
  }
  mean /= static_cast<double>(d.size());
  double var = 0.0;
  for (double v : d) {
    const double c = v - mean;
    var += c * c;
  }
  var /= static_cast<double>(d.size());
  mean_out = mean;
  return std::sqrt(var);
}

} // namespace

double reg_value(RegMeasure measure, const DenseMatrix& theta) {
  if (theta.empty()) {
    throw DimensionError("reg_value: empty matrix");
  }
  switch (measure) {
  case RegMeasure::SquaredL2:
    return 0.5 * sum_squares(theta);
  case RegMeasure::StdDev: {
    double mean = 0.0;
    return population_std(theta, mean);
  }
  }
  throw ParameterError("reg_value: bad measure");
}

DenseMatrix reg_grad(RegMeasure measure, const DenseMatrix& theta) {
  if (theta.empty()) {
    throw DimensionError("reg_grad: empty matrix");
  }
  switch (measure) {
  case RegMeasure::SquaredL2:
    // d/dtheta of 1/2 sum(theta^2) is theta.
    return theta;
  case RegMeasure::StdDev: {
    double mean = 0.0;
    const double sigma = population_std(theta, mean);
    DenseMatrix grad(theta.rows(), theta.cols(), 0.0);
    if (sigma == 0.0) {
      return grad; // constant matrix: gradient defined as zero
    }
    const double n = static_cast<double>(theta.size());
    auto td = theta.data();
    auto gd = grad.data();
    for (std::size_t i = 0; i < td.size(); ++i) {
      gd[i] = (td[i] - mean) / (n * sigma);
    }
    return grad;
  }
  }
  throw ParameterError("reg_grad: bad measure");
}

double smoothed_lagrangian(double f_val, double c_val, const SmoothedLagrangianParams& p) {
  if (!(p.mu > 0.0) || p.lambda_t < 0.0) {
    throw ParameterError("smoothed_lagrangian: require mu > 0 and lambda_t >= 0");
  }
  if (p.lambda_t + p.mu * c_val >= 0.0) {
    return f_val + c_val * (p.lambda_t + 0.5 * p.mu * c_val);
  }
  return f_val - p.lambda_t * p.lambda_t / (2.0 * p.mu);
}

GridMaxResult smoothed_lagrangian_bruteforce(double f_val, double c_val,
                                             const SmoothedLagrangianParams& p,
                                             std::size_t grid_n) {
  if (grid_n < 1000) {
    throw ParameterError("smoothed_lagrangian_bruteforce: grid_n must be >= 1000");
  }
  if (!(p.mu > 0.0) || p.lambda_t < 0.0) {
    throw ParameterError("smoothed_lagrangian_bruteforce: require mu > 0 and lambda_t >= 0");
  }
  const double hi = p.lambda_t + p.mu * std::abs(c_val) + 10.0;
  const double step = hi / static_cast<double>(grid_n - 1);
  GridMaxResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_n; ++i) {
    const double lambda = static_cast<double>(i) * step;
    const double diff = lambda - p.lambda_t;
    const double value = f_val + lambda * c_val - diff * diff / (2.0 * p.mu);
    if (value > best.value) {
      best.value = value;
      best.argmax = lambda;
    }
  }
  return best;
}

} // namespace cprlab
