#include "cprlab/matrix.hpp"

#include "cprlab/errors.hpp"

#include <cmath>
#include <string>

namespace cprlab {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) {
    throw DimensionError("DenseMatrix: dimensions must be >= 1, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  data_.assign(rows * cols, fill);
}

bool DenseMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) {
      return false;
    }
  }
  return true;
}

namespace {

void require_same_shape(const DenseMatrix& x, const DenseMatrix& y, const char* op) {
  if (!x.same_shape(y)) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         std::to_string(x.rows()) + "x" + std::to_string(x.cols()) + " vs " +
                         std::to_string(y.rows()) + "x" + std::to_string(y.cols()));
  }
}

} // namespace

DenseMatrix axpy(double a, const DenseMatrix& x, const DenseMatrix& y) {
  require_same_shape(x, y, "axpy");
  DenseMatrix out = y;
  auto xd = x.data();
  auto od = out.data();
  for (std::size_t i = 0; i < xd.size(); ++i) {
    od[i] = a * xd[i] + od[i];
  }
  return out;
}

void axpy_inplace(double a, const DenseMatrix& x, DenseMatrix& y) {
  require_same_shape(x, y, "axpy_inplace");
  auto xd = x.data();
  auto yd = y.data();
  for (std::size_t i = 0; i < xd.size(); ++i) {
    yd[i] += a * xd[i];
  }
}

double sum_squares(const DenseMatrix& x) {
  double acc = 0.0;
  for (double v : x.data()) {
    acc += v * v;
  }
  return acc;
}

DenseMatrix uniform_matrix(std::size_t rows, std::size_t cols, double half_width, Rng& rng) {
  if (!(half_width > 0.0)) {
    throw ParameterError("uniform_matrix: half_width must be > 0");
  }
  DenseMatrix out(rows, cols);
  for (double& v : out.data()) {
    v = rng.uniform(-half_width, half_width);
  }
  return out;
}

DenseMatrix normal_matrix(std::size_t rows, std::size_t cols, double stddev, Rng& rng) {
  if (!(stddev >= 0.0)) {
    throw ParameterError("normal_matrix: stddev must be >= 0");
  }
  DenseMatrix out(rows, cols);
  for (double& v : out.data()) {
    v = stddev * rng.normal();
  }
  return out;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner dimensions differ");
  }
  DenseMatrix out(a.rows(), b.cols(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

DenseMatrix matmul_trans_a(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows()) {
    throw DimensionError("matmul_trans_a: inner dimensions differ");
  }
  DenseMatrix out(a.cols(), b.cols(), 0.0);
  for (std::size_t k = 0; k < a.rows(); ++k) {
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const double aki = a(k, i);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aki * b(k, j);
      }
    }
  }
  return out;
}

DenseMatrix matmul_trans_b(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionError("matmul_trans_b: inner dimensions differ");
  }
  DenseMatrix out(a.rows(), b.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        acc += a(i, k) * b(j, k);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

} // namespace cprlab
