#include "idemdyn/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace idemdyn {

Matrix::Matrix(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
  if (n < 2) {
    throw Error(ErrorCode::invalid_argument, "matrix dimension must be >= 2");
  }
  if (a_.size() != static_cast<size_t>(n) * static_cast<size_t>(n)) {
    throw Error(ErrorCode::invalid_argument,
                "expected " + std::to_string(static_cast<long long>(n) * n) +
                    " entries, got " + std::to_string(a_.size()));
  }
  for (size_t k = 0; k < a_.size(); ++k) {
    if (!std::isfinite(a_[k])) {
      throw Error(ErrorCode::invalid_argument,
                  "matrix entry " + std::to_string(k) + " is not finite",
                  static_cast<int>(k) / n, static_cast<int>(k) % n);
    }
  }
}

Matrix::Matrix(int n) : Matrix(n, std::vector<double>(static_cast<size_t>(n) * n, 0.0)) {}

Matrix Matrix::identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (n_ != rhs.n_) {
    throw Error(ErrorCode::dimension_mismatch, "matrix product dimension mismatch");
  }
  Matrix out(n_);
  for (int i = 0; i < n_; ++i) {
    for (int k = 0; k < n_; ++k) {
      const double aik = at(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n_; ++j) out.at(i, j) += aik * rhs.at(k, j);
    }
  }
  return out;
}

namespace {

void check_measure_shape(const std::vector<ExtendedReal>& raw) {
  if (raw.size() < 2) {
    throw Error(ErrorCode::too_short, "a measure needs at least 2 coordinates");
  }
}

}  // namespace

IdempotentMeasure make_measure(std::vector<ExtendedReal> raw) {
  check_measure_shape(raw);
  bool has_zero = false;
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].is_neg_inf()) continue;
    if (raw[i].value() > 0.0) {
      throw Error(ErrorCode::positive_coordinate,
                  "coordinate " + std::to_string(i + 1) + " is positive",
                  static_cast<int>(i));
    }
    if (raw[i].value() == 0.0) has_zero = true;
  }
  if (!has_zero) {
    throw Error(ErrorCode::max_not_zero, "no coordinate equals 0");
  }
  return IdempotentMeasure(std::move(raw));
}

IdempotentMeasure make_measure(std::vector<ExtendedReal> raw, double tol) {
  check_measure_shape(raw);
  double max_finite = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i].is_neg_inf()) continue;
    const double v = raw[i].value();
    if (v > tol) {
      throw Error(ErrorCode::positive_coordinate,
                  "coordinate " + std::to_string(i + 1) + " is positive",
                  static_cast<int>(i));
    }
    max_finite = std::max(max_finite, v);
  }
  if (!(max_finite >= -tol)) {
    throw Error(ErrorCode::max_not_zero, "no coordinate within tolerance of 0");
  }
  for (auto& c : raw) {
    if (c.is_finite() && std::abs(c.value()) <= tol) c = ExtendedReal(0.0);
  }
  return IdempotentMeasure(std::move(raw));
}

std::vector<ExtendedReal> apply(const Matrix& a, std::span<const ExtendedReal> x) {
  const int n = a.size();
  if (static_cast<int>(x.size()) != n) {
    throw Error(ErrorCode::dimension_mismatch, "apply: vector length != matrix dimension");
  }
  std::vector<ExtendedReal> y(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    bool inf = false;
    for (int j = 0; j < n; ++j) {
      const ExtendedReal term = scale(a.at(i, j), x[static_cast<size_t>(j)]);
      if (term.is_neg_inf()) {
        inf = true;
        break;
      }
      sum += term.value();
    }
    y[static_cast<size_t>(i)] = inf ? ExtendedReal::neg_inf() : ExtendedReal(sum);
  }
  return y;
}

std::vector<ExtendedReal> apply(const Matrix& a, const std::vector<ExtendedReal>& x) {
  return apply(a, std::span<const ExtendedReal>(x));
}

std::vector<ExtendedReal> apply(const Matrix& a, const IdempotentMeasure& x) {
  return apply(a, x.coords());
}

double distance_inf(std::span<const ExtendedReal> x, std::span<const ExtendedReal> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::dimension_mismatch, "distance_inf: length mismatch");
  }
  double d = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_neg_inf() || y[i].is_neg_inf()) {
      if (x[i].is_neg_inf() != y[i].is_neg_inf()) {
        return std::numeric_limits<double>::infinity();
      }
      continue;  // matching -inf contributes 0
    }
    d = std::max(d, std::abs(x[i].value() - y[i].value()));
  }
  return d;
}

bool has_neg_inf(std::span<const ExtendedReal> x) {
  return std::any_of(x.begin(), x.end(), [](ExtendedReal v) { return v.is_neg_inf(); });
}

}  // namespace idemdyn
