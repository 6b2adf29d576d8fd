#pragma once

#include <span>
#include <vector>

#include "idemdyn/errors.hpp"
#include "idemdyn/extended_real.hpp"

namespace idemdyn {

/// Dense n x n matrix of finite reals, row-major, 0-based indices.
class Matrix {
 public:
  Matrix(int n, std::vector<double> entries);
  explicit Matrix(int n);  // zero matrix

  static Matrix identity(int n);

  int size() const { return n_; }
  double at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }
  double& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  std::span<const double> entries() const { return a_; }

  Matrix operator*(const Matrix& rhs) const;
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  int n_;
  std::vector<double> a_;
};

/// A point of I_n: coordinates all <= 0 with max exactly 0. Immutable.
class IdempotentMeasure {
 public:
  int size() const { return static_cast<int>(coords_.size()); }
  std::span<const ExtendedReal> coords() const { return coords_; }
  ExtendedReal operator[](int i) const { return coords_[static_cast<size_t>(i)]; }

  friend IdempotentMeasure make_measure(std::vector<ExtendedReal> raw);
  friend IdempotentMeasure make_measure(std::vector<ExtendedReal> raw, double tol);

  friend bool operator==(const IdempotentMeasure& a, const IdempotentMeasure& b) = default;

 private:
  explicit IdempotentMeasure(std::vector<ExtendedReal> coords) : coords_(std::move(coords)) {}
  std::vector<ExtendedReal> coords_;
};

/// Validates exactly: every coordinate <= 0 and some coordinate == 0.
/// Throws Error{too_short | positive_coordinate | max_not_zero}.
IdempotentMeasure make_measure(std::vector<ExtendedReal> raw);

/// Tolerant variant for computed vectors: accepts coordinates <= tol with
/// the max within tol of 0, then snaps coordinates in [-tol, tol] to 0.
IdempotentMeasure make_measure(std::vector<ExtendedReal> raw, double tol);

/// y_i = sum_j a_ij * x_j under the ExtendedReal scaling conventions.
/// Returns the raw image; callers decide whether it must lie in I_n.
std::vector<ExtendedReal> apply(const Matrix& a, std::span<const ExtendedReal> x);
std::vector<ExtendedReal> apply(const Matrix& a, const std::vector<ExtendedReal>& x);
std::vector<ExtendedReal> apply(const Matrix& a, const IdempotentMeasure& x);

/// max_i |x_i - y_i| with |-inf - (-inf)| = 0 and |finite - (-inf)| = +inf
/// (IEEE +infinity marks the incomparable case).
double distance_inf(std::span<const ExtendedReal> x, std::span<const ExtendedReal> y);

bool has_neg_inf(std::span<const ExtendedReal> x);

}  // namespace idemdyn
