#pragma once

#include <optional>
#include <span>
#include <vector>

#include "idemdyn/core.hpp"

namespace idemdyn {

enum class FixKind { unique_zero, cone };

/// Symbolic description of Fix(A) = {x in I_n : A x = x}.
/// A fixed point is x = -sum_p alpha_p * g^(p) with alpha_p >= 0, plus the
/// forced zero coordinates. When requires_zero_anchor is set, the simplex
/// constraint max x_i = 0 additionally forces at least one alpha_p = 0.
struct FixedPointSet {
  int n = 0;
  FixKind kind = FixKind::unique_zero;
  std::vector<std::vector<double>> generators;  // length-n, non-negative, max entry 1
  bool requires_zero_anchor = false;
  std::vector<int> forced_zero_coords;          // 0-based, ascending
};

/// Fixed-point equation restricted to the non-zero rows: M = minor(A) - I
/// over the kept indices, with its rank and, in the corank-1 case, the
/// solved ray direction (free coordinate normalized to 1).
struct ReducedSystem {
  std::vector<int> kept;       // non-zero-row indices, ascending
  int n0 = 0;
  std::vector<double> m;       // n0 x n0, row-major
  int rank = 0;
  std::vector<double> ray;     // kept-frame null direction when rank == n0-1
  int free_col = -1;           // kept-frame index of the ray's free coordinate
  double det = 0.0;            // det(M)
};

ReducedSystem reduce_class1(const Matrix& a, double tol = 1e-9);

/// Fix(A) for a matrix with zero rows. Zero-row coordinates are forced to 0
/// and the reduced system M x = 0 is solved:
///  - M nonsingular: unique fixed point (0,...,0);
///  - corank 1: the Cramer ray, kept only when its direction is sign-feasible
///    (otherwise unique zero);
///  - corank >= 2: the elimination null basis intersected with the
///    non-positive orthant (no uniqueness claim in that regime).
FixedPointSet fixed_points_class1(const Matrix& a, double tol = 1e-9);

/// Fix(A) for a generalized permutation matrix, via cycle products:
/// cycles with product != 1 pin their coordinates to 0; each unit cycle
/// contributes one generator solved around the cycle.
FixedPointSet fixed_points_class2(const Matrix& a, double tol_unit = 1e-9);

/// Dispatches on the operator class. Throws Error{not_classified} for
/// Neither matrices.
FixedPointSet fixed_points(const Matrix& a, double tol = 1e-9);

/// distance_inf(apply(a, x), x) <= tol, with -inf coordinates required to
/// match exactly.
bool is_fixed_point(const Matrix& a, const IdempotentMeasure& x, double tol);

/// Independent closed form for n = 3 with exactly one zero row:
///   {(c a, a, 0)}    if det(minor - I) = 0 and a11 < 1, c = a12/(1 - a11)
///   {(a, b, 0)}      if a12 = a21 = 0 and a11 = a22 = 1
///   {(0, 0, 0)}      otherwise
/// stated in the frame where the zero row is last; arbitrary zero-row
/// positions are handled by relabeling. Throws Error{not_applicable}.
FixedPointSet fixed_points_n3_oracle(const Matrix& a, double tol = 1e-9);

/// x = -sum_p alphas[p] * g^(p), forced coordinates set to 0, validated.
/// Throws Error{length_mismatch | anchor_violation}.
IdempotentMeasure sample_fixed_point(const FixedPointSet& s, std::span<const double> alphas);

/// Max-norm distance from a finite vector to the described set (projection
/// onto the cone, honoring the anchor constraint). +inf if x has a -inf
/// coordinate. Test and report helper.
double distance_to_set(const FixedPointSet& s, std::span<const ExtendedReal> x);

/// Same kind, anchor flag, forced coordinates, and the same generators up
/// to ordering, componentwise within tol (generators are normalized, so
/// scaling is already factored out).
bool fixed_point_sets_match(const FixedPointSet& a, const FixedPointSet& b, double tol);

}  // namespace idemdyn
