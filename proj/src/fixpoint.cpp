#include "idemdyn/fixpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idemdyn/classifier.hpp"
#include "idemdyn/permutation.hpp"

namespace idemdyn {

namespace {

// --- small dense kernels (row-major, n x n or n x m scratch) ---------------

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double determinant(std::vector<double> m, int n) {
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(m[static_cast<size_t>(r) * n + col]) >
          std::abs(m[static_cast<size_t>(piv) * n + col])) {
        piv = r;
      }
    }
    const double p = m[static_cast<size_t>(piv) * n + col];
    if (p == 0.0) return 0.0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(m[static_cast<size_t>(piv) * n + c], m[static_cast<size_t>(col) * n + c]);
      }
      det = -det;
    }
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      const double f = m[static_cast<size_t>(r) * n + col] / p;
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) {
        m[static_cast<size_t>(r) * n + c] -= f * m[static_cast<size_t>(col) * n + c];
      }
    }
  }
  return det;
}

struct Echelon {
  std::vector<double> r;       // reduced row-echelon form
  std::vector<int> pivot_col;  // per pivot row
  std::vector<int> free_cols;  // ascending
  int rank = 0;
};

// Gauss-Jordan with partial row pivoting, columns scanned left to right.
// A column with no usable pivot (all remaining entries <= threshold) is free.
Echelon reduced_echelon(std::vector<double> m, int n, double threshold) {
  Echelon e;
  e.r = std::move(m);
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = row;
    for (int r2 = row + 1; r2 < n; ++r2) {
      if (std::abs(e.r[static_cast<size_t>(r2) * n + col]) >
          std::abs(e.r[static_cast<size_t>(piv) * n + col])) {
        piv = r2;
      }
    }
    if (std::abs(e.r[static_cast<size_t>(piv) * n + col]) <= threshold) {
      e.free_cols.push_back(col);
      continue;
    }
    if (piv != row) {
      for (int c = 0; c < n; ++c) {
        std::swap(e.r[static_cast<size_t>(piv) * n + c], e.r[static_cast<size_t>(row) * n + c]);
      }
    }
    const double p = e.r[static_cast<size_t>(row) * n + col];
    for (int c = 0; c < n; ++c) e.r[static_cast<size_t>(row) * n + c] /= p;
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == row) continue;
      const double f = e.r[static_cast<size_t>(r2) * n + col];
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        e.r[static_cast<size_t>(r2) * n + c] -= f * e.r[static_cast<size_t>(row) * n + c];
      }
    }
    e.pivot_col.push_back(col);
    ++row;
  }
  for (int col = static_cast<int>(e.pivot_col.size()) + static_cast<int>(e.free_cols.size());
       col < n; ++col) {
    e.free_cols.push_back(col);
  }
  e.rank = static_cast<int>(e.pivot_col.size());
  return e;
}

// Null-space vector for one free column: v[f] = 1, other free columns 0,
// pivot columns from the reduced rows.
std::vector<double> null_vector(const Echelon& e, int n, int f) {
  std::vector<double> v(static_cast<size_t>(n), 0.0);
  v[static_cast<size_t>(f)] = 1.0;
  for (int r = 0; r < e.rank; ++r) {
    v[static_cast<size_t>(e.pivot_col[static_cast<size_t>(r)])] =
        -e.r[static_cast<size_t>(r) * n + f];
  }
  return v;
}

void snap_small(std::vector<double>& v, double threshold) {
  for (double& x : v) {
    if (std::abs(x) <= threshold) x = 0.0;
  }
}

bool all_non_negative(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0; });
}

std::vector<double> embed_normalized(const std::vector<double>& kept_frame,
                                     const std::vector<int>& kept, int n) {
  const double m = max_abs(kept_frame);
  std::vector<double> g(static_cast<size_t>(n), 0.0);
  for (size_t k = 0; k < kept.size(); ++k) {
    g[static_cast<size_t>(kept[k])] = kept_frame[k] / m;
  }
  return g;
}

std::vector<int> class1_zero_rows(const Matrix& a) {
  OperatorClass c = classify(a);
  const auto* c1 = std::get_if<ClassI>(&c);
  if (c1 == nullptr) {
    throw Error(ErrorCode::not_class1, "matrix has no zero row (not class1)");
  }
  return c1->zero_rows;
}

}  // namespace

ReducedSystem reduce_class1(const Matrix& a, double tol) {
  const std::vector<int> zero_rows = class1_zero_rows(a);
  const int n = a.size();
  ReducedSystem sys;
  std::vector<bool> is_zero(static_cast<size_t>(n), false);
  for (int z : zero_rows) is_zero[static_cast<size_t>(z)] = true;
  for (int i = 0; i < n; ++i) {
    if (!is_zero[static_cast<size_t>(i)]) sys.kept.push_back(i);
  }
  sys.n0 = static_cast<int>(sys.kept.size());
  sys.m.assign(static_cast<size_t>(sys.n0) * sys.n0, 0.0);
  for (int i = 0; i < sys.n0; ++i) {
    for (int j = 0; j < sys.n0; ++j) {
      sys.m[static_cast<size_t>(i) * sys.n0 + j] = a.at(sys.kept[i], sys.kept[j]) - (i == j ? 1.0 : 0.0);
    }
  }
  if (sys.n0 == 0) return sys;

  const double scale = std::max(max_abs(sys.m), 1e-300);
  const Echelon ech = reduced_echelon(sys.m, sys.n0, tol * scale);
  sys.rank = ech.rank;
  sys.det = determinant(sys.m, sys.n0);
  if (sys.rank == sys.n0 - 1) {
    sys.free_col = ech.free_cols.front();
    sys.ray = null_vector(ech, sys.n0, sys.free_col);
    snap_small(sys.ray, tol * std::max(max_abs(sys.ray), 1.0));
  }
  return sys;
}

FixedPointSet fixed_points_class1(const Matrix& a, double tol) {
  ReducedSystem sys = reduce_class1(a, tol);
  const int n = a.size();

  FixedPointSet fix;
  fix.n = n;
  fix.requires_zero_anchor = false;
  std::vector<bool> kept_mark(static_cast<size_t>(n), false);
  for (int k : sys.kept) kept_mark[static_cast<size_t>(k)] = true;
  for (int i = 0; i < n; ++i) {
    if (!kept_mark[static_cast<size_t>(i)]) fix.forced_zero_coords.push_back(i);
  }

  if (sys.n0 == 0 || sys.rank == sys.n0) {
    fix.kind = FixKind::unique_zero;
    return fix;
  }

  if (sys.rank == sys.n0 - 1) {
    // One candidate ray. Sign-feasible (all components of the normalized
    // direction >= 0) iff no ratio det(A_{i n0}) / det(A_{n0-1}) is positive.
    if (all_non_negative(sys.ray)) {
      fix.generators.push_back(embed_normalized(sys.ray, sys.kept, n));
    }
  } else {
    const double scale = std::max(max_abs(sys.m), 1e-300);
    const Echelon ech = reduced_echelon(sys.m, sys.n0, tol * scale);
    for (int f : ech.free_cols) {
      std::vector<double> v = null_vector(ech, sys.n0, f);
      snap_small(v, tol * std::max(max_abs(v), 1.0));
      if (all_non_negative(v)) {
        fix.generators.push_back(embed_normalized(v, sys.kept, n));
      }
    }
  }

  fix.kind = fix.generators.empty() ? FixKind::unique_zero : FixKind::cone;
  return fix;
}

FixedPointSet fixed_points_class2(const Matrix& a, double tol_unit) {
  OperatorClass c = classify(a);
  const auto* c2 = std::get_if<ClassII>(&c);
  if (c2 == nullptr) {
    throw Error(ErrorCode::not_class2, "matrix is not a generalized permutation matrix");
  }
  const CycleDecomposition dec = cycle_decomposition(c2->permutation);
  const int n = a.size();

  FixedPointSet fix;
  fix.n = n;
  int unit_cycles = 0;
  for (const auto& cycle : dec.cycles) {
    const double q = cycle_product(a, cycle);
    if (std::abs(q - 1.0) > tol_unit) {
      fix.forced_zero_coords.insert(fix.forced_zero_coords.end(), cycle.begin(), cycle.end());
      continue;
    }
    ++unit_cycles;
    // x_{c_s} = a(c_s, c_{s+1}) x_{c_{s+1}} solved around the cycle, anchored
    // at the smallest index: g[c_s] = prod_{j=s..k-1} a(c_j, c_{j+1 mod k}).
    const size_t k = cycle.size();
    std::vector<double> g(static_cast<size_t>(n), 0.0);
    double suffix = 1.0;
    for (size_t s = k; s-- > 0;) {
      if (s == 0) {
        g[static_cast<size_t>(cycle[0])] = 1.0;  // suffix * 1 would be Q ~ 1
      } else {
        suffix *= a.at(cycle[s], cycle[(s + 1) % k]);
        g[static_cast<size_t>(cycle[s])] = suffix;
      }
    }
    const double m = max_abs(g);
    for (double& x : g) x /= m;
    fix.generators.push_back(std::move(g));
  }
  std::sort(fix.forced_zero_coords.begin(), fix.forced_zero_coords.end());
  fix.requires_zero_anchor = unit_cycles == dec.count() && unit_cycles > 0;
  fix.kind = fix.generators.empty() ? FixKind::unique_zero : FixKind::cone;
  return fix;
}

FixedPointSet fixed_points(const Matrix& a, double tol) {
  OperatorClass c = classify(a);
  if (is_class1(c)) return fixed_points_class1(a, tol);
  if (is_class2(c)) return fixed_points_class2(a, tol);
  throw Error(ErrorCode::not_classified, "matrix does not preserve I_n");
}

bool is_fixed_point(const Matrix& a, const IdempotentMeasure& x, double tol) {
  if (a.size() != x.size()) {
    throw Error(ErrorCode::dimension_mismatch, "is_fixed_point: dimension mismatch");
  }
  const std::vector<ExtendedReal> y = apply(a, x);
  return distance_inf(y, x.coords()) <= tol;
}

FixedPointSet fixed_points_n3_oracle(const Matrix& a, double tol) {
  if (a.size() != 3) {
    throw Error(ErrorCode::not_applicable, "oracle needs n = 3");
  }
  OperatorClass c = classify(a);
  const auto* c1 = std::get_if<ClassI>(&c);
  if (c1 == nullptr || c1->zero_rows.size() != 1) {
    throw Error(ErrorCode::not_applicable, "oracle needs exactly one zero row");
  }
  const int z = c1->zero_rows.front();
  std::vector<int> kept;
  for (int i = 0; i < 3; ++i) {
    if (i != z) kept.push_back(i);
  }
  const double a11 = a.at(kept[0], kept[0]);
  const double a12 = a.at(kept[0], kept[1]);
  const double a21 = a.at(kept[1], kept[0]);
  const double a22 = a.at(kept[1], kept[1]);

  FixedPointSet fix;
  fix.n = 3;
  fix.forced_zero_coords = {z};

  const double det = (a11 - 1.0) * (a22 - 1.0) - a12 * a21;
  const double scale =
      std::max({std::abs(a11 - 1.0), std::abs(a22 - 1.0), std::abs(a12), std::abs(a21), 1e-300});

  if (a12 == 0.0 && a21 == 0.0 && a11 == 1.0 && a22 == 1.0) {
    fix.kind = FixKind::cone;
    std::vector<double> g1(3, 0.0);
    std::vector<double> g2(3, 0.0);
    g1[static_cast<size_t>(kept[0])] = 1.0;
    g2[static_cast<size_t>(kept[1])] = 1.0;
    fix.generators = {g1, g2};
    return fix;
  }
  if (std::abs(det) <= tol * scale * scale && a11 < 1.0) {
    const double ray_slope = a12 / (1.0 - a11);
    fix.kind = FixKind::cone;
    fix.generators.push_back(embed_normalized({ray_slope, 1.0}, kept, 3));
    return fix;
  }
  fix.kind = FixKind::unique_zero;
  return fix;
}

IdempotentMeasure sample_fixed_point(const FixedPointSet& s, std::span<const double> alphas) {
  if (alphas.size() != s.generators.size()) {
    throw Error(ErrorCode::length_mismatch,
                "expected " + std::to_string(s.generators.size()) + " weights, got " +
                    std::to_string(alphas.size()));
  }
  for (double alpha : alphas) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
      throw Error(ErrorCode::invalid_argument, "weights must be finite and non-negative");
    }
  }
  if (s.requires_zero_anchor && !s.generators.empty()) {
    const bool has_zero = std::any_of(alphas.begin(), alphas.end(), [](double v) { return v == 0.0; });
    if (!has_zero) {
      throw Error(ErrorCode::anchor_violation, "at least one weight must be 0 for this set");
    }
  }
  const size_t n = static_cast<size_t>(s.n);
  std::vector<ExtendedReal> x(n, ExtendedReal(0.0));
  for (size_t p = 0; p < s.generators.size(); ++p) {
    for (size_t i = 0; i < n; ++i) {
      x[i] = ExtendedReal(x[i].value() - alphas[p] * s.generators[p][i]);
    }
  }
  for (int i : s.forced_zero_coords) x[static_cast<size_t>(i)] = ExtendedReal(0.0);
  return make_measure(std::move(x));
}

bool fixed_point_sets_match(const FixedPointSet& a, const FixedPointSet& b, double tol) {
  if (a.n != b.n || a.kind != b.kind || a.requires_zero_anchor != b.requires_zero_anchor) {
    return false;
  }
  if (a.forced_zero_coords != b.forced_zero_coords) return false;
  if (a.generators.size() != b.generators.size()) return false;
  auto sorted = [](std::vector<std::vector<double>> gens) {
    std::sort(gens.begin(), gens.end());
    return gens;
  };
  const auto ga = sorted(a.generators);
  const auto gb = sorted(b.generators);
  for (size_t p = 0; p < ga.size(); ++p) {
    for (size_t i = 0; i < ga[p].size(); ++i) {
      if (std::abs(ga[p][i] - gb[p][i]) > tol) return false;
    }
  }
  return true;
}

double distance_to_set(const FixedPointSet& s, std::span<const ExtendedReal> x) {
  for (const ExtendedReal& v : x) {
    if (v.is_neg_inf()) return std::numeric_limits<double>::infinity();
  }
  const size_t n = x.size();
  std::vector<double> target(n);
  for (size_t i = 0; i < n; ++i) target[i] = x[i].value();

  // Distance to the origin covers the unique-zero case and is the starting
  // residual for the cone projection.
  auto project = [&](const std::vector<int>& pinned) {
    const size_t g = s.generators.size();
    std::vector<double> alpha(g, 0.0);
    std::vector<double> r = target;  // r = x + G alpha
    std::vector<double> gg(g, 0.0);
    for (size_t p = 0; p < g; ++p) {
      for (size_t i = 0; i < n; ++i) gg[p] += s.generators[p][i] * s.generators[p][i];
    }
    for (int sweep = 0; sweep < 1000; ++sweep) {
      double change = 0.0;
      for (size_t p = 0; p < g; ++p) {
        if (std::find(pinned.begin(), pinned.end(), static_cast<int>(p)) != pinned.end()) continue;
        if (gg[p] == 0.0) continue;
        double dot = 0.0;
        for (size_t i = 0; i < n; ++i) dot += s.generators[p][i] * r[i];
        const double next = std::max(0.0, alpha[p] - dot / gg[p]);
        const double delta = next - alpha[p];
        if (delta != 0.0) {
          for (size_t i = 0; i < n; ++i) r[i] += delta * s.generators[p][i];
          alpha[p] = next;
          change = std::max(change, std::abs(delta));
        }
      }
      if (change < 1e-15) break;
    }
    double d = 0.0;
    for (size_t i = 0; i < n; ++i) d = std::max(d, std::abs(r[i]));
    return d;
  };

  if (s.generators.empty()) return project({});
  if (!s.requires_zero_anchor) return project({});
  double best = std::numeric_limits<double>::infinity();
  for (size_t p = 0; p < s.generators.size(); ++p) {
    best = std::min(best, project({static_cast<int>(p)}));
  }
  return best;
}

}  // namespace idemdyn
