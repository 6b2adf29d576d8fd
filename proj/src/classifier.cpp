#include "idemdyn/classifier.hpp"

#include <algorithm>
#include <limits>

namespace idemdyn {

bool violates_simplex(std::span<const ExtendedReal> y, double tol) {
  double max_coord = -std::numeric_limits<double>::infinity();
  bool all_inf = true;
  for (const ExtendedReal& v : y) {
    if (v.is_neg_inf()) continue;
    all_inf = false;
    if (v.value() > tol) return true;
    max_coord = std::max(max_coord, v.value());
  }
  if (all_inf) return true;
  return !(max_coord >= -tol);
}

namespace {

// x with 0 at the columns selected by `zero_mask` (bit j) and -1 elsewhere.
IdempotentMeasure pattern_measure(int n, unsigned zero_mask) {
  std::vector<ExtendedReal> x(static_cast<size_t>(n), ExtendedReal(-1.0));
  for (int j = 0; j < n; ++j) {
    if (zero_mask & (1u << j)) x[static_cast<size_t>(j)] = ExtendedReal(0.0);
  }
  return make_measure(std::move(x));
}

IdempotentMeasure single_zero_at(int n, int j0) {
  return pattern_measure(n, 1u << j0);
}

// Exhaustive search over {0,-1}^n sign patterns with at least one zero.
// Theorem 1 guarantees a violating input exists for a Neither matrix.
IdempotentMeasure exhaustive_witness(const Matrix& a) {
  const int n = a.size();
  if (n > 20) {
    throw Error(ErrorCode::not_applicable,
                "witness fallback search is limited to n <= 20");
  }
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    IdempotentMeasure x = pattern_measure(n, mask);
    if (violates_simplex(apply(a, x))) return x;
  }
  throw Error(ErrorCode::not_applicable, "no violating input found (matrix preserves I_n?)");
}

// Proof-case construction, verified by evaluation.
IdempotentMeasure build_witness(const Matrix& a, NeitherReason reason, int /*i*/, int j) {
  const int n = a.size();
  switch (reason) {
    case NeitherReason::negative_entry: {
      // a(i,j) < 0: x_j = -1, rest 0 makes coordinate i of the image positive.
      std::vector<ExtendedReal> x(static_cast<size_t>(n), ExtendedReal(0.0));
      x[static_cast<size_t>(j)] = ExtendedReal(-1.0);
      IdempotentMeasure w = make_measure(std::move(x));
      if (violates_simplex(apply(a, w))) return w;
      return exhaustive_witness(a);
    }
    case NeitherReason::zero_column_no_zero_row: {
      // column j contributes nothing: x_j = 0, rest -1 gives max < 0.
      IdempotentMeasure w = single_zero_at(n, j);
      if (violates_simplex(apply(a, w))) return w;
      return exhaustive_witness(a);
    }
    case NeitherReason::multi_nonzero_row: {
      // Pick the smallest column j0 not referenced by any single-nonzero row;
      // x_{j0} = 0, rest -1 keeps every image coordinate strictly negative.
      std::vector<bool> referenced(static_cast<size_t>(n), false);
      for (int r = 0; r < n; ++r) {
        int nonzero = 0;
        int col = -1;
        for (int c = 0; c < n; ++c) {
          if (a.at(r, c) != 0.0) {
            ++nonzero;
            col = c;
          }
        }
        if (nonzero == 1) referenced[static_cast<size_t>(col)] = true;
      }
      for (int j0 = 0; j0 < n; ++j0) {
        if (referenced[static_cast<size_t>(j0)]) continue;
        IdempotentMeasure w = single_zero_at(n, j0);
        if (violates_simplex(apply(a, w))) return w;
      }
      return exhaustive_witness(a);
    }
  }
  return exhaustive_witness(a);
}

}  // namespace

OperatorClass classify(const Matrix& a) {
  const int n = a.size();

  // Negative entries first; report the lexicographically smallest.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a.at(i, j) < 0.0) {
        return Neither{NeitherReason::negative_entry, i, j,
                       build_witness(a, NeitherReason::negative_entry, i, j)};
      }
    }
  }

  std::vector<int> zero_rows;
  std::vector<int> row_nonzeros(static_cast<size_t>(n), 0);
  std::vector<int> col_nonzeros(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a.at(i, j) != 0.0) {
        ++row_nonzeros[static_cast<size_t>(i)];
        ++col_nonzeros[static_cast<size_t>(j)];
      }
    }
    if (row_nonzeros[static_cast<size_t>(i)] == 0) zero_rows.push_back(i);
  }

  if (!zero_rows.empty()) return ClassI{std::move(zero_rows)};

  const bool one_per_row =
      std::all_of(row_nonzeros.begin(), row_nonzeros.end(), [](int k) { return k == 1; });
  const bool one_per_col =
      std::all_of(col_nonzeros.begin(), col_nonzeros.end(), [](int k) { return k == 1; });
  if (one_per_row && one_per_col) {
    std::vector<int> images(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (a.at(i, j) != 0.0) images[static_cast<size_t>(i)] = j;
      }
    }
    return ClassII{Permutation(std::move(images))};
  }

  if (!one_per_row) {
    int row = -1;
    for (int i = 0; i < n && row < 0; ++i) {
      if (row_nonzeros[static_cast<size_t>(i)] >= 2) row = i;
    }
    return Neither{NeitherReason::multi_nonzero_row, row, -1,
                   build_witness(a, NeitherReason::multi_nonzero_row, row, -1)};
  }

  // Every row has exactly one nonzero but the columns are not a bijection,
  // so some column is identically zero.
  int zero_col = -1;
  for (int j = 0; j < n && zero_col < 0; ++j) {
    if (col_nonzeros[static_cast<size_t>(j)] == 0) zero_col = j;
  }
  return Neither{NeitherReason::zero_column_no_zero_row, -1, zero_col,
                 build_witness(a, NeitherReason::zero_column_no_zero_row, -1, zero_col)};
}

IdempotentMeasure witness_violation(const Matrix& a) {
  OperatorClass c = classify(a);
  if (const auto* neither = std::get_if<Neither>(&c)) return neither->witness;
  throw Error(ErrorCode::not_applicable, "matrix preserves I_n; no violating input exists");
}

bool is_class1(const OperatorClass& c) { return std::holds_alternative<ClassI>(c); }
bool is_class2(const OperatorClass& c) { return std::holds_alternative<ClassII>(c); }
bool is_neither(const OperatorClass& c) { return std::holds_alternative<Neither>(c); }

std::string class_name(const OperatorClass& c) {
  if (is_class1(c)) return "class1";
  if (is_class2(c)) return "class2";
  return "neither";
}

std::string neither_reason_name(NeitherReason r) {
  switch (r) {
    case NeitherReason::negative_entry:
      return "negative_entry";
    case NeitherReason::multi_nonzero_row:
      return "multi_nonzero_row";
    case NeitherReason::zero_column_no_zero_row:
      return "zero_column_no_zero_row";
  }
  return "?";
}

}  // namespace idemdyn
