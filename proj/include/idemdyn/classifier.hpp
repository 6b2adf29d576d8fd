#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "idemdyn/core.hpp"
#include "idemdyn/permutation.hpp"

namespace idemdyn {

/// Non-negative entries, at least one identically-zero row.
struct ClassI {
  std::vector<int> zero_rows;  // 0-based, ascending, non-empty
};

/// Non-negative entries, exactly one positive entry per row and per column.
struct ClassII {
  Permutation permutation;
};

enum class NeitherReason {
  negative_entry,
  multi_nonzero_row,
  zero_column_no_zero_row,
};

/// Operator does not preserve I_n; `witness` is an explicit x in I_n whose
/// image violates the simplex (some coordinate > 0, or max < 0).
struct Neither {
  NeitherReason reason;
  int i = -1;  // row of the negative entry / multi-nonzero row / -1
  int j = -1;  // column of the negative entry / zero column / -1
  IdempotentMeasure witness;
};

using OperatorClass = std::variant<ClassI, ClassII, Neither>;

/// Decides which class the matrix belongs to. Entry signs are tested
/// against exact 0 (inputs are user data, not computed).
OperatorClass classify(const Matrix& a);

/// For a Neither matrix: an x in I_n with apply(a, x) outside I_n,
/// built from the structural defect found by classify.
/// Throws Error{not_applicable} if the matrix is ClassI or ClassII.
IdempotentMeasure witness_violation(const Matrix& a);

bool is_class1(const OperatorClass& c);
bool is_class2(const OperatorClass& c);
bool is_neither(const OperatorClass& c);

/// "class1" | "class2" | "neither"
std::string class_name(const OperatorClass& c);
std::string neither_reason_name(NeitherReason r);

/// True when some coordinate of y is > tol or no coordinate is >= -tol;
/// certifies that y lies outside I_n.
bool violates_simplex(std::span<const ExtendedReal> y, double tol = 0.0);

}  // namespace idemdyn
