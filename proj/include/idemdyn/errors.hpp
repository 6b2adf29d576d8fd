#pragma once

#include <stdexcept>
#include <string>

namespace idemdyn {

enum class ErrorCode {
  too_short,             // measure shorter than 2 coordinates
  positive_coordinate,   // measure has a coordinate > 0
  max_not_zero,          // no coordinate equal to 0
  dimension_mismatch,
  invalid_argument,
  not_class1,
  not_class2,
  not_classified,        // operator is Neither, analysis unavailable
  not_applicable,
  anchor_violation,      // zero-anchor constraint not satisfied
  length_mismatch,
  root_finding_failed,
  parse_error,
  io_error,
};

/// Library-wide exception. Carries a machine-readable code plus the
/// offending indices (0-based, -1 when unused).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, int i = -1, int j = -1)
      : std::runtime_error(std::move(message)), code_(code), i_(i), j_(j) {}

  ErrorCode code() const noexcept { return code_; }
  int index_i() const noexcept { return i_; }
  int index_j() const noexcept { return j_; }

 private:
  ErrorCode code_;
  int i_;
  int j_;
};

}  // namespace idemdyn
