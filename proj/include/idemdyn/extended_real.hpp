#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace idemdyn {

/// A value in R ∪ {-inf}. The -inf state is a tag, not IEEE -infinity,
/// so that scaling by zero can be defined as exactly zero.
class ExtendedReal {
 public:
  constexpr ExtendedReal() : value_(0.0), neg_inf_(false) {}
  constexpr ExtendedReal(double v) : value_(v), neg_inf_(false) {}  // NOLINT: implicit by design

  static constexpr ExtendedReal neg_inf() {
    ExtendedReal x;
    x.neg_inf_ = true;
    return x;
  }

  constexpr bool is_neg_inf() const { return neg_inf_; }
  constexpr bool is_finite() const { return !neg_inf_; }

  /// Finite value; only meaningful when is_finite().
  constexpr double value() const { return value_; }
  constexpr double value_or(double fallback) const { return neg_inf_ ? fallback : value_; }

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.neg_inf_ || b.neg_inf_) return a.neg_inf_ == b.neg_inf_;
    return a.value_ == b.value_;
  }

  // Total order with -inf below every finite value.
  friend constexpr std::partial_ordering operator<=>(ExtendedReal a, ExtendedReal b) {
    if (a.neg_inf_ && b.neg_inf_) return std::partial_ordering::equivalent;
    if (a.neg_inf_) return std::partial_ordering::less;
    if (b.neg_inf_) return std::partial_ordering::greater;
    return a.value_ <=> b.value_;
  }

 private:
  double value_;
  bool neg_inf_;
};

/// c * x for a finite scalar c >= 0. Conventions:
///   c > 0, x = -inf  ->  -inf
///   c = 0, any x     ->  0        (a zero coefficient contributes nothing)
/// Throws for c < 0 with x = -inf (the result would leave R ∪ {-inf});
/// that combination never arises for classified operators.
ExtendedReal scale(double c, ExtendedReal x);

/// Shortest decimal that round-trips, or the literal "-inf".
std::string to_token(ExtendedReal x);

/// Parses a decimal number or "-inf". Rejects NaN, +/-infinity, garbage.
std::optional<ExtendedReal> parse_token(std::string_view token);

/// Shortest round-trip decimal for a finite double.
std::string format_double(double v);

}  // namespace idemdyn
