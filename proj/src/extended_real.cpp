#include "idemdyn/extended_real.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "idemdyn/errors.hpp"

namespace idemdyn {

ExtendedReal scale(double c, ExtendedReal x) {
  if (c == 0.0) return ExtendedReal(0.0);
  if (x.is_neg_inf()) {
    if (c < 0.0) {
      throw Error(ErrorCode::invalid_argument,
                  "scaling -inf by a negative coefficient is undefined");
    }
    return ExtendedReal::neg_inf();
  }
  return ExtendedReal(c * x.value());
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_token(ExtendedReal x) {
  if (x.is_neg_inf()) return "-inf";
  return format_double(x.value());
}

std::optional<ExtendedReal> parse_token(std::string_view token) {
  if (token == "-inf") return ExtendedReal::neg_inf();
  if (token.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return ExtendedReal(v);
}

}  // namespace idemdyn
