#include "doctest.h"

#include <cmath>
#include <functional>

#include "idemdyn/core.hpp"
#include "idemdyn/random.hpp"
#include "helpers.hpp"

using namespace idemdyn;
using idemdyn::testing::from_rows;
using idemdyn::testing::measure;
using idemdyn::testing::ninf;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("extended real ordering and scaling conventions") {
  CHECK(ExtendedReal::neg_inf() < ExtendedReal(-1e300));
  CHECK(ExtendedReal(-2.0) < ExtendedReal(0.0));
  CHECK(ExtendedReal::neg_inf() == ExtendedReal::neg_inf());

  CHECK(scale(2.0, ninf()).is_neg_inf());
  CHECK(scale(0.0, ninf()) == ExtendedReal(0.0));
  CHECK(scale(0.0, ExtendedReal(-5.0)) == ExtendedReal(0.0));
  CHECK(scale(0.5, ExtendedReal(-3.0)) == ExtendedReal(-1.5));
  CHECK_THROWS_AS(scale(-1.0, ninf()), Error);
}

TEST_CASE("make_measure validates the simplex") {
  CHECK_NOTHROW(measure({0, -1, -2}));
  CHECK_NOTHROW(measure({0, 0, 0}));
  CHECK(code_of([] { measure({-1, -2}); }) == ErrorCode::max_not_zero);
  CHECK_NOTHROW(make_measure({ninf(), ExtendedReal(0.0)}));
  CHECK(code_of([] { make_measure({ExtendedReal(0.0)}); }) == ErrorCode::too_short);
  CHECK(code_of([] { measure({0.5, 0}); }) == ErrorCode::positive_coordinate);
  CHECK(code_of([] { make_measure({ninf(), ninf()}); }) == ErrorCode::max_not_zero);

  // tolerant path for computed vectors: snaps near-zero coordinates
  const IdempotentMeasure snapped = make_measure({ExtendedReal(1e-13), ExtendedReal(-2.0)}, 1e-12);
  CHECK(snapped[0] == ExtendedReal(0.0));
  CHECK(snapped[1] == ExtendedReal(-2.0));
  const IdempotentMeasure snapped2 =
      make_measure({ExtendedReal(-1e-13), ExtendedReal(-2.0)}, 1e-12);
  CHECK(snapped2[0] == ExtendedReal(0.0));
  CHECK(code_of([] { make_measure({ExtendedReal(1e-3), ExtendedReal(0.0)}, 1e-12); }) ==
        ErrorCode::positive_coordinate);
}

TEST_CASE("apply follows the -inf conventions") {
  const Matrix a = from_rows({{0.5, 0.3}, {0, 0}});
  const auto y = apply(a, measure({0, -1}));
  CHECK(y[0] == ExtendedReal(-0.3));
  CHECK(y[1] == ExtendedReal(0.0));

  // zero coefficient kills the -inf, positive coefficient carries it
  const Matrix b = from_rows({{0, 0}, {2, 0}});
  const auto z = apply(b, make_measure({ninf(), ExtendedReal(0.0)}));
  CHECK(z[0] == ExtendedReal(0.0));
  CHECK(z[1].is_neg_inf());

  const Matrix id = Matrix::identity(3);
  const auto x = make_measure({ninf(), ExtendedReal(-1.0), ExtendedReal(0.0)});
  const auto w = apply(id, x);
  CHECK(w[0].is_neg_inf());
  CHECK(w[1] == ExtendedReal(-1.0));
  CHECK(w[2] == ExtendedReal(0.0));

  CHECK(code_of([&] { apply(a, measure({0, -1, -2})); }) == ErrorCode::dimension_mismatch);
}

TEST_CASE("distance_inf") {
  const std::vector<ExtendedReal> p{ExtendedReal(0.0), ExtendedReal(-1.0)};
  const std::vector<ExtendedReal> q{ExtendedReal(0.0), ExtendedReal(-1.5)};
  CHECK(distance_inf(p, p) == 0.0);
  CHECK(distance_inf(p, q) == doctest::Approx(0.5));

  const std::vector<ExtendedReal> u{ExtendedReal(0.0), ninf()};
  CHECK(distance_inf(u, u) == 0.0);
  CHECK(std::isinf(distance_inf(p, u)));
  CHECK_THROWS_AS(distance_inf(p, std::vector<ExtendedReal>{ExtendedReal(0.0)}), Error);
}

TEST_CASE("classified operators map I_n into I_n") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const Matrix a = (trial % 2 == 0) ? random_class1(rng, n) : random_class2(rng, n);
    const IdempotentMeasure x = random_measure(rng, n, 0.15);
    CHECK_NOTHROW(make_measure(apply(a, x), 1e-12));
  }
}

TEST_CASE("apply is homogeneous on finite vectors") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(6));
    std::vector<double> entries(static_cast<size_t>(n) * n);
    for (auto& e : entries) e = rng.uniform(-2.0, 2.0);
    const Matrix a(n, entries);
    std::vector<ExtendedReal> x(static_cast<size_t>(n));
    for (auto& v : x) v = ExtendedReal(rng.uniform(-3.0, 3.0));
    const double t = rng.uniform(0.0, 4.0);
    std::vector<ExtendedReal> tx(x);
    for (auto& v : tx) v = ExtendedReal(t * v.value());
    const auto lhs = apply(a, tx);
    const auto rhs = apply(a, x);
    for (int i = 0; i < n; ++i) {
      const double want = t * rhs[static_cast<size_t>(i)].value();
      CHECK(std::abs(lhs[static_cast<size_t>(i)].value() - want) <=
            1e-12 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST_CASE("distance_inf is a metric on finite vectors") {
  SplitMix64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    auto draw = [&] {
      std::vector<ExtendedReal> v(static_cast<size_t>(n));
      for (auto& c : v) c = ExtendedReal(rng.uniform(-5.0, 5.0));
      return v;
    };
    const auto x = draw();
    const auto y = draw();
    const auto z = draw();
    const double dxy = distance_inf(x, y);
    CHECK(dxy == distance_inf(y, x));
    CHECK(distance_inf(x, x) == 0.0);
    CHECK(dxy <= distance_inf(x, z) + distance_inf(z, y) + 1e-15);
  }
}
