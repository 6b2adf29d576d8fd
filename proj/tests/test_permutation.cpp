#include "doctest.h"

#include <cmath>

#include "idemdyn/permutation.hpp"
#include "idemdyn/classifier.hpp"
#include "idemdyn/random.hpp"
#include "helpers.hpp"

using namespace idemdyn;
using idemdyn::testing::five_cycle_matrix;
using idemdyn::testing::from_rows;
using idemdyn::testing::permutation_matrix;
using idemdyn::testing::swap_matrix;

TEST_CASE("extract_permutation") {
  CHECK(extract_permutation(five_cycle_matrix(2, 2, 2, 2, 2)).images() ==
        std::vector<int>{1, 0, 4, 3, 2});
  CHECK(extract_permutation(Matrix::identity(3)) == Permutation::identity(3));
  CHECK(extract_permutation(swap_matrix(3, 4)).images() == std::vector<int>{1, 0});
  CHECK_THROWS_AS(extract_permutation(from_rows({{1, 1}, {1, 1}})), Error);
}

TEST_CASE("cycle decomposition canonical form") {
  const Permutation pi({1, 0, 4, 3, 2});
  const CycleDecomposition dec = cycle_decomposition(pi);
  REQUIRE(dec.count() == 3);
  CHECK(dec.cycles[0] == std::vector<int>{0, 1});
  CHECK(dec.cycles[1] == std::vector<int>{2, 4});
  CHECK(dec.cycles[2] == std::vector<int>{3});
  CHECK(cycle_notation(dec) == "(1 2)(3 5)(4)");

  CHECK(cycle_notation(cycle_decomposition(Permutation::identity(3))) == "(1)(2)(3)");
  CHECK(cycle_notation(cycle_decomposition(Permutation({1, 2, 0}))) == "(1 2 3)");
  CHECK(permutation_order(cycle_decomposition(Permutation({1, 0, 3, 4, 2}))) == 6);
}

TEST_CASE("compose_check against the explicit product") {
  const Matrix a_pi = swap_matrix(2, 3);
  const Matrix a_tau = swap_matrix(5, 7);
  const ComposeCheck check = compose_check(a_pi, a_tau);
  CHECK(check.law_holds);
  CHECK(check.product.at(0, 0) == doctest::Approx(14));
  CHECK(check.product.at(0, 1) == 0.0);
  CHECK(check.product.at(1, 0) == 0.0);
  CHECK(check.product.at(1, 1) == doctest::Approx(15));
  CHECK(check.permutation == Permutation::identity(2));

  const ComposeCheck with_id = compose_check(Matrix::identity(2), a_tau);
  CHECK(with_id.law_holds);
  CHECK(with_id.permutation.images() == std::vector<int>{1, 0});
}

TEST_CASE("group law on random pairs in S_6") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 6;
    std::vector<double> wa(n), wb(n);
    for (auto& v : wa) v = rng.uniform(0.01, 10.0);
    for (auto& v : wb) v = rng.uniform(0.01, 10.0);
    const Permutation pi = random_permutation(rng, n);
    const Permutation tau = random_permutation(rng, n);
    const Matrix a_pi = permutation_matrix(pi, wa);
    const Matrix a_tau = permutation_matrix(tau, wb);
    const ComposeCheck check = compose_check(a_pi, a_tau);
    CHECK(check.law_holds);
    CHECK(check.permutation == compose(tau, pi));
    CHECK(is_class2(classify(check.product)));
  }
}

TEST_CASE("matrix_power_class2 equals the closed forms") {
  // swap with weights: even powers are diagonal with (a12 a21)^s
  const Matrix a = swap_matrix(1.5, 0.4);
  for (int s = 1; s <= 6; ++s) {
    const Matrix p = matrix_power_class2(a, 2 * s);
    CHECK(p.at(0, 0) == doctest::Approx(std::pow(1.5 * 0.4, s)));
    CHECK(p.at(1, 1) == doctest::Approx(std::pow(0.4 * 1.5, s)));
    CHECK(p.at(0, 1) == 0.0);
    CHECK(p.at(1, 0) == 0.0);
    const Matrix q = matrix_power_class2(a, 2 * s + 1);
    CHECK(q.at(0, 1) == doctest::Approx(std::pow(1.5, s + 1) * std::pow(0.4, s)));
    CHECK(q.at(1, 0) == doctest::Approx(std::pow(1.5, s) * std::pow(0.4, s + 1)));
  }

  CHECK(matrix_power_class2(a, 1) == a);
  CHECK_THROWS_AS(matrix_power_class2(a, 0), Error);
  CHECK_THROWS_AS(matrix_power_class2(from_rows({{1, 1}, {1, 1}}), 2), Error);
}

TEST_CASE("matrix_power_class2 matches repeated multiplication") {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(4));
    const Matrix a = random_class2(rng, n);
    Matrix power = a;
    for (int m = 1; m <= 6; ++m) {
      const Matrix direct = matrix_power_class2(a, m);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          CHECK(std::abs(direct.at(i, j) - power.at(i, j)) <=
                1e-9 * std::max(1.0, std::abs(power.at(i, j))));
        }
      }
      power = power * a;
    }
  }
}

TEST_CASE("power at the permutation order has diagonal support") {
  SplitMix64 rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(5));
    const Matrix a = random_class2(rng, n);
    const long ord = permutation_order(cycle_decomposition(extract_permutation(a)));
    const Matrix p = matrix_power_class2(a, ord);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) {
          CHECK(p.at(i, j) > 0.0);
        } else {
          CHECK(p.at(i, j) == 0.0);
        }
      }
    }
  }
}
