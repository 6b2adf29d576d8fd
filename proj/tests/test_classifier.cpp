#include "doctest.h"

#include "idemdyn/classifier.hpp"
#include "idemdyn/random.hpp"
#include "helpers.hpp"

using namespace idemdyn;
using idemdyn::testing::five_cycle_matrix;
using idemdyn::testing::from_rows;

TEST_CASE("classify recognizes the three classes") {
  const OperatorClass c2 = classify(five_cycle_matrix(2, 2, 2, 2, 2));
  REQUIRE(is_class2(c2));
  CHECK(std::get<ClassII>(c2).permutation.images() == std::vector<int>{1, 0, 4, 3, 2});

  const OperatorClass c1 = classify(from_rows({{0.5, 0.3}, {0, 0}}));
  REQUIRE(is_class1(c1));
  CHECK(std::get<ClassI>(c1).zero_rows == std::vector<int>{1});

  const OperatorClass id = classify(Matrix::identity(4));
  REQUIRE(is_class2(id));
  CHECK(std::get<ClassII>(id).permutation == Permutation::identity(4));

  const OperatorClass multi = classify(from_rows({{1, 1}, {1, 1}}));
  REQUIRE(is_neither(multi));
  CHECK(std::get<Neither>(multi).reason == NeitherReason::multi_nonzero_row);

  const OperatorClass neg = classify(from_rows({{-1, 0}, {0, 1}}));
  REQUIRE(is_neither(neg));
  CHECK(std::get<Neither>(neg).reason == NeitherReason::negative_entry);
  CHECK(std::get<Neither>(neg).i == 0);
  CHECK(std::get<Neither>(neg).j == 0);

  const OperatorClass zc = classify(from_rows({{2, 0}, {3, 0}}));
  REQUIRE(is_neither(zc));
  CHECK(std::get<Neither>(zc).reason == NeitherReason::zero_column_no_zero_row);
  CHECK(std::get<Neither>(zc).j == 1);
}

TEST_CASE("negative entries are reported lexicographically first") {
  const OperatorClass c = classify(from_rows({{0, -1}, {-2, 0}}));
  REQUIRE(is_neither(c));
  CHECK(std::get<Neither>(c).i == 0);
  CHECK(std::get<Neither>(c).j == 1);
}

TEST_CASE("witness constructions follow the proof cases") {
  using idemdyn::testing::measure;

  // multi-nonzero row, no zero row: zero goes to the smallest free column
  const Matrix multi = from_rows({{1, 1}, {1, 1}});
  const IdempotentMeasure w1 = witness_violation(multi);
  CHECK(w1 == measure({0, -1}));
  const auto y1 = apply(multi, w1);
  CHECK(y1[0] == ExtendedReal(-1.0));
  CHECK(y1[1] == ExtendedReal(-1.0));
  CHECK(violates_simplex(y1));

  // negative entry: mass on the offending column makes the image positive
  const Matrix neg = from_rows({{-1, 0}, {0, 1}});
  const IdempotentMeasure w2 = witness_violation(neg);
  CHECK(w2 == measure({-1, 0}));
  CHECK(apply(neg, w2)[0] == ExtendedReal(1.0));
  CHECK(violates_simplex(apply(neg, w2)));

  // zero column without a zero row
  const Matrix zc = from_rows({{2, 0}, {3, 0}});
  const IdempotentMeasure w3 = witness_violation(zc);
  CHECK(w3 == measure({-1, 0}));
  const auto y3 = apply(zc, w3);
  CHECK(y3[0] == ExtendedReal(-2.0));
  CHECK(y3[1] == ExtendedReal(-3.0));
  CHECK(violates_simplex(y3));

  CHECK_THROWS_AS(witness_violation(Matrix::identity(3)), Error);
}

TEST_CASE("soundness: classified matrices keep random points inside I_n") {
  SplitMix64 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const Matrix a = (trial % 2 == 0) ? random_class1(rng, n) : random_class2(rng, n);
    for (int k = 0; k < 10; ++k) {
      const auto y = apply(a, random_measure(rng, n, 0.1));
      CHECK_FALSE(violates_simplex(y, 1e-12));
    }
  }
}

TEST_CASE("completeness: Neither matrices come with a certified violation") {
  SplitMix64 rng(22);
  const NeitherReason reasons[] = {NeitherReason::negative_entry,
                                   NeitherReason::multi_nonzero_row,
                                   NeitherReason::zero_column_no_zero_row};
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    const Matrix a = random_neither(rng, n, reasons[trial % 3]);
    const OperatorClass c = classify(a);
    REQUIRE(is_neither(c));
    const auto& neither = std::get<Neither>(c);
    CHECK(violates_simplex(apply(a, neither.witness)));
  }
}

TEST_CASE("random generators classify back to their class") {
  SplitMix64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));
    CHECK(is_class1(classify(random_class1(rng, n))));
    CHECK(is_class1(classify(random_class1_acyclic(rng, n))));
    CHECK(is_class2(classify(random_class2(rng, n))));
  }
}
