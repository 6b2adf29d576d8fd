#include "doctest.h"

#include <cmath>

#include "idemdyn/fixpoint.hpp"
#include "idemdyn/classifier.hpp"
#include "idemdyn/random.hpp"
#include "helpers.hpp"

using namespace idemdyn;
using idemdyn::testing::five_cycle_matrix;
using idemdyn::testing::from_rows;
using idemdyn::testing::measure;

namespace {

std::vector<double> alphas(std::initializer_list<double> values) { return values; }

}  // namespace

TEST_CASE("class1 fixed points: the three reduced-system regimes") {
  // singular minor with a sign-feasible ray: x1 = 0.5 x2
  const Matrix ray = from_rows({{0.5, 0.25, 0.3}, {1, 0.5, 0.7}, {0, 0, 0}});
  const FixedPointSet s1 = fixed_points_class1(ray);
  REQUIRE(s1.kind == FixKind::cone);
  REQUIRE(s1.generators.size() == 1);
  CHECK(s1.generators[0][0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s1.generators[0][1] == doctest::Approx(1.0));
  CHECK(s1.generators[0][2] == 0.0);
  CHECK(s1.forced_zero_coords == std::vector<int>{2});
  CHECK_FALSE(s1.requires_zero_anchor);
  CHECK(is_fixed_point(ray, sample_fixed_point(s1, alphas({2.0})), 1e-9));

  // identity minor: two free coordinates
  const Matrix plane = from_rows({{1, 0, 0.2}, {0, 1, 0.9}, {0, 0, 0}});
  const FixedPointSet s2 = fixed_points_class1(plane);
  REQUIRE(s2.kind == FixKind::cone);
  REQUIRE(s2.generators.size() == 2);
  CHECK(s2.generators[0] == std::vector<double>{1, 0, 0});
  CHECK(s2.generators[1] == std::vector<double>{0, 1, 0});
  CHECK(is_fixed_point(plane, sample_fixed_point(s2, alphas({1.5, 0.25})), 1e-9));

  // nonsingular minor
  const Matrix unique = from_rows({{0.5, 0.1, 0}, {0.1, 0.5, 0}, {0, 0, 0}});
  const FixedPointSet s3 = fixed_points_class1(unique);
  CHECK(s3.kind == FixKind::unique_zero);
  CHECK(s3.generators.empty());
  CHECK(sample_fixed_point(s3, {}) == measure({0, 0, 0}));
}

TEST_CASE("reduce_class1 exposes kept indices, rank, determinant") {
  const Matrix a = from_rows({{0, 0, 0}, {0.4, 0.5, 0.1}, {0.2, 0.3, 0.6}});
  const ReducedSystem sys = reduce_class1(a);
  CHECK(sys.kept == std::vector<int>{1, 2});
  CHECK(sys.n0 == 2);
  // M = [[0.5-1, 0.1], [0.3, 0.6-1]]
  CHECK(sys.m[0] == doctest::Approx(-0.5));
  CHECK(sys.det == doctest::Approx(0.2 - 0.03));
  CHECK(sys.rank == 2);
}

TEST_CASE("class2 fixed points follow the cycle products") {
  // unit 2-cycle only: generators span {(x1, b x1, 0, 0, 0)}
  const Matrix one_unit = five_cycle_matrix(2.0, 0.5, 2.0, 2.0, 2.0);
  const FixedPointSet s1 = fixed_points_class2(one_unit);
  REQUIRE(s1.kind == FixKind::cone);
  REQUIRE(s1.generators.size() == 1);
  CHECK(s1.generators[0][0] == doctest::Approx(1.0));
  CHECK(s1.generators[0][1] == doctest::Approx(0.5));
  CHECK(s1.generators[0][2] == 0.0);
  CHECK_FALSE(s1.requires_zero_anchor);
  CHECK(s1.forced_zero_coords == std::vector<int>{2, 3, 4});

  // all cycles unit: three generators and the zero-anchor constraint
  const Matrix all_unit = five_cycle_matrix(2.0, 0.5, 0.25, 1.0, 4.0);
  const FixedPointSet s2 = fixed_points_class2(all_unit);
  REQUIRE(s2.kind == FixKind::cone);
  CHECK(s2.generators.size() == 3);
  CHECK(s2.requires_zero_anchor);
  CHECK(s2.forced_zero_coords.empty());

  // no unit cycle: only the origin
  const Matrix none_unit = five_cycle_matrix(2.0, 2.0, 2.0, 2.0, 2.0);
  const FixedPointSet s3 = fixed_points_class2(none_unit);
  CHECK(s3.kind == FixKind::unique_zero);
  CHECK(s3.forced_zero_coords == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("is_fixed_point") {
  const Matrix id = Matrix::identity(3);
  CHECK(is_fixed_point(id, measure({0, -1, -2}), 1e-12));
  CHECK(is_fixed_point(id, make_measure({ExtendedReal::neg_inf(), ExtendedReal(0.0),
                                         ExtendedReal(-3.0)}),
                       1e-12));

  const Matrix half = from_rows({{0.5, 0.3}, {0, 0}});
  CHECK(is_fixed_point(half, measure({0, 0}), 1e-12));
  CHECK_FALSE(is_fixed_point(half, measure({-1, 0}), 1e-9));

  const double beta = 0.5;
  const Matrix ex1 = five_cycle_matrix(1.0 / beta, beta, 2.0, 2.0, 2.0);
  CHECK(is_fixed_point(ex1, measure({-2.0, -2.0 * beta, 0, 0, 0}), 1e-12));
}

TEST_CASE("n = 3 closed-form oracle") {
  const Matrix ray = from_rows({{0.5, 0.25, 0.3}, {1, 0.5, 0.7}, {0, 0, 0}});
  const FixedPointSet o1 = fixed_points_n3_oracle(ray);
  REQUIRE(o1.kind == FixKind::cone);
  REQUIRE(o1.generators.size() == 1);
  CHECK(o1.generators[0][0] == doctest::Approx(0.5));  // c = a12 / (1 - a11)
  CHECK(o1.generators[0][1] == doctest::Approx(1.0));

  const Matrix plane = from_rows({{1, 0, 0.2}, {0, 1, 0.9}, {0, 0, 0}});
  CHECK(fixed_points_n3_oracle(plane).generators.size() == 2);

  const Matrix unique = from_rows({{0.5, 0.1, 0}, {0.1, 0.5, 0}, {0, 0, 0}});
  CHECK(fixed_points_n3_oracle(unique).kind == FixKind::unique_zero);

  // applicability: needs n = 3 and exactly one zero row
  CHECK_THROWS_AS(fixed_points_n3_oracle(Matrix::identity(3)), Error);
  CHECK_THROWS_AS(fixed_points_n3_oracle(from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})),
                  Error);
}

TEST_CASE("oracle agrees with the general solver on applicable instances") {
  SplitMix64 rng(41);
  int cones = 0;
  for (int trial = 0; trial < 300; ++trial) {
    // zero row in a random position, minor constructed per branch
    const int zero_row = static_cast<int>(rng.next_below(3));
    double m11, m12, m21, m22;
    const int branch = trial % 3;
    if (branch == 0) {  // generic: det != 0 almost surely
      m11 = rng.uniform(0.0, 2.0);
      m12 = rng.uniform(0.0, 2.0);
      m21 = rng.uniform(0.0, 2.0);
      m22 = rng.uniform(0.0, 2.0);
    } else if (branch == 1) {  // singular with a11 < 1: the ray branch
      m11 = rng.uniform(0.0, 0.9);
      m12 = rng.uniform(0.0, 1.5);
      const double u = rng.next_double();
      m21 = m12 > 1e-6 ? u * (1.0 - m11) / m12 : rng.uniform(0.0, 1.5);
      m22 = m12 > 1e-6 ? 1.0 - u : 1.0;
    } else {  // singular with a11 > 1: the sign condition forces uniqueness
      m11 = rng.uniform(1.05, 2.0);
      m12 = rng.uniform(0.05, 1.5);
      m21 = rng.uniform(0.05, 1.5);
      m22 = 1.0 + m12 * m21 / (m11 - 1.0);
    }
    std::vector<std::vector<double>> rows(3, std::vector<double>(3, 0.0));
    const int p = zero_row == 0 ? 1 : 0;
    const int q = zero_row == 2 ? 1 : 2;
    rows[p][p] = m11;
    rows[p][q] = m12;
    rows[q][p] = m21;
    rows[q][q] = m22;
    rows[p][zero_row] = rng.uniform(0.0, 1.0);
    rows[q][zero_row] = rng.uniform(0.0, 1.0);
    const Matrix a = from_rows(rows);

    const FixedPointSet general = fixed_points_class1(a);
    const FixedPointSet oracle = fixed_points_n3_oracle(a);
    CHECK(fixed_point_sets_match(general, oracle, 1e-9));
    if (general.kind == FixKind::cone) ++cones;
  }
  CHECK(cones >= 60);  // the constructed branches actually exercise the cone paths
}

TEST_CASE("sample_fixed_point guards its preconditions") {
  const Matrix all_unit = five_cycle_matrix(2.0, 0.5, 0.25, 1.0, 4.0);
  const FixedPointSet s = fixed_points_class2(all_unit);
  REQUIRE(s.requires_zero_anchor);
  CHECK_THROWS_AS(sample_fixed_point(s, alphas({1.0, 1.0, 1.0})), Error);
  CHECK_THROWS_AS(sample_fixed_point(s, alphas({1.0})), Error);
  const IdempotentMeasure ok = sample_fixed_point(s, alphas({1.0, 2.0, 0.0}));
  CHECK(is_fixed_point(all_unit, ok, 1e-9));

  // spec example: ray generator scaled by 2
  FixedPointSet ray;
  ray.n = 3;
  ray.kind = FixKind::cone;
  ray.generators = {{0.5, 1.0, 0.0}};
  ray.forced_zero_coords = {2};
  CHECK(sample_fixed_point(ray, alphas({2.0})) == measure({-1, -2, 0}));
}

TEST_CASE("membership: sampled points of random sets are fixed") {
  SplitMix64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(6));
    Matrix a = random_class2(rng, n);
    // force some unit cycles so cones appear
    const Permutation pi = extract_permutation(a);
    for (const auto& cycle : cycle_decomposition(pi).cycles) {
      if (rng.chance(0.5)) force_unit_cycle(a, cycle);
    }
    const FixedPointSet s = fixed_points_class2(a);
    std::vector<double> w(s.generators.size());
    for (auto& v : w) v = rng.uniform(0.0, 3.0);
    if (s.requires_zero_anchor && !w.empty()) {
      w[rng.next_below(w.size())] = 0.0;
    }
    CHECK(is_fixed_point(a, sample_fixed_point(s, w), 1e-9));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n0 = 2 + static_cast<int>(rng.next_below(4));
    const int n = n0 + 1 + static_cast<int>(rng.next_below(2));
    const auto inst = idemdyn::testing::make_class1_with_ray(rng, n0, n);
    const FixedPointSet s = fixed_points_class1(inst.a);
    REQUIRE(s.kind == FixKind::cone);
    CHECK(is_fixed_point(inst.a, sample_fixed_point(s, alphas({1.7})), 1e-9));
  }
}

TEST_CASE("small-instance exhaustiveness: every fixed point lies in the described set") {
  SplitMix64 rng(43);
  for (int instance = 0; instance < 40; ++instance) {
    const int n = 3 + static_cast<int>(rng.next_below(2));
    Matrix a = instance % 2 == 0 ? random_class1(rng, n) : random_class2(rng, n);
    if (instance % 4 == 1) {
      const Permutation pi = extract_permutation(a);
      for (const auto& cycle : cycle_decomposition(pi).cycles) {
        if (rng.chance(0.5)) force_unit_cycle(a, cycle);
      }
    }
    const FixedPointSet s = fixed_points(a);
    for (int k = 0; k < 500; ++k) {
      const IdempotentMeasure x = random_measure(rng, n, 0.0);
      if (is_fixed_point(a, x, 1e-7)) {
        CHECK(distance_to_set(s, x.coords()) <= 1e-5);
      }
    }
    // the described set itself must pass membership
    if (s.kind == FixKind::cone) {
      std::vector<double> w(s.generators.size(), 0.5);
      if (s.requires_zero_anchor) w[0] = 0.0;
      CHECK(distance_to_set(s, sample_fixed_point(s, w).coords()) <= 1e-9);
    }
  }
}

TEST_CASE("sign condition decides uniqueness in the corank-1 regime") {
  SplitMix64 rng(44);
  for (int trial = 0; trial < 40; ++trial) {
    const int n0 = 2 + static_cast<int>(rng.next_below(4));
    const int n = n0 + 1 + static_cast<int>(rng.next_below(2));

    const auto cone_side = idemdyn::testing::make_class1_with_ray(rng, n0, n);
    const FixedPointSet cone = fixed_points_class1(cone_side.a);
    REQUIRE(cone.kind == FixKind::cone);
    REQUIRE(cone.generators.size() == 1);
    for (size_t i = 0; i < cone.generators[0].size(); ++i) {
      CHECK(cone.generators[0][i] == doctest::Approx(cone_side.direction[i]).epsilon(1e-9));
    }
    CHECK(is_fixed_point(cone_side.a, sample_fixed_point(cone, alphas({2.5})), 1e-9));

    const auto zero_side = idemdyn::testing::make_class1_con_positive(rng, n0, n);
    const ReducedSystem sys = reduce_class1(zero_side.a);
    CHECK(sys.rank == sys.n0 - 1);
    const FixedPointSet unique = fixed_points_class1(zero_side.a);
    CHECK(unique.kind == FixKind::unique_zero);
  }
}
