#include "idemdyn/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace idemdyn {

double SplitMix64::log_uniform(double lo, double hi) {
  return lo * std::exp(next_double() * std::log(hi / lo));
}

Permutation random_permutation(SplitMix64& rng, int n) {
  std::vector<int> images(static_cast<size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(images[static_cast<size_t>(i)], images[static_cast<size_t>(j)]);
  }
  return Permutation(std::move(images));
}

Matrix random_class1(SplitMix64& rng, int n, double lo, double hi) {
  const int zero_count = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(n - 1)));
  std::vector<int> rows(static_cast<size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)]);
  }
  std::vector<bool> zero(static_cast<size_t>(n), false);
  for (int k = 0; k < zero_count; ++k) zero[static_cast<size_t>(rows[static_cast<size_t>(k)])] = true;

  Matrix a(n);
  for (int i = 0; i < n; ++i) {
    if (zero[static_cast<size_t>(i)]) continue;
    for (int j = 0; j < n; ++j) a.at(i, j) = rng.uniform(lo, hi);
  }
  return a;
}

Matrix random_class1_acyclic(SplitMix64& rng, int n) {
  // Edges only run forward along a random vertex order, so the pseudograph
  // (edge i->j iff a(j,i) > 0) cannot close a cycle.
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
  }
  std::vector<int> rank(static_cast<size_t>(n));
  for (int pos = 0; pos < n; ++pos) rank[static_cast<size_t>(order[static_cast<size_t>(pos)])] = pos;

  const int zero_row = order[static_cast<size_t>(rng.next_below(static_cast<uint64_t>(n)))];
  Matrix a(n);
  for (int row = 0; row < n; ++row) {
    if (row == zero_row) continue;
    for (int col = 0; col < n; ++col) {
      // entry a(row, col) creates edge col -> row; require col earlier in order
      if (rank[static_cast<size_t>(col)] < rank[static_cast<size_t>(row)] && rng.chance(0.5)) {
        a.at(row, col) = rng.uniform(0.1, 2.0);
      }
    }
  }
  return a;
}

Matrix random_class2(SplitMix64& rng, int n) {
  const Permutation pi = random_permutation(rng, n);
  Matrix a(n);
  for (int i = 0; i < n; ++i) a.at(i, pi(i)) = rng.log_uniform(0.25, 4.0);
  return a;
}

void force_unit_cycle(Matrix& a, const std::vector<int>& cycle) {
  double rest = 1.0;
  const size_t k = cycle.size();
  for (size_t s = 1; s < k; ++s) rest *= a.at(cycle[s], cycle[(s + 1) % k]);
  a.at(cycle[0], cycle[k > 1 ? 1 : 0]) = 1.0 / rest;
}

void push_cycle_product_outside(Matrix& a, const std::vector<int>& cycle, double lo, double hi,
                                SplitMix64& rng) {
  const double q = cycle_product(a, cycle);
  if (q == 1.0 || q <= lo || q >= hi) return;
  const double target = rng.chance(0.5) ? lo * 0.9 : hi * 1.1;
  const size_t k = cycle.size();
  a.at(cycle[0], cycle[k > 1 ? 1 : 0]) *= target / q;
}

Matrix random_neither(SplitMix64& rng, int n, NeitherReason reason) {
  switch (reason) {
    case NeitherReason::negative_entry: {
      Matrix a(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a.at(i, j) = rng.uniform(0.0, 2.0);
      }
      const int i = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
      const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(n)));
      a.at(i, j) = -rng.uniform(0.1, 2.0);
      return a;
    }
    case NeitherReason::multi_nonzero_row: {
      // strictly positive everywhere: no zero row, every row multi-nonzero
      Matrix a(n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a.at(i, j) = rng.uniform(0.1, 2.0);
      }
      return a;
    }
    case NeitherReason::zero_column_no_zero_row: {
      // one positive entry per row with a repeated column
      std::vector<int> col(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) col[static_cast<size_t>(i)] = static_cast<int>(
          rng.next_below(static_cast<uint64_t>(n)));
      col[1] = col[0];  // guarantee the columns are not a bijection
      Matrix a(n);
      for (int i = 0; i < n; ++i) a.at(i, col[static_cast<size_t>(i)]) = rng.uniform(0.25, 4.0);
      return a;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown reason");
}

IdempotentMeasure random_measure(SplitMix64& rng, int n, double neg_inf_prob) {
  std::vector<ExtendedReal> x(static_cast<size_t>(n));
  bool has_zero = false;
  for (int i = 0; i < n; ++i) {
    if (neg_inf_prob > 0.0 && rng.chance(neg_inf_prob)) {
      x[static_cast<size_t>(i)] = ExtendedReal::neg_inf();
    } else if (rng.chance(0.3)) {
      x[static_cast<size_t>(i)] = ExtendedReal(0.0);
      has_zero = true;
    } else {
      x[static_cast<size_t>(i)] = ExtendedReal(-rng.uniform(0.05, 2.0));
    }
  }
  if (!has_zero) {
    // pick a deterministic slot among the non-(-inf) coordinates
    std::vector<int> finite;
    for (int i = 0; i < n; ++i) {
      if (x[static_cast<size_t>(i)].is_finite()) finite.push_back(i);
    }
    if (finite.empty()) {
      x[static_cast<size_t>(rng.next_below(static_cast<uint64_t>(n)))] = ExtendedReal(0.0);
    } else {
      x[static_cast<size_t>(finite[rng.next_below(finite.size())])] = ExtendedReal(0.0);
    }
  }
  return make_measure(std::move(x));
}

}  // namespace idemdyn
