#pragma once

// Shared builders for unit and acceptance tests.

#include <cmath>
#include <vector>

#include "idemdyn/classifier.hpp"
#include "idemdyn/core.hpp"
#include "idemdyn/random.hpp"

namespace idemdyn::testing {

inline Matrix from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> entries;
  for (const auto& row : rows) entries.insert(entries.end(), row.begin(), row.end());
  return Matrix(n, std::move(entries));
}

inline IdempotentMeasure measure(const std::vector<double>& values) {
  std::vector<ExtendedReal> coords;
  for (double v : values) coords.push_back(ExtendedReal(v));
  return make_measure(std::move(coords));
}

inline ExtendedReal ninf() { return ExtendedReal::neg_inf(); }

/// 5x5 matrix from the two-transposition-plus-loop family:
/// rows (0 a 0 0 0 | b 0 0 0 0 | 0 0 0 0 c | 0 0 0 d 0 | 0 0 e 0 0).
inline Matrix five_cycle_matrix(double a, double b, double c, double d, double e) {
  return from_rows({{0, a, 0, 0, 0},
                    {b, 0, 0, 0, 0},
                    {0, 0, 0, 0, c},
                    {0, 0, 0, d, 0},
                    {0, 0, e, 0, 0}});
}

/// Upper 2x2 block with a zero second row: rows (a11 a12 | 0 0).
inline Matrix half_zero_matrix(double a11, double a12) {
  return from_rows({{a11, a12}, {0, 0}});
}

/// Pure swap: rows (0 a12 | a21 0).
inline Matrix swap_matrix(double a12, double a21) {
  return from_rows({{0, a12}, {a21, 0}});
}

/// Generalized permutation matrix with prescribed entries a(i, pi(i)).
inline Matrix permutation_matrix(const Permutation& pi, const std::vector<double>& weights) {
  Matrix a(pi.size());
  for (int i = 0; i < pi.size(); ++i) a.at(i, pi(i)) = weights[static_cast<size_t>(i)];
  return a;
}

/// Embeds an n0 x n0 minor into an n x n zero-row matrix. The kept indices
/// are chosen by rng; columns under the zero rows get random non-negative
/// entries (they multiply forced-zero coordinates, so the fixed-point set
/// ignores them).
struct EmbeddedMinor {
  Matrix a;
  std::vector<int> kept;
};

inline EmbeddedMinor embed_minor(SplitMix64& rng, const std::vector<double>& minor, int n0,
                                 int n) {
  std::vector<int> order(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng.next_below(static_cast<uint64_t>(i) + 1));
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
  }
  std::vector<int> kept(order.begin(), order.begin() + n0);
  std::sort(kept.begin(), kept.end());
  Matrix a(n);
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n0; ++j) {
      a.at(kept[static_cast<size_t>(i)], kept[static_cast<size_t>(j)]) =
          minor[static_cast<size_t>(i) * n0 + j];
    }
  }
  std::vector<bool> is_kept(static_cast<size_t>(n), false);
  for (int k : kept) is_kept[static_cast<size_t>(k)] = true;
  for (int i : kept) {
    for (int j = 0; j < n; ++j) {
      if (!is_kept[static_cast<size_t>(j)]) a.at(i, j) = rng.uniform(0.0, 1.0);
    }
  }
  return {std::move(a), std::move(kept)};
}

/// Rank-(n0-1) minor with a strictly positive unit eigenvector: minor = g w^T
/// with w.g = 1, so Fix restricted to the kept block is the ray along -g.
struct RayInstance {
  Matrix a;
  std::vector<int> kept;
  std::vector<double> direction;  // expected generator, full length n, max 1
};

inline RayInstance make_class1_with_ray(SplitMix64& rng, int n0, int n) {
  std::vector<double> g(static_cast<size_t>(n0));
  std::vector<double> w(static_cast<size_t>(n0));
  for (auto& v : g) v = rng.uniform(0.2, 2.0);
  for (auto& v : w) v = rng.uniform(0.2, 2.0);
  double dot = 0.0;
  for (int i = 0; i < n0; ++i) dot += g[static_cast<size_t>(i)] * w[static_cast<size_t>(i)];
  for (auto& v : w) v /= dot;
  std::vector<double> minor(static_cast<size_t>(n0) * n0);
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n0; ++j) {
      minor[static_cast<size_t>(i) * n0 + j] = g[static_cast<size_t>(i)] * w[static_cast<size_t>(j)];
    }
  }
  EmbeddedMinor em = embed_minor(rng, minor, n0, n);
  double mx = 0.0;
  for (double v : g) mx = std::max(mx, v);
  std::vector<double> direction(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n0; ++i) {
    direction[static_cast<size_t>(em.kept[static_cast<size_t>(i)])] = g[static_cast<size_t>(i)] / mx;
  }
  return {std::move(em.a), std::move(em.kept), std::move(direction)};
}

/// Rank-(n0-1) minor whose unit-eigenvalue direction has mixed signs, so the
/// sign condition forces the unique fixed point. Built from the 2x2 block
/// [[a, a-1], [d-1, d]] (eigenvector (-1, 1)) padded with a random block.
inline EmbeddedMinor make_class1_con_positive(SplitMix64& rng, int n0, int n) {
  const double a = rng.uniform(1.2, 2.0);
  const double d = rng.uniform(1.2, 2.0);
  std::vector<double> minor(static_cast<size_t>(n0) * n0, 0.0);
  minor[0] = a;
  minor[1] = a - 1.0;
  minor[static_cast<size_t>(n0)] = d - 1.0;
  minor[static_cast<size_t>(n0) + 1] = d;
  const double cap = 0.9 / std::max(1, n0 - 2);  // row sums < 0.9 keep R - I nonsingular
  for (int i = 2; i < n0; ++i) {
    for (int j = 2; j < n0; ++j) {
      minor[static_cast<size_t>(i) * n0 + j] = rng.uniform(0.0, cap);
    }
  }
  return embed_minor(rng, minor, n0, n);
}

}  // namespace idemdyn::testing
