#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idemdyn/core.hpp"

namespace idemdyn {

/// Directed pseudograph of a classified matrix: edge <i, j> iff a(j, i) > 0
/// (the transpose orientation: an edge out of i reads column i). Loops and
/// antiparallel pairs allowed.
struct Pseudograph {
  int n = 0;
  std::vector<std::vector<int>> out;  // out[i]: ascending targets

  bool has_edge(int i, int j) const;
  int edge_count() const;
};

/// Throws Error{not_classified} when the matrix preserves nothing (Neither).
Pseudograph build_graph(const Matrix& a);

struct CycleReport {
  bool has_cycle = false;
  /// Simple cycles, each rotated to start at its smallest vertex, sorted.
  /// Exhaustive for n <= enumerate_limit_n while at most max_cycles exist;
  /// otherwise one certificate cycle per cyclic strongly-connected component.
  std::vector<std::vector<int>> cycles;
  bool exhaustive = true;
  /// Maximum edge count over directed paths; engaged iff the graph is acyclic.
  std::optional<int> longest_path_len;
};

CycleReport cycles_and_longest_path(const Pseudograph& g, int enumerate_limit_n = 12,
                                    int max_cycles = 10000);

/// Fate of -inf coordinates seeded at `seed`:
///  - no seed vertex reaches a directed cycle: the -inf coordinates vanish
///    by step `by_step` (<= n; 0 for an empty seed);
///  - otherwise they persist forever, travelling the reported cycle.
struct NegInfFate {
  bool persists = false;
  int by_step = 0;
  std::vector<int> reachable_cycle;
};

NegInfFate neg_inf_fate(const Matrix& a, const std::vector<int>& seed);

/// u_j vectors of a graph cycle (i_1, ..., i_q): u_j is 0 everywhere except
/// -inf at i_j. For a generalized permutation matrix containing the cycle,
/// apply maps u_j to u_{j+1 mod q}.
std::vector<IdempotentMeasure> u_cycle_vectors(const std::vector<int>& cycle, int n);

std::string to_dot(const Pseudograph& g);

}  // namespace idemdyn
