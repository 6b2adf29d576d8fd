#include "idemdyn/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "idemdyn/classifier.hpp"

namespace idemdyn {

bool Pseudograph::has_edge(int i, int j) const {
  const auto& row = out[static_cast<size_t>(i)];
  return std::binary_search(row.begin(), row.end(), j);
}

int Pseudograph::edge_count() const {
  int total = 0;
  for (const auto& row : out) total += static_cast<int>(row.size());
  return total;
}

Pseudograph build_graph(const Matrix& a) {
  OperatorClass c = classify(a);
  if (is_neither(c)) {
    throw Error(ErrorCode::not_classified, "graph is defined for class1/class2 matrices only");
  }
  Pseudograph g;
  g.n = a.size();
  g.out.assign(static_cast<size_t>(g.n), {});
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      if (a.at(j, i) > 0.0) g.out[static_cast<size_t>(i)].push_back(j);
    }
  }
  return g;
}

namespace {

// Tarjan strongly-connected components; comp ids in reverse topological
// order, deterministic for a fixed adjacency.
struct SccResult {
  std::vector<int> comp;           // vertex -> component id
  std::vector<std::vector<int>> members;
};

SccResult strongly_connected_components(const Pseudograph& g) {
  const int n = g.n;
  SccResult res;
  res.comp.assign(static_cast<size_t>(n), -1);
  std::vector<int> index(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<size_t>(n), false);
  std::vector<int> stack;
  int next_index = 0;

  std::function<void(int)> strongconnect = [&](int v) {
    index[static_cast<size_t>(v)] = low[static_cast<size_t>(v)] = next_index++;
    stack.push_back(v);
    on_stack[static_cast<size_t>(v)] = true;
    for (int w : g.out[static_cast<size_t>(v)]) {
      if (index[static_cast<size_t>(w)] < 0) {
        strongconnect(w);
        low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], low[static_cast<size_t>(w)]);
      } else if (on_stack[static_cast<size_t>(w)]) {
        low[static_cast<size_t>(v)] = std::min(low[static_cast<size_t>(v)], index[static_cast<size_t>(w)]);
      }
    }
    if (low[static_cast<size_t>(v)] == index[static_cast<size_t>(v)]) {
      std::vector<int> members;
      int w = -1;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[static_cast<size_t>(w)] = false;
        res.comp[static_cast<size_t>(w)] = static_cast<int>(res.members.size());
        members.push_back(w);
      } while (w != v);
      std::sort(members.begin(), members.end());
      res.members.push_back(std::move(members));
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[static_cast<size_t>(v)] < 0) strongconnect(v);
  }
  return res;
}

bool vertex_on_cycle(const Pseudograph& g, const SccResult& scc, int v) {
  const auto& members = scc.members[static_cast<size_t>(scc.comp[static_cast<size_t>(v)])];
  if (members.size() >= 2) return true;
  return g.has_edge(v, v);
}

// Shortest cycle through v inside its SCC (BFS back to v). v must lie on one.
std::vector<int> cycle_through(const Pseudograph& g, const SccResult& scc, int v) {
  if (g.has_edge(v, v)) return {v};
  const int cid = scc.comp[static_cast<size_t>(v)];
  std::vector<int> parent(static_cast<size_t>(g.n), -1);
  std::vector<bool> seen(static_cast<size_t>(g.n), false);
  std::deque<int> queue;
  seen[static_cast<size_t>(v)] = true;
  queue.push_back(v);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : g.out[static_cast<size_t>(u)]) {
      if (scc.comp[static_cast<size_t>(w)] != cid) continue;
      if (w == v) {
        std::vector<int> cycle;
        for (int x = u; x != -1; x = parent[static_cast<size_t>(x)]) cycle.push_back(x);
        std::reverse(cycle.begin(), cycle.end());
        // rotate so the smallest vertex leads
        const auto mn = std::min_element(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), mn, cycle.end());
        return cycle;
      }
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = true;
        parent[static_cast<size_t>(w)] = u;
        queue.push_back(w);
      }
    }
  }
  return {v};  // unreachable for a vertex certified to lie on a cycle
}

// All simple cycles whose smallest vertex is `start`, by backtracking DFS
// over vertices >= start. Returns false when the cap is exhausted.
bool enumerate_from(const Pseudograph& g, int start, int max_cycles,
                    std::vector<std::vector<int>>& cycles) {
  std::vector<int> path{start};
  std::vector<bool> on_path(static_cast<size_t>(g.n), false);
  on_path[static_cast<size_t>(start)] = true;
  bool ok = true;
  std::function<void(int)> dfs = [&](int u) {
    if (!ok) return;
    for (int w : g.out[static_cast<size_t>(u)]) {
      if (!ok) return;
      if (w == start) {
        if (static_cast<int>(cycles.size()) >= max_cycles) {
          ok = false;
          return;
        }
        cycles.push_back(path);
      } else if (w > start && !on_path[static_cast<size_t>(w)]) {
        on_path[static_cast<size_t>(w)] = true;
        path.push_back(w);
        dfs(w);
        path.pop_back();
        on_path[static_cast<size_t>(w)] = false;
      }
    }
  };
  dfs(start);
  return ok;
}

}  // namespace

CycleReport cycles_and_longest_path(const Pseudograph& g, int enumerate_limit_n, int max_cycles) {
  CycleReport report;
  const SccResult scc = strongly_connected_components(g);
  for (int v = 0; v < g.n && !report.has_cycle; ++v) {
    if (vertex_on_cycle(g, scc, v)) report.has_cycle = true;
  }

  if (!report.has_cycle) {
    // Longest directed path (in edges) by memoized DFS on the DAG.
    std::vector<int> best(static_cast<size_t>(g.n), -1);
    std::function<int(int)> longest = [&](int v) {
      int& memo = best[static_cast<size_t>(v)];
      if (memo >= 0) return memo;
      int len = 0;
      for (int w : g.out[static_cast<size_t>(v)]) len = std::max(len, 1 + longest(w));
      memo = len;
      return len;
    };
    int overall = 0;
    for (int v = 0; v < g.n; ++v) overall = std::max(overall, longest(v));
    report.longest_path_len = overall;
    return report;
  }

  if (g.n <= enumerate_limit_n) {
    std::vector<std::vector<int>> cycles;
    bool complete = true;
    for (int start = 0; start < g.n && complete; ++start) {
      complete = enumerate_from(g, start, max_cycles, cycles);
    }
    if (complete) {
      report.cycles = std::move(cycles);
      report.exhaustive = true;
      return report;
    }
  }

  // Certificate mode: one representative cycle per cyclic SCC.
  report.exhaustive = false;
  for (const auto& members : scc.members) {
    const int v = members.front();
    if (members.size() >= 2 || g.has_edge(v, v)) {
      report.cycles.push_back(cycle_through(g, scc, v));
    }
  }
  std::sort(report.cycles.begin(), report.cycles.end());
  return report;
}

NegInfFate neg_inf_fate(const Matrix& a, const std::vector<int>& seed) {
  const Pseudograph g = build_graph(a);
  NegInfFate fate;
  if (seed.empty()) return fate;  // nothing to propagate
  for (int v : seed) {
    if (v < 0 || v >= g.n) {
      throw Error(ErrorCode::invalid_argument, "seed vertex out of range");
    }
  }

  const SccResult scc = strongly_connected_components(g);
  // BFS over everything reachable from the seed.
  std::vector<bool> reached(static_cast<size_t>(g.n), false);
  std::deque<int> queue;
  for (int v : seed) {
    if (!reached[static_cast<size_t>(v)]) {
      reached[static_cast<size_t>(v)] = true;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (vertex_on_cycle(g, scc, u)) {
      fate.persists = true;
      fate.reachable_cycle = cycle_through(g, scc, u);
      return fate;
    }
    for (int w : g.out[static_cast<size_t>(u)]) {
      if (!reached[static_cast<size_t>(w)]) {
        reached[static_cast<size_t>(w)] = true;
        queue.push_back(w);
      }
    }
  }

  // Acyclic territory: the -inf support empties right after the longest
  // path out of the seed set.
  std::vector<int> memo(static_cast<size_t>(g.n), -1);
  std::function<int(int)> longest = [&](int v) {
    int& m = memo[static_cast<size_t>(v)];
    if (m >= 0) return m;
    int len = 0;
    for (int w : g.out[static_cast<size_t>(v)]) len = std::max(len, 1 + longest(w));
    m = len;
    return len;
  };
  int depth = 0;
  for (int v : seed) depth = std::max(depth, longest(v));
  fate.by_step = depth + 1;
  return fate;
}

std::vector<IdempotentMeasure> u_cycle_vectors(const std::vector<int>& cycle, int n) {
  if (cycle.empty()) {
    throw Error(ErrorCode::invalid_argument, "cycle must be non-empty");
  }
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : cycle) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)]) {
      throw Error(ErrorCode::invalid_argument, "cycle vertices must be distinct and in range");
    }
    seen[static_cast<size_t>(v)] = true;
  }
  std::vector<IdempotentMeasure> us;
  us.reserve(cycle.size());
  for (int v : cycle) {
    std::vector<ExtendedReal> coords(static_cast<size_t>(n), ExtendedReal(0.0));
    coords[static_cast<size_t>(v)] = ExtendedReal::neg_inf();
    us.push_back(make_measure(std::move(coords)));
  }
  return us;
}

std::string to_dot(const Pseudograph& g) {
  std::string dot = "digraph G_A {\n";
  for (int v = 0; v < g.n; ++v) {
    dot += "  " + std::to_string(v + 1) + ";\n";
  }
  for (int i = 0; i < g.n; ++i) {
    for (int j : g.out[static_cast<size_t>(i)]) {
      dot += "  " + std::to_string(i + 1) + " -> " + std::to_string(j + 1) + ";\n";
    }
  }
  dot += "}\n";
  return dot;
}

}  // namespace idemdyn
