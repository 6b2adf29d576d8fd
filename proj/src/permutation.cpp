#include "idemdyn/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "idemdyn/classifier.hpp"

namespace idemdyn {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = static_cast<int>(images_.size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : images_) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)]) {
      throw Error(ErrorCode::invalid_argument, "images do not form a bijection");
    }
    seen[static_cast<size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> im(static_cast<size_t>(n));
  std::iota(im.begin(), im.end(), 0);
  return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
  std::vector<int> im(images_.size());
  for (int i = 0; i < size(); ++i) im[static_cast<size_t>(images_[static_cast<size_t>(i)])] = i;
  return Permutation(std::move(im));
}

int Permutation::power_of(int i, long m) const {
  int cur = i;
  for (long k = 0; k < m; ++k) cur = images_[static_cast<size_t>(cur)];
  return cur;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) {
    throw Error(ErrorCode::dimension_mismatch, "compose: size mismatch");
  }
  std::vector<int> im(static_cast<size_t>(inner.size()));
  for (int i = 0; i < inner.size(); ++i) im[static_cast<size_t>(i)] = outer(inner(i));
  return Permutation(std::move(im));
}

CycleDecomposition cycle_decomposition(const Permutation& pi) {
  const int n = pi.size();
  CycleDecomposition dec;
  std::vector<bool> visited(static_cast<size_t>(n), false);
  for (int start = 0; start < n; ++start) {
    if (visited[static_cast<size_t>(start)]) continue;
    std::vector<int> cycle;
    int cur = start;
    do {
      visited[static_cast<size_t>(cur)] = true;
      cycle.push_back(cur);
      cur = pi(cur);
    } while (cur != start);
    dec.cycles.push_back(std::move(cycle));
  }
  return dec;  // smallest element first by construction; ordered by smallest
}

std::string cycle_notation(const CycleDecomposition& dec) {
  std::string out;
  for (const auto& cycle : dec.cycles) {
    out += '(';
    for (size_t k = 0; k < cycle.size(); ++k) {
      if (k > 0) out += ' ';
      out += std::to_string(cycle[k] + 1);
    }
    out += ')';
  }
  return out;
}

long permutation_order(const CycleDecomposition& dec) {
  long order = 1;
  for (const auto& cycle : dec.cycles) {
    order = std::lcm(order, static_cast<long>(cycle.size()));
  }
  return order;
}

Permutation extract_permutation(const Matrix& a) {
  OperatorClass c = classify(a);
  const auto* c2 = std::get_if<ClassII>(&c);
  if (c2 == nullptr) {
    throw Error(ErrorCode::not_class2, "matrix is not a generalized permutation matrix");
  }
  return c2->permutation;
}

double cycle_product(const Matrix& a, const std::vector<int>& cycle) {
  double q = 1.0;
  for (size_t k = 0; k < cycle.size(); ++k) {
    q *= a.at(cycle[k], cycle[(k + 1) % cycle.size()]);
  }
  return q;
}

ComposeCheck compose_check(const Matrix& a_pi, const Matrix& a_tau) {
  if (a_pi.size() != a_tau.size()) {
    throw Error(ErrorCode::dimension_mismatch, "compose_check: dimension mismatch");
  }
  const Permutation pi = extract_permutation(a_pi);
  const Permutation tau = extract_permutation(a_tau);
  Matrix product = a_pi * a_tau;
  Permutation got = extract_permutation(product);
  const bool holds = got == compose(tau, pi);
  return ComposeCheck{std::move(product), std::move(got), holds};
}

double orbit_product(const Matrix& a, const Permutation& pi, int i, long m) {
  double prod = 1.0;
  int cur = i;
  for (long k = 0; k < m; ++k) {
    const int next = pi(cur);
    prod *= a.at(cur, next);
    cur = next;
  }
  return prod;
}

Matrix matrix_power_class2(const Matrix& a, long m) {
  if (m < 1) {
    throw Error(ErrorCode::invalid_argument, "matrix_power_class2: m must be >= 1");
  }
  const Permutation pi = extract_permutation(a);
  const int n = a.size();
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    out.at(i, pi.power_of(i, m)) = orbit_product(a, pi, i, m);
  }
  return out;
}

}  // namespace idemdyn
