#pragma once

#include <string>
#include <vector>

#include "idemdyn/core.hpp"

namespace idemdyn {

/// Bijection on {0, .., n-1}; images_[i] = pi(i). User-facing strings
/// (cycle notation) are rendered 1-based.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int n);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;

  /// i -> pi(pi(...pi(i))), m applications. m >= 0.
  int power_of(int i, long m) const;

  friend bool operator==(const Permutation& a, const Permutation& b) = default;

 private:
  std::vector<int> images_;
};

/// outer ∘ inner: i -> outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// Disjoint cycles partitioning {0..n-1}. Each cycle starts at its smallest
/// element and lists (i, pi(i), pi^2(i), ...); cycles ordered by smallest
/// element. Fixed points appear as length-1 cycles.
struct CycleDecomposition {
  std::vector<std::vector<int>> cycles;
  int count() const { return static_cast<int>(cycles.size()); }
};

CycleDecomposition cycle_decomposition(const Permutation& pi);

/// "(1 2)(3 5)(4)" -- 1-based.
std::string cycle_notation(const CycleDecomposition& dec);

/// lcm of cycle lengths.
long permutation_order(const CycleDecomposition& dec);

/// The permutation of a generalized permutation matrix: pi(i) = the unique
/// column with a(i, pi(i)) > 0. Throws Error{not_class2} otherwise.
Permutation extract_permutation(const Matrix& a);

/// Product of entries read along one cycle of pi:
///   a(c0,c1) * a(c1,c2) * ... * a(c_{k-1},c0).
double cycle_product(const Matrix& a, const std::vector<int>& cycle);

struct ComposeCheck {
  Matrix product;
  Permutation permutation;  // of the product
  bool law_holds;           // permutation == tau ∘ pi
};

/// Multiplies two generalized permutation matrices and checks that the
/// product's permutation is tau ∘ pi (i -> tau(pi(i))). The boolean is an
/// internal assertion surfaced for testing; it always holds.
ComposeCheck compose_check(const Matrix& a_pi, const Matrix& a_tau);

/// A^m for a generalized permutation matrix, via the orbit-product formula:
/// entry (i, pi^m(i)) = prod_{j=0}^{m-1} a(pi^j(i), pi^{j+1}(i)).
/// Not computed by repeated multiplication. m >= 1.
Matrix matrix_power_class2(const Matrix& a, long m);

/// prod_{j=0}^{m-1} a(pi^j(i), pi^{j+1}(i)); empty product (m = 0) is 1.
double orbit_product(const Matrix& a, const Permutation& pi, int i, long m);

}  // namespace idemdyn
