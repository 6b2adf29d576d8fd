#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "idemdyn/core.hpp"
#include "idemdyn/graph.hpp"
#include "idemdyn/permutation.hpp"

namespace idemdyn {

/// Finite coordinates below this floor are reported as -inf with a
/// saturation flag, so a floating-point blow-up can't masquerade as a
/// genuine -inf coordinate.
inline constexpr double kSaturationFloor = -1e300;

struct Trajectory {
  Matrix op;
  std::vector<std::vector<ExtendedReal>> points;  // x^(0) .. x^(steps)
  struct SaturationEvent {
    int step;
    int coord;
  };
  std::vector<SaturationEvent> saturations;

  bool saturated() const { return !saturations.empty(); }
  int steps() const { return static_cast<int>(points.size()) - 1; }
  const std::vector<ExtendedReal>& at(int m) const { return points[static_cast<size_t>(m)]; }
};

/// Iterates x^(m+1) = A x^(m). Throws Error{not_classified} for Neither
/// matrices so the trajectory is guaranteed to stay in I_n.
Trajectory simulate(const Matrix& a, const IdempotentMeasure& x0, int steps);

enum class LimitKind { to_zero, to_neg_inf, periodic };

struct CoordinateLimit {
  LimitKind kind = LimitKind::to_zero;
  int cycle_index = 0;       // index into the cycle decomposition
  double cycle_product = 0;  // Q_p of the containing cycle
  int period = 1;            // k_p
  /// Subsequence limits per remainder r = 0..k_p-1 (periodic verdicts).
  /// For unit cycles these are the exact subsequence values
  /// (prod_{j<r} a(pi^j(i), pi^{j+1}(i))) * x0[pi^r(i)]; when the cycle
  /// carries a -inf seed under Q < 1 they collapse to 0 / -inf.
  std::vector<ExtendedReal> residues;
};

struct LimitPrediction {
  CycleDecomposition cycles;
  std::vector<double> cycle_products;
  std::vector<CoordinateLimit> coords;  // size n
};

/// Closed-form trajectory limits for a generalized permutation matrix:
/// per coordinate, Q_p < 1 drives the cycle to 0 (a -inf seed keeps
/// recurring with period k_p), Q_p = 1 is exactly periodic, and Q_p > 1
/// diverges to -inf unless every initial value on the cycle is exactly 0.
LimitPrediction predict_limit_class2(const Matrix& a, const IdempotentMeasure& x0,
                                     double tol_unit = 1e-9);

struct AsymptoticClass1 {
  enum class Verdict { all_inside, all_outside, mixed };
  Verdict verdict = Verdict::all_inside;
  std::vector<int> kept;  // indices of the n0 x n0 minor B
  std::vector<std::complex<double>> eigenvalues;
  int n_stable = 0;
  int n_unstable = 0;
  int n_unit = 0;
  double spectral_radius = 0.0;   // max |lambda| from the root finder
  double gelfand_estimate = 0.0;  // independent cross-estimate
  bool low_confidence = false;    // the two routes disagree beyond 1e-2
};

/// Eigenvalues of the non-zero-row minor B via the characteristic
/// polynomial and simultaneous root iteration, cross-checked against a
/// 64-step norm-growth estimate of the spectral radius. n0 <= 32.
AsymptoticClass1 class1_asymptotics(const Matrix& a, double tol_unit = 1e-9);

struct OmegaEstimate {
  enum class Kind { converged, periodic_orbit, diverging_to_neg_inf, undecided };
  Kind kind = Kind::undecided;
  std::vector<ExtendedReal> limit;               // converged
  int period = 0;                                // periodic_orbit
  std::vector<std::vector<ExtendedReal>> orbit;  // periodic_orbit: one period
  std::vector<int> diverging_coords;             // diverging_to_neg_inf
  int steps_used = 0;
};

/// Simulation-based omega-limit verdict: convergence when consecutive
/// distances stay under tol for 10 steps, periodicity when a lag k <= k_max
/// holds for 10 periods (k_max = lcm of cycle lengths for class2, n^2
/// otherwise), divergence when a coordinate passes -1e8 with decreasing
/// window minima (or saturates).
OmegaEstimate omega_estimate(const Matrix& a, const IdempotentMeasure& x0, int max_steps,
                             double tol);

enum class CheckOutcome { agree, disagree, inconclusive };

struct VerificationCheck {
  std::string name;
  CheckOutcome outcome = CheckOutcome::agree;
  std::string predicted;
  std::string observed;
  int first_divergent_step = -1;
};

struct VerificationReport {
  std::string classification;  // "class1" | "class2"
  std::vector<VerificationCheck> checks;
  OmegaEstimate omega;
  bool agree = true;         // no check disagreed
  bool inconclusive = false; // some check could not be decided at this horizon
};

/// Differential test: runs the applicable predictors (closed-form limits or
/// eigenvalue asymptotics, plus the -inf fate) against simulation and
/// reports agreement per coordinate, with the first divergent step for any
/// disagreement.
VerificationReport verify(const Matrix& a, const IdempotentMeasure& x0, int steps, double tol);

std::string outcome_name(CheckOutcome o);
std::string omega_kind_name(OmegaEstimate::Kind k);
std::string verdict_name(AsymptoticClass1::Verdict v);
std::string limit_kind_name(LimitKind k);

}  // namespace idemdyn
