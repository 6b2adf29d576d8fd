#pragma once

#include <complex>
#include <span>
#include <vector>

namespace idemdyn {

/// Coefficients of det(xI - B) for an n x n row-major matrix, by the
/// Faddeev-LeVerrier trace recursion. Returns c[0..n-1] with
/// p(x) = x^n + c[n-1] x^{n-1} + ... + c[0].
std::vector<double> characteristic_polynomial(std::span<const double> b, int n);

/// All roots of a monic real polynomial by simultaneous (Durand-Kerner)
/// iteration with deterministic perturbation restarts on stagnation.
/// Roots are sorted by (real, imag). Throws Error{root_finding_failed}
/// if the iteration has not converged after max_sweeps.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> monic_low_coeffs,
                                                   int max_sweeps = 10000);

std::complex<double> polynomial_eval(std::span<const double> monic_low_coeffs,
                                     std::complex<double> z);

/// sum_k |c_k| |z|^k + |z|^n: the natural backward-error scale for a
/// residual |p(z)|.
double polynomial_residual_scale(std::span<const double> monic_low_coeffs,
                                 std::complex<double> z);

/// Spectral-radius estimate ||M^steps||_inf^(1/steps) where M is B after a
/// diagonal balancing similarity (approximate Perron scaling). Balancing
/// leaves the spectrum unchanged and removes the norm prefactor, so the
/// estimate is sharp at steps = 64 for primitive non-negative matrices.
/// Per-step normalization keeps the powers in range for any magnitude.
double gelfand_spectral_estimate(std::span<const double> b, int n, int steps = 64);

}  // namespace idemdyn
