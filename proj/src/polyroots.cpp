#include "idemdyn/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "idemdyn/errors.hpp"

namespace idemdyn {

namespace {

constexpr double kPi = 3.14159265358979323846;

double entry(std::span<const double> m, int n, int i, int j) {
  return m[static_cast<size_t>(i) * n + j];
}

// Deterministic jitter source for stagnation restarts.
struct TinyRng {
  uint64_t s = 0x2545f4914f6cdd1dULL;
  double next() {  // xorshift64*, mapped to [0, 1)
    s ^= s >> 12;
    s ^= s << 25;
    s ^= s >> 27;
    return static_cast<double>((s * 0x2545f4914f6cdd1dULL) >> 11) * 0x1.0p-53;
  }
};

}  // namespace

std::vector<double> characteristic_polynomial(std::span<const double> b, int n) {
  if (n == 0) return {};
  std::vector<double> c(static_cast<size_t>(n), 0.0);
  std::vector<double> m(b.begin(), b.end());  // M_1 = B
  double tr = 0.0;
  for (int i = 0; i < n; ++i) tr += entry(m, n, i, i);
  c[static_cast<size_t>(n - 1)] = -tr;
  std::vector<double> next(static_cast<size_t>(n) * n);
  for (int k = 2; k <= n; ++k) {
    // M_k = B (M_{k-1} + c_{n-k+1} I);  c_{n-k} = -tr(M_k) / k
    const double shift = c[static_cast<size_t>(n - k + 1)];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double sum = 0.0;
        for (int l = 0; l < n; ++l) {
          const double ml = m[static_cast<size_t>(l) * n + j] + (l == j ? shift : 0.0);
          sum += entry(b, n, i, l) * ml;
        }
        next[static_cast<size_t>(i) * n + j] = sum;
      }
    }
    m.swap(next);
    tr = 0.0;
    for (int i = 0; i < n; ++i) tr += entry(m, n, i, i);
    c[static_cast<size_t>(n - k)] = -tr / k;
  }
  return c;
}

std::complex<double> polynomial_eval(std::span<const double> c, std::complex<double> z) {
  std::complex<double> acc(1.0, 0.0);  // monic leading term
  for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
  return acc;
}

double polynomial_residual_scale(std::span<const double> c, std::complex<double> z) {
  const double az = std::abs(z);
  double scale = 0.0;
  double pow = 1.0;
  for (size_t k = 0; k < c.size(); ++k) {
    scale += std::abs(c[k]) * pow;
    pow *= az;
  }
  return scale + pow;  // pow == |z|^n here
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> c, int max_sweeps) {
  const int d = static_cast<int>(c.size());
  std::vector<std::complex<double>> z;
  if (d == 0) return z;
  if (d == 1) {
    z.emplace_back(-c[0], 0.0);
    return z;
  }

  // Fujiwara-style radius for the initial circle.
  double r0 = 0.0;
  for (int k = 0; k < d; ++k) {
    const double mag = std::pow(std::abs(c[static_cast<size_t>(k)]), 1.0 / (d - k));
    r0 = std::max(r0, mag);
  }
  r0 = std::max(1.0, 1.2 * r0);

  z.resize(static_cast<size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double theta = 2.0 * kPi * k / d + 0.4;
    z[static_cast<size_t>(k)] = std::polar(r0, theta);
  }

  TinyRng jitter;
  bool converged = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
      std::complex<double> denom(1.0, 0.0);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        denom *= z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
      }
      if (denom == std::complex<double>(0.0, 0.0)) {
        const double eps = 1e-8 * std::max(1.0, std::abs(z[static_cast<size_t>(i)]));
        z[static_cast<size_t>(i)] += std::complex<double>(eps, eps * (i + 1));
        worst = 1.0;
        continue;
      }
      const std::complex<double> delta = polynomial_eval(c, z[static_cast<size_t>(i)]) / denom;
      z[static_cast<size_t>(i)] -= delta;
      worst = std::max(worst,
                       std::abs(delta) / std::max(1.0, std::abs(z[static_cast<size_t>(i)])));
    }
    if (worst < 1e-14) {
      converged = true;
      break;
    }
    if (sweep > 0 && sweep % 600 == 0) {
      for (auto& root : z) {
        root *= std::complex<double>(1.0 + 1e-3 * (jitter.next() - 0.5),
                                     1e-3 * (jitter.next() - 0.5));
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::root_finding_failed,
                "simultaneous root iteration did not converge in " + std::to_string(max_sweeps) +
                    " sweeps");
  }

  // One Newton polish per root where it helps.
  for (auto& root : z) {
    const std::complex<double> p = polynomial_eval(c, root);
    std::complex<double> dp(static_cast<double>(d), 0.0);  // Horner on p'
    for (int k = d - 1; k >= 1; --k) {
      dp = dp * root + std::complex<double>(k * c[static_cast<size_t>(k)], 0.0);
    }
    if (std::abs(dp) > 0.0) {
      const std::complex<double> candidate = root - p / dp;
      if (std::abs(polynomial_eval(c, candidate)) < std::abs(p)) root = candidate;
    }
  }

  std::sort(z.begin(), z.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return z;
}

double gelfand_spectral_estimate(std::span<const double> b, int n, int steps) {
  if (n == 0) return 0.0;
  // Approximate Perron vector by normalized power iteration; any strictly
  // positive scaling vector gives an exact similarity.
  std::vector<double> v(static_cast<size_t>(n), 1.0);
  for (int it = 0; it < 200; ++it) {
    std::vector<double> w(static_cast<size_t>(n), 0.0);
    double mx = 0.0;
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) sum += entry(b, n, i, j) * v[static_cast<size_t>(j)];
      w[static_cast<size_t>(i)] = sum;
      mx = std::max(mx, std::abs(sum));
    }
    if (mx == 0.0) break;  // nilpotent direction; keep current v
    for (int i = 0; i < n; ++i) {
      v[static_cast<size_t>(i)] = std::max(w[static_cast<size_t>(i)] / mx, 1e-12);
    }
  }
  std::vector<double> scaled(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      scaled[static_cast<size_t>(i) * n + j] =
          entry(b, n, i, j) * v[static_cast<size_t>(j)] / v[static_cast<size_t>(i)];
    }
  }

  auto inf_norm = [n](const std::vector<double>& m) {
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += std::abs(m[static_cast<size_t>(i) * n + j]);
      norm = std::max(norm, row);
    }
    return norm;
  };

  std::vector<double> p = scaled;
  double logsum = 0.0;
  for (int step = 1; step < steps; ++step) {
    const double s = inf_norm(p);
    if (s == 0.0) return 0.0;
    for (double& x : p) x /= s;
    logsum += std::log(s);
    std::vector<double> next(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int l = 0; l < n; ++l) {
        const double pil = p[static_cast<size_t>(i) * n + l];
        if (pil == 0.0) continue;
        for (int j = 0; j < n; ++j) {
          next[static_cast<size_t>(i) * n + j] += pil * scaled[static_cast<size_t>(l) * n + j];
        }
      }
    }
    p.swap(next);
  }
  const double s = inf_norm(p);
  if (s == 0.0) return 0.0;
  return std::exp((std::log(s) + logsum) / steps);
}

}  // namespace idemdyn
