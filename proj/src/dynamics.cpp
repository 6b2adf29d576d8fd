#include "idemdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "idemdyn/classifier.hpp"
#include "idemdyn/fixpoint.hpp"
#include "idemdyn/polyroots.hpp"

namespace idemdyn {

namespace {

constexpr double kDivergenceThreshold = -1e8;
constexpr double kZeroThreshold = 1e-6;

double coord_value(const ExtendedReal& v) {
  return v.is_neg_inf() ? -std::numeric_limits<double>::infinity() : v.value();
}

std::vector<int> neg_inf_seeds(const IdempotentMeasure& x0) {
  std::vector<int> seeds;
  for (int i = 0; i < x0.size(); ++i) {
    if (x0[i].is_neg_inf()) seeds.push_back(i);
  }
  return seeds;
}

std::string measure_text(std::span<const ExtendedReal> x) {
  std::string s = "(";
  for (size_t i = 0; i < x.size(); ++i) {
    if (i > 0) s += ", ";
    s += to_token(x[i]);
  }
  s += ")";
  return s;
}

}  // namespace

std::string outcome_name(CheckOutcome o) {
  switch (o) {
    case CheckOutcome::agree:
      return "agree";
    case CheckOutcome::disagree:
      return "disagree";
    case CheckOutcome::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string omega_kind_name(OmegaEstimate::Kind k) {
  switch (k) {
    case OmegaEstimate::Kind::converged:
      return "converged";
    case OmegaEstimate::Kind::periodic_orbit:
      return "periodic_orbit";
    case OmegaEstimate::Kind::diverging_to_neg_inf:
      return "diverging_to_neg_inf";
    case OmegaEstimate::Kind::undecided:
      return "undecided";
  }
  return "?";
}

std::string verdict_name(AsymptoticClass1::Verdict v) {
  switch (v) {
    case AsymptoticClass1::Verdict::all_inside:
      return "all_inside";
    case AsymptoticClass1::Verdict::all_outside:
      return "all_outside";
    case AsymptoticClass1::Verdict::mixed:
      return "mixed";
  }
  return "?";
}

std::string limit_kind_name(LimitKind k) {
  switch (k) {
    case LimitKind::to_zero:
      return "to_zero";
    case LimitKind::to_neg_inf:
      return "to_neg_inf";
    case LimitKind::periodic:
      return "periodic";
  }
  return "?";
}

Trajectory simulate(const Matrix& a, const IdempotentMeasure& x0, int steps) {
  if (steps < 0) {
    throw Error(ErrorCode::invalid_argument, "steps must be >= 0");
  }
  if (a.size() != x0.size()) {
    throw Error(ErrorCode::dimension_mismatch, "simulate: dimension mismatch");
  }
  OperatorClass c = classify(a);
  if (is_neither(c)) {
    throw Error(ErrorCode::not_classified, "simulate needs a class1/class2 matrix");
  }
  Trajectory traj{a};
  traj.points.reserve(static_cast<size_t>(steps) + 1);
  traj.points.emplace_back(x0.coords().begin(), x0.coords().end());
  for (int m = 1; m <= steps; ++m) {
    std::vector<ExtendedReal> next = idemdyn::apply(a, traj.points.back());
    for (int i = 0; i < a.size(); ++i) {
      auto& v = next[static_cast<size_t>(i)];
      if (v.is_finite() && v.value() < kSaturationFloor) {
        v = ExtendedReal::neg_inf();
        traj.saturations.push_back({m, i});
      }
    }
    traj.points.push_back(std::move(next));
  }
  return traj;
}

LimitPrediction predict_limit_class2(const Matrix& a, const IdempotentMeasure& x0,
                                     double tol_unit) {
  if (a.size() != x0.size()) {
    throw Error(ErrorCode::dimension_mismatch, "predict: dimension mismatch");
  }
  const Permutation pi = extract_permutation(a);
  LimitPrediction pred;
  pred.cycles = cycle_decomposition(pi);
  for (const auto& cycle : pred.cycles.cycles) {
    pred.cycle_products.push_back(cycle_product(a, cycle));
  }

  const int n = a.size();
  std::vector<int> cycle_of(static_cast<size_t>(n), 0);
  for (size_t p = 0; p < pred.cycles.cycles.size(); ++p) {
    for (int v : pred.cycles.cycles[p]) cycle_of[static_cast<size_t>(v)] = static_cast<int>(p);
  }

  pred.coords.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int p = cycle_of[static_cast<size_t>(i)];
    const auto& cycle = pred.cycles.cycles[static_cast<size_t>(p)];
    const int k = static_cast<int>(cycle.size());
    const double q = pred.cycle_products[static_cast<size_t>(p)];

    CoordinateLimit& lim = pred.coords[static_cast<size_t>(i)];
    lim.cycle_index = p;
    lim.cycle_product = q;
    lim.period = k;

    bool cycle_has_inf = false;
    bool cycle_has_negative = false;
    for (int v : cycle) {
      if (x0[v].is_neg_inf()) cycle_has_inf = true;
      else if (x0[v].value() < 0.0) cycle_has_negative = true;
    }

    if (std::abs(q - 1.0) <= tol_unit) {
      lim.kind = LimitKind::periodic;
      lim.residues.reserve(static_cast<size_t>(k));
      for (int r = 0; r < k; ++r) {
        lim.residues.push_back(scale(orbit_product(a, pi, i, r), x0[pi.power_of(i, r)]));
      }
    } else if (q < 1.0) {
      if (cycle_has_inf) {
        // The -inf seed recurs with period k; finite subsequences shrink to 0.
        lim.kind = LimitKind::periodic;
        for (int r = 0; r < k; ++r) {
          lim.residues.push_back(x0[pi.power_of(i, r)].is_neg_inf() ? ExtendedReal::neg_inf()
                                                                    : ExtendedReal(0.0));
        }
      } else {
        lim.kind = LimitKind::to_zero;
      }
    } else {
      // Q > 1: Q^s * 0 stays 0, so a cycle whose initial values are all
      // exactly 0 never leaves 0; anything negative (or -inf) blows down.
      lim.kind = (cycle_has_inf || cycle_has_negative) ? LimitKind::to_neg_inf
                                                       : LimitKind::to_zero;
    }
  }
  return pred;
}

AsymptoticClass1 class1_asymptotics(const Matrix& a, double tol_unit) {
  OperatorClass c = classify(a);
  const auto* c1 = std::get_if<ClassI>(&c);
  if (c1 == nullptr) {
    throw Error(ErrorCode::not_class1, "asymptotics of the minor require a class1 matrix");
  }
  AsymptoticClass1 asym;
  std::vector<bool> zero(static_cast<size_t>(a.size()), false);
  for (int z : c1->zero_rows) zero[static_cast<size_t>(z)] = true;
  for (int i = 0; i < a.size(); ++i) {
    if (!zero[static_cast<size_t>(i)]) asym.kept.push_back(i);
  }
  const int n0 = static_cast<int>(asym.kept.size());
  if (n0 > 32) {
    throw Error(ErrorCode::invalid_argument, "minor larger than 32 x 32 is not supported");
  }
  if (n0 == 0) {
    asym.verdict = AsymptoticClass1::Verdict::all_inside;
    return asym;
  }

  std::vector<double> b(static_cast<size_t>(n0) * n0);
  for (int i = 0; i < n0; ++i) {
    for (int j = 0; j < n0; ++j) {
      b[static_cast<size_t>(i) * n0 + j] = a.at(asym.kept[i], asym.kept[j]);
    }
  }
  const std::vector<double> coeffs = characteristic_polynomial(b, n0);
  asym.eigenvalues = polynomial_roots(coeffs);
  for (const auto& lambda : asym.eigenvalues) {
    const double mag = std::abs(lambda);
    asym.spectral_radius = std::max(asym.spectral_radius, mag);
    if (mag < 1.0 - tol_unit) {
      ++asym.n_stable;
    } else if (mag > 1.0 + tol_unit) {
      ++asym.n_unstable;
    } else {
      ++asym.n_unit;
    }
  }
  asym.gelfand_estimate = gelfand_spectral_estimate(b, n0, 64);
  asym.low_confidence = std::abs(asym.gelfand_estimate - asym.spectral_radius) >
                        1e-2 * std::max(1.0, asym.spectral_radius);
  if (asym.n_stable == n0) {
    asym.verdict = AsymptoticClass1::Verdict::all_inside;
  } else if (asym.n_unstable == n0) {
    asym.verdict = AsymptoticClass1::Verdict::all_outside;
  } else {
    asym.verdict = AsymptoticClass1::Verdict::mixed;
  }
  return asym;
}

namespace {

OmegaEstimate omega_from_trajectory(const Trajectory& traj, int k_max, double tol) {
  OmegaEstimate est;
  const int m_end = traj.steps();
  est.steps_used = m_end;

  for (int k = 1; k <= k_max; ++k) {
    if (m_end < 10 * k) break;
    bool ok = true;
    for (int m = m_end - 10 * k; m + k <= m_end && ok; ++m) {
      ok = distance_inf(traj.at(m), traj.at(m + k)) < tol;
    }
    if (!ok) continue;
    if (k == 1) {
      est.kind = OmegaEstimate::Kind::converged;
      est.limit = traj.at(m_end);
    } else {
      est.kind = OmegaEstimate::Kind::periodic_orbit;
      est.period = k;
      for (int m = m_end - k + 1; m <= m_end; ++m) est.orbit.push_back(traj.at(m));
    }
    return est;
  }

  const int n = traj.op.size();
  std::vector<bool> diverging(static_cast<size_t>(n), false);
  for (const auto& sat : traj.saturations) diverging[static_cast<size_t>(sat.coord)] = true;
  const int w = std::min(100, m_end / 2);
  if (w >= 1) {
    for (int i = 0; i < n; ++i) {
      if (diverging[static_cast<size_t>(i)]) continue;
      double min_last = std::numeric_limits<double>::infinity();
      double min_prev = std::numeric_limits<double>::infinity();
      for (int m = m_end - w + 1; m <= m_end; ++m) {
        min_last = std::min(min_last, coord_value(traj.at(m)[static_cast<size_t>(i)]));
      }
      for (int m = m_end - 2 * w + 1; m <= m_end - w; ++m) {
        min_prev = std::min(min_prev, coord_value(traj.at(m)[static_cast<size_t>(i)]));
      }
      if (min_last < kDivergenceThreshold && min_last < min_prev) {
        diverging[static_cast<size_t>(i)] = true;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (diverging[static_cast<size_t>(i)]) est.diverging_coords.push_back(i);
  }
  if (!est.diverging_coords.empty()) {
    est.kind = OmegaEstimate::Kind::diverging_to_neg_inf;
  }
  return est;
}

int class2_period_cap(const Matrix& a) {
  const Permutation pi = extract_permutation(a);
  return static_cast<int>(permutation_order(cycle_decomposition(pi)));
}

}  // namespace

OmegaEstimate omega_estimate(const Matrix& a, const IdempotentMeasure& x0, int max_steps,
                             double tol) {
  const Trajectory traj = simulate(a, x0, max_steps);
  OperatorClass c = classify(a);
  int k_max = a.size() * a.size();
  if (is_class2(c)) k_max = class2_period_cap(a);
  k_max = std::max(1, std::min(k_max, std::max(1, max_steps / 10)));
  return omega_from_trajectory(traj, k_max, tol);
}

// ---------------------------------------------------------------------------
// verify: differential comparison of predictions against the simulation.
// ---------------------------------------------------------------------------

namespace {

struct VerifyContext {
  const Matrix& a;
  const IdempotentMeasure& x0;
  const Trajectory& traj;
  double tol;
  // Horizon untouched by saturation: closed-form comparisons stop here.
  int honest_end;
};

void check_neg_inf_fate(VerifyContext& ctx, VerificationReport& report) {
  const NegInfFate fate = neg_inf_fate(ctx.a, neg_inf_seeds(ctx.x0));
  VerificationCheck check;
  check.name = "neg_inf_fate";
  if (!fate.persists) {
    check.predicted = "no -inf coordinate from step " + std::to_string(fate.by_step) + " on";
    check.observed = "none seen";
    for (int m = fate.by_step; m <= ctx.honest_end; ++m) {
      if (has_neg_inf(ctx.traj.at(m))) {
        check.outcome = CheckOutcome::disagree;
        check.first_divergent_step = m;
        check.observed = "-inf present at step " + std::to_string(m);
        break;
      }
    }
  } else {
    check.predicted = "some -inf coordinate at every step"
                      " (cycle reached)";
    check.observed = "pattern present";
    for (int m = 1; m <= ctx.honest_end; ++m) {
      if (!has_neg_inf(ctx.traj.at(m))) {
        check.outcome = CheckOutcome::disagree;
        check.first_divergent_step = m;
        check.observed = "no -inf at step " + std::to_string(m);
        break;
      }
    }
  }
  report.checks.push_back(std::move(check));
}

void check_limit_membership(VerifyContext& ctx, VerificationReport& report,
                            const OmegaEstimate& omega) {
  if (omega.kind != OmegaEstimate::Kind::converged) return;
  VerificationCheck check;
  check.name = "limit_is_fixed_point";
  check.predicted = "converged limit passes the fixed-point test";
  try {
    const IdempotentMeasure limit = make_measure(
        std::vector<ExtendedReal>(omega.limit.begin(), omega.limit.end()), 1e-12);
    const double tol = std::max(10.0 * ctx.tol, 1e-8);
    if (is_fixed_point(ctx.a, limit, tol)) {
      check.observed = "member";
    } else {
      check.outcome = CheckOutcome::disagree;
      check.observed = "limit " + measure_text(omega.limit) + " is not fixed";
    }
  } catch (const Error& e) {
    check.outcome = CheckOutcome::disagree;
    check.observed = std::string("limit not a valid measure: ") + e.what();
  }
  report.checks.push_back(std::move(check));
}

// Required subsequence count for Q^s * c to pass below `target`.
long periods_until(double q, double c, double target) {
  if (c <= 0.0) return 0;
  if (c < target) return 0;
  const double s = std::log(target / c) / std::log(q);  // q < 1: s > 0
  return static_cast<long>(std::ceil(s)) + 1;
}

void check_class2(VerifyContext& ctx, VerificationReport& report) {
  const Permutation pi = extract_permutation(ctx.a);
  const LimitPrediction pred = predict_limit_class2(ctx.a, ctx.x0, ctx.tol);
  const int n = ctx.a.size();
  const int m_end = ctx.traj.steps();

  // Exact subsequence law x_i^(m) = prod_{j<m} a(pi^j i, pi^{j+1} i) x0(pi^m i),
  // checked for every coordinate up to min(200, horizon).
  {
    VerificationCheck check;
    check.name = "subsequence_law";
    const int horizon = std::min(200, ctx.honest_end);
    check.predicted = "closed form matches simulation through step " + std::to_string(horizon);
    check.observed = "matches";
    std::vector<double> running(static_cast<size_t>(n), 1.0);
    std::vector<int> position(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) position[static_cast<size_t>(i)] = i;
    bool in_range = true;
    for (int m = 1; m <= horizon && in_range && check.outcome == CheckOutcome::agree; ++m) {
      for (int i = 0; i < n; ++i) {
        const int prev = position[static_cast<size_t>(i)];
        const int next = pi(prev);
        running[static_cast<size_t>(i)] *= ctx.a.at(prev, next);
        position[static_cast<size_t>(i)] = next;
        if (!std::isfinite(running[static_cast<size_t>(i)])) {
          in_range = false;  // coefficient left double range; stop comparing
          break;
        }
        const ExtendedReal expected = scale(running[static_cast<size_t>(i)], ctx.x0[next]);
        const ExtendedReal got = ctx.traj.at(m)[static_cast<size_t>(i)];
        bool match = false;
        if (expected.is_neg_inf() || got.is_neg_inf()) {
          match = expected.is_neg_inf() == got.is_neg_inf();
        } else {
          match = std::abs(got.value() - expected.value()) <=
                  1e-9 * std::max(1.0, std::abs(expected.value()));
        }
        if (!match) {
          check.outcome = CheckOutcome::disagree;
          check.first_divergent_step = m;
          check.observed = "coordinate " + std::to_string(i + 1) + " diverges at step " +
                           std::to_string(m);
          break;
        }
      }
    }
    report.checks.push_back(std::move(check));
  }

  // Per-coordinate limit verdicts at the simulated horizon.
  for (int i = 0; i < n; ++i) {
    const CoordinateLimit& lim = pred.coords[static_cast<size_t>(i)];
    const auto& cycle = pred.cycles.cycles[static_cast<size_t>(lim.cycle_index)];
    const int k = lim.period;
    VerificationCheck check;
    check.name = "coordinate_" + std::to_string(i + 1);
    check.predicted = limit_kind_name(lim.kind);

    auto coord_at = [&](int m) { return ctx.traj.at(m)[static_cast<size_t>(i)]; };

    switch (lim.kind) {
      case LimitKind::to_zero: {
        double max_c = 1.0;
        for (int r = 1; r < k; ++r) max_c = std::max(max_c, orbit_product(ctx.a, pi, i, r));
        double max_x0 = 0.0;
        for (int v : cycle) {
          if (v >= 0 && ctx.x0[v].is_finite()) max_x0 = std::max(max_x0, std::abs(ctx.x0[v].value()));
        }
        long need;
        if (lim.cycle_product > 1.0 || max_x0 == 0.0) {
          need = 0;  // values are exactly 0 from the start
        } else {
          need = periods_until(lim.cycle_product, max_c * max_x0, kZeroThreshold);
        }
        const long m_star = need * k + k;
        if (m_star > m_end) {
          check.outcome = CheckOutcome::inconclusive;
          check.observed = "horizon " + std::to_string(m_end) + " < required " +
                           std::to_string(m_star);
          break;
        }
        check.observed = "small tail";
        for (int m = m_end - k + 1; m <= m_end; ++m) {
          const ExtendedReal v = coord_at(m);
          if (v.is_neg_inf() || std::abs(v.value()) >= kZeroThreshold) {
            check.outcome = CheckOutcome::disagree;
            check.first_divergent_step = m;
            check.observed = "value " + to_token(v) + " at step " + std::to_string(m);
            break;
          }
        }
        break;
      }
      case LimitKind::to_neg_inf: {
        bool observed = false;
        for (const auto& sat : ctx.traj.saturations) {
          if (sat.coord == i) observed = true;
        }
        double min_seen = 0.0;
        for (int m = 0; m <= m_end && !observed; ++m) {
          const double v = coord_value(coord_at(m));
          min_seen = std::min(min_seen, v);
          if (v < kDivergenceThreshold) observed = true;
        }
        if (observed) {
          check.observed = "diverged";
          break;
        }
        // fastest negative residue decides the needed horizon
        long best = std::numeric_limits<long>::max();
        for (int r = 0; r < k; ++r) {
          const ExtendedReal v0 = ctx.x0[pi.power_of(i, r)];
          if (v0.is_finite() && v0.value() < 0.0) {
            const double c = orbit_product(ctx.a, pi, i, r) * std::abs(v0.value());
            const double s = std::log(-kDivergenceThreshold / c) / std::log(lim.cycle_product);
            best = std::min(best, static_cast<long>(std::ceil(std::max(0.0, s))) + 1);
          }
        }
        const long m_star = best == std::numeric_limits<long>::max()
                                ? std::numeric_limits<long>::max()
                                : best * k + k;
        if (m_star <= m_end) {
          check.outcome = CheckOutcome::disagree;
          check.first_divergent_step = static_cast<int>(m_star);
          check.observed = "min value " + format_double(min_seen) + " never passed threshold";
        } else {
          check.outcome = CheckOutcome::inconclusive;
          check.observed = "horizon too short to witness divergence";
        }
        break;
      }
      case LimitKind::periodic: {
        const bool exact = std::abs(lim.cycle_product - 1.0) <= ctx.tol;
        check.predicted = "periodic, period " + std::to_string(k);
        check.observed = "matches residues";
        if (exact) {
          // the law holds at every step; compare the whole honest horizon
          for (int m = 1; m <= ctx.honest_end; ++m) {
            const ExtendedReal expect = lim.residues[static_cast<size_t>(m % k)];
            const ExtendedReal got = coord_at(m);
            bool match;
            if (expect.is_neg_inf() || got.is_neg_inf()) {
              match = expect.is_neg_inf() == got.is_neg_inf();
            } else {
              match = std::abs(got.value() - expect.value()) <=
                      std::max(1e-9 * std::max(1.0, std::abs(expect.value())), ctx.tol);
            }
            if (!match) {
              check.outcome = CheckOutcome::disagree;
              check.first_divergent_step = m;
              check.observed = "step " + std::to_string(m) + ": " + to_token(got) +
                               " vs residue " + to_token(expect);
              break;
            }
          }
        } else {
          // Q < 1 with a recurring -inf: match the -inf pattern exactly and
          // require the finite residues to have shrunk at the tail.
          for (int m = std::max(1, m_end - 3 * k); m <= m_end; ++m) {
            const ExtendedReal expect = lim.residues[static_cast<size_t>(m % k)];
            const ExtendedReal got = coord_at(m);
            bool match;
            if (expect.is_neg_inf()) {
              match = got.is_neg_inf();
            } else {
              match = got.is_finite();  // magnitude handled below
            }
            if (!match) {
              check.outcome = CheckOutcome::disagree;
              check.first_divergent_step = m;
              check.observed = "pattern mismatch at step " + std::to_string(m);
              break;
            }
          }
          if (check.outcome == CheckOutcome::agree) {
            double max_c = 1.0;
            for (int r = 1; r < k; ++r) max_c = std::max(max_c, orbit_product(ctx.a, pi, i, r));
            double max_x0 = 0.0;
            for (int v : cycle) {
              if (ctx.x0[v].is_finite()) max_x0 = std::max(max_x0, std::abs(ctx.x0[v].value()));
            }
            const long m_star =
                (periods_until(lim.cycle_product, max_c * max_x0, kZeroThreshold) + 1) * k;
            if (m_star > m_end) {
              check.outcome = CheckOutcome::inconclusive;
              check.observed = "horizon too short for the finite residues to settle";
            } else {
              for (int m = m_end - k + 1; m <= m_end; ++m) {
                const ExtendedReal got = coord_at(m);
                if (got.is_finite() && std::abs(got.value()) >= kZeroThreshold) {
                  check.outcome = CheckOutcome::disagree;
                  check.first_divergent_step = m;
                  check.observed = "finite residue still " + to_token(got);
                  break;
                }
              }
            }
          }
        }
        break;
      }
    }
    report.checks.push_back(std::move(check));
  }
}

void check_class1(VerifyContext& ctx, VerificationReport& report, const OmegaEstimate& omega) {
  const AsymptoticClass1 asym = class1_asymptotics(ctx.a, ctx.tol);
  const NegInfFate fate = neg_inf_fate(ctx.a, neg_inf_seeds(ctx.x0));
  const int m_end = ctx.traj.steps();

  if (asym.verdict == AsymptoticClass1::Verdict::mixed) {
    return;  // no per-point forward claim for a mixed spectrum
  }
  VerificationCheck check;
  check.name = "minor_asymptotics";
  if (fate.persists) {
    check.outcome = CheckOutcome::inconclusive;
    check.predicted = verdict_name(asym.verdict);
    check.observed = "-inf persists; the eigenvalue prediction covers the finite regime only";
    report.checks.push_back(std::move(check));
    return;
  }

  if (asym.verdict == AsymptoticClass1::Verdict::all_inside) {
    check.predicted = "trajectory converges to the origin";
    if (omega.kind == OmegaEstimate::Kind::converged) {
      double worst = 0.0;
      for (const auto& v : omega.limit) {
        worst = std::max(worst, v.is_neg_inf() ? std::numeric_limits<double>::infinity()
                                               : std::abs(v.value()));
      }
      if (worst <= kZeroThreshold) {
        check.observed = "converged to the origin";
      } else {
        check.outcome = CheckOutcome::disagree;
        check.observed = "converged to " + measure_text(omega.limit);
      }
    } else {
      const double rho = std::min(asym.spectral_radius, 0.999);
      const long m_star =
          fate.by_step +
          3 * static_cast<long>(std::ceil(std::log(std::max(ctx.tol, 1e-12)) / std::log(rho))) +
          20;
      if (m_end >= m_star) {
        check.outcome = CheckOutcome::disagree;
        check.observed = "not converged after " + std::to_string(m_end) + " steps";
      } else {
        check.outcome = CheckOutcome::inconclusive;
        check.observed = "spectral radius " + format_double(asym.spectral_radius) +
                         " needs a longer horizon";
      }
    }
    report.checks.push_back(std::move(check));
    return;
  }

  // all_outside: after the -inf coordinates vanish the kept dynamics is an
  // expansion, so a nonzero kept state must blow down; a zero kept state
  // stays at the origin. The kept block is autonomous only from step 1 on
  // (step 0 still feeds it through the zero-row coordinates).
  const int settle = std::min(std::max(fate.by_step, 1), m_end);
  bool kept_zero = true;
  for (int idx : asym.kept) {
    const ExtendedReal v = ctx.traj.at(settle)[static_cast<size_t>(idx)];
    if (v.is_neg_inf() || v.value() != 0.0) kept_zero = false;
  }
  if (kept_zero) {
    check.predicted = "origin is reached and kept";
    if (omega.kind == OmegaEstimate::Kind::converged) {
      check.observed = "converged";
    } else {
      check.outcome = CheckOutcome::disagree;
      check.observed = omega_kind_name(omega.kind);
    }
  } else {
    check.predicted = "diverging to -inf";
    if (omega.kind == OmegaEstimate::Kind::diverging_to_neg_inf) {
      check.observed = "diverged";
    } else {
      double min_mod = std::numeric_limits<double>::infinity();
      for (const auto& lambda : asym.eigenvalues) min_mod = std::min(min_mod, std::abs(lambda));
      const double rate = std::max(min_mod, 1.0 + 1e-6);
      const long m_star =
          settle + static_cast<long>(std::ceil(std::log(1e9) / std::log(rate))) * 2 + 20;
      if (m_end >= m_star) {
        check.outcome = CheckOutcome::disagree;
        check.observed = omega_kind_name(omega.kind) + " after " + std::to_string(m_end) +
                         " steps";
      } else {
        check.outcome = CheckOutcome::inconclusive;
        check.observed = "horizon too short to witness divergence";
      }
    }
  }
  report.checks.push_back(std::move(check));
}

}  // namespace

VerificationReport verify(const Matrix& a, const IdempotentMeasure& x0, int steps, double tol) {
  OperatorClass c = classify(a);
  if (is_neither(c)) {
    throw Error(ErrorCode::not_classified, "verify needs a class1/class2 matrix");
  }
  VerificationReport report;
  report.classification = class_name(c);

  const Trajectory traj = simulate(a, x0, steps);
  int honest_end = traj.steps();
  for (const auto& sat : traj.saturations) honest_end = std::min(honest_end, sat.step - 1);

  int k_max = is_class2(c) ? class2_period_cap(a) : a.size() * a.size();
  k_max = std::max(1, std::min(k_max, std::max(1, steps / 10)));
  report.omega = omega_from_trajectory(traj, k_max, tol);

  VerifyContext ctx{a, x0, traj, tol, honest_end};
  check_neg_inf_fate(ctx, report);
  if (is_class2(c)) {
    check_class2(ctx, report);
  } else {
    check_class1(ctx, report, report.omega);
  }
  check_limit_membership(ctx, report, report.omega);

  for (const auto& check : report.checks) {
    if (check.outcome == CheckOutcome::disagree) report.agree = false;
    if (check.outcome == CheckOutcome::inconclusive) report.inconclusive = true;
  }
  return report;
}

}  // namespace idemdyn
