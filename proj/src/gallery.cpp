#include "hazardlab/gallery.hpp"

#include <algorithm>
#include <cmath>

#include "hazardlab/error.hpp"
#include "hazardlab/scan.hpp"

namespace hazardlab {

// ---------------------------------------------------------------------------
// Segmented heavy tail

namespace {

Real root(const Real& x, const Real& beta) {
  if (beta == Real(1)) return x;
  return pow(x, Real(1) / beta);
}

Real grow(const Real& x, const Real& beta) {
  if (beta == Real(1)) return x;
  return pow(x, beta);
}

SHTStep sht_step(const SHTParams& p, std::size_t k, const Real& value_prev) {
  const Real one(1);
  Real uk = p.u(k);
  Real a = root(value_prev / uk, p.beta);
  // R(a) + s^beta - a^beta = gamma s^beta with R(a) = u_k a^beta
  Real s = root(grow(a, p.beta) * (one - uk) / (one - p.gamma), p.beta);
  Real t = p.v(k) * s;
  Real value_t = value_prev + grow(t, p.beta) - grow(a, p.beta);
  return SHTStep{k, a, s, t, value_t};
}

}  // namespace

void check_sht_params(const SHTParams& p, std::size_t prefix) {
  if (!(p.gamma.sign() > 0) || !(p.gamma < Real(1))) {
    throw Error(ErrorCode::bad_params, "gamma must lie in (0, 1)");
  }
  if (!p.u.valid() || !p.v.valid()) throw Error(ErrorCode::bad_params, "u and v are required");
  if (!(p.u(1) < p.gamma)) throw Error(ErrorCode::bad_params, "u_1 must be below gamma");
  if (!p.u.strictly_decreasing(prefix)) throw Error(ErrorCode::bad_params, "u must be strictly decreasing");
  for (std::size_t k = 1; k <= prefix; ++k) {
    if (!(p.u(k).sign() > 0)) throw Error(ErrorCode::bad_params, "u must be positive");
  }
  if (!(p.v(1) > Real(1))) throw Error(ErrorCode::bad_params, "v_1 must exceed 1");
  if (!p.v.strictly_increasing(prefix)) throw Error(ErrorCode::bad_params, "v must be strictly increasing");
  if (p.beta < Real(1)) throw Error(ErrorCode::bad_params, "beta must be at least 1");
}

std::vector<SHTStep> sht_steps(const SHTParams& params, std::size_t count) {
  check_sht_params(params);
  std::vector<SHTStep> out;
  Real value(1);
  for (std::size_t k = 1; k <= count; ++k) {
    out.push_back(sht_step(params, k, value));
    value = out.back().value_at_t;
  }
  return out;
}

Hazard sht_build(const SHTParams& params) {
  check_sht_params(params);
  HazardData init;
  init.knots.push_back(Knot{Real(0), Real(0), Piece::power(params.beta)});
  init.knots.push_back(Knot{Real(1), Real(1), Piece()});
  init.horizon = root(Real(1) / params.u(1), params.beta);
  Generator gen = [params](HazardData& data, const Real&) {
    std::size_t k = (data.knots.size() - 2) / 2 + 1;
    SHTStep step = sht_step(params, k, data.knots.back().value);
    data.knots.push_back(Knot{step.a, data.knots.back().value, Piece::power(params.beta)});
    data.knots.push_back(Knot{step.t, step.value_at_t, Piece()});
    data.horizon = root(step.value_at_t / params.u(k + 1), params.beta);
  };
  return Hazard(std::move(init), std::move(gen));
}

Segmentation sht_segmentation(const SHTParams& params, std::size_t count) {
  Segmentation seg;
  seg.gamma = params.gamma;
  if (params.beta != Real(1)) {
    Hazard scale = power_hazard(params.beta);
    seg.scales = ScalePair{scale, scale, Real(0)};
  }
  for (const auto& step : sht_steps(params, count)) seg.intervals.push_back({step.s, step.t});
  return seg;
}

// ---------------------------------------------------------------------------
// Counterexamples

ScaleOrderingExample scale_ordering_counterexample(const Real& alpha) {
  if (!(alpha.sign() > 0)) throw Error(ErrorCode::bad_params, "alpha must be positive");
  return ScaleOrderingExample{log_hazard(alpha, Real(1)), linear_hazard(Real(1)),
                              ScalePair{power_hazard(Real(2)), linear_hazard(Real(1)), Real(0)}};
}

Real left_limit_B(const Sequence& A, std::size_t n) {
  Real b(1);
  for (std::size_t j = 1; j <= n; ++j) b *= A(j) * A(j);
  return b;
}

namespace {

// Piecewise-constant hazard with knots at the integers n where `value` is
// defined; materialized one knot at a time.
Hazard integer_knot_hazard(std::function<std::optional<Real>(std::size_t)> value) {
  HazardData init;
  std::size_t n = 0;
  for (; init.knots.empty() || n <= 1; ++n) {
    if (auto v = value(n)) init.knots.push_back(Knot{Real(static_cast<long>(n)), *v, Piece()});
  }
  init.horizon = init.knots.back().x;
  Generator gen = [value](HazardData& data, const Real&) {
    std::size_t n = static_cast<std::size_t>(data.knots.back().x.to_double()) + 1;
    for (;; ++n) {
      if (auto v = value(n)) {
        data.knots.push_back(Knot{Real(static_cast<long>(n)), *v, Piece()});
        data.horizon = data.knots.back().x;
        return;
      }
    }
  };
  return Hazard(std::move(init), std::move(gen));
}

}  // namespace

LeftLimitExample left_limit_counterexample(const Sequence& A) {
  if (!A.valid() || !(A(1) >= Real(2)) || !A.strictly_increasing(kDefaultPrefix)) {
    throw Error(ErrorCode::bad_params, "A must be strictly increasing with A_1 >= 2");
  }
  auto B = [A](std::size_t n) { return left_limit_B(A, n); };
  LeftLimitExample ex;
  ex.A = A;
  ex.upper = integer_knot_hazard([B](std::size_t n) -> std::optional<Real> { return B(n); });
  ex.lower = integer_knot_hazard([A, B](std::size_t n) -> std::optional<Real> {
    if (n == 0) return Real(1);
    return A(n) * B(n - 1);
  });
  ex.r1 = integer_knot_hazard([B](std::size_t n) -> std::optional<Real> {
    if (n % 2 == 0) return B(n);
    return std::nullopt;
  });
  ex.r2 = integer_knot_hazard([B](std::size_t n) -> std::optional<Real> {
    if (n == 0) return Real(1);
    if (n % 2 == 1) return B(n);
    return std::nullopt;
  });
  return ex;
}

Hazard plateau_jump_hazard(const Real& x1) {
  if (!(x1 > Real(1))) throw Error(ErrorCode::bad_params, "x_1 must exceed 1");
  HazardData init{{Knot{x1, x1 * x1, Piece()}}, x1};
  Generator gen = [](HazardData& data, const Real&) {
    Real x = data.knots.back().x;
    Real next = x * x * x;
    data.knots.push_back(Knot{next, next * next, Piece()});
    data.horizon = next;
  };
  return Hazard(std::move(init), std::move(gen));
}

ScalePair two_heavy_scales(const Real& beta1, const Real& beta2) {
  if (!(beta1.sign() > 0) || !(beta1 < beta2)) {
    throw Error(ErrorCode::bad_params, "need 0 < beta1 < beta2");
  }
  return ScalePair{power_hazard(beta1), power_hazard(beta2), Real(1)};
}

ScalePair two_light_scales() { return ScalePair{linear_hazard(Real(1)), power_hazard(Real(2)), Real(1)}; }

ScalePair gap_scales() { return ScalePair{log1p_hazard(Real(1)), power_hazard(Real(2)), Real(1)}; }

// ---------------------------------------------------------------------------
// Class certificates

LongTailReport check_long_tail_incompatibility(const Hazard& h, std::size_t horizon, bool declared,
                                               const std::vector<Real>& gammas) {
  if (horizon < 2) throw Error(ErrorCode::bad_params, "horizon must cover at least two integers");
  LongTailReport r;
  r.horizon = horizon;
  r.declared = declared;
  r.gammas = gammas;

  std::vector<Real> values(horizon + 1);
  for (std::size_t n = 0; n <= horizon; ++n) values[n] = h.eval(Real(static_cast<long>(n)));
  Real first_half_max(0);
  Real last_half_max(0);
  std::size_t mid = horizon / 2;
  for (std::size_t n = 1; n <= horizon; ++n) {
    r.averages.push_back(values[n] / Real(static_cast<long>(n)));
    Real inc = values[n] - values[n - 1];
    if (n <= mid) first_half_max = max(first_half_max, inc);
    else last_half_max = max(last_half_max, inc);
  }
  r.increments_vanish = last_half_max < first_half_max;
  r.averages_nonincreasing = true;
  for (std::size_t n = std::max<std::size_t>(mid, 1) + 1; n <= horizon; ++n) {
    if (r.averages[n - 1] > r.averages[n - 2]) {
      r.averages_nonincreasing = false;
      break;
    }
  }
  auto sup = ratio_extremum(h, linear_hazard(Real(1)), Real(static_cast<long>(mid)),
                            Real(static_cast<long>(horizon)), true, Extreme::max);
  r.tail_sup_ratio = sup.infinite ? Real::infinity() : sup.value;
  for (const auto& g : gammas) r.condition_c_fails.push_back(r.tail_sup_ratio < g);

  if (!declared) return r;
  if (!r.increments_vanish) {
    r.violation = Violation{ViolationKind::certificate, 0, Real(static_cast<long>(horizon)),
                            "increments do not vanish on the prefix; long-tail declaration rejected"};
    return r;
  }
  if (!r.averages_nonincreasing) {
    r.violation = Violation{ViolationKind::certificate, 0, Real(static_cast<long>(horizon)),
                            "averages R(n)/n increase on the tail of the prefix"};
    return r;
  }
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!r.condition_c_fails[i]) {
      r.violation = Violation{ViolationKind::certificate, i + 1, Real(static_cast<long>(horizon)),
                              "condition (C) not excluded at gamma " + gammas[i].to_string()};
      return r;
    }
  }
  return r;
}

namespace {

bool leq_tolerant(const Real& a, const Real& b) {
  if (a <= b) return true;
  if (a.exact() && b.exact()) return false;
  double x = a.to_double();
  double y = b.to_double();
  return x <= y + 1e-12 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

DVReport check_dv_incompatibility(const Hazard& h, const DVCertificate& cert, const Real& horizon) {
  if (!(cert.p.sign() > 0)) throw Error(ErrorCode::bad_params, "p must be positive");
  if (!(horizon >= Real(2))) throw Error(ErrorCode::bad_params, "horizon must be at least 2");
  DVReport r;
  r.p = cert.p;
  r.horizon = horizon;
  Real half = horizon / Real(2);

  std::vector<Real> points;
  for (Real x(1); x <= half; x *= Real(2)) points.push_back(x);
  for (const auto& x : h.breakpoints(Real(1), half)) {
    points.push_back(x);
    if (x / Real(2) >= Real(1)) points.push_back(x / Real(2));
  }
  points.push_back(half);
  std::sort(points.begin(), points.end(), [](const Real& a, const Real& b) { return a < b; });
  points.erase(std::unique(points.begin(), points.end()), points.end());

  for (const auto& x : points) {
    Real lhs = h.eval(x * Real(2));
    Real rhs = h.eval(x) + cert.p;
    if (!leq_tolerant(lhs, rhs)) {
      r.violation = Violation{ViolationKind::certificate, r.checked.size() + 1, x,
                              "R(2x) = " + lhs.to_string() + " exceeds R(x) + p = " + rhs.to_string()};
      return r;
    }
    r.checked.push_back(x);
  }
  r.certified = true;

  Real r1 = h.eval(Real(1));
  auto ceiling = [&](long n) {
    return (r1 + Real(n + 1) * cert.p) / pow(Real(2), Real(n));
  };
  r.bound_holds = true;
  for (const auto& x : points) {
    long n = 0;
    while (pow(Real(2), Real(n + 1)) <= x) ++n;
    Real ratio = h.eval(x) / x;
    if (!leq_tolerant(ratio, ceiling(n))) {
      r.bound_holds = false;
      r.violation = Violation{ViolationKind::certificate, 0, x, "octave bound fails"};
      return r;
    }
  }
  long top = 0;
  while (pow(Real(2), Real(top + 2)) <= horizon) ++top;
  r.gamma_ceiling = ceiling(top);
  return r;
}

}  // namespace hazardlab
