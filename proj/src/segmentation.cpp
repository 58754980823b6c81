#include "hazardlab/segmentation.hpp"

#include <algorithm>
#include <cmath>

#include "hazardlab/error.hpp"

namespace hazardlab {

namespace {

Violation violation(ViolationKind kind, std::size_t index, Real at, std::string detail) {
  return Violation{kind, index, std::move(at), std::move(detail)};
}

}  // namespace

SegmentationReport verify_segmentation(const Hazard& h, const Segmentation& seg, std::size_t prefix,
                                       DecayCriterion criterion) {
  SegmentationReport report;
  const auto& iv = seg.intervals;
  const Hazard& up = seg.scales.upper;
  const Hazard& down = seg.scales.lower;

  for (std::size_t i = 0; i < iv.size(); ++i) {
    bool ordered = iv[i].s < iv[i].t && (i == 0 || iv[i - 1].t < iv[i].s);
    if (!ordered && !report.violation) {
      report.violation = violation(ViolationKind::interleave, i + 1, iv[i].s,
                                   "intervals are not strictly interleaved");
      return report;
    }
  }
  if (!iv.empty() && !seg.scales.lower.shares_state(seg.scales.upper) &&
      !(down.eval(iv.front().s) > Real(1))) {
    report.violation = violation(ViolationKind::scale_start, 1, iv.front().s,
                                 "R_down(s_1) must exceed 1");
    return report;
  }

  for (std::size_t i = 0; i < iv.size(); ++i) {
    IntervalCheck check{iv[i], ratio_extremum(h, up, iv[i].s, iv[i].t, !seg.right_open, Extreme::min)};
    check.ok = check.min_ratio.empty || check.min_ratio.infinite || check.min_ratio.value >= seg.gamma;
    if (!check.ok && !report.violation) {
      report.violation = violation(ViolationKind::ratio, i + 1, check.min_ratio.at,
                                   "ratio " + check.min_ratio.value.to_string() + " below gamma " +
                                       seg.gamma.to_string());
    }
    report.intervals.push_back(std::move(check));
  }

  std::size_t len = std::min(prefix, iv.size());
  for (std::size_t i = 0; i < len; ++i) {
    Real num = criterion == DecayCriterion::left_limit ? up.left_limit(iv[i].s) : up.eval(iv[i].s);
    Real den = down.eval(iv[i].t);
    report.decay.push_back(den.sign() > 0 ? num / den : Real::infinity());
  }
  if (report.violation) return report;

  for (std::size_t i = 0; i < len && i < seg.decay_bounds.size(); ++i) {
    if (!(report.decay[i] < seg.decay_bounds[i])) {
      report.violation = violation(ViolationKind::decay, i + 1, iv[i].s,
                                   "decay term " + report.decay[i].to_string() + " not below bound " +
                                       seg.decay_bounds[i].to_string());
      return report;
    }
  }
  if (len >= 2) {
    report.surrogate_checked = true;
    std::size_t tail = (len + 1) / 2;
    for (std::size_t i = len - tail; i < len; ++i) {
      if (!(report.decay[i] < report.decay.front())) {
        report.violation = violation(ViolationKind::decay, i + 1, iv[i].s,
                                     "decay term " + report.decay[i].to_string() +
                                         " not below the first term " + report.decay.front().to_string());
        return report;
      }
    }
  }
  return report;
}

Segmentation corollary1_segments(const Hazard& h, const Real& gamma, std::size_t count,
                                 const std::optional<Real>& limit) {
  if (!(gamma.sign() > 0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  Hazard identity = linear_hazard(Real(1));
  Segmentation seg{gamma, {}, ScalePair::linear(), false, {}};
  Real t_prev(1);
  for (std::size_t i = 1; i <= count; ++i) {
    Real level = Real(static_cast<long>(i + 1)) * gamma;
    auto s = first_ratio_at_least(h, identity, level, t_prev + Real(1), limit, max_scan());
    if (!s) {
      throw Error(ErrorCode::search_exhausted,
                  "R(t)/t >= " + level.to_string() + " not reached for index " + std::to_string(i));
    }
    Real t = Real(static_cast<long>(i + 1)) * *s;
    seg.intervals.push_back({*s, t});
    t_prev = t;
  }
  return seg;
}

Segmentation corollary2_segments(const Hazard& h, const Hazard& upper, const Real& gamma,
                                 const Sequence& A, std::size_t count, const Real& t0) {
  if (!(gamma.sign() > 0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  if (!(A(1) > Real(1)) || !A.strictly_increasing(std::max<std::size_t>(count, 2))) {
    throw Error(ErrorCode::bad_params, "A must be strictly increasing with A_1 > 1");
  }
  if (!(upper.eval(t0).sign() > 0)) throw Error(ErrorCode::bad_params, "R_up(t_0) must be positive");
  Segmentation seg{gamma, {}, ScalePair{upper, upper, t0}, true, {}};
  Real t_prev = t0;
  for (std::size_t i = 1; i <= count; ++i) {
    Real a = A(i);
    auto s = first_ratio_at_least(h, upper, a * gamma, t_prev, std::nullopt, max_scan());
    if (!s) {
      throw Error(ErrorCode::search_exhausted,
                  "R/R_up >= " + (a * gamma).to_string() + " not reached for index " + std::to_string(i));
    }
    if (i > 1 && *s == t_prev) {
      throw Error(ErrorCode::degenerate, "s_" + std::to_string(i) + " coincides with t_" +
                                             std::to_string(i - 1));
    }
    Real t = upper.inverse(a * upper.eval(*s));
    seg.intervals.push_back({*s, t});
    t_prev = t;
  }
  return seg;
}

Segmentation extract_from_pair(const Hazard& h1, const Hazard& h2, const ScalePair& scales,
                               const Real& gamma, const Real& u0, const HeavinessWitness& witness) {
  const Hazard& up = scales.upper;
  const Hazard& down = scales.lower;
  const auto& u = witness.points;
  if (u.empty()) throw Error(ErrorCode::precondition_violated, "empty witness");
  if (!(down.eval(u0) > Real(1))) {
    throw Error(ErrorCode::precondition_violated, "R_down(u_0) must exceed 1");
  }
  Real half = gamma / Real(2);
  Real quarter = gamma / Real(4);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!(u[i] > (i == 0 ? u0 : u[i - 1]))) {
      throw Error(ErrorCode::precondition_violated, "witness points must increase from u_0");
    }
    if (!(h2.eval(u[i]) < half * witness.decay(i + 1) * down.eval(u[i]))) {
      throw Error(ErrorCode::precondition_violated,
                  "witness inequality fails at u_" + std::to_string(i + 1) + " = " + u[i].to_string());
    }
  }
  auto lower_bound = ratio_extremum(add(h1, h2), up, u0, u.back(), true, Extreme::min);
  if (!lower_bound.empty && !lower_bound.infinite && lower_bound.value < half) {
    throw Error(ErrorCode::precondition_violated,
                "(H1 + H2)/R_up below gamma/2 at " + lower_bound.at.to_string());
  }

  Segmentation seg{quarter, {}, scales, true, {}};
  Real left = u0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    Real right = u[j];
    auto stagnation = ratio_extremum(h1, down, left, right, false, Extreme::min);
    bool found = !stagnation.empty && !stagnation.infinite && stagnation.value < quarter;
    if (found) {
      auto s = last_ratio_below(h1, up, quarter, left, right);
      bool after_previous = seg.intervals.empty() || (s && *s > seg.intervals.back().t);
      if (s && *s < right && after_previous) {
        seg.intervals.push_back({*s, right});
        seg.decay_bounds.push_back(Real(2) * witness.decay(j + 1));
      }
    }
    left = right;
  }
  if (seg.intervals.empty()) {
    throw Error(ErrorCode::no_stagnation_segment,
                "no point with H1/R_down < gamma/4 on the witness range");
  }
  return seg;
}

Segmentation extract_linear_scale(const Hazard& h1, const Hazard& h2, const Real& gamma,
                                  const Real& u0, const std::vector<Real>& points) {
  if (points.empty()) throw Error(ErrorCode::precondition_violated, "empty witness");
  Hazard identity = linear_hazard(Real(1));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Real& ui = points[i];
    if (!(ui > (i == 0 ? u0 : points[i - 1]))) {
      throw Error(ErrorCode::precondition_violated, "witness points must increase from u_0");
    }
    double bound = gamma.to_double() * std::exp(-static_cast<double>(i + 1));
    if (h2.eval(ui).to_double() / ui.to_double() > bound) {
      throw Error(ErrorCode::precondition_violated,
                  "witness inequality fails at u_" + std::to_string(i + 1));
    }
  }
  auto lower_bound = ratio_extremum(add(h1, h2), identity, u0, points.back(), true, Extreme::min);
  if (!lower_bound.empty && !lower_bound.infinite && lower_bound.value < gamma / Real(2)) {
    throw Error(ErrorCode::precondition_violated,
                "(H1 + H2)/x below gamma/2 at " + lower_bound.at.to_string());
  }
  Segmentation seg{gamma / Real(10), {}, ScalePair::linear(), false, {}};
  for (std::size_t i = 2; i <= points.size(); ++i) {
    const Real& ui = points[i - 1];
    Real vi = ui * Real::approx(std::exp(-static_cast<double>(i) / 2));
    if (!seg.intervals.empty() && !(vi > seg.intervals.back().t)) continue;
    seg.intervals.push_back({vi, ui});
  }
  if (seg.intervals.empty()) {
    throw Error(ErrorCode::no_stagnation_segment, "witness too short for the linear-scale extraction");
  }
  return seg;
}

}  // namespace hazardlab
