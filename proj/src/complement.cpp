#include "hazardlab/complement.hpp"

#include "hazardlab/error.hpp"

namespace hazardlab {

Hazard build_complement(const Segmentation& seg) {
  if (seg.intervals.empty()) throw Error(ErrorCode::bad_params, "segmentation has no intervals");
  if (!(seg.gamma.sign() > 0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  for (std::size_t i = 0; i < seg.intervals.size(); ++i) {
    const auto& iv = seg.intervals[i];
    if (!(iv.s < iv.t) || (i > 0 && seg.intervals[i - 1].t > iv.s)) {
      throw Error(ErrorCode::bad_params, "segmentation intervals are not ordered");
    }
  }
  const Hazard upper = seg.scales.upper;
  const Real gamma = seg.gamma;
  const std::vector<Interval> iv = seg.intervals;

  return derived({upper}, [upper, gamma, iv](const std::optional<Real>& through) {
    std::optional<Real> last_end = through ? std::optional<Real>(max(*through, iv.back().t)) : std::nullopt;
    if (upper.generator_backed()) upper.extend(last_end ? *last_end : iv.back().t);
    HazardData out;
    for (std::size_t i = 0; i < iv.size(); ++i) {
      Real frozen = gamma * upper.left_limit(iv[i].s);
      if (!out.knots.empty() && out.knots.back().x == iv[i].s) out.knots.pop_back();  // touching intervals
      out.knots.push_back(Knot{iv[i].s, frozen, Piece()});
      std::optional<Real> gap_end =
          i + 1 < iv.size() ? std::optional<Real>(iv[i + 1].s) : std::nullopt;
      if (gap_end && !(iv[i].t < *gap_end)) continue;
      auto window = window_knots(upper, iv[i].t, gap_end ? gap_end : last_end,
                                 gamma * upper.eval(iv[i].t), gamma);
      out.knots.insert(out.knots.end(), window.begin(), window.end());
    }
    out.horizon = upper.horizon();
    return out;
  });
}

Hazard truncate_hazard(const Hazard& h, const Hazard& upper, const Real& gamma) {
  if (!(gamma.sign() > 0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  return pointwise_min(h, scale(gamma / Real(2), upper));
}

LightMinReport verify_light_min(const Hazard& h1, const Hazard& h2, const Hazard& upper,
                                const Real& gamma, const Real& from, const Real& to) {
  LightMinReport report;
  report.gamma = gamma;
  report.min_ratio = ratio_extremum(add(h1, h2), upper, from, to, true, Extreme::min);
  const auto& m = report.min_ratio;
  if (!m.empty && !m.infinite && m.value < gamma) {
    report.violation = Violation{ViolationKind::ratio, 0, m.at,
                                 "(H1 + H2)/R_up = " + m.value.to_string() + " below " + gamma.to_string()};
  }
  return report;
}

}  // namespace hazardlab
