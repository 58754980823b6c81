#ifndef HAZARDLAB_SEGMENTATION_HPP
#define HAZARDLAB_SEGMENTATION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hazardlab/config.hpp"
#include "hazardlab/hazard.hpp"
#include "hazardlab/report.hpp"
#include "hazardlab/scan.hpp"
#include "hazardlab/sequence.hpp"

namespace hazardlab {

struct Interval {
  Real s;
  Real t;
};

// gamma plus intervals s_1 < t_1 < s_2 < ... on which R / R_up >= gamma.
struct Segmentation {
  Real gamma;
  std::vector<Interval> intervals;
  ScalePair scales = ScalePair::linear();
  bool right_open = false;          // ratio bound on [s, t) instead of [s, t]
  std::vector<Real> decay_bounds;   // optional strict bounds on the decay terms
};

// Which value of R_up at s_i enters the decay term R_up(s_i) / R_down(t_i).
enum class DecayCriterion { left_limit, right_limit };

struct IntervalCheck {
  Interval interval;
  RatioExtremum min_ratio;
  bool ok = false;
};

struct SegmentationReport {
  std::vector<IntervalCheck> intervals;
  std::vector<Real> decay;
  bool surrogate_checked = false;  // last half of the decay prefix below its first term
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

SegmentationReport verify_segmentation(const Hazard& h, const Segmentation& seg,
                                       std::size_t prefix = kDefaultPrefix,
                                       DecayCriterion criterion = DecayCriterion::left_limit);

// s_i = inf{t >= t_{i-1} + 1 : R(t)/t >= (i+1) gamma}, t_i = (i+1) s_i, t_0 = 1.
// Throws SearchExhausted when a threshold is not reached before `limit`.
Segmentation corollary1_segments(const Hazard& h, const Real& gamma, std::size_t count,
                                 const std::optional<Real>& limit = std::nullopt);

// s_i = inf{s >= t_{i-1} : R(s)/R_up(s) >= A_i gamma}, t_i = inf{t : R_up(t) >= A_i R_up(s_i)}.
Segmentation corollary2_segments(const Hazard& h, const Hazard& upper, const Real& gamma,
                                 const Sequence& A, std::size_t count, const Real& t0 = Real(1));

// Points u_1 < u_2 < ... where a hazard is small relative to a scale, with
// the declared decay schedule (alpha_i, or gamma e^{-i} for linear scales).
struct HeavinessWitness {
  std::vector<Real> points;
  Sequence decay;
};

// Extraction of a segmentation for H1 from a light pair (H1, H2) whose second
// member is certified heavy by `witness`. Returns gamma/4, right-open intervals
// with decay bounds 2 alpha_{i+1}.
Segmentation extract_from_pair(const Hazard& h1, const Hazard& h2, const ScalePair& scales,
                               const Real& gamma, const Real& u0, const HeavinessWitness& witness);

// Linear-scale variant: intervals [u_i e^{-i/2}, u_i] for i >= 2 with ratio
// bound gamma/10; witness condition H2(u_i)/u_i <= gamma e^{-i}.
Segmentation extract_linear_scale(const Hazard& h1, const Hazard& h2, const Real& gamma,
                                  const Real& u0, const std::vector<Real>& points);

}  // namespace hazardlab

#endif  // HAZARDLAB_SEGMENTATION_HPP
