#ifndef HAZARDLAB_SCAN_HPP
#define HAZARDLAB_SCAN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hazardlab/hazard.hpp"

namespace hazardlab {

enum class Extreme { min, max };

// Extremum of f/g over an interval. Points where g vanishes are skipped when
// f vanishes too and count as +inf otherwise.
struct RatioExtremum {
  Real value;
  Real at;
  bool left_limit = false;  // attained (or approached) from the left of `at`
  bool infinite = false;
  bool empty = true;        // no admissible point
};

// Extremum over [lo, hi] (closed) or [lo, hi) (right-open; the left limit at
// hi is included as the boundary value). Breakpoints of both hazards are
// visited exactly from both sides; non-affine pieces are also sampled.
RatioExtremum ratio_extremum(const Hazard& f, const Hazard& g, const Real& lo, const Real& hi,
                             bool closed, Extreme which);

// inf{x >= lo : f(x) >= c * g(x), f(x) > 0}, walking breakpoints upward.
// nullopt when nothing is found before `limit` or within `max_steps` pieces.
std::optional<Real> first_ratio_at_least(const Hazard& f, const Hazard& g, const Real& c,
                                         const Real& lo, const std::optional<Real>& limit,
                                         std::size_t max_steps);

// sup{x in [lo, hi) : f(x) < c * g(x)}, walking breakpoints downward from hi.
std::optional<Real> last_ratio_below(const Hazard& f, const Hazard& g, const Real& c,
                                     const Real& lo, const Real& hi);

// Breakpoints of h strictly inside (lo, hi), including those of hazards
// referenced by scaled pieces.
std::vector<Real> all_breakpoints(const Hazard& h, const Real& lo, const Real& hi);

}  // namespace hazardlab

#endif  // HAZARDLAB_SCAN_HPP
