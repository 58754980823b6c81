#ifndef HAZARDLAB_COMPLEMENT_HPP
#define HAZARDLAB_COMPLEMENT_HPP

#include <optional>

#include "hazardlab/hazard.hpp"
#include "hazardlab/report.hpp"
#include "hazardlab/scan.hpp"
#include "hazardlab/segmentation.hpp"

namespace hazardlab {

// 0 below s_1, gamma R_up(s_i - 0) on [s_i, t_i), gamma R_up on [t_i, s_{i+1})
// and after the last interval.
Hazard build_complement(const Segmentation& seg);

// min(H, (gamma/2) R_up)
Hazard truncate_hazard(const Hazard& h, const Hazard& upper, const Real& gamma);

struct LightMinReport {
  RatioExtremum min_ratio;  // of (H1 + H2) / R_up over [from, to]
  Real gamma;
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

LightMinReport verify_light_min(const Hazard& h1, const Hazard& h2, const Hazard& upper,
                                const Real& gamma, const Real& from, const Real& to);

}  // namespace hazardlab

#endif  // HAZARDLAB_COMPLEMENT_HPP
