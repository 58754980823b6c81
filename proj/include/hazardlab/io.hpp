#ifndef HAZARDLAB_IO_HPP
#define HAZARDLAB_IO_HPP

#include <functional>
#include <optional>
#include <string>

#include "json.hpp"

#include "hazardlab/complement.hpp"
#include "hazardlab/gallery.hpp"
#include "hazardlab/hazard.hpp"
#include "hazardlab/kofn.hpp"
#include "hazardlab/report.hpp"
#include "hazardlab/segmentation.hpp"
#include "hazardlab/sequence.hpp"

namespace hazardlab::io {

using nlohmann::json;

// Exact values as [num, den]; each part is an integer when it fits in 64
// bits and a decimal string otherwise. Approximate values are JSON numbers.
json to_json(const Real& x);
Real real_from_json(const json& j);

// {"affine": [a, b]}, {"geometric": [c, r]}, {"reciprocal": [a, b]}, {"list": [...]}
// or the string forms "affine:a:b", "geometric:c:r", "reciprocal:a:b", "list:x,y,...".
Sequence sequence_from_json(const json& j);
Sequence parse_sequence(const std::string& text);

json piece_to_json(const Piece& piece, const std::optional<Real>& through);
Piece piece_from_json(const json& j);

// Materialized form {"kind": "piecewise", "knots", "pieces", "horizon"}.
// Generator-backed hazards are written through `through`.
json hazard_to_json(const Hazard& h, const std::optional<Real>& through = std::nullopt);

// Any hazard spec: piecewise, preset, sum, scale, min, truncate, complement.
Hazard hazard_from_json(const json& j);

json scales_to_json(const ScalePair& scales, const std::optional<Real>& through);
ScalePair scales_from_json(const json& j);

// `scales_spec`, when given, is written in place of the materialized scales.
json segmentation_to_json(const Segmentation& seg, const std::optional<Real>& through = std::nullopt,
                          const json& scales_spec = nullptr);
Segmentation segmentation_from_json(const json& j);

json violation_to_json(const std::optional<Violation>& v);
json report_to_json(const SegmentationReport& report);
json report_to_json(const LightMinReport& report);
json report_to_json(const KofNReport& report);
json report_to_json(const LongTailReport& report);
json report_to_json(const DVReport& report);

json extremum_to_json(const RatioExtremum& m);

json plan_to_json(const KofNPlan& plan);
KofNPlan plan_from_json(const json& j);

}  // namespace hazardlab::io

#endif  // HAZARDLAB_IO_HPP
