#include "hazardlab/report.hpp"

namespace hazardlab {

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::ratio: return "RatioViolation";
    case ViolationKind::decay: return "DecayViolation";
    case ViolationKind::interleave: return "InterleaveViolation";
    case ViolationKind::scale_start: return "ScaleStartViolation";
    case ViolationKind::heaviness: return "HeavinessViolation";
    case ViolationKind::certificate: return "CertificateViolation";
    case ViolationKind::precondition: return "PreconditionViolated";
  }
  return "Unknown";
}

}  // namespace hazardlab
