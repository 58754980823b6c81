#ifndef HAZARDLAB_REPORT_HPP
#define HAZARDLAB_REPORT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "hazardlab/real.hpp"

namespace hazardlab {

enum class ViolationKind {
  ratio,
  decay,
  interleave,
  scale_start,
  heaviness,
  certificate,
  precondition,
};

std::string_view to_string(ViolationKind kind);

// First failed check of a verification routine.
struct Violation {
  ViolationKind kind;
  std::size_t index = 0;  // interval, block, or term index (1-based where meaningful)
  Real at;                // location of the failure
  std::string detail;
};

}  // namespace hazardlab

#endif  // HAZARDLAB_REPORT_HPP
