#ifndef HAZARDLAB_DETAIL_NUMERIC_HPP
#define HAZARDLAB_DETAIL_NUMERIC_HPP

#include <functional>
#include <optional>
#include <vector>

#include "hazardlab/real.hpp"

namespace hazardlab::detail {

struct SignChange {
  Real x;       // first point on the far side of the change (approximate)
  bool rising;  // negative -> nonnegative
};

// Sample points strictly inside (lo, hi), or a geometric ladder above lo when
// hi is unbounded. Used for pieces without a closed-form crossing.
std::vector<Real> probe_points(const Real& lo, const std::optional<Real>& hi, int count = 64);

// Sign changes of f on (lo, hi) located by sampling and bisection in binary64.
std::vector<SignChange> sign_changes(const std::function<Real(const Real&)>& f, const Real& lo,
                                     const std::optional<Real>& hi, int samples = 64);

// Merge two ascending lists, dropping duplicates.
std::vector<Real> merge_unique(const std::vector<Real>& a, const std::vector<Real>& b);

}  // namespace hazardlab::detail

#endif  // HAZARDLAB_DETAIL_NUMERIC_HPP
