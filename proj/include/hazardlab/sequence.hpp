#ifndef HAZARDLAB_SEQUENCE_HPP
#define HAZARDLAB_SEQUENCE_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hazardlab/real.hpp"

namespace hazardlab {

// A deterministic real sequence indexed from 1, e.g. u_k, v_k, A_n, alpha_i,
// eps_l. Closed-form families are exact for exact parameters.
class Sequence {
 public:
  Sequence() = default;
  Sequence(std::string description, std::function<Real(std::size_t)> term)
      : description_(std::move(description)), term_(std::move(term)) {}

  // a*n + b
  static Sequence affine(Real a, Real b);
  // c * r^n
  static Sequence geometric(Real c, Real r);
  // 1 / (a*n + b)
  static Sequence reciprocal(Real a, Real b);
  // values[n-1]; throws past the end
  static Sequence list(std::vector<Real> values);

  Real operator()(std::size_t n) const;
  const std::string& description() const { return description_; }
  bool valid() const { return static_cast<bool>(term_); }

  bool strictly_increasing(std::size_t prefix) const;
  bool strictly_decreasing(std::size_t prefix) const;

 private:
  std::string description_;
  std::function<Real(std::size_t)> term_;
};

}  // namespace hazardlab

#endif  // HAZARDLAB_SEQUENCE_HPP
