#include "hazardlab/sequence.hpp"

#include "hazardlab/error.hpp"

namespace hazardlab {

Sequence Sequence::affine(Real a, Real b) {
  std::string d = "affine(" + a.to_string() + "," + b.to_string() + ")";
  return Sequence(std::move(d), [a, b](std::size_t n) { return a * Real(n) + b; });
}

Sequence Sequence::geometric(Real c, Real r) {
  std::string d = "geometric(" + c.to_string() + "," + r.to_string() + ")";
  return Sequence(std::move(d), [c, r](std::size_t n) { return c * pow(r, Real(n)); });
}

Sequence Sequence::reciprocal(Real a, Real b) {
  std::string d = "reciprocal(" + a.to_string() + "," + b.to_string() + ")";
  return Sequence(std::move(d), [a, b](std::size_t n) { return Real(1) / (a * Real(n) + b); });
}

Sequence Sequence::list(std::vector<Real> values) {
  std::string d = "list(" + std::to_string(values.size()) + ")";
  return Sequence(std::move(d), [values = std::move(values)](std::size_t n) {
    if (n == 0 || n > values.size()) {
      throw Error(ErrorCode::bad_params,
                  "sequence index " + std::to_string(n) + " beyond explicit list");
    }
    return values[n - 1];
  });
}

Real Sequence::operator()(std::size_t n) const {
  if (!term_) throw Error(ErrorCode::bad_params, "empty sequence");
  if (n == 0) throw Error(ErrorCode::bad_params, "sequences are indexed from 1");
  return term_(n);
}

bool Sequence::strictly_increasing(std::size_t prefix) const {
  for (std::size_t n = 1; n < prefix; ++n) {
    if (!((*this)(n) < (*this)(n + 1))) return false;
  }
  return true;
}

bool Sequence::strictly_decreasing(std::size_t prefix) const {
  for (std::size_t n = 1; n < prefix; ++n) {
    if (!((*this)(n) > (*this)(n + 1))) return false;
  }
  return true;
}

}  // namespace hazardlab
