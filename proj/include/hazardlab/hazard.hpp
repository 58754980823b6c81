#ifndef HAZARDLAB_HAZARD_HPP
#define HAZARDLAB_HAZARD_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "hazardlab/real.hpp"

namespace hazardlab {

class Hazard;

enum class TermKind { identity, log, power, scaled };

// One growth term c * phi(x) of a piece, where phi is x, log(x + shift),
// x^exponent, or a reference hazard S(x).
struct Term {
  TermKind kind = TermKind::identity;
  Real coeff;
  Real param;  // log: shift, power: exponent
  std::shared_ptr<const Hazard> reference;

  Real basis(const Real& x) const;
  bool same_shape(const Term& other) const;
};

enum class PieceKind { constant, linear, log, power, scaled, sum };

std::string_view to_string(PieceKind kind);

// Behaviour of a hazard on [x_j, x_{j+1}): value_at_xj + sum c*(phi(x) - phi(x_j)).
class Piece {
 public:
  Piece() = default;
  explicit Piece(std::vector<Term> terms);

  static Piece constant() { return Piece(); }
  static Piece linear(Real slope);
  static Piece log(Real coeff, Real shift = Real(0));
  static Piece power(Real exponent, Real coeff = Real(1));
  static Piece scaled(std::shared_ptr<const Hazard> reference, Real factor);

  const std::vector<Term>& terms() const { return terms_; }
  PieceKind kind() const;

  // True when every term is linear in x; the piece is then exactly a + b*x.
  bool affine() const;
  Real slope() const;  // requires affine()
  bool unbounded_growth() const;

  // sum c*(phi(x) - phi(from)); exactly zero when x == from
  Real increment(const Real& from, const Real& x) const;

  Piece scaled_by(const Real& factor) const;
  friend Piece operator+(const Piece& a, const Piece& b);

 private:
  std::vector<Term> terms_;
};

struct Knot {
  Real x;
  Real value;  // right-continuous value at x
  Piece piece; // on [x, next knot)
};

// Materialized part of a hazard. `horizon` is the largest x at which the
// data determines R; nullopt means the last piece extends to +infinity.
struct HazardData {
  std::vector<Knot> knots;
  std::optional<Real> horizon;
};

// A piece re-anchored at `start`: value(x) = start_value + piece.increment(start, x).
struct Segment {
  Real start;
  Real start_value;
  Piece piece;

  Real at(const Real& x) const { return start_value + piece.increment(start, x); }
};

// Extends `data` toward `target`; must strictly advance the horizon.
using Generator = std::function<void(HazardData& data, const Real& target)>;

namespace detail {
struct HazardState;
Real data_eval(const HazardData& data, const Real& x);
Real data_left_limit(const HazardData& data, const Real& x);
Segment data_segment_at(const HazardData& data, const Real& x);
Segment data_segment_before(const HazardData& data, const Real& x);
Real data_inverse(const HazardData& data, const Real& y);
}  // namespace detail

// A cumulative hazard R: nondecreasing, right-continuous, zero below its
// first knot. Values are shared handles over an append-only cache, so copies
// are cheap and safe to use from several threads.
class Hazard {
 public:
  Hazard();  // identically zero, unbounded horizon
  explicit Hazard(HazardData data);
  Hazard(HazardData initial, Generator generator);

  Real eval(const Real& x) const;
  Real left_limit(const Real& x) const;
  Real inverse(const Real& y) const;  // inf{x : R(x) >= y}

  // Materializes through `horizon`; idempotent, returns a handle to the same cache.
  Hazard extend(const Real& horizon) const;
  // Extends until R at the horizon is at least `level`.
  void extend_to_level(const Real& level) const;

  bool generator_backed() const;
  std::optional<Real> horizon() const;
  HazardData snapshot() const;
  HazardData snapshot_through(const Real& x) const;

  // First knot strictly greater than x, extending as needed; nullopt when
  // the last piece is unbounded.
  std::optional<Real> next_breakpoint(const Real& x) const;
  std::vector<Real> breakpoints(const Real& lo, const Real& hi) const;

  Segment segment_at(const Real& x) const;
  Segment segment_before(const Real& x) const;

  bool shares_state(const Hazard& other) const { return state_ == other.state_; }

 private:
  std::shared_ptr<detail::HazardState> state_;
};

// Throws InvalidHazard unless the data is monotone, has nonnegative jumps and
// terms, and (for log/power pieces) a domain that covers the piece.
void validate(const HazardData& data);
bool is_valid(const HazardData& data);

Real eval(const Hazard& h, const Real& x);
Real left_limit(const Hazard& h, const Real& x);
Real generalized_inverse(const Hazard& h, const Real& y);
Hazard extend(const Hazard& h, const Real& horizon);

Hazard add(const Hazard& a, const Hazard& b);
Hazard add(const std::vector<Hazard>& terms);
Hazard scale(const Real& factor, const Hazard& h);
Hazard pointwise_min(const Hazard& a, const Hazard& b);

// Builds a hazard from operands: `build(through)` must materialize the result
// at least through `through` (nullopt: everything). Finite when no operand is
// generator-backed, otherwise generator-backed.
Hazard derived(const std::vector<Hazard>& operands,
               std::function<HazardData(const std::optional<Real>& through)> build);

// Knots of base + factor * (h(x) - h(from)) on [from, to); `to` = nullopt
// copies every materialized knot after `from`.
std::vector<Knot> window_knots(const Hazard& h, const Real& from, const std::optional<Real>& to,
                               const Real& base, const Real& factor);

// Basic closed-form hazards.
Hazard zero_hazard();
Hazard linear_hazard(Real slope, Real start = Real(0));   // slope*(x - start)^+
Hazard log_hazard(Real alpha, Real start = Real(1));       // alpha*log(x/start) for x >= start
Hazard log1p_hazard(Real coeff);                           // coeff*log(1+x) for x >= 0
Hazard power_hazard(Real exponent, Real coeff = Real(1));  // coeff*x^exponent for x >= 0
Hazard constant_hazard(Real at, Real value);               // jump to `value` at `at`

// R_down <= R_up for x >= x0.
struct ScalePair {
  Hazard lower;
  Hazard upper;
  Real x0;

  static ScalePair linear();  // both x v 0
  // Checks lower <= upper at every breakpoint and left limit in [x0, hi].
  bool ordered_through(const Real& hi) const;
};

}  // namespace hazardlab

#endif  // HAZARDLAB_HAZARD_HPP
