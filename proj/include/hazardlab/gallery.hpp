#ifndef HAZARDLAB_GALLERY_HPP
#define HAZARDLAB_GALLERY_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hazardlab/hazard.hpp"
#include "hazardlab/report.hpp"
#include "hazardlab/segmentation.hpp"
#include "hazardlab/sequence.hpp"

namespace hazardlab {

// Segmented heavy tail: frozen on [t_{k-1}, a_k), growing on [a_k, t_k).
struct SHTParams {
  Real gamma = Real::ratio(1, 2);
  Sequence u = Sequence::geometric(Real::ratio(1, 2), Real::ratio(1, 2));  // 2^{-(k+1)}
  Sequence v = Sequence::affine(Real(1), Real(1));                           // k + 1
  Real beta = Real(1);  // growth pieces follow x^beta; 1 gives the linear construction
};

struct SHTStep {
  std::size_t k;
  Real a;
  Real s;
  Real t;
  Real value_at_t;
};

// Throws BadParams unless gamma in (0,1), u decreasing with u_1 < gamma,
// v increasing with v_1 > 1 (checked on `prefix` terms), beta >= 1.
void check_sht_params(const SHTParams& params, std::size_t prefix = kDefaultPrefix);
std::vector<SHTStep> sht_steps(const SHTParams& params, std::size_t count);
Hazard sht_build(const SHTParams& params);
// Intervals (s_k, t_k) for k <= count, scales x v 0.
Segmentation sht_segmentation(const SHTParams& params, std::size_t count);

struct ScaleOrderingExample {
  Hazard h1;  // alpha log x
  Hazard h2;  // x
  ScalePair scales;  // R_down = x^2, R_up = x: deliberately not ordered
};

ScaleOrderingExample scale_ordering_counterexample(const Real& alpha);

struct LeftLimitExample {
  Hazard upper;  // B_n on [n, n+1)
  Hazard lower;  // 1 on [0,1), A_n B_{n-1} on [n, n+1)
  Hazard r1;     // B_{2k} on [2k, 2k+2)
  Hazard r2;     // 1 on [0,1), B_{2k-1} on [2k-1, 2k+1)
  Sequence A;

  ScalePair scales() const { return ScalePair{lower, upper, Real(1)}; }
};

// B_0 = 1, B_n = A_n^2 B_{n-1}.
Real left_limit_B(const Sequence& A, std::size_t n);
// Throws BadParams unless A is strictly increasing with A_1 >= 2 on the prefix.
LeftLimitExample left_limit_counterexample(const Sequence& A);

// R = x_k^2 on [x_k, x_k^3), x_{k+1} = x_k^3: limsup R(x)/x = infinity.
Hazard plateau_jump_hazard(const Real& x1 = Real(2));

// Scale pairs of the two-scale examples.
ScalePair two_heavy_scales(const Real& beta1, const Real& beta2);  // x^{b1} <= x^{b2}
ScalePair two_light_scales();                                      // x <= x^2
ScalePair gap_scales();                                            // log(1+x) <= x^2

struct LongTailReport {
  std::size_t horizon = 0;
  std::vector<Real> averages;  // R(n)/n, n = 1..horizon
  bool declared = false;
  bool increments_vanish = false;      // max increment on the last half < on the first half
  bool averages_nonincreasing = false; // on the last half
  Real tail_sup_ratio;                 // sup R(x)/x over [horizon/2, horizon]
  std::vector<Real> gammas;
  std::vector<bool> condition_c_fails;
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

// A declared long tail is rejected when the increments do not vanish on the
// prefix; an accepted one must show nonincreasing averages and (C) failing
// at every requested gamma.
LongTailReport check_long_tail_incompatibility(const Hazard& h, std::size_t horizon, bool declared,
                                               const std::vector<Real>& gammas);

struct DVCertificate {
  Real p;
};

struct DVReport {
  Real p;
  Real horizon;
  std::vector<Real> checked;   // x with R(2x) <= R(x) + p verified
  bool certified = false;
  bool bound_holds = false;    // R(x)/x <= 2^{-n}(R(1) + (n+1)p) on [2^n, 2^{n+1}]
  Real gamma_ceiling;          // the bound on the last full octave below the horizon
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

DVReport check_dv_incompatibility(const Hazard& h, const DVCertificate& cert, const Real& horizon);

}  // namespace hazardlab

#endif  // HAZARDLAB_GALLERY_HPP
