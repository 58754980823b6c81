#include "detail/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace hazardlab::detail {

std::vector<Real> probe_points(const Real& lo, const std::optional<Real>& hi, int count) {
  std::vector<Real> out;
  double a = lo.to_double();
  if (hi) {
    double b = hi->to_double();
    if (!(b > a)) return out;
    for (int k = 1; k < count; ++k) {
      double x = a + (b - a) * k / count;
      if (x > a && x < b) out.push_back(Real::approx(x));
    }
    // Geometric refinement toward both ends catches crossings on wide ranges.
    for (int k = 1; k <= count / 2; ++k) {
      double step = (b - a) * std::ldexp(1.0, -k - 6);
      for (double x : {a + step, b - step}) {
        if (x > a && x < b) out.push_back(Real::approx(x));
      }
    }
    std::sort(out.begin(), out.end(), [](const Real& x, const Real& y) { return x < y; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  double base = std::max(1.0, std::abs(a));
  for (int k = -6; k < count; ++k) {
    double x = a + base * std::ldexp(1.0, k);
    if (std::isfinite(x) && x > a) out.push_back(Real::approx(x));
  }
  return out;
}

std::vector<SignChange> sign_changes(const std::function<Real(const Real&)>& f, const Real& lo,
                                     const std::optional<Real>& hi, int samples) {
  std::vector<SignChange> out;
  std::vector<Real> xs;
  xs.push_back(lo);
  for (auto& p : probe_points(lo, hi, samples)) xs.push_back(p);
  if (hi) xs.push_back(*hi);  // evaluated through the piece formula: the left limit

  auto nonneg = [&](const Real& x) { return f(x).sign() >= 0; };
  bool prev = nonneg(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    bool cur = nonneg(xs[i]);
    if (cur == prev) continue;
    double a = xs[i - 1].to_double();
    double b = xs[i].to_double();
    for (int it = 0; it < 200 && b - a > 0; ++it) {
      double m = a + (b - a) / 2;
      if (m <= a || m >= b) break;
      if (nonneg(Real::approx(m)) == prev) a = m; else b = m;
    }
    out.push_back({Real::approx(b), cur});
    prev = cur;
  }
  return out;
}

std::vector<Real> merge_unique(const std::vector<Real>& a, const std::vector<Real>& b) {
  std::vector<Real> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
             [](const Real& x, const Real& y) { return x < y; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hazardlab::detail
