// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "hazardlab/complement.hpp"
#include "hazardlab/error.hpp"
#include "hazardlab/gallery.hpp"
#include "hazardlab/kofn.hpp"
#include "hazardlab/sampler.hpp"
#include "hazardlab/scan.hpp"
#include "hazardlab/segmentation.hpp"
#include "support/random_hazard.hpp"

using namespace hazardlab;

namespace {

// Pinned tolerances and budgets.
constexpr int kRandomHazards = 1000;
constexpr double kSurvivalTol = 0.015;
constexpr std::size_t kSamples = 100000;
constexpr int kGridPoints = 50;
constexpr std::uint64_t kSeed = 7;
constexpr double kRatioCap = 1e-3;
constexpr double kSumRatioHi = 1.001;
constexpr double kDvCeiling = 1e-4;
constexpr double kClosedFormTol = 1e-12;

Real q(long n, long d = 1) { return Real::ratio(n, d); }

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(std::string why) {
    if (ok) detail = std::move(why);
    ok = false;
  }
};

std::vector<Real> with_neighbours(const Hazard& h, const Real& lo, const Real& hi) {
  std::vector<Real> xs{lo};
  for (const auto& x : all_breakpoints(h, lo, hi)) xs.push_back(x);
  xs.push_back(hi);
  return xs;
}

Outcome hazard_algebra() {
  Outcome o;
  hazardlab::testing::RandomHazards gen(kSeed);
  for (int n = 0; n < kRandomHazards && o.ok; ++n) {
    HazardData da = gen.data(false), db = gen.data(false);
    Hazard a(da), b(db), sum = add(a, b);
    auto xs = gen.probes(da);
    auto more = gen.probes(db);
    xs.insert(xs.end(), more.begin(), more.end());
    std::sort(xs.begin(), xs.end(), [](const Real& l, const Real& r) { return l < r; });
    Real prev = a.eval(xs.front());
    const Real delta = q(1, 1000000000);
    for (const auto& x : xs) {
      Real v = a.eval(x);
      if (v < prev || a.left_limit(x) > v) o.fail(fmt::format("monotonicity at {} (hazard {})", x.to_string(), n));
      // slopes of the generated pieces stay below 4
      Real right = a.eval(x + delta);
      if (right < v || right - v > Real(4) * delta) o.fail(fmt::format("right-continuity at {} (hazard {})", x.to_string(), n));
      if (sum.eval(x) != v + b.eval(x) || sum.left_limit(x) != a.left_limit(x) + b.left_limit(x)) {
        o.fail(fmt::format("sum law at {} (hazard {})", x.to_string(), n));
      }
      prev = v;
    }
    for (const auto& y : xs) {
      Real level = a.eval(y);
      if (!(level.sign() > 0)) continue;
      Real inv = a.inverse(level);
      for (const auto& x : xs) {
        if ((inv <= x) != (a.eval(x) >= level)) o.fail(fmt::format("galois at y = {} (hazard {})", level.to_string(), n));
      }
    }
  }
  if (o.ok) o.detail = fmt::format("{} random pairs", kRandomHazards);
  return o;
}

Outcome sht_values() {
  Outcome o;
  SHTParams p;
  auto steps = sht_steps(p, 20);
  const long want[2][4] = {{4, 6, 12, 9}, {72, 126, 378, 315}};
  for (int k = 0; k < 2; ++k) {
    const auto& s = steps[k];
    if (s.a != q(want[k][0]) || s.s != q(want[k][1]) || s.t != q(want[k][2]) || s.value_at_t != q(want[k][3])) {
      o.fail(fmt::format("step {} differs", k + 1));
    }
  }
  Hazard h = sht_build(p);
  for (const auto& s : steps) {
    if (h.eval(s.a) / s.a != p.u(s.k)) o.fail(fmt::format("R(a_{})/a_{} != u_{}", s.k, s.k, s.k));
    if (h.eval(s.s) / s.s != p.gamma) o.fail(fmt::format("R(s_{})/s_{} != gamma", s.k, s.k));
    if (h.eval(s.t) != s.value_at_t) o.fail(fmt::format("R(t_{}) mismatch", s.k));
  }
  if (o.ok) o.detail = "a,s,t,R(t) exact; ratios exact for k <= 20";
  return o;
}

Outcome forward_complement() {
  Outcome o;
  SHTParams p;
  Hazard h = sht_build(p);
  auto seg = sht_segmentation(p, 20);
  Hazard c = build_complement(seg);
  Hazard sum = add(h, c);
  Real t20 = seg.intervals.back().t;
  for (const auto& x : with_neighbours(sum, q(6), t20)) {
    if (sum.eval(x) / x < p.gamma) o.fail(fmt::format("ratio below 1/2 at {}", x.to_string()));
    if (x > q(6) && sum.left_limit(x) / x < p.gamma) o.fail(fmt::format("left ratio below 1/2 at {}", x.to_string()));
  }
  auto light = verify_light_min(h, c, linear_hazard(q(1)), p.gamma, q(6), t20);
  if (!light.passed()) o.fail("verify_light_min: " + light.violation->detail);
  for (std::size_t i = 1; i <= 20; ++i) {
    const auto& iv = seg.intervals[i - 1];
    Real r = c.left_limit(iv.t) / iv.t;
    if (r != q(1, 2) / Real(static_cast<long>(i + 1))) o.fail(fmt::format("R2(t_{}-0)/t_{} = {}", i, i, r.to_string()));
    if (i >= 19 && !(r <= q(1, 40))) o.fail(fmt::format("decay above 0.025 at i = {}", i));
  }
  if (o.ok) o.detail = fmt::format("min ratio {} over [6, t_20]", light.min_ratio.value.to_string());
  return o;
}

Outcome converse_extraction() {
  Outcome o;
  auto ex = left_limit_counterexample(Sequence::affine(q(1), q(1)));
  std::vector<Real> witness;
  for (long i = 1; i <= 12; ++i) witness.push_back(q(8 * i + 1, 2));
  Sequence alpha = Sequence::reciprocal(q(1), q(1));
  auto seg = extract_from_pair(ex.r1, ex.r2, ex.scales(), q(1), q(3, 2), HeavinessWitness{witness, alpha});
  if (seg.intervals.size() < 10) {
    o.fail(fmt::format("only {} intervals extracted", seg.intervals.size()));
    return o;
  }
  auto r = verify_segmentation(ex.r1, seg, 10);
  if (!r.passed()) o.fail("extracted segmentation: " + r.violation->detail);
  for (std::size_t i = 0; i < 10 && o.ok; ++i) {
    if (r.intervals[i].min_ratio.value < q(1, 4)) o.fail(fmt::format("ratio below gamma/4 on interval {}", i + 1));
    if (!(r.decay[i] < Real(2) * alpha(i + 2))) o.fail(fmt::format("decay term {} not below 2 alpha", i + 1));
  }
  Segmentation even{q(1), {}, ex.scales()};
  for (long k = 1; k <= 10; ++k) even.intervals.push_back({q(2 * k), q(4 * k + 1, 2)});
  auto right = verify_segmentation(ex.r1, even, 10, DecayCriterion::right_limit);
  if (right.passed() || right.violation->kind != ViolationKind::decay) o.fail("right-limit criterion not rejected");
  for (long k = 1; k <= 10; ++k) {
    if (right.decay[k - 1] != q(2 * k + 1)) o.fail(fmt::format("right-limit decay term {} != {}", k, 2 * k + 1));
  }
  if (o.ok) o.detail = "10 intervals verified; right-limit decay 3, 5, 7, ... rejected";
  return o;
}

Outcome corollaries() {
  Outcome o;
  Hazard h = plateau_jump_hazard();
  auto c1 = corollary1_segments(h, q(1), 3);
  const long w1[3][2] = {{2, 4}, {8, 24}, {512, 2048}};
  for (int i = 0; i < 3; ++i) {
    if (c1.intervals[i].s != q(w1[i][0]) || c1.intervals[i].t != q(w1[i][1])) o.fail(fmt::format("first search interval {}", i + 1));
  }
  auto c2 = corollary2_segments(h, linear_hazard(q(1)), q(1), Sequence::affine(q(1), q(1)), 2);
  for (int i = 0; i < 2; ++i) {
    if (c2.intervals[i].s != q(w1[i][0]) || c2.intervals[i].t != q(w1[i][1])) o.fail(fmt::format("second search interval {}", i + 1));
  }
  if (o.ok) o.detail = "(2,4) (8,24) (512,2048); (2,4) (8,24)";
  return o;
}

Outcome scale_ordering() {
  Outcome o;
  auto ex = scale_ordering_counterexample(q(1));
  const Real x(10000);
  double r1 = (ex.h1.eval(x) / ex.scales.lower.eval(x)).to_double();
  double r2 = (ex.h2.eval(x) / ex.scales.lower.eval(x)).to_double();
  if (!(r1 < kRatioCap) || !(r2 < kRatioCap)) o.fail(fmt::format("R_down ratios {:.3g}, {:.3g}", r1, r2));
  double sum = (add(ex.h1, ex.h2).eval(x) / ex.scales.upper.eval(x)).to_double();
  double closed = (std::log(1e4) + 1e4) / 1e4;
  if (std::abs(sum - closed) > kClosedFormTol || sum < 1.0 || sum > kSumRatioHi) o.fail(fmt::format("sum ratio {:.9f}", sum));
  for (const Real& g : {q(1, 20), q(1, 10), q(1, 4), q(1, 2), q(1)}) {
    try {
      corollary1_segments(ex.h1, g, kDefaultPrefix, Real(1000000));
      o.fail("search succeeded at gamma " + g.to_string());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::search_exhausted) o.fail(std::string("unexpected error: ") + e.what());
    }
  }
  if (o.ok) o.detail = fmt::format("ratios {:.2e}, {:.2e}; sum ratio {:.6f}; searches exhausted", r1, r2, sum);
  return o;
}

Outcome k_of_n() {
  Outcome o;
  SHTParams p;
  Hazard r1 = sht_build(p);
  Hazard rprime = build_complement(sht_segmentation(p, 300));
  std::string detail;
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{3, 2}, {4, 3}}) {
    KofNParams params;
    params.n = n;
    params.k = k;
    params.gamma = p.gamma;
    params.a0 = q(6);
    params.blocks = 9;
    auto res = build_k_of_n(r1, rprime, params);
    auto rep = verify_k_of_n(res.hazards, res.plan, ScalePair::linear());
    if (!rep.passed()) o.fail(fmt::format("({},{}): {}", n, k, rep.violation->detail));
    for (const auto& c : rep.light) {
      if (c.worst < p.gamma) o.fail(fmt::format("({},{}) light subset below gamma", n, k));
    }
    for (const auto& c : rep.heavy) {
      if (!c.ok) o.fail(fmt::format("({},{}) heavy subset endpoint ratio {}", n, k, c.worst.to_string()));
    }
    if (n == 3 && (rep.light.size() != 3 || rep.heavy.size() != 3)) o.fail("(3,2) subset counts");
    const mpq_class& end = res.plan.blocks.back().end.rational();
    detail += fmt::format("({},{}) a_L has {} digits; ", n, k, mpz_sizeinbase(mpz_class(end.get_num() / end.get_den()).get_mpz_t(), 10));
  }
  if (o.ok) o.detail = detail + "9 blocks";
  return o;
}

Outcome class_certificates() {
  Outcome o;
  auto dv = check_dv_incompatibility(log_hazard(q(1)), DVCertificate{Real::approx(std::log(2.0))}, q(1L << 20));
  if (!dv.passed()) o.fail("LOG not certified: " + dv.violation->detail);
  double ceiling = dv.gamma_ceiling.to_double();
  if (!(ceiling < kDvCeiling)) o.fail(fmt::format("gamma ceiling {:.3g}", ceiling));
  auto bad = check_dv_incompatibility(sht_build(SHTParams{}), DVCertificate{q(1)}, q(1L << 20));
  if (bad.passed()) o.fail("SHT certified");
  if (o.ok) o.detail = fmt::format("ceiling {:.3g}; SHT fails at x = {}", ceiling, bad.violation->at.to_string());
  return o;
}

Outcome sampling() {
  Outcome o;
  hazardlab::testing::RandomHazards gen(kSeed + 1);
  std::vector<Hazard> hs;
  std::vector<std::vector<double>> grids;
  double worst = 0, worst_min = 0;
  for (int i = 0; i < 10; ++i) {
    HazardData d = gen.data(false);
    double lo = d.knots.front().x.to_double() - 1;
    double hi = d.knots.back().x.to_double() + 4;
    std::vector<double> grid;
    for (int j = 0; j < kGridPoints; ++j) grid.push_back(lo + (hi - lo) * j / (kGridPoints - 1));
    hs.emplace_back(d);
    grids.push_back(grid);
    auto r = survival_check(hs.back(), sample(hs.back(), kSeed, kSamples, static_cast<std::uint64_t>(i), 4), grid);
    worst = std::max(worst, r.max_deviation);
  }
  for (int i = 0; i < 10; ++i) {
    auto r = min_law_check(hs[i], hs[(i + 1) % 10], kSeed + i, kSamples, grids[i], 4);
    worst_min = std::max(worst_min, r.max_deviation);
  }
  if (!(worst < kSurvivalTol)) o.fail(fmt::format("survival deviation {:.4f}", worst));
  if (!(worst_min < kSurvivalTol)) o.fail(fmt::format("min-law deviation {:.4f}", worst_min));
  if (o.ok) o.detail = fmt::format("max deviation {:.4f}, min-law {:.4f}", worst, worst_min);
  return o;
}

Outcome truncation() {
  Outcome o;
  Hazard h = plateau_jump_hazard();
  Hazard up = linear_hazard(q(1));
  Hazard t = truncate_hazard(h, up, q(1));
  for (const auto& x : with_neighbours(t, q(1), q(1000000))) {
    if (t.eval(x) / x > q(1, 2)) o.fail(fmt::format("ratio above 1/2 at {}", x.to_string()));
  }
  auto seg = corollary2_segments(h, up, q(1), Sequence::affine(q(1), q(1)), 3);
  seg.gamma = q(1, 2);
  auto r = verify_segmentation(t, seg, 3);
  if (!r.passed()) o.fail("truncated segmentation: " + r.violation->detail);
  if (o.ok) o.detail = "R/x <= 1/2 at every knot; 3 intervals verified at gamma/2";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"hazard algebra", hazard_algebra},
      {"segmented heavy tail values", sht_values},
      {"complement gives light minimum", forward_complement},
      {"extraction on left-limit pair", converse_extraction},
      {"segment searches on plateau-jump", corollaries},
      {"scale ordering example", scale_ordering},
      {"k-of-n construction", k_of_n},
      {"class certificates", class_certificates},
      {"sampling", sampling},
      {"truncation", truncation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.ok) ++failed;
    fmt::print("{} {:2} {}: {}\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
  }
  return failed == 0 ? 0 : 1;
}
