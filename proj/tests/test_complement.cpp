#include <gtest/gtest.h>

#include <cmath>

#include "hazardlab/complement.hpp"
#include "hazardlab/error.hpp"
#include "hazardlab/gallery.hpp"

using namespace hazardlab;

namespace {

Real q(long n, long d = 1) { return Real::ratio(n, d); }

}  // namespace

TEST(Complement, ShtPresetPieces) {
  SHTParams p;
  auto seg = sht_segmentation(p, 2);
  Hazard c = build_complement(seg);
  EXPECT_EQ(c.eval(q(0)), q(0));
  EXPECT_EQ(c.eval(q(59, 10)), q(0));
  EXPECT_EQ(c.left_limit(q(6)), q(0));
  for (long x : {6L, 9L, 11L}) EXPECT_EQ(c.eval(q(x)), q(3));
  EXPECT_EQ(c.left_limit(q(12)), q(3));
  for (long x : {12L, 50L, 125L}) EXPECT_EQ(c.eval(q(x)), q(x, 2));
  for (long x : {126L, 200L, 377L}) EXPECT_EQ(c.eval(q(x)), q(63));
  EXPECT_EQ(c.left_limit(q(378)), q(63));
  EXPECT_EQ(c.eval(q(378)), q(189));
  EXPECT_EQ(c.eval(q(1000)), q(500));
}

TEST(Complement, MinimumIsLight) {
  SHTParams p;
  Hazard h = sht_build(p);
  auto seg = sht_segmentation(p, 6);
  Hazard c = build_complement(seg);
  auto r = verify_light_min(h, c, linear_hazard(q(1)), p.gamma, q(6), seg.intervals.back().t);
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.min_ratio.value, q(1, 2));
  Hazard sum = add(h, c);
  for (const auto& x : sum.breakpoints(q(6), seg.intervals.back().t)) EXPECT_GE(sum.eval(x) / x, q(1, 2));
}

TEST(Complement, HeavinessWitnessValues) {
  SHTParams p;
  auto seg = sht_segmentation(p, 4);
  Hazard c = build_complement(seg);
  for (std::size_t i = 0; i < seg.intervals.size(); ++i) {
    const auto& iv = seg.intervals[i];
    EXPECT_EQ(c.left_limit(iv.t) / iv.t, p.gamma * iv.s / iv.t);
  }
  EXPECT_EQ(c.left_limit(q(12)) / q(12), q(1, 4));
  EXPECT_EQ(c.left_limit(q(378)) / q(378), q(1, 6));
}

TEST(Complement, MonotoneAcrossBlocks) {
  auto seg = sht_segmentation(SHTParams{}, 10);
  Hazard c = build_complement(seg);
  EXPECT_TRUE(is_valid(c.snapshot_through(seg.intervals.back().t)));
  for (std::size_t i = 0; i + 1 < seg.intervals.size(); ++i) {
    Real frozen = c.eval(seg.intervals[i].s);
    EXPECT_LE(frozen, seg.gamma * seg.intervals[i].t);
    EXPECT_LE(seg.gamma * seg.intervals[i].t, c.eval(seg.intervals[i + 1].s));
  }
}

TEST(Complement, TouchingIntervalsHaveEmptyGap) {
  Segmentation seg{q(1, 2), {{q(2), q(4)}, {q(4), q(10)}}};
  Hazard c = build_complement(seg);
  EXPECT_EQ(c.eval(q(3)), q(1));
  EXPECT_EQ(c.eval(q(4)), q(2));
  EXPECT_EQ(c.eval(q(9)), q(2));
  EXPECT_EQ(c.eval(q(10)), q(5));
  EXPECT_TRUE(is_valid(c.snapshot()));
}

TEST(Complement, LeftLimitFrozenLevel) {
  auto ex = left_limit_counterexample(Sequence::affine(q(1), q(1)));
  Segmentation seg{q(1), {{q(2), q(5, 2)}, {q(4), q(9, 2)}}, ex.scales(), true};
  Hazard c = build_complement(seg);
  EXPECT_EQ(c.eval(q(2)), ex.upper.left_limit(q(2)));
  EXPECT_EQ(c.eval(q(2)), q(4));
  EXPECT_EQ(c.eval(q(3)), ex.upper.eval(q(3)));
}

TEST(Truncate, PlateauJump) {
  Hazard h = plateau_jump_hazard();
  Hazard up = linear_hazard(q(1));
  Hazard t = truncate_hazard(h, up, q(1));
  EXPECT_EQ(t.eval(q(8)), q(4));
  for (const auto& x : all_breakpoints(t, q(1), q(3000))) {
    EXPECT_LE(t.eval(x) / x, q(1, 2));
    EXPECT_LE(t.eval(x), h.eval(x));
  }
  auto seg = corollary2_segments(h, up, q(1), Sequence::affine(q(1), q(1)), 2);
  seg.gamma = q(1, 2);
  auto r = verify_segmentation(t, seg, 2);
  EXPECT_TRUE(r.passed());
  EXPECT_THROW(truncate_hazard(h, up, q(0)), Error);
}

TEST(VerifyLightMin, ScaleOrderingPair) {
  auto ex = scale_ordering_counterexample(q(1));
  auto r = verify_light_min(ex.h1, ex.h2, ex.scales.upper, q(1), q(1), q(10000));
  EXPECT_TRUE(r.passed());
  double at = (std::log(1e4) + 1e4) / 1e4;
  EXPECT_NEAR(at, 1.000921, 1e-6);
  EXPECT_NEAR(add(ex.h1, ex.h2).eval(q(10000)).to_double() / 1e4, at, 1e-12);
}

TEST(VerifyLightMin, LeftLimitPair) {
  auto ex = left_limit_counterexample(Sequence::affine(q(1), q(1)));
  auto r = verify_light_min(ex.r1, ex.r2, ex.upper, q(1), q(1), q(20));
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.min_ratio.value, q(1));
}

TEST(VerifyLightMin, PlateauFailsAlone) {
  SHTParams p;
  auto r = verify_light_min(sht_build(p), zero_hazard(), linear_hazard(q(1)), p.gamma, q(6), q(378));
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.violation->kind, ViolationKind::ratio);
  EXPECT_EQ(r.min_ratio.at, q(72));
  EXPECT_EQ(r.min_ratio.value, q(1, 8));
}
