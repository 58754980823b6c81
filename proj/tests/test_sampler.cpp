#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hazardlab/complement.hpp"
#include "hazardlab/gallery.hpp"
#include "hazardlab/sampler.hpp"
#include "support/random_hazard.hpp"

using namespace hazardlab;

namespace {

Real q(long n, long d = 1) { return Real::ratio(n, d); }

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

std::vector<double> grid(double lo, double hi, int points) {
  std::vector<double> g;
  for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * i / (points - 1));
  return g;
}

}  // namespace

TEST(CounterRng, UniformRange) {
  CounterRng rng(7, 0);
  for (std::uint64_t i = 0; i < 100000; ++i) {
    double u = rng.uniform(i);
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
  }
  EXPECT_NE(CounterRng(7, 0).bits(0), CounterRng(7, 1).bits(0));
  EXPECT_NE(CounterRng(7, 0).bits(0), CounterRng(8, 0).bits(0));
  EXPECT_EQ(CounterRng(7, 3).bits(11), CounterRng(7, 3).bits(11));
}

TEST(Sample, LinearHazardIsExponential) {
  auto xs = sample(linear_hazard(q(1)), 1, 200000);
  double m = mean(xs);
  EXPECT_GE(m, 0.99);
  EXPECT_LE(m, 1.01);
}

TEST(Sample, PointMass) {
  auto xs = sample(constant_hazard(q(1), q(1000)), 3, 1000);
  for (double x : xs) EXPECT_EQ(x, 1.0);
}

TEST(Sample, AtomWeight) {
  // linear to 1, then a jump of 1 at x = 1: P(X = 1) = e^{-1}(1 - e^{-1})
  HazardData d;
  d.knots.push_back(Knot{q(0), q(0), Piece::linear(q(1))});
  d.knots.push_back(Knot{q(1), q(2), Piece::linear(q(1))});
  Hazard h(d);
  const std::size_t n = 100000;
  auto xs = sample(h, 5, n);
  double atom = std::count(xs.begin(), xs.end(), 1.0) / static_cast<double>(n);
  double p = std::exp(-1.0) * (1 - std::exp(-1.0));
  double se = std::sqrt(p * (1 - p) / n);
  EXPECT_NEAR(atom, p, 3 * se);
}

TEST(EmpiricalSurvival, TrivialCases) {
  auto s = empirical_survival({1, 2, 3, 4}, {0, 1, 2.5, 4, 5});
  ASSERT_EQ(s.size(), 5u);
  EXPECT_EQ(s[0].second, 1.0);
  EXPECT_EQ(s[1].second, 0.75);
  EXPECT_EQ(s[2].second, 0.5);
  EXPECT_EQ(s[3].second, 0.0);
  EXPECT_EQ(s[4].second, 0.0);
}

TEST(Sample, DeterministicAcrossThreads) {
  Hazard h = sht_build(SHTParams{});
  auto a = sample(h, 11, 20000, 0, 1);
  auto b = sample(h, 11, 20000, 0, 4);
  auto c = sample(h, 11, 20000, 0, 3);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  EXPECT_NE(a, sample(h, 12, 20000, 0, 1));
  EXPECT_NE(a, sample(h, 11, 20000, 1, 1));
}

TEST(MinLaw, LinearPair) {
  auto r = min_law_check(linear_hazard(q(1)), linear_hazard(q(2)), 3, 50000, grid(0, 2, 41), 2);
  EXPECT_LT(r.max_deviation, 0.015);
  EXPECT_NEAR(r.expected[20], std::exp(-3.0), 1e-12);
}

TEST(MinLaw, ZeroIsNeutral) {
  auto r = min_law_check(linear_hazard(q(1)), zero_hazard(), 4, 50000, grid(0, 3, 31));
  EXPECT_LT(r.max_deviation, 0.015);
}

TEST(MinLaw, ShtAndComplementIsLight) {
  SHTParams p;
  Hazard h = sht_build(p);
  Hazard c = build_complement(sht_segmentation(p, 4));
  auto g = grid(6, 40, 35);
  auto r = min_law_check(h, c, 9, 50000, g);
  EXPECT_LT(r.max_deviation, 0.015);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LE(r.empirical[i], std::exp(-g[i] / 2) + 0.015);
}

TEST(Survival, RandomHazards) {
  hazardlab::testing::RandomHazards gen(2024);
  for (int i = 0; i < 10; ++i) {
    HazardData d = gen.data(false);
    Hazard h(d);
    double lo = d.knots.front().x.to_double() - 1;
    double hi = d.knots.back().x.to_double() + 4;
    auto xs = sample(h, 100 + i, 50000);
    auto r = survival_check(h, xs, grid(lo, hi, 50));
    EXPECT_LT(r.max_deviation, 0.015) << "hazard " << i;
  }
}
