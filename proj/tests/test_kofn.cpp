#include <gtest/gtest.h>

#include <algorithm>

#include "hazardlab/complement.hpp"
#include "hazardlab/error.hpp"
#include "hazardlab/gallery.hpp"
#include "hazardlab/kofn.hpp"

using namespace hazardlab;

namespace {

Real q(long n, long d = 1) { return Real::ratio(n, d); }

struct Instance {
  Hazard r1;
  Hazard rprime;
  KofNResult result;
};

Instance build(std::size_t n, std::size_t k, std::size_t blocks = 9) {
  SHTParams p;
  Hazard r1 = sht_build(p);
  Hazard rprime = build_complement(sht_segmentation(p, 300));
  KofNParams params;
  params.n = n;
  params.k = k;
  params.gamma = p.gamma;
  params.a0 = q(6);
  params.blocks = blocks;
  return Instance{r1, rprime, build_k_of_n(r1, rprime, params)};
}

bool contains(const Subset& s, std::size_t i) { return std::find(s.begin(), s.end(), i) != s.end(); }

}  // namespace

TEST(Schedule, Enumeration) {
  auto s32 = schedule_subsets(3, 2);
  ASSERT_EQ(s32.size(), 3u);
  EXPECT_EQ(s32[0], Subset{1});
  EXPECT_EQ(s32[2], Subset{3});
  EXPECT_EQ(schedule_subsets(2, 2).size(), 2u);
  auto s43 = schedule_subsets(4, 3);
  ASSERT_EQ(s43.size(), 6u);
  EXPECT_EQ(s43.front(), (Subset{1, 2}));
  EXPECT_EQ(s43.back(), (Subset{3, 4}));
  EXPECT_EQ(schedule_subsets(6, 4).size(), 20u);
  EXPECT_THROW(schedule_subsets(3, 1), Error);
  EXPECT_THROW(schedule_subsets(3, 4), Error);
}

TEST(KofN, ThreeTwoInstance) {
  auto inst = build(3, 2);
  const auto& plan = inst.result.plan;
  ASSERT_EQ(plan.blocks.size(), 9u);
  EXPECT_EQ(plan.blocks[0].end, q(72));
  EXPECT_EQ(plan.blocks[1].end, q(378));
  for (std::size_t l = 0; l < plan.blocks.size(); ++l) {
    EXPECT_EQ(plan.blocks[l].slow, plan.schedule[l % 3]);
    EXPECT_EQ(plan.blocks[l].eps, q(1, 1L << (l + 1)));
  }
  auto report = verify_k_of_n(inst.result.hazards, plan, ScalePair::linear());
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.light.size(), 3u);
  EXPECT_EQ(report.heavy.size(), 3u);
}

TEST(KofN, FourThreeFromSameSegmentation) {
  auto inst = build(4, 3);
  auto report = verify_k_of_n(inst.result.hazards, inst.result.plan, ScalePair::linear());
  EXPECT_TRUE(report.passed());
  EXPECT_EQ(report.light.size(), 4u);
  EXPECT_EQ(report.heavy.size(), 6u);
}

TEST(KofN, TwoTwoInstance) {
  auto inst = build(2, 2);
  EXPECT_TRUE(verify_k_of_n(inst.result.hazards, inst.result.plan, ScalePair::linear()).passed());
}

TEST(KofN, BlockRules) {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{3, 2}, {4, 3}}) {
    auto inst = build(n, k);
    const auto& plan = inst.result.plan;
    const auto& hz = inst.result.hazards;
    Real gamma = plan.gamma;
    for (std::size_t b = 0; b < plan.blocks.size(); ++b) {
      const auto& block = plan.blocks[b];
      auto knots = hz[1].breakpoints(block.start, block.end);
      std::vector<Real> xs{block.start};
      xs.insert(xs.end(), knots.begin(), knots.end());
      xs.push_back((block.start + block.end) / q(2));
      for (std::size_t i = 2; i <= n; ++i) {
        if (plan.rule(b, i) == BlockRule::fast) {
          Real base = max(hz[i - 1].left_limit(block.start), gamma * block.start);
          for (const auto& x : xs) {
            EXPECT_GE(hz[i - 1].eval(x), gamma * x);
            EXPECT_EQ(hz[i - 1].eval(x), base + gamma * (x - block.start));
          }
        } else if (plan.rule(b, i) == BlockRule::frozen) {
          for (const auto& x : xs) EXPECT_EQ(hz[i - 1].eval(x), hz[i - 1].left_limit(block.start));
        }
      }
      if (!contains(block.slow, 1)) {
        Real total(0);
        for (auto i : block.slow) total += hz[i - 1].left_limit(block.start);
        Real delta = max(Real(0), inst.rprime.eval(block.start) - total);
        ASSERT_EQ(block.catchup.size(), block.slow.size());
        for (const auto& c : block.catchup) EXPECT_EQ(c, delta / Real(static_cast<long>(k - 1)));
        for (const auto& x : xs) {
          Real sum(0);
          for (auto i : block.slow) sum += hz[i - 1].eval(x);
          EXPECT_GE(sum, inst.rprime.eval(x));
        }
      }
    }
    for (std::size_t i = 1; i < hz.size(); ++i) {
      EXPECT_TRUE(is_valid(hz[i].snapshot_through(plan.blocks.back().end)));
    }
  }
}

TEST(KofN, TamperedFrozenPieceBreaksHeaviness) {
  auto inst = build(4, 3);
  const auto& plan = inst.result.plan;
  auto it = std::find_if(plan.blocks.begin(), plan.blocks.end(),
                         [](const Block& b) { return b.slow == Subset{1, 2}; });
  ASSERT_NE(it, plan.blocks.end());
  auto hazards = inst.result.hazards;
  hazards[1] = add(hazards[1], constant_hazard(it->start, it->end));
  auto report = verify_k_of_n(hazards, plan, ScalePair::linear());
  ASSERT_FALSE(report.passed());
  EXPECT_EQ(report.violation->kind, ViolationKind::heaviness);
  EXPECT_EQ(report.violation->index, it->l);
}

TEST(KofN, GeneratorContinuesPastRequestedBlocks) {
  auto inst = build(3, 2, 3);
  Real end = inst.result.plan.blocks.back().end;
  Hazard r2 = inst.result.hazards[1];
  EXPECT_GT(r2.eval(end * q(3)), q(0));
  EXPECT_GT(*r2.horizon(), end);
}

TEST(KofN, FastRuleFormula) {
  // gamma = 1/2, R_up = x, a = 10, R_i(a) = 2: R_i(x) = max{2, 5} + (x - 10)/2.
  Real gamma = q(1, 2), a = q(10), current = q(2);
  Real base = max(current, gamma * a);
  EXPECT_EQ(base + gamma * (q(14) - a), q(7));
}

TEST(KofN, PreconditionFailure) {
  SHTParams p;
  KofNParams params;
  params.gamma = p.gamma;
  params.a0 = q(6);
  params.blocks = 3;
  EXPECT_THROW(build_k_of_n(sht_build(p), zero_hazard(), params), Error);
}
