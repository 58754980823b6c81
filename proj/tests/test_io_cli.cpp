#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hazardlab/cli.hpp"
#include "hazardlab/error.hpp"
#include "hazardlab/io.hpp"
#include "support/random_hazard.hpp"

using namespace hazardlab;
using io::json;

namespace {

Real q(long n, long d = 1) { return Real::ratio(n, d); }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(args, out, err);
  return Run{code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("hazardlab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST(Json, RealRoundTrip) {
  for (const auto& x : {q(0), q(-3, 7), q(5), Real::parse("123456789012345678901234567890/7")}) {
    EXPECT_EQ(io::real_from_json(io::to_json(x)), x);
  }
  EXPECT_TRUE(io::real_from_json(json("inf")).is_infinite());
  EXPECT_FALSE(io::real_from_json(json(0.25)).exact());
  EXPECT_EQ(io::real_from_json(json("3/4")), q(3, 4));
}

TEST(Json, SequenceForms) {
  EXPECT_EQ(io::parse_sequence("affine:1:1")(3), q(4));
  EXPECT_EQ(io::parse_sequence("list:2,5,9")(2), q(5));
  EXPECT_EQ(io::sequence_from_json(json::parse(R"({"geometric": [1, [1, 2]]})"))(2), q(1, 4));
  EXPECT_THROW(io::parse_sequence("bogus:1"), Error);
}

TEST(Json, RandomHazardRoundTrip) {
  hazardlab::testing::RandomHazards gen(99);
  for (int i = 0; i < 200; ++i) {
    HazardData d = gen.data(gen.coin());
    Hazard h(d);
    Hazard back = io::hazard_from_json(io::hazard_to_json(h));
    for (const auto& x : gen.probes(d)) {
      if (d.horizon && x > *d.horizon) continue;
      ASSERT_EQ(back.eval(x), h.eval(x));
      ASSERT_EQ(back.left_limit(x), h.left_limit(x));
    }
  }
}

TEST(Json, PresetAndCompositeSpecs) {
  Hazard sht = io::hazard_from_json(json::parse(R"({"kind": "preset", "name": "sht"})"));
  EXPECT_EQ(sht.eval(q(378)), q(315));
  Hazard sum = io::hazard_from_json(json::parse(
      R"({"kind": "sum", "terms": [{"kind": "preset", "name": "linear", "params": {"slope": 1}},
                                   {"kind": "preset", "name": "linear", "params": {"slope": 2}}]})"));
  EXPECT_EQ(sum.eval(q(2)), q(6));
  Hazard scaled = io::hazard_from_json(json::parse(
      R"({"kind": "scale", "factor": [1, 2], "hazard": {"kind": "preset", "name": "linear", "params": {"slope": 1}}})"));
  EXPECT_EQ(scaled.eval(q(3)), q(3, 2));
  Hazard log = io::hazard_from_json(json::parse(R"({"kind": "preset", "name": "log", "params": {"alpha": 1}})"));
  Hazard back = io::hazard_from_json(io::hazard_to_json(add(log, linear_hazard(q(1)))));
  EXPECT_NEAR(back.eval(q(10)).to_double(), std::log(10.0) + 10, 1e-12);
  EXPECT_THROW(io::hazard_from_json(json::parse(R"({"kind": "nope"})")), Error);
}

TEST(Json, SegmentationRoundTrip) {
  Segmentation seg{q(1, 2), {{q(6), q(12)}, {q(126), q(378)}}};
  seg.right_open = true;
  seg.decay_bounds = {q(1, 2), q(1, 3)};
  Segmentation back = io::segmentation_from_json(io::segmentation_to_json(seg));
  EXPECT_EQ(back.gamma, seg.gamma);
  ASSERT_EQ(back.intervals.size(), 2u);
  EXPECT_EQ(back.intervals[1].t, q(378));
  EXPECT_TRUE(back.right_open);
  EXPECT_EQ(back.decay_bounds, seg.decay_bounds);
  EXPECT_EQ(back.scales.upper.eval(q(5)), q(5));
}

TEST_F(CliTest, ShtComplementVerifyMin) {
  auto g = run({"gallery", "--preset", "sht", "--count", "4", "--out", path("sht.json")});
  ASSERT_EQ(g.code, 0) << g.err;
  auto c = run({"complement", "--seg", path("sht.json") + "#segmentation", "--out", path("c.json")});
  ASSERT_EQ(c.code, 0) << c.err;
  auto v = run({"verify-min", "--h1", path("sht.json") + "#h", "--h2", path("c.json"), "--gamma", "1/2",
                "--from", "6", "--to", "378", "--grid", "6:60:10", "--n", "20000", "--out", path("v.json")});
  EXPECT_EQ(v.code, 0) << v.err;
  json report = json::parse(slurp(path("v.json")));
  EXPECT_FALSE(report.empty());
}

TEST_F(CliTest, VerifySegExitCodes) {
  ASSERT_EQ(run({"gallery", "--preset", "sht", "--count", "4", "--out", path("sht.json")}).code, 0);
  auto ok = run({"verify-seg", "--hazard", path("sht.json") + "#h", "--seg", path("sht.json") + "#segmentation"});
  EXPECT_EQ(ok.code, 0) << ok.err;
  std::ofstream(path("bad.json")) << R"({"gamma": [1, 2], "intervals": [[[1,1],[2,1]], [[4,1],[5,1]]]})";
  auto bad = run({"verify-seg", "--hazard", "preset:zero", "--seg", path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("Violation"), std::string::npos);
  EXPECT_EQ(run({"gallery", "--bogus"}).code, 2);
  EXPECT_EQ(run({"verify-seg", "--seg", path("missing.json")}).code, 2);
  EXPECT_EQ(run({"gallery", "--preset", "sht", "--params", R"({"gamma": 2})"}).code, 2);
}

TEST_F(CliTest, KofNRoundTrip) {
  ASSERT_EQ(run({"gallery", "--preset", "sht", "--count", "300", "--out", path("sht.json")}).code, 0);
  ASSERT_EQ(run({"complement", "--seg", path("sht.json") + "#segmentation", "--out", path("c.json")}).code, 0);
  auto k = run({"kofn", "--n", "3", "--k", "2", "--seg", path("sht.json") + "#segmentation", "--r1",
                path("sht.json") + "#h", "--a0", "6", "--blocks", "6", "--out", path("plan.json")});
  ASSERT_EQ(k.code, 0) << k.err;
  auto v = run({"verify-kofn", "--plan", path("plan.json")});
  EXPECT_EQ(v.code, 0) << v.err;
}

TEST_F(CliTest, RepeatOutputsAreIdentical) {
  std::vector<std::string> sample{"--seed", "5", "sample", "--hazard", "preset:sht", "--n", "2000", "--threads", "3"};
  auto a = run(sample);
  auto b = run(sample);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("sample\n", 0), 0u);
  ASSERT_EQ(run({"gallery", "--preset", "left-limit", "--count", "6", "--out", path("a.json")}).code, 0);
  ASSERT_EQ(run({"gallery", "--preset", "left-limit", "--count", "6", "--out", path("b.json")}).code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, ReportDv) {
  auto r = run({"report", "--hazard", "preset:sht", "--dv", "1", "--horizon", "1000"});
  EXPECT_EQ(r.code, 1);
  auto ok = run({"report", "--hazard", R"({"kind": "preset", "name": "log", "params": {"alpha": 1}})", "--long-tail"});
  EXPECT_EQ(ok.code, 0) << ok.err;
}
