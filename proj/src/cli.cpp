#include "hazardlab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hazardlab/complement.hpp"
#include "hazardlab/error.hpp"
#include "hazardlab/gallery.hpp"
#include "hazardlab/io.hpp"
#include "hazardlab/kofn.hpp"
#include "hazardlab/sampler.hpp"
#include "hazardlab/segmentation.hpp"

namespace hazardlab::cli {

namespace {

using io::json;

// Bad input files or arguments after parsing; reported as usage errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string horizon;
  std::size_t prefix = kDefaultPrefix;
  std::string gamma;
  std::uint64_t seed = 7;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
}

// "file.json", "file.json#key", inline JSON, or "preset:name".
json resolve_json(const std::string& ref) {
  if (ref.empty()) throw UsageError("empty reference");
  if (ref.front() == '{' || ref.front() == '[' || ref.front() == '"') {
    try {
      return json::parse(ref);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("malformed inline JSON: ") + e.what());
    }
  }
  if (ref.rfind("preset:", 0) == 0) return json{{"kind", "preset"}, {"name", ref.substr(7)}};
  if (ref == "linear") return json("linear");
  auto hash = ref.find('#');
  json doc = read_json_file(ref.substr(0, hash));
  if (hash == std::string::npos) return doc;
  std::string key = ref.substr(hash + 1);
  if (doc.contains(key)) return doc.at(key);
  if (doc.contains("hazards") && doc.at("hazards").contains(key)) return doc.at("hazards").at(key);
  throw UsageError("no entry '" + key + "' in '" + ref.substr(0, hash) + "'");
}

struct Loaded {
  Hazard hazard;
  json spec;
};

Loaded load_hazard(const std::string& ref) {
  json spec = resolve_json(ref);
  return Loaded{io::hazard_from_json(spec), spec};
}

Real parse_real(const std::string& text, const char* flag) {
  try {
    return Real::parse(text);
  } catch (const Error&) {
    throw UsageError(std::string("--") + flag + ": not a number '" + text + "'");
  }
}

Real gamma_or(const std::string& local, const Globals& g, const Real& fallback) {
  if (!local.empty()) return parse_real(local, "gamma");
  if (!g.gamma.empty()) return parse_real(g.gamma, "gamma");
  return fallback;
}

// "lo:hi:n" (n evenly spaced points, inclusive) or "x1,x2,...".
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  try {
    if (text.find(':') != std::string::npos) {
      std::stringstream in(text);
      std::string lo, hi, n;
      std::getline(in, lo, ':');
      std::getline(in, hi, ':');
      std::getline(in, n);
      double a = std::stod(lo), b = std::stod(hi);
      int count = std::stoi(n);
      if (count < 1) throw UsageError("--grid: need at least one point");
      for (int i = 0; i < count; ++i) grid.push_back(count == 1 ? a : a + (b - a) * i / (count - 1));
    } else {
      std::stringstream in(text);
      for (std::string item; std::getline(in, item, ',');) grid.push_back(std::stod(item));
    }
  } catch (const std::logic_error&) {
    throw UsageError("--grid: malformed grid '" + text + "'");
  }
  return grid;
}

std::vector<Real> parse_points(const std::string& text) {
  std::vector<Real> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) out.push_back(parse_real(item, "points"));
  return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

void emit_json(const std::string& path, const json& j, std::ostream& out) { emit(path, j.dump(2) + "\n", out); }

std::string num(double x) { return fmt::format("{:.17g}", x); }

// Columns x, R(x), R(x)/scale(x).
std::string curve_csv(const Hazard& h, const Hazard& scale, const std::vector<double>& grid) {
  std::string csv = "x,R(x),R(x)/scale(x)\n";
  for (double x : grid) {
    Real rx = Real::approx(x);
    double r = h.eval(rx).to_double();
    double s = scale.eval(rx).to_double();
    csv += num(x) + "," + num(r) + "," + (s > 0 ? num(r / s) : std::string("nan")) + "\n";
  }
  return csv;
}

json steps_json(const std::vector<SHTStep>& steps) {
  json out = json::array();
  for (const auto& s : steps) {
    out.push_back({{"k", s.k},
                   {"a", io::to_json(s.a)},
                   {"s", io::to_json(s.s)},
                   {"t", io::to_json(s.t)},
                   {"value_at_t", io::to_json(s.value_at_t)}});
  }
  return out;
}

SHTParams sht_params(const json& p) {
  SHTParams sp;
  if (!p.is_object()) return sp;
  if (p.contains("gamma")) sp.gamma = io::real_from_json(p.at("gamma"));
  if (p.contains("u")) sp.u = io::sequence_from_json(p.at("u"));
  if (p.contains("v")) sp.v = io::sequence_from_json(p.at("v"));
  if (p.contains("beta")) sp.beta = io::real_from_json(p.at("beta"));
  return sp;
}

json with_hazard(json seg, const json& hazard_spec) {
  seg["hazard"] = hazard_spec;
  return seg;
}

int report_status(bool passed, const std::optional<Violation>& v, std::ostream& err) {
  if (passed) return kPass;
  if (v) err << to_string(v->kind) << ": " << v->detail << " at " << v->at.to_string() << "\n";
  return kFail;
}

// ---------------------------------------------------------------------------

struct GalleryArgs {
  std::string preset, params, out, csv, grid;
  std::size_t count = 0;
};

int run_gallery(const GalleryArgs& a, const Globals& g, std::ostream& out) {
  json params = a.params.empty() ? json::object() : resolve_json(a.params);
  std::size_t count = a.count ? a.count : g.prefix;
  json bundle{{"preset", a.preset}, {"params", params}};
  Hazard main, scale = linear_hazard(Real(1));
  std::vector<double> grid;

  if (a.preset == "sht") {
    SHTParams sp = sht_params(params);
    json spec{{"kind", "preset"}, {"name", "sht"}, {"params", params}};
    main = io::hazard_from_json(spec);
    auto seg = sht_segmentation(sp, count);
    if (sp.beta != Real(1)) scale = seg.scales.upper;
    bundle["hazards"] = {{"h", spec}};
    bundle["steps"] = steps_json(sht_steps(sp, count));
    bundle["segmentation"] = with_hazard(io::segmentation_to_json(seg), spec);
    grid = parse_grid("0:" + num(seg.intervals.size() > 1 ? seg.intervals[1].t.to_double() : 400) + ":201");
  } else if (a.preset == "scale-order") {
    Real alpha = params.contains("alpha") ? io::real_from_json(params.at("alpha")) : Real(1);
    Real x = g.horizon.empty() ? Real(10000) : parse_real(g.horizon, "horizon");
    auto ex = scale_ordering_counterexample(alpha);
    json hazards = json::object();
    for (const char* role : {"h1", "h2", "lower", "upper"}) {
      hazards[role] = {{"kind", "preset"}, {"name", "scale-order"}, {"params", {{"alpha", io::to_json(alpha)}, {"role", role}}}};
    }
    bundle["hazards"] = hazards;
    bundle["scales"] = {{"lower", hazards["lower"]}, {"upper", hazards["upper"]}, {"x0", 0}};
    bundle["at"] = io::to_json(x);
    bundle["ratios"] = {{"h1_over_lower", ex.h1.eval(x).to_double() / ex.scales.lower.eval(x).to_double()},
                        {"h2_over_lower", ex.h2.eval(x).to_double() / ex.scales.lower.eval(x).to_double()},
                        {"sum_over_upper", (ex.h1.eval(x) + ex.h2.eval(x)).to_double() / x.to_double()}};
    main = ex.h1;
    scale = ex.scales.upper;
    grid = parse_grid("1:" + num(x.to_double()) + ":201");
  } else if (a.preset == "left-limit") {
    json A = params.contains("A") ? params.at("A") : json("affine:1:1");
    auto ex = left_limit_counterexample(io::sequence_from_json(A));
    json hazards = json::object();
    for (const char* role : {"upper", "lower", "r1", "r2"}) {
      hazards[role] = {{"kind", "preset"}, {"name", "left-limit"}, {"params", {{"A", A}, {"role", role}}}};
    }
    bundle["hazards"] = hazards;
    bundle["scales"] = {{"lower", hazards["lower"]}, {"upper", hazards["upper"]}, {"x0", 1}};
    json B = json::array();
    for (std::size_t n = 0; n <= count; ++n) B.push_back(io::to_json(left_limit_B(ex.A, n)));
    bundle["B"] = B;
    main = ex.r1;
    scale = ex.upper;
    grid = parse_grid("0:" + std::to_string(std::min<std::size_t>(count, 12)) + ":241");
  } else if (a.preset == "truncation") {
    Real gamma = gamma_or("", g, params.contains("gamma") ? io::real_from_json(params.at("gamma")) : Real(1));
    json h{{"kind", "preset"}, {"name", "plateau-jump"}, {"params", {{"x1", params.value("x1", json(2))}}}};
    json up{{"kind", "preset"}, {"name", "linear"}};
    json trunc{{"kind", "truncate"}, {"hazard", h}, {"upper", up}, {"gamma", io::to_json(gamma)}};
    Hazard plateau = io::hazard_from_json(h);
    Hazard upper = linear_hazard(Real(1));
    auto seg = corollary2_segments(plateau, upper, gamma, Sequence::affine(Real(1), Real(1)),
                                   std::min<std::size_t>(count, 2));
    seg.gamma = gamma / Real(2);
    bundle["hazards"] = {{"h", h}, {"upper", up}, {"truncated", trunc}};
    bundle["segmentation"] = with_hazard(io::segmentation_to_json(seg, std::nullopt, json("linear")), trunc);
    main = io::hazard_from_json(trunc);
    grid = parse_grid("1:600:200");
  } else {
    throw UsageError("--preset: unknown preset '" + a.preset + "'");
  }
  if (!a.grid.empty()) grid = parse_grid(a.grid);
  if (!a.csv.empty()) emit(a.csv, curve_csv(main, scale, grid), out);
  emit_json(a.out, bundle, out);
  return kPass;
}

struct SegmentArgs {
  std::string hazard, upper, gamma, A = "affine:1:1", limit, t0 = "1", out;
  std::size_t count = 0;
};

int run_segment_c1(const SegmentArgs& a, const Globals& g, std::ostream& out) {
  auto h = load_hazard(a.hazard);
  std::optional<Real> limit;
  if (!a.limit.empty()) limit = parse_real(a.limit, "limit");
  else if (!g.horizon.empty()) limit = parse_real(g.horizon, "horizon");
  auto seg = corollary1_segments(h.hazard, gamma_or(a.gamma, g, Real(1)), a.count ? a.count : 3, limit);
  emit_json(a.out, with_hazard(io::segmentation_to_json(seg), h.spec), out);
  return kPass;
}

int run_segment_c2(const SegmentArgs& a, const Globals& g, std::ostream& out) {
  auto h = load_hazard(a.hazard);
  auto up = a.upper.empty() ? Loaded{linear_hazard(Real(1)), json{{"kind", "preset"}, {"name", "linear"}}}
                            : load_hazard(a.upper);
  auto seg = corollary2_segments(h.hazard, up.hazard, gamma_or(a.gamma, g, Real(1)), io::parse_sequence(a.A),
                                 a.count ? a.count : 2, parse_real(a.t0, "t0"));
  json scales{{"same", true}, {"upper", up.spec}, {"x0", io::to_json(seg.scales.x0)}};
  emit_json(a.out, with_hazard(io::segmentation_to_json(seg, std::nullopt, scales), h.spec), out);
  return kPass;
}

struct ExtractArgs {
  std::string h1, h2, scales = "linear", gamma, u0, points, alpha = "reciprocal:1:1", out;
  bool linear = false;
};

int run_segment_extract(const ExtractArgs& a, const Globals& g, std::ostream& out) {
  auto h1 = load_hazard(a.h1);
  auto h2 = load_hazard(a.h2);
  json scales_spec = resolve_json(a.scales);
  ScalePair scales = io::scales_from_json(scales_spec);
  Real gamma = gamma_or(a.gamma, g, Real(1));
  Real u0 = parse_real(a.u0, "u0");
  auto points = parse_points(a.points);
  Segmentation seg = a.linear ? extract_linear_scale(h1.hazard, h2.hazard, gamma, u0, points)
                              : extract_from_pair(h1.hazard, h2.hazard, scales, gamma, u0,
                                                  HeavinessWitness{points, io::parse_sequence(a.alpha)});
  emit_json(a.out, with_hazard(io::segmentation_to_json(seg, std::nullopt, scales_spec), h1.spec), out);
  return kPass;
}

struct ComplementArgs {
  std::string seg, out, materialize;
};

int run_complement(const ComplementArgs& a, const Globals&, std::ostream& out) {
  json seg = resolve_json(a.seg);
  Hazard h = build_complement(io::segmentation_from_json(seg));
  json spec{{"kind", "complement"}, {"segmentation", seg}};
  if (!a.materialize.empty()) spec = io::hazard_to_json(h, parse_real(a.materialize, "materialize"));
  emit_json(a.out, spec, out);
  return kPass;
}

struct TruncateArgs {
  std::string hazard, upper = "preset:linear", gamma, out;
};

int run_truncate(const TruncateArgs& a, const Globals& g, std::ostream& out) {
  auto h = load_hazard(a.hazard);
  auto up = load_hazard(a.upper);
  Real gamma = gamma_or(a.gamma, g, Real(1));
  truncate_hazard(h.hazard, up.hazard, gamma);  // validates gamma
  emit_json(a.out, json{{"kind", "truncate"}, {"hazard", h.spec}, {"upper", up.spec}, {"gamma", io::to_json(gamma)}},
            out);
  return kPass;
}

struct KofNArgs {
  std::string seg, r1, a0, eps = "geometric:1:1/2", out;
  std::size_t n = 3, k = 2, blocks = 0;
};

int run_kofn(const KofNArgs& a, const Globals&, std::ostream& out) {
  json seg_json = resolve_json(a.seg);
  Segmentation seg = io::segmentation_from_json(seg_json);
  json r1_spec;
  if (!a.r1.empty()) r1_spec = resolve_json(a.r1);
  else if (seg_json.contains("hazard")) r1_spec = seg_json.at("hazard");
  else throw UsageError("--r1 is required when the segmentation carries no hazard");
  Hazard r1 = io::hazard_from_json(r1_spec);
  Hazard rprime = build_complement(seg);

  KofNParams params;
  params.n = a.n;
  params.k = a.k;
  params.gamma = seg.gamma;
  params.a0 = a.a0.empty() ? seg.intervals.front().s : parse_real(a.a0, "a0");
  params.blocks = a.blocks;
  params.eps = io::parse_sequence(a.eps);
  params.scales = seg.scales;
  auto result = build_k_of_n(r1, rprime, params);

  json plan = io::plan_to_json(result.plan);
  Real last = result.plan.blocks.back().end;
  json hazards = json::array();
  for (const auto& h : result.hazards) hazards.push_back(io::hazard_to_json(h, last));
  plan["hazards"] = hazards;
  plan["scales"] = seg_json.value("scales", json("linear"));
  emit_json(a.out, plan, out);
  return kPass;
}

struct VerifyKofNArgs {
  std::string plan, out;
};

int run_verify_kofn(const VerifyKofNArgs& a, const Globals&, std::ostream& out, std::ostream& err) {
  json j = resolve_json(a.plan);
  KofNPlan plan = io::plan_from_json(j);
  std::vector<Hazard> hazards;
  for (const auto& h : j.at("hazards")) hazards.push_back(io::hazard_from_json(h));
  ScalePair scales = io::scales_from_json(j.value("scales", json("linear")));
  auto report = verify_k_of_n(hazards, plan, scales);
  emit_json(a.out, io::report_to_json(report), out);
  return report_status(report.passed(), report.violation, err);
}

struct SampleArgs {
  std::string hazard, out;
  std::size_t n = 100000;
  unsigned threads = 1;
  std::uint64_t stream = 0;
};

int run_sample(const SampleArgs& a, const Globals& g, std::ostream& out) {
  auto h = load_hazard(a.hazard);
  if (a.n == 0) throw UsageError("--n must be at least 1");
  auto samples = sample(h.hazard, g.seed, a.n, a.stream, a.threads);
  std::string csv = "sample\n";
  for (double x : samples) csv += num(x) + "\n";
  emit(a.out, csv, out);
  return kPass;
}

struct VerifyMinArgs {
  std::string h1, h2, upper = "preset:linear", gamma, from, to, grid, csv, out;
  std::size_t n = 100000;
  unsigned threads = 1;
  double tol = 0.015;
};

int run_verify_min(const VerifyMinArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  auto h1 = load_hazard(a.h1);
  auto h2 = load_hazard(a.h2);
  json report{{"passed", true}};
  bool passed = true;
  std::optional<Violation> violation;
  if (!a.from.empty() || !a.gamma.empty() || !g.gamma.empty()) {
    auto up = load_hazard(a.upper);
    Real from = a.from.empty() ? Real(0) : parse_real(a.from, "from");
    std::string to_text = !a.to.empty() ? a.to : g.horizon;
    if (to_text.empty()) throw UsageError("--to (or --horizon) is required for the ratio check");
    auto light = verify_light_min(h1.hazard, h2.hazard, up.hazard, gamma_or(a.gamma, g, Real(1)), from,
                                  parse_real(to_text, "to"));
    report["light_min"] = io::report_to_json(light);
    passed = passed && light.passed();
    violation = light.violation;
  }
  if (!a.grid.empty()) {
    auto check = min_law_check(h1.hazard, h2.hazard, g.seed, a.n, parse_grid(a.grid), a.threads);
    report["min_law"] = {{"n", a.n},
                         {"seed", g.seed},
                         {"max_deviation", check.max_deviation},
                         {"tolerance", a.tol},
                         {"passed", check.max_deviation < a.tol}};
    if (!(check.max_deviation < a.tol)) {
      passed = false;
      err << "min law deviation " << num(check.max_deviation) << " exceeds " << num(a.tol) << "\n";
    }
    if (!a.csv.empty()) {
      std::string csv = "x,empirical,expected\n";
      for (std::size_t i = 0; i < check.grid.size(); ++i) {
        csv += num(check.grid[i]) + "," + num(check.empirical[i]) + "," + num(check.expected[i]) + "\n";
      }
      emit(a.csv, csv, out);
    }
  }
  if (!report.contains("light_min") && !report.contains("min_law")) {
    throw UsageError("nothing to verify: give --gamma/--to and/or --grid");
  }
  report["passed"] = passed;
  emit_json(a.out, report, out);
  return report_status(passed, violation, err);
}

struct VerifySegArgs {
  std::string hazard, seg, criterion = "left", out;
};

int run_verify_seg(const VerifySegArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  json seg_json = resolve_json(a.seg);
  Segmentation seg = io::segmentation_from_json(seg_json);
  Hazard h;
  if (!a.hazard.empty()) h = load_hazard(a.hazard).hazard;
  else if (seg_json.contains("hazard")) h = io::hazard_from_json(seg_json.at("hazard"));
  else throw UsageError("--hazard is required when the segmentation carries no hazard");
  DecayCriterion criterion;
  if (a.criterion == "left") criterion = DecayCriterion::left_limit;
  else if (a.criterion == "right") criterion = DecayCriterion::right_limit;
  else throw UsageError("--criterion: expected left or right, got '" + a.criterion + "'");
  auto report = verify_segmentation(h, seg, g.prefix, criterion);
  emit_json(a.out, io::report_to_json(report), out);
  return report_status(report.passed(), report.violation, err);
}

struct ReportArgs {
  std::string hazard, scale = "preset:linear", grid, csv, dv, gammas, out;
  bool long_tail = false;
  std::size_t integers = 4096;
};

int run_report(const ReportArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
  auto h = load_hazard(a.hazard);
  json report{{"passed", true}};
  bool passed = true;
  std::optional<Violation> violation;
  if (!a.dv.empty()) {
    Real horizon = g.horizon.empty() ? Real(1 << 20) : parse_real(g.horizon, "horizon");
    auto dv = check_dv_incompatibility(h.hazard, DVCertificate{parse_real(a.dv, "dv")}, horizon);
    report["dv"] = io::report_to_json(dv);
    passed = passed && dv.passed();
    violation = dv.violation;
  }
  if (a.long_tail) {
    std::vector<Real> gammas = a.gammas.empty() ? std::vector<Real>{} : parse_points(a.gammas);
    auto lt = check_long_tail_incompatibility(h.hazard, a.integers, true, gammas);
    report["long_tail"] = io::report_to_json(lt);
    passed = passed && lt.passed();
    if (!violation) violation = lt.violation;
  }
  if (!a.grid.empty()) {
    std::string csv = curve_csv(h.hazard, load_hazard(a.scale).hazard, parse_grid(a.grid));
    if (a.csv.empty() && !report.contains("dv") && !report.contains("long_tail")) {
      emit(a.out, csv, out);
      return kPass;
    }
    emit(a.csv, csv, out);
  }
  if (!report.contains("dv") && !report.contains("long_tail")) {
    throw UsageError("nothing to report: give --grid, --dv or --long-tail");
  }
  report["passed"] = passed;
  emit_json(a.out, report, out);
  return report_status(passed, violation, err);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cumulative-hazard calculus: segmentations, complements, k-of-n and sampling", "hazardlab"};
  app.require_subcommand(1, 1);
  Globals g;
  app.add_option("--horizon", g.horizon, "Search or materialization horizon");
  app.add_option("--prefix", g.prefix, "Prefix length for finite checks");
  app.add_option("--gamma", g.gamma, "Default gamma");
  app.add_option("--seed", g.seed, "Seed for sampling");

  std::function<int()> run;
  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  GalleryArgs gallery;
  auto* s = sub("gallery", "Build a worked construction");
  s->add_option("--preset", gallery.preset, "sht | scale-order | left-limit | truncation")->required();
  s->add_option("--params", gallery.params, "Parameter JSON (file or inline)");
  s->add_option("--count", gallery.count, "Number of intervals or terms");
  s->add_option("--csv", gallery.csv, "Evaluation grid CSV");
  s->add_option("--grid", gallery.grid, "Grid lo:hi:n or x1,x2,...");
  s->add_option("--out", gallery.out, "Output JSON");
  s->callback([&] { run = [&] { return run_gallery(gallery, g, out); }; });

  SegmentArgs c1;
  s = sub("segment-c1", "Segmentation from limsup R(x)/x = infinity");
  s->add_option("--hazard", c1.hazard)->required();
  s->add_option("--gamma", c1.gamma);
  s->add_option("--count", c1.count);
  s->add_option("--limit", c1.limit);
  s->add_option("--out", c1.out);
  s->callback([&] { run = [&] { return run_segment_c1(c1, g, out); }; });

  SegmentArgs c2;
  s = sub("segment-c2", "Segmentation on an upper scale");
  s->add_option("--hazard", c2.hazard)->required();
  s->add_option("--upper", c2.upper);
  s->add_option("--gamma", c2.gamma);
  s->add_option("--A", c2.A, "Sequence A_i, e.g. affine:1:1");
  s->add_option("--count", c2.count);
  s->add_option("--t0", c2.t0);
  s->add_option("--out", c2.out);
  s->callback([&] { run = [&] { return run_segment_c2(c2, g, out); }; });

  ExtractArgs ex;
  s = sub("segment-extract", "Extract a segmentation from a light pair");
  s->add_option("--h1", ex.h1)->required();
  s->add_option("--h2", ex.h2)->required();
  s->add_option("--scales", ex.scales, "Scale pair JSON or 'linear'");
  s->add_option("--gamma", ex.gamma);
  s->add_option("--u0", ex.u0)->required();
  s->add_option("--points", ex.points, "Witness points u_1,u_2,...")->required();
  s->add_option("--alpha", ex.alpha, "Witness coefficients alpha_i");
  s->add_flag("--linear-scale", ex.linear, "Use the x v 0 variant");
  s->add_option("--out", ex.out);
  s->callback([&] { run = [&] { return run_segment_extract(ex, g, out); }; });

  ComplementArgs comp;
  s = sub("complement", "Complementary hazard of a segmentation");
  s->add_option("--seg", comp.seg)->required();
  s->add_option("--materialize", comp.materialize, "Write knots through this x instead of the spec");
  s->add_option("--out", comp.out);
  s->callback([&] { run = [&] { return run_complement(comp, g, out); }; });

  TruncateArgs tr;
  s = sub("truncate", "min(H, gamma/2 R_up)");
  s->add_option("--hazard", tr.hazard)->required();
  s->add_option("--upper", tr.upper);
  s->add_option("--gamma", tr.gamma);
  s->add_option("--out", tr.out);
  s->callback([&] { run = [&] { return run_truncate(tr, g, out); }; });

  KofNArgs kofn;
  s = sub("kofn", "k-out-of-n block construction");
  s->add_option("--n", kofn.n);
  s->add_option("--k", kofn.k);
  s->add_option("--seg", kofn.seg)->required();
  s->add_option("--r1", kofn.r1);
  s->add_option("--a0", kofn.a0);
  s->add_option("--blocks", kofn.blocks);
  s->add_option("--eps", kofn.eps);
  s->add_option("--out", kofn.out);
  s->callback([&] { run = [&] { return run_kofn(kofn, g, out); }; });

  SampleArgs sm;
  s = sub("sample", "Inverse-transform samples");
  s->add_option("--hazard", sm.hazard)->required();
  s->add_option("--n", sm.n);
  s->add_option("--threads", sm.threads);
  s->add_option("--stream", sm.stream);
  s->add_option("--out", sm.out);
  s->callback([&] { run = [&] { return run_sample(sm, g, out); }; });

  VerifyMinArgs vm;
  s = sub("verify-min", "Lightness of a minimum: ratio bound and Monte Carlo law");
  s->add_option("--h1", vm.h1)->required();
  s->add_option("--h2", vm.h2)->required();
  s->add_option("--upper", vm.upper);
  s->add_option("--gamma", vm.gamma);
  s->add_option("--from", vm.from);
  s->add_option("--to", vm.to);
  s->add_option("--grid", vm.grid);
  s->add_option("--n", vm.n);
  s->add_option("--threads", vm.threads);
  s->add_option("--tol", vm.tol);
  s->add_option("--csv", vm.csv);
  s->add_option("--out", vm.out);
  s->callback([&] { run = [&] { return run_verify_min(vm, g, out, err); }; });

  VerifySegArgs vs;
  s = sub("verify-seg", "Check a segmentation");
  s->add_option("--hazard", vs.hazard);
  s->add_option("--seg", vs.seg)->required();
  s->add_option("--criterion", vs.criterion, "left | right");
  s->add_option("--out", vs.out);
  s->callback([&] { run = [&] { return run_verify_seg(vs, g, out, err); }; });

  VerifyKofNArgs vk;
  s = sub("verify-kofn", "Check a k-out-of-n plan");
  s->add_option("--plan", vk.plan)->required();
  s->add_option("--out", vk.out);
  s->callback([&] { run = [&] { return run_verify_kofn(vk, g, out, err); }; });

  ReportArgs rp;
  s = sub("report", "Curves and class certificates");
  s->add_option("--hazard", rp.hazard)->required();
  s->add_option("--scale", rp.scale);
  s->add_option("--grid", rp.grid);
  s->add_option("--csv", rp.csv);
  s->add_option("--dv", rp.dv, "Dominated-variation constant p");
  s->add_flag("--long-tail", rp.long_tail, "Check a long-tail declaration");
  s->add_option("--integers", rp.integers, "Integer prefix for --long-tail");
  s->add_option("--gammas", rp.gammas, "gamma values for --long-tail");
  s->add_option("--out", rp.out);
  s->callback([&] { run = [&] { return run_report(rp, g, out, err); }; });

  // Unknown flags are reported before missing required ones.
  CLI::App* chosen = nullptr;
  for (const auto& a : args) {
    if (!chosen && a.rfind("-", 0) != 0) chosen = app.get_subcommand_no_throw(a);
    if (a.rfind("--", 0) != 0) continue;
    std::string flag = a.substr(0, a.find('='));
    bool known = flag == "--help" || app.get_option_no_throw(flag) || (chosen && chosen->get_option_no_throw(flag));
    if (!known) {
      err << "The following argument was not expected: " << flag << "\n";
      return kUsage;
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    return run();
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    bool usage = e.code() == ErrorCode::parse_error || e.code() == ErrorCode::bad_params ||
                 e.code() == ErrorCode::bad_arity;
    return usage ? kUsage : kFail;
  } catch (const io::json::exception& e) {
    err << "usage: malformed input: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace hazardlab::cli
