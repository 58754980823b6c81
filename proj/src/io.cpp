#include "hazardlab/io.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "hazardlab/error.hpp"

namespace hazardlab::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::parse_error, what); }

json integer_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

mpz_class integer_from_json(const json& j) {
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<long long>()));
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<unsigned long long>()));
  if (j.is_string()) {
    try {
      return mpz_class(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      fail("not an integer: " + j.get<std::string>());
    }
  }
  fail("expected an integer, got " + j.dump());
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) fail(std::string("missing field '") + name + "'");
  return j.at(name);
}

Real real_or(const json& j, const char* name, const Real& fallback) {
  return j.is_object() && j.contains(name) ? real_from_json(j.at(name)) : fallback;
}

json subset_to_json(const Subset& s) { return json(s); }

Subset subset_from_json(const json& j) {
  Subset s;
  for (const auto& x : j) s.push_back(x.get<std::size_t>());
  return s;
}

Hazard preset_from_json(const std::string& name, const json& params) {
  const json& p = params.is_object() ? params : json::object();
  if (name == "zero") return zero_hazard();
  if (name == "linear") return linear_hazard(real_or(p, "slope", Real(1)), real_or(p, "start", Real(0)));
  if (name == "log") return log_hazard(real_or(p, "alpha", Real(1)), real_or(p, "start", Real(1)));
  if (name == "log1p") return log1p_hazard(real_or(p, "coeff", Real(1)));
  if (name == "power") return power_hazard(real_or(p, "exponent", Real(2)), real_or(p, "coeff", Real(1)));
  if (name == "constant") return constant_hazard(real_from_json(field(p, "at")), real_from_json(field(p, "value")));
  if (name == "sht") {
    SHTParams sp;
    sp.gamma = real_or(p, "gamma", sp.gamma);
    if (p.contains("u")) sp.u = sequence_from_json(p.at("u"));
    if (p.contains("v")) sp.v = sequence_from_json(p.at("v"));
    sp.beta = real_or(p, "beta", sp.beta);
    return sht_build(sp);
  }
  if (name == "plateau-jump") return plateau_jump_hazard(real_or(p, "x1", Real(2)));
  if (name == "left-limit") {
    Sequence A = p.contains("A") ? sequence_from_json(p.at("A")) : Sequence::affine(Real(1), Real(1));
    auto ex = left_limit_counterexample(A);
    std::string role = p.value("role", "upper");
    if (role == "upper") return ex.upper;
    if (role == "lower") return ex.lower;
    if (role == "r1") return ex.r1;
    if (role == "r2") return ex.r2;
    fail("unknown left-limit role '" + role + "'");
  }
  if (name == "scale-order") {
    auto ex = scale_ordering_counterexample(real_or(p, "alpha", Real(1)));
    std::string role = p.value("role", "h1");
    if (role == "h1") return ex.h1;
    if (role == "h2") return ex.h2;
    if (role == "lower") return ex.scales.lower;
    if (role == "upper") return ex.scales.upper;
    fail("unknown scale-order role '" + role + "'");
  }
  fail("unknown preset '" + name + "'");
}

// x v 0, as produced by ScalePair::linear().
bool is_identity(const Hazard& h) {
  if (h.generator_backed() || h.horizon()) return false;
  HazardData d = h.snapshot();
  return d.knots.size() == 1 && d.knots[0].x.is_zero() && d.knots[0].value.is_zero() &&
         d.knots[0].piece.affine() && d.knots[0].piece.slope() == Real(1);
}

}  // namespace

json to_json(const Real& x) {
  if (!x.exact()) {
    double d = x.to_double();
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    return d;
  }
  const mpq_class& q = x.rational();
  return json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Real real_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) fail("rational must be [num, den]");
    mpz_class den = integer_from_json(j[1]);
    if (den == 0) fail("zero denominator");
    return Real::ratio(integer_from_json(j[0]), den);
  }
  if (j.is_number_integer() || j.is_number_unsigned()) return Real(mpq_class(integer_from_json(j)));
  if (j.is_number_float()) return Real::approx(j.get<double>());
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return Real::infinity();
    try {
      return Real::parse(s);
    } catch (const Error&) {
      fail("not a number: " + s);
    }
  }
  fail("not a number: " + j.dump());
}

Sequence sequence_from_json(const json& j) {
  if (j.is_string()) return parse_sequence(j.get<std::string>());
  if (!j.is_object() || j.size() != 1) fail("sequence must be an object with one family");
  const auto& [family, args] = *j.items().begin();
  if (family == "list") {
    std::vector<Real> values;
    for (const auto& v : args) values.push_back(real_from_json(v));
    return Sequence::list(std::move(values));
  }
  if (!args.is_array() || args.size() != 2) fail("sequence '" + family + "' takes two parameters");
  Real a = real_from_json(args[0]);
  Real b = real_from_json(args[1]);
  if (family == "affine") return Sequence::affine(a, b);
  if (family == "geometric") return Sequence::geometric(a, b);
  if (family == "reciprocal") return Sequence::reciprocal(a, b);
  fail("unknown sequence family '" + family + "'");
}

Sequence parse_sequence(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) fail("sequence must look like family:params, got '" + text + "'");
  std::string family = text.substr(0, colon);
  std::string rest = text.substr(colon + 1);
  std::vector<Real> values;
  char sep = family == "list" ? ',' : ':';
  std::stringstream in(rest);
  for (std::string item; std::getline(in, item, sep);) values.push_back(Real::parse(item));
  if (family == "list") return Sequence::list(std::move(values));
  if (values.size() != 2) fail("sequence '" + family + "' takes two parameters");
  if (family == "affine") return Sequence::affine(values[0], values[1]);
  if (family == "geometric") return Sequence::geometric(values[0], values[1]);
  if (family == "reciprocal") return Sequence::reciprocal(values[0], values[1]);
  fail("unknown sequence family '" + family + "'");
}

json piece_to_json(const Piece& piece, const std::optional<Real>& through) {
  std::vector<json> terms;
  for (const auto& t : piece.terms()) {
    switch (t.kind) {
      case TermKind::identity:
        terms.push_back({{"type", "linear"}, {"slope", to_json(t.coeff)}});
        break;
      case TermKind::log:
        terms.push_back({{"type", "log"}, {"coeff", to_json(t.coeff)}, {"shift", to_json(t.param)}});
        break;
      case TermKind::power:
        terms.push_back({{"type", "power"}, {"exponent", to_json(t.param)}, {"coeff", to_json(t.coeff)}});
        break;
      case TermKind::scaled:
        terms.push_back({{"type", "scaled"},
                         {"factor", to_json(t.coeff)},
                         {"reference", hazard_to_json(*t.reference, through)}});
        break;
    }
  }
  if (terms.empty()) return {{"type", "const"}};
  if (terms.size() == 1) return terms.front();
  return {{"type", "sum"}, {"terms", terms}};
}

Piece piece_from_json(const json& j) {
  std::string type = field(j, "type").get<std::string>();
  if (type == "const") return Piece();
  if (type == "linear") return Piece::linear(real_from_json(field(j, "slope")));
  if (type == "log") return Piece::log(real_from_json(field(j, "coeff")), real_or(j, "shift", Real(0)));
  if (type == "power") return Piece::power(real_from_json(field(j, "exponent")), real_or(j, "coeff", Real(1)));
  if (type == "scaled") {
    auto ref = std::make_shared<const Hazard>(hazard_from_json(field(j, "reference")));
    return Piece::scaled(ref, real_from_json(field(j, "factor")));
  }
  if (type == "sum") {
    Piece out;
    for (const auto& t : field(j, "terms")) out = out + piece_from_json(t);
    return out;
  }
  fail("unknown piece type '" + type + "'");
}

json hazard_to_json(const Hazard& h, const std::optional<Real>& through) {
  if (h.generator_backed() && !through) fail("a generator-backed hazard needs a horizon to be written");
  HazardData data = h.generator_backed() ? h.snapshot_through(*through) : h.snapshot();
  json knots = json::array();
  json pieces = json::array();
  for (const auto& k : data.knots) {
    knots.push_back(json::array({to_json(k.x), to_json(k.value)}));
    pieces.push_back(piece_to_json(k.piece, through ? through : data.horizon));
  }
  return {{"kind", "piecewise"},
          {"knots", knots},
          {"pieces", pieces},
          {"horizon", data.horizon ? to_json(*data.horizon) : json(nullptr)}};
}

Hazard hazard_from_json(const json& j) {
  std::string kind = field(j, "kind").get<std::string>();
  if (kind == "piecewise") {
    HazardData data;
    const json& knots = field(j, "knots");
    const json pieces = j.contains("pieces") ? j.at("pieces") : json::array();
    if (!pieces.empty() && pieces.size() != knots.size()) fail("pieces and knots differ in length");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      const json& k = knots[i];
      if (!k.is_array() || k.size() != 2) fail("knot must be [x, value]");
      Piece piece = pieces.empty() ? Piece() : piece_from_json(pieces[i]);
      data.knots.push_back(Knot{real_from_json(k[0]), real_from_json(k[1]), std::move(piece)});
    }
    if (j.contains("horizon") && !j.at("horizon").is_null()) data.horizon = real_from_json(j.at("horizon"));
    validate(data);
    return Hazard(std::move(data));
  }
  if (kind == "preset") return preset_from_json(field(j, "name").get<std::string>(), j.value("params", json::object()));
  if (kind == "sum") {
    std::vector<Hazard> terms;
    for (const auto& t : field(j, "terms")) terms.push_back(hazard_from_json(t));
    return add(terms);
  }
  if (kind == "scale") return scale(real_from_json(field(j, "factor")), hazard_from_json(field(j, "hazard")));
  if (kind == "min") {
    const json& terms = field(j, "terms");
    if (!terms.is_array() || terms.empty()) fail("min needs at least one term");
    Hazard out = hazard_from_json(terms[0]);
    for (std::size_t i = 1; i < terms.size(); ++i) out = pointwise_min(out, hazard_from_json(terms[i]));
    return out;
  }
  if (kind == "truncate") {
    return truncate_hazard(hazard_from_json(field(j, "hazard")), hazard_from_json(field(j, "upper")),
                           real_from_json(field(j, "gamma")));
  }
  if (kind == "complement") return build_complement(segmentation_from_json(field(j, "segmentation")));
  fail("unknown hazard kind '" + kind + "'");
}

json scales_to_json(const ScalePair& scales, const std::optional<Real>& through) {
  json upper = hazard_to_json(scales.upper, through);
  if (scales.lower.shares_state(scales.upper)) {
    return {{"same", true}, {"upper", upper}, {"x0", to_json(scales.x0)}};
  }
  return {{"lower", hazard_to_json(scales.lower, through)}, {"upper", upper}, {"x0", to_json(scales.x0)}};
}

ScalePair scales_from_json(const json& j) {
  if (j.is_null()) return ScalePair::linear();
  if (j.is_string()) {
    if (j.get<std::string>() == "linear") return ScalePair::linear();
    fail("unknown scale pair '" + j.get<std::string>() + "'");
  }
  Hazard upper = hazard_from_json(field(j, "upper"));
  Real x0 = real_or(j, "x0", Real(0));
  if (j.value("same", false)) return ScalePair{upper, upper, x0};
  return ScalePair{hazard_from_json(field(j, "lower")), upper, x0};
}

json segmentation_to_json(const Segmentation& seg, const std::optional<Real>& through, const json& scales_spec) {
  json intervals = json::array();
  json decay = json::array();
  for (const auto& iv : seg.intervals) {
    intervals.push_back(json::array({to_json(iv.s), to_json(iv.t)}));
    Real den = seg.scales.lower.eval(iv.t);
    decay.push_back(den.sign() > 0 ? to_json(seg.scales.upper.left_limit(iv.s) / den) : json("inf"));
  }
  json bounds = json::array();
  for (const auto& b : seg.decay_bounds) bounds.push_back(to_json(b));
  std::optional<Real> horizon = through;
  if (!horizon && !seg.intervals.empty()) horizon = seg.intervals.back().t;
  bool linear = seg.scales.lower.shares_state(seg.scales.upper) && is_identity(seg.scales.upper);
  json scales = !scales_spec.is_null() ? scales_spec
                : linear               ? json("linear")
                                       : scales_to_json(seg.scales, horizon);
  return {{"gamma", to_json(seg.gamma)},  {"intervals", intervals},   {"decay", decay},
          {"scales", scales},             {"right_open", seg.right_open}, {"decay_bounds", bounds}};
}

Segmentation segmentation_from_json(const json& j) {
  Segmentation seg;
  seg.gamma = real_from_json(field(j, "gamma"));
  for (const auto& iv : field(j, "intervals")) {
    if (!iv.is_array() || iv.size() != 2) fail("interval must be [s, t]");
    seg.intervals.push_back({real_from_json(iv[0]), real_from_json(iv[1])});
  }
  seg.scales = scales_from_json(j.value("scales", json(nullptr)));
  seg.right_open = j.value("right_open", false);
  if (j.contains("decay_bounds")) {
    for (const auto& b : j.at("decay_bounds")) seg.decay_bounds.push_back(real_from_json(b));
  }
  return seg;
}

json violation_to_json(const std::optional<Violation>& v) {
  if (!v) return nullptr;
  return {{"kind", std::string(to_string(v->kind))},
          {"index", v->index},
          {"at", to_json(v->at)},
          {"detail", v->detail}};
}

json extremum_to_json(const RatioExtremum& m) {
  if (m.empty) return nullptr;
  return {{"value", m.infinite ? json("inf") : to_json(m.value)},
          {"at", to_json(m.at)},
          {"left_limit", m.left_limit}};
}

json report_to_json(const SegmentationReport& report) {
  json intervals = json::array();
  for (const auto& c : report.intervals) {
    intervals.push_back({{"s", to_json(c.interval.s)},
                         {"t", to_json(c.interval.t)},
                         {"min_ratio", extremum_to_json(c.min_ratio)},
                         {"ok", c.ok}});
  }
  json decay = json::array();
  for (const auto& d : report.decay) decay.push_back(to_json(d));
  return {{"passed", report.passed()},
          {"intervals", intervals},
          {"decay", decay},
          {"surrogate_checked", report.surrogate_checked},
          {"violation", violation_to_json(report.violation)}};
}

json report_to_json(const LightMinReport& report) {
  return {{"passed", report.passed()},
          {"gamma", to_json(report.gamma)},
          {"min_ratio", extremum_to_json(report.min_ratio)},
          {"violation", violation_to_json(report.violation)}};
}

json report_to_json(const KofNReport& report) {
  auto checks = [](const std::vector<SubsetCheck>& list) {
    json out = json::array();
    for (const auto& c : list) {
      out.push_back({{"subset", subset_to_json(c.subset)},
                     {"worst", to_json(c.worst)},
                     {"at", to_json(c.at)},
                     {"ok", c.ok}});
    }
    return out;
  };
  return {{"passed", report.passed()},
          {"light", checks(report.light)},
          {"heavy", checks(report.heavy)},
          {"violation", violation_to_json(report.violation)}};
}

json report_to_json(const LongTailReport& report) {
  json averages = json::array();
  for (const auto& a : report.averages) averages.push_back(a.to_double());
  json gammas = json::array();
  for (std::size_t i = 0; i < report.gammas.size(); ++i) {
    gammas.push_back({{"gamma", to_json(report.gammas[i])},
                      {"condition_c_fails", static_cast<bool>(report.condition_c_fails[i])}});
  }
  return {{"passed", report.passed()},
          {"horizon", report.horizon},
          {"averages", averages},
          {"declared", report.declared},
          {"increments_vanish", report.increments_vanish},
          {"averages_nonincreasing", report.averages_nonincreasing},
          {"tail_sup_ratio", to_json(report.tail_sup_ratio)},
          {"gammas", gammas},
          {"violation", violation_to_json(report.violation)}};
}

json report_to_json(const DVReport& report) {
  return {{"passed", report.passed()},
          {"p", to_json(report.p)},
          {"horizon", to_json(report.horizon)},
          {"checked_points", report.checked.size()},
          {"certified", report.certified},
          {"bound_holds", report.bound_holds},
          {"gamma_ceiling", to_json(report.gamma_ceiling)},
          {"violation", violation_to_json(report.violation)}};
}

json plan_to_json(const KofNPlan& plan) {
  json schedule = json::array();
  for (const auto& s : plan.schedule) schedule.push_back(subset_to_json(s));
  json blocks = json::array();
  for (const auto& b : plan.blocks) {
    json catchup = json::array();
    for (const auto& c : b.catchup) catchup.push_back(to_json(c));
    blocks.push_back({{"l", b.l},
                      {"slow", subset_to_json(b.slow)},
                      {"start", to_json(b.start)},
                      {"end", to_json(b.end)},
                      {"eps", to_json(b.eps)},
                      {"catchup", catchup}});
  }
  return {{"n", plan.n},         {"k", plan.k},           {"gamma", to_json(plan.gamma)},
          {"a0", to_json(plan.a0)}, {"schedule", schedule}, {"blocks", blocks}};
}

KofNPlan plan_from_json(const json& j) {
  KofNPlan plan;
  plan.n = field(j, "n").get<std::size_t>();
  plan.k = field(j, "k").get<std::size_t>();
  plan.gamma = real_from_json(field(j, "gamma"));
  plan.a0 = real_from_json(field(j, "a0"));
  for (const auto& s : field(j, "schedule")) plan.schedule.push_back(subset_from_json(s));
  for (const auto& b : field(j, "blocks")) {
    Block block{field(b, "l").get<std::size_t>(),
                subset_from_json(field(b, "slow")),
                real_from_json(field(b, "start")),
                real_from_json(field(b, "end")),
                real_from_json(field(b, "eps")),
                {}};
    if (b.contains("catchup")) {
      for (const auto& c : b.at("catchup")) block.catchup.push_back(real_from_json(c));
    }
    plan.blocks.push_back(std::move(block));
  }
  return plan;
}

}  // namespace hazardlab::io
