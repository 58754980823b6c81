#include "hazardlab/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <string>

#include "detail/numeric.hpp"
#include "hazardlab/config.hpp"
#include "hazardlab/error.hpp"
#include "hazardlab/scan.hpp"

namespace hazardlab {

std::size_t max_scan() {
  if (const char* env = std::getenv("HAZARDLAB_MAXSCAN")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultMaxScan;
}

std::string_view to_string(PieceKind kind) {
  switch (kind) {
    case PieceKind::constant: return "const";
    case PieceKind::linear: return "linear";
    case PieceKind::log: return "log";
    case PieceKind::power: return "power";
    case PieceKind::scaled: return "scaled";
    case PieceKind::sum: return "sum";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Terms and pieces

Real Term::basis(const Real& x) const {
  switch (kind) {
    case TermKind::identity: return x;
    case TermKind::log: return log(x + param);
    case TermKind::power: return x.is_zero() ? Real(0) : pow(x, param);
    case TermKind::scaled: return reference->eval(x);
  }
  return Real(0);
}

bool Term::same_shape(const Term& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case TermKind::identity: return true;
    case TermKind::log:
    case TermKind::power: return param == other.param;
    case TermKind::scaled: return reference == other.reference;
  }
  return false;
}

Piece::Piece(std::vector<Term> terms) {
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (t.kind == TermKind::power && t.param.exact() && t.param == Real(1)) {
      t.kind = TermKind::identity;
      t.param = Real(0);
    }
    auto it = std::find_if(terms_.begin(), terms_.end(),
                           [&](const Term& u) { return u.same_shape(t); });
    if (it != terms_.end()) {
      it->coeff += t.coeff;
    } else {
      terms_.push_back(std::move(t));
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff.is_zero(); });
}

Piece Piece::linear(Real slope) { return Piece({Term{TermKind::identity, std::move(slope), Real(0), {}}}); }

Piece Piece::log(Real coeff, Real shift) {
  return Piece({Term{TermKind::log, std::move(coeff), std::move(shift), {}}});
}

Piece Piece::power(Real exponent, Real coeff) {
  return Piece({Term{TermKind::power, std::move(coeff), std::move(exponent), {}}});
}

Piece Piece::scaled(std::shared_ptr<const Hazard> reference, Real factor) {
  return Piece({Term{TermKind::scaled, std::move(factor), Real(0), std::move(reference)}});
}

PieceKind Piece::kind() const {
  if (terms_.empty()) return PieceKind::constant;
  if (terms_.size() > 1) return PieceKind::sum;
  switch (terms_.front().kind) {
    case TermKind::identity: return PieceKind::linear;
    case TermKind::log: return PieceKind::log;
    case TermKind::power: return PieceKind::power;
    case TermKind::scaled: return PieceKind::scaled;
  }
  return PieceKind::sum;
}

bool Piece::affine() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.kind == TermKind::identity; });
}

Real Piece::slope() const {
  Real s(0);
  for (const auto& t : terms_) s += t.coeff;
  return s;
}

bool Piece::unbounded_growth() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) {
    return t.coeff.sign() > 0 && (t.kind != TermKind::power || t.param.sign() > 0);
  });
}

Real Piece::increment(const Real& from, const Real& x) const {
  if (terms_.empty() || x == from) return Real(0);
  Real total(0);
  for (const auto& t : terms_) total += t.coeff * (t.basis(x) - t.basis(from));
  return total;
}

Piece Piece::scaled_by(const Real& factor) const {
  std::vector<Term> terms = terms_;
  for (auto& t : terms) t.coeff *= factor;
  return Piece(std::move(terms));
}

Piece operator+(const Piece& a, const Piece& b) {
  std::vector<Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return Piece(std::move(terms));
}

// ---------------------------------------------------------------------------
// Queries over materialized data

namespace detail {

namespace {

// Index of the last knot with x_j <= x (or x_j < x when strict), or -1.
std::ptrdiff_t locate(const HazardData& data, const Real& x, bool strict) {
  const auto& k = data.knots;
  auto it = strict ? std::lower_bound(k.begin(), k.end(), x,
                                      [](const Knot& a, const Real& v) { return a.x < v; })
                   : std::upper_bound(k.begin(), k.end(), x,
                                      [](const Real& v, const Knot& a) { return v < a.x; });
  return (it - k.begin()) - 1;
}

// Smallest x in [seg.start, hi] with seg.at(x) >= y, given seg.at(start) < y.
Real solve_level(const Segment& seg, const Real& y, const std::optional<Real>& hi) {
  if (seg.piece.affine()) {
    Real slope = seg.piece.slope();
    if (slope.sign() > 0) return seg.start + (y - seg.start_value) / slope;
  }
  double lo = seg.start.to_double();
  double up;
  if (hi) {
    up = hi->to_double();
  } else {
    double step = std::max(1.0, std::abs(lo));
    up = lo + step;
    for (int i = 0; i < 2000 && seg.at(Real::approx(up)) < y; ++i) {
      step *= 2;
      up = lo + step;
      if (!std::isfinite(up)) return Real::infinity();
    }
  }
  for (int it = 0; it < 200; ++it) {
    double m = lo + (up - lo) / 2;
    if (m <= lo || m >= up) break;
    if (seg.at(Real::approx(m)) >= y) up = m; else lo = m;
  }
  return Real::approx(up);
}

}  // namespace

Real data_eval(const HazardData& data, const Real& x) {
  auto j = locate(data, x, false);
  if (j < 0) return Real(0);
  const Knot& k = data.knots[static_cast<std::size_t>(j)];
  return k.value + k.piece.increment(k.x, x);
}

Real data_left_limit(const HazardData& data, const Real& x) {
  auto j = locate(data, x, true);
  if (j < 0) return Real(0);
  const Knot& k = data.knots[static_cast<std::size_t>(j)];
  return k.value + k.piece.increment(k.x, x);
}

Segment data_segment_at(const HazardData& data, const Real& x) {
  auto j = locate(data, x, false);
  if (j < 0) return Segment{x, Real(0), Piece()};
  const Knot& k = data.knots[static_cast<std::size_t>(j)];
  return Segment{k.x, k.value, k.piece};
}

Segment data_segment_before(const HazardData& data, const Real& x) {
  auto j = locate(data, x, true);
  if (j < 0) return Segment{x, Real(0), Piece()};
  const Knot& k = data.knots[static_cast<std::size_t>(j)];
  return Segment{k.x, k.value, k.piece};
}

Real data_inverse(const HazardData& data, const Real& y) {
  if (!(y.sign() > 0)) throw Error(ErrorCode::bad_params, "inverse level must be positive");
  const auto& k = data.knots;
  if (k.empty()) {
    if (data.horizon) throw Error(ErrorCode::horizon_exceeded, "level beyond materialized range");
    return Real::infinity();
  }
  auto it = std::lower_bound(k.begin(), k.end(), y,
                             [](const Knot& a, const Real& v) { return a.value < v; });
  auto j = static_cast<std::size_t>(it - k.begin());
  if (j == 0) return k.front().x;
  Segment seg{k[j - 1].x, k[j - 1].value, k[j - 1].piece};
  if (j < k.size()) {
    if (seg.at(k[j].x) >= y) return solve_level(seg, y, k[j].x);
    return k[j].x;
  }
  if (data.horizon) {
    if (seg.at(*data.horizon) >= y) return solve_level(seg, y, data.horizon);
    throw Error(ErrorCode::horizon_exceeded,
                "level " + y.to_string() + " beyond materialized range");
  }
  if (!seg.piece.unbounded_growth()) return Real::infinity();
  return solve_level(seg, y, std::nullopt);
}

// ---------------------------------------------------------------------------
// Shared state

struct HazardState {
  std::mutex mu;
  HazardData data;
  Generator generator;

  void advance(const Real& target) {
    Real before = *data.horizon;
    std::size_t validated_from = data.knots.empty() ? 0 : data.knots.size() - 1;
    generator(data, target);
    if (!data.horizon || !(*data.horizon > before)) {
      throw Error(ErrorCode::generator_stalled, "generator did not advance past " + before.to_string());
    }
    HazardData tail;
    tail.horizon = data.horizon;
    if (validated_from > data.knots.size()) validated_from = 0;
    tail.knots.assign(data.knots.begin() + static_cast<std::ptrdiff_t>(validated_from), data.knots.end());
    validate(tail);
  }

  void ensure_horizon(const Real& x) {
    if (!generator) {
      if (data.horizon && x > *data.horizon) {
        throw Error(ErrorCode::horizon_exceeded,
                    x.to_string() + " beyond horizon " + data.horizon->to_string());
      }
      return;
    }
    std::size_t steps = 0;
    const std::size_t budget = max_scan();
    while (x > *data.horizon) {
      if (++steps > budget) {
        throw Error(ErrorCode::generator_stalled, "step budget exhausted extending to " + x.to_string());
      }
      advance(x);
    }
  }

  void ensure_knot_beyond(const Real& x) {
    if (!generator) return;
    std::size_t steps = 0;
    const std::size_t budget = max_scan();
    while (data.knots.empty() || !(data.knots.back().x > x)) {
      if (++steps > budget) {
        throw Error(ErrorCode::generator_stalled, "no knot beyond " + x.to_string());
      }
      advance(max(x, *data.horizon));
    }
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Validation

namespace {

bool geq_tolerant(const Real& a, const Real& b) {
  if (a >= b) return true;
  if (a.exact() && b.exact()) return false;
  double x = a.to_double();
  double y = b.to_double();
  return x >= y - 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

void validate(const HazardData& data) {
  const auto& k = data.knots;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const Knot& knot = k[j];
    if (knot.value.sign() < 0) {
      throw Error(ErrorCode::invalid_hazard, "negative value at knot " + knot.x.to_string());
    }
    if (j > 0 && !(k[j - 1].x < knot.x)) {
      throw Error(ErrorCode::invalid_hazard, "knots not strictly increasing at " + knot.x.to_string());
    }
    for (const auto& t : knot.piece.terms()) {
      if (t.coeff.sign() < 0) {
        throw Error(ErrorCode::invalid_hazard, "negative term coefficient at " + knot.x.to_string());
      }
      if (t.kind == TermKind::log && !((knot.x + t.param).sign() > 0)) {
        throw Error(ErrorCode::invalid_hazard, "log piece outside its domain at " + knot.x.to_string());
      }
      if (t.kind == TermKind::power && (knot.x.sign() < 0 || !(t.param.sign() > 0))) {
        throw Error(ErrorCode::invalid_hazard, "power piece outside its domain at " + knot.x.to_string());
      }
    }
    if (j > 0) {
      const Knot& prev = k[j - 1];
      Real left = prev.value + prev.piece.increment(prev.x, knot.x);
      if (!geq_tolerant(knot.value, left)) {
        throw Error(ErrorCode::invalid_hazard, "negative jump at " + knot.x.to_string());
      }
    }
  }
  if (data.horizon && !k.empty() && *data.horizon < k.back().x) {
    throw Error(ErrorCode::invalid_hazard, "horizon below last knot");
  }
}

bool is_valid(const HazardData& data) {
  try {
    validate(data);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Hazard

Hazard::Hazard() : state_(std::make_shared<detail::HazardState>()) {}

Hazard::Hazard(HazardData data) : state_(std::make_shared<detail::HazardState>()) {
  validate(data);
  state_->data = std::move(data);
}

Hazard::Hazard(HazardData initial, Generator generator)
    : state_(std::make_shared<detail::HazardState>()) {
  if (!initial.horizon) {
    throw Error(ErrorCode::invalid_hazard, "generator-backed hazards need a finite horizon");
  }
  validate(initial);
  state_->data = std::move(initial);
  state_->generator = std::move(generator);
}

Real Hazard::eval(const Real& x) const {
  std::lock_guard lock(state_->mu);
  state_->ensure_horizon(x);
  return detail::data_eval(state_->data, x);
}

Real Hazard::left_limit(const Real& x) const {
  std::lock_guard lock(state_->mu);
  state_->ensure_horizon(x);
  return detail::data_left_limit(state_->data, x);
}

Real Hazard::inverse(const Real& y) const {
  std::lock_guard lock(state_->mu);
  auto& st = *state_;
  if (st.generator) {
    std::size_t steps = 0;
    const std::size_t budget = max_scan();
    while (detail::data_eval(st.data, *st.data.horizon) < y) {
      if (++steps > budget) throw Error(ErrorCode::generator_stalled, "level never reached");
      st.advance(*st.data.horizon);
    }
  }
  return detail::data_inverse(st.data, y);
}

Hazard Hazard::extend(const Real& horizon) const {
  std::lock_guard lock(state_->mu);
  if (state_->generator) state_->ensure_horizon(horizon);
  return *this;
}

void Hazard::extend_to_level(const Real& level) const {
  std::lock_guard lock(state_->mu);
  auto& st = *state_;
  if (!st.generator) return;
  std::size_t steps = 0;
  const std::size_t budget = max_scan();
  while (detail::data_eval(st.data, *st.data.horizon) < level) {
    if (++steps > budget) throw Error(ErrorCode::generator_stalled, "level never reached");
    st.advance(*st.data.horizon);
  }
}

bool Hazard::generator_backed() const { return static_cast<bool>(state_->generator); }

std::optional<Real> Hazard::horizon() const {
  std::lock_guard lock(state_->mu);
  return state_->data.horizon;
}

HazardData Hazard::snapshot() const {
  std::lock_guard lock(state_->mu);
  return state_->data;
}

HazardData Hazard::snapshot_through(const Real& x) const {
  std::lock_guard lock(state_->mu);
  if (state_->generator) state_->ensure_horizon(x);
  return state_->data;
}

std::optional<Real> Hazard::next_breakpoint(const Real& x) const {
  std::lock_guard lock(state_->mu);
  auto& st = *state_;
  st.ensure_knot_beyond(x);
  const auto& k = st.data.knots;
  auto it = std::upper_bound(k.begin(), k.end(), x,
                             [](const Real& v, const Knot& a) { return v < a.x; });
  if (it == k.end()) return std::nullopt;
  return it->x;
}

std::vector<Real> Hazard::breakpoints(const Real& lo, const Real& hi) const {
  std::lock_guard lock(state_->mu);
  auto& st = *state_;
  if (st.generator) st.ensure_horizon(hi);
  std::vector<Real> out;
  for (const auto& k : st.data.knots) {
    if (k.x > lo && k.x < hi) out.push_back(k.x);
  }
  return out;
}

Segment Hazard::segment_at(const Real& x) const {
  std::lock_guard lock(state_->mu);
  state_->ensure_horizon(x);
  return detail::data_segment_at(state_->data, x);
}

Segment Hazard::segment_before(const Real& x) const {
  std::lock_guard lock(state_->mu);
  state_->ensure_horizon(x);
  return detail::data_segment_before(state_->data, x);
}

Real eval(const Hazard& h, const Real& x) { return h.eval(x); }
Real left_limit(const Hazard& h, const Real& x) { return h.left_limit(x); }
Real generalized_inverse(const Hazard& h, const Real& y) { return h.inverse(y); }
Hazard extend(const Hazard& h, const Real& horizon) { return h.extend(horizon); }

// ---------------------------------------------------------------------------
// Algebra

namespace {

std::optional<Real> min_horizon(const std::vector<HazardData>& parts) {
  std::optional<Real> h;
  for (const auto& p : parts) {
    if (p.horizon && (!h || *p.horizon < *h)) h = p.horizon;
  }
  return h;
}

std::vector<HazardData> snapshots(const std::vector<Hazard>& ops, const std::optional<Real>& through) {
  std::vector<HazardData> out;
  out.reserve(ops.size());
  for (const auto& op : ops) {
    out.push_back(through && op.generator_backed() ? op.snapshot_through(*through) : op.snapshot());
  }
  return out;
}

std::vector<Real> merged_knots(const std::vector<HazardData>& parts, const std::optional<Real>& horizon) {
  std::vector<Real> xs;
  for (const auto& p : parts) {
    std::vector<Real> own;
    for (const auto& k : p.knots) {
      if (!horizon || k.x <= *horizon) own.push_back(k.x);
    }
    xs = detail::merge_unique(xs, own);
  }
  return xs;
}

}  // namespace

Hazard derived(const std::vector<Hazard>& operands,
               std::function<HazardData(const std::optional<Real>& through)> build) {
  bool lazy = std::any_of(operands.begin(), operands.end(),
                          [](const Hazard& h) { return h.generator_backed(); });
  if (!lazy) return Hazard(build(std::nullopt));

  std::optional<Real> start;
  for (const auto& op : operands) {
    if (!op.generator_backed()) continue;
    auto h = op.horizon();
    if (h && (!start || *h < *start)) start = h;
  }
  HazardData initial = build(start);
  Generator gen = [build](HazardData& data, const Real& target) {
    // Grow geometrically when the operands allow it, otherwise just reach the target.
    Real grown = *data.horizon * Real(2) + Real(1);
    if (grown > target) {
      try {
        data = build(grown);
        return;
      } catch (const Error&) {
      }
    }
    data = build(target);
  };
  return Hazard(std::move(initial), std::move(gen));
}

Hazard add(const std::vector<Hazard>& terms) {
  if (terms.empty()) return zero_hazard();
  if (terms.size() == 1) return terms.front();
  return derived(terms, [terms](const std::optional<Real>& through) {
    auto parts = snapshots(terms, through);
    HazardData out;
    out.horizon = min_horizon(parts);
    for (const auto& x : merged_knots(parts, out.horizon)) {
      Real value(0);
      Piece piece;
      for (const auto& p : parts) {
        value += detail::data_eval(p, x);
        piece = piece + detail::data_segment_at(p, x).piece;
      }
      out.knots.push_back(Knot{x, std::move(value), std::move(piece)});
    }
    return out;
  });
}

Hazard add(const Hazard& a, const Hazard& b) { return add(std::vector<Hazard>{a, b}); }

Hazard scale(const Real& factor, const Hazard& h) {
  if (!(factor.sign() > 0)) throw Error(ErrorCode::bad_params, "scale factor must be positive");
  return derived({h}, [factor, h](const std::optional<Real>& through) {
    HazardData d = through && h.generator_backed() ? h.snapshot_through(*through) : h.snapshot();
    for (auto& k : d.knots) {
      k.value *= factor;
      k.piece = k.piece.scaled_by(factor);
    }
    return d;
  });
}

namespace {

std::vector<Real> crossings(const Segment& f, const Segment& g, const Real& p,
                            const std::optional<Real>& q) {
  if (f.piece.affine() && g.piece.affine()) {
    Real m = f.piece.slope() - g.piece.slope();
    if (m.is_zero()) return {};
    Real r = p - (f.at(p) - g.at(p)) / m;
    if (r > p && (!q || r < *q)) return {r};
    return {};
  }
  std::vector<Real> out;
  auto diff = [&](const Real& x) { return f.at(x) - g.at(x); };
  for (const auto& c : detail::sign_changes(diff, p, q)) {
    if (c.x > p && (!q || c.x < *q)) out.push_back(c.x);
  }
  return out;
}

}  // namespace

Hazard pointwise_min(const Hazard& a, const Hazard& b) {
  return derived({a, b}, [a, b](const std::optional<Real>& through) {
    auto parts = snapshots({a, b}, through);
    HazardData out;
    out.horizon = min_horizon(parts);
    auto xs = merged_knots(parts, out.horizon);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Real& p = xs[i];
      std::optional<Real> q = i + 1 < xs.size() ? std::optional<Real>(xs[i + 1]) : out.horizon;
      Segment f = detail::data_segment_at(parts[0], p);
      Segment g = detail::data_segment_at(parts[1], p);
      std::vector<Real> starts{p};
      for (auto& c : crossings(f, g, p, q)) starts.push_back(c);
      for (std::size_t s = 0; s < starts.size(); ++s) {
        const Real& c = starts[s];
        std::optional<Real> end = s + 1 < starts.size() ? std::optional<Real>(starts[s + 1]) : q;
        Real probe = end ? (c + *end) / Real(2) : c + max(Real(1), abs(c));
        bool take_f = !(g.at(probe) < f.at(probe));
        if (end && *end == c) take_f = !(g.at(c) < f.at(c));
        const Segment& chosen = take_f ? f : g;
        Real value = min(f.at(c), g.at(c));
        if (!out.knots.empty() && out.knots.back().x == c) {
          out.knots.back() = Knot{c, value, chosen.piece};
        } else {
          out.knots.push_back(Knot{c, value, chosen.piece});
        }
      }
    }
    return out;
  });
}

std::vector<Knot> window_knots(const Hazard& h, const Real& from, const std::optional<Real>& to,
                               const Real& base, const Real& factor) {
  HazardData d = to && h.generator_backed() ? h.snapshot_through(*to) : h.snapshot();
  Real origin = detail::data_eval(d, from);
  std::vector<Knot> out;
  out.push_back(Knot{from, base, detail::data_segment_at(d, from).piece.scaled_by(factor)});
  for (const auto& k : d.knots) {
    if (!(k.x > from)) continue;
    if (to && !(k.x < *to)) break;
    out.push_back(Knot{k.x, base + factor * (k.value - origin), k.piece.scaled_by(factor)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form hazards

Hazard zero_hazard() { return Hazard(); }

Hazard linear_hazard(Real slope, Real start) {
  return Hazard(HazardData{{Knot{std::move(start), Real(0), Piece::linear(std::move(slope))}}, std::nullopt});
}

Hazard log_hazard(Real alpha, Real start) {
  return Hazard(HazardData{{Knot{std::move(start), Real(0), Piece::log(std::move(alpha))}}, std::nullopt});
}

Hazard log1p_hazard(Real coeff) {
  return Hazard(HazardData{{Knot{Real(0), Real(0), Piece::log(std::move(coeff), Real(1))}}, std::nullopt});
}

Hazard power_hazard(Real exponent, Real coeff) {
  return Hazard(HazardData{{Knot{Real(0), Real(0), Piece::power(std::move(exponent), std::move(coeff))}},
                           std::nullopt});
}

Hazard constant_hazard(Real at, Real value) {
  return Hazard(HazardData{{Knot{std::move(at), std::move(value), Piece::constant()}}, std::nullopt});
}

ScalePair ScalePair::linear() {
  Hazard identity = linear_hazard(Real(1));
  return ScalePair{identity, identity, Real(0)};
}

bool ScalePair::ordered_through(const Real& hi) const {
  auto worst = ratio_extremum(lower, upper, x0, hi, true, Extreme::max);
  if (worst.empty) return true;
  return !worst.infinite && worst.value <= Real(1);
}

}  // namespace hazardlab
