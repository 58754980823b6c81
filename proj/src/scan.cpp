#include "hazardlab/scan.hpp"

#include <algorithm>
#include <set>

#include "detail/numeric.hpp"

namespace hazardlab {

namespace {

struct Ratio {
  Real value;
  bool infinite = false;
  bool defined = true;
};

Ratio ratio_of(const Real& f, const Real& g) {
  if (g.sign() > 0) return {f / g};
  if (f.sign() > 0) return {Real(0), true};
  return {Real(0), false, false};
}

bool better(const Ratio& r, const RatioExtremum& cur, Extreme which) {
  if (cur.empty) return true;
  if (which == Extreme::min) {
    if (r.infinite) return false;
    return cur.infinite || r.value < cur.value;
  }
  if (cur.infinite) return false;
  return r.infinite || r.value > cur.value;
}

void offer(RatioExtremum& best, const Ratio& r, const Real& at, bool left, Extreme which) {
  if (!r.defined) return;
  if (!better(r, best, which)) return;
  best.value = r.value;
  best.infinite = r.infinite;
  best.at = at;
  best.left_limit = left;
  best.empty = false;
}

bool needs_sampling(const Segment& f, const Segment& g) {
  return !f.piece.affine() || !g.piece.affine();
}

void collect(const Hazard& h, const Real& lo, const Real& hi, std::set<const detail::HazardState*>& seen,
             std::vector<Real>& out, int depth) {
  auto own = h.breakpoints(lo, hi);
  out = detail::merge_unique(out, own);
  if (depth > 8) return;
  HazardData d = h.snapshot();
  for (std::size_t j = 0; j < d.knots.size(); ++j) {
    const Knot& k = d.knots[j];
    Real seg_hi = j + 1 < d.knots.size() ? d.knots[j + 1].x : hi;
    if (!(seg_hi > lo) || !(k.x < hi)) continue;
    for (const auto& t : k.piece.terms()) {
      if (t.kind != TermKind::scaled || !t.reference) continue;
      collect(*t.reference, max(lo, k.x), min(hi, seg_hi), seen, out, depth + 1);
    }
  }
}

std::optional<Real> earliest(const std::optional<Real>& a, const std::optional<Real>& b) {
  if (!a) return b;
  if (!b) return a;
  return min(*a, *b);
}

}  // namespace

std::vector<Real> all_breakpoints(const Hazard& h, const Real& lo, const Real& hi) {
  std::vector<Real> out;
  std::set<const detail::HazardState*> seen;
  collect(h, lo, hi, seen, out, 0);
  std::erase_if(out, [&](const Real& x) { return !(x > lo && x < hi); });
  return out;
}

RatioExtremum ratio_extremum(const Hazard& f, const Hazard& g, const Real& lo, const Real& hi,
                             bool closed, Extreme which) {
  RatioExtremum best;
  if (hi < lo || (hi == lo && !closed)) return best;
  auto nodes = detail::merge_unique(all_breakpoints(f, lo, hi), all_breakpoints(g, lo, hi));
  nodes.insert(nodes.begin(), lo);
  if (hi > lo) nodes.push_back(hi);

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Real& p = nodes[i];
    const Real& q = nodes[i + 1];
    if (i > 0) offer(best, ratio_of(f.left_limit(p), g.left_limit(p)), p, true, which);
    Segment fs = f.segment_at(p);
    Segment gs = g.segment_at(p);
    Real fp = f.eval(p);
    Real gp = g.eval(p);
    offer(best, ratio_of(fp, gp), p, false, which);
    if (needs_sampling(fs, gs)) {
      for (const auto& x : detail::probe_points(p, q)) {
        offer(best, ratio_of(f.eval(x), g.eval(x)), x, false, which);
      }
    } else if (fp.is_zero() && gp.is_zero() && gs.piece.slope().sign() > 0) {
      // 0/0 at p: the ratio's right limit is the slope ratio.
      offer(best, Ratio{fs.piece.slope() / gs.piece.slope()}, p, false, which);
    }
  }
  if (hi > lo) offer(best, ratio_of(f.left_limit(hi), g.left_limit(hi)), hi, true, which);
  if (closed) offer(best, ratio_of(f.eval(hi), g.eval(hi)), hi, false, which);
  return best;
}

std::optional<Real> first_ratio_at_least(const Hazard& f, const Hazard& g, const Real& c,
                                         const Real& lo, const std::optional<Real>& limit,
                                         std::size_t max_steps) {
  Real p = lo;
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (limit && p > *limit) return std::nullopt;
    Segment fs = f.segment_at(p);
    Segment gs = g.segment_at(p);
    Real fp = f.eval(p);
    Real gp = g.eval(p);
    if (fp.sign() > 0 && fp >= c * gp) return p;

    std::optional<Real> q = earliest(f.next_breakpoint(p), g.next_breakpoint(p));
    std::optional<Real> end = q;
    if (limit && (!end || *end > *limit)) end = limit;
    bool inside_limit_only = end && (!q || *end < *q);

    auto acceptable = [&](const Real& r) {
      if (!(r > p)) return false;
      if (q && !(r < *q)) return false;
      if (limit && r > *limit) return false;
      return fs.at(r).sign() > 0;
    };

    if (!needs_sampling(fs, gs)) {
      Real m = fs.piece.slope() - c * gs.piece.slope();
      if (m.sign() > 0) {
        Real r = p - (fp - c * gp) / m;
        if (acceptable(r)) return r;
      }
    } else {
      auto diff = [&](const Real& x) { return fs.at(x) - c * gs.at(x); };
      for (const auto& ch : detail::sign_changes(diff, p, end)) {
        if (ch.rising && acceptable(ch.x)) return ch.x;
      }
      if (inside_limit_only && end) {
        // The limit itself is a candidate when it lies inside the piece.
        if (diff(*end).sign() >= 0 && acceptable(*end)) return *end;
      }
    }
    if (!q) return std::nullopt;
    p = *q;
  }
  return std::nullopt;
}

std::optional<Real> last_ratio_below(const Hazard& f, const Hazard& g, const Real& c,
                                     const Real& lo, const Real& hi) {
  if (!(hi > lo)) return std::nullopt;
  auto nodes = detail::merge_unique(all_breakpoints(f, lo, hi), all_breakpoints(g, lo, hi));
  nodes.insert(nodes.begin(), lo);
  Real q = hi;
  for (std::size_t i = nodes.size(); i-- > 0;) {
    const Real& p = nodes[i];
    if (f.left_limit(q) < c * g.left_limit(q)) return q;
    Segment fs = f.segment_at(p);
    Segment gs = g.segment_at(p);
    auto diff = [&](const Real& x) { return fs.at(x) - c * gs.at(x); };
    Real dp = diff(p);
    if (!needs_sampling(fs, gs)) {
      if (dp.sign() < 0) {
        Real m = fs.piece.slope() - c * gs.piece.slope();
        if (!(m.sign() > 0)) return q;
        return p - dp / m;
      }
    } else {
      std::optional<Real> last;
      for (const auto& ch : detail::sign_changes(diff, p, q)) {
        if (ch.rising && ch.x < q) last = ch.x;
      }
      if (last) return last;
      if (dp.sign() < 0) return q;
    }
    q = p;
  }
  return std::nullopt;
}

}  // namespace hazardlab
