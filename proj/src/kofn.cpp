#include "hazardlab/kofn.hpp"

#include <algorithm>
#include <memory>
#include <mutex>

#include "hazardlab/config.hpp"
#include "hazardlab/error.hpp"
#include "hazardlab/scan.hpp"

namespace hazardlab {

std::vector<Subset> schedule_subsets(std::size_t n, std::size_t k) {
  if (k <= 1 || k > n) {
    throw Error(ErrorCode::bad_arity, "need 1 < k <= n, got n = " + std::to_string(n) +
                                          ", k = " + std::to_string(k));
  }
  std::vector<Subset> out;
  std::size_t r = k - 1;
  Subset cur(r);
  for (std::size_t i = 0; i < r; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    std::size_t i = r;
    while (i > 0 && cur[i - 1] == n - r + i) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < r; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

std::vector<Real> KofNPlan::endpoints() const {
  std::vector<Real> out{a0};
  for (const auto& b : blocks) out.push_back(b.end);
  return out;
}

BlockRule KofNPlan::rule(std::size_t block_index, std::size_t i) const {
  const Subset& slow = blocks.at(block_index).slow;
  if (std::find(slow.begin(), slow.end(), i) == slow.end()) return BlockRule::fast;
  bool has_one = !slow.empty() && slow.front() == 1;
  return has_one ? BlockRule::frozen : BlockRule::proxy;
}

namespace {

bool contains(const Subset& s, std::size_t i) { return std::find(s.begin(), s.end(), i) != s.end(); }

// Shared state behind R_2..R_n: blocks are appended in order and each
// hazard's generator copies its slice.
class Builder {
 public:
  Builder(Hazard r1, Hazard rprime, KofNParams params)
      : r1_(std::move(r1)),
        rprime_(std::move(rprime)),
        params_(std::move(params)),
        pair_sum_(add(r1_, rprime_)),
        period_(schedule_subsets(params_.n, params_.k)),
        data_(params_.n - 1) {
    start_block(1, params_.a0);
  }

  std::size_t period() const { return period_.size(); }

  void build_blocks(std::size_t count) {
    std::lock_guard lock(mu_);
    while (blocks_.size() < count) finish_block();
  }

  void build_past(const Real& x) {
    std::lock_guard lock(mu_);
    std::size_t steps = 0;
    while (!(current_end() >= x) || blocks_.empty()) {
      if (++steps > max_scan()) throw Error(ErrorCode::generator_stalled, "k-of-n blocks stalled");
      finish_block();
    }
  }

  HazardData data(std::size_t i) {
    std::lock_guard lock(mu_);
    HazardData d = data_[i - 2];
    d.horizon = current_end();
    return d;
  }

  KofNPlan plan() {
    std::lock_guard lock(mu_);
    KofNPlan p;
    p.n = params_.n;
    p.k = params_.k;
    p.gamma = params_.gamma;
    p.a0 = params_.a0;
    p.schedule = period_;
    p.blocks = blocks_;
    return p;
  }

 private:
  Real current_end() const { return blocks_.empty() ? params_.a0 : blocks_.back().end; }

  // Pushes the knots at a_{l-1} for block l.
  void start_block(std::size_t l, const Real& a) {
    const Real gamma = params_.gamma;
    const Hazard& up = params_.scales.upper;
    Pending next;
    next.l = l;
    next.start = a;
    next.slow = period_[(l - 1) % period_.size()];
    next.eps = params_.eps(l);
    bool has_one = contains(next.slow, 1);
    Real km1(static_cast<long>(params_.k - 1));

    std::vector<Real> current(params_.n + 1);
    for (std::size_t i = 2; i <= params_.n; ++i) current[i] = detail::data_left_limit(data_[i - 2], a);

    Real delta(0);
    if (!has_one) {
      Real slow_sum(0);
      for (auto i : next.slow) slow_sum += current[i];
      delta = max(Real(0), rprime_.eval(a) - slow_sum);
    }
    next.starts.assign(params_.n + 1, Real(0));
    for (std::size_t i = 2; i <= params_.n; ++i) {
      if (!contains(next.slow, i)) {
        next.starts[i] = max(current[i], gamma * up.eval(a));
        auto w = window_knots(up, a, std::nullopt, next.starts[i], gamma);
        data_[i - 2].knots.push_back(w.front());
      } else if (has_one) {
        next.starts[i] = current[i];
        data_[i - 2].knots.push_back(Knot{a, current[i], Piece()});
      } else {
        Real share = delta / km1;
        next.catchup.push_back(share);
        next.starts[i] = current[i] + share;
        auto w = window_knots(rprime_, a, std::nullopt, next.starts[i], Real(1) / km1);
        data_[i - 2].knots.push_back(w.front());
      }
      if (data_[i - 2].knots.size() >= 2) {
        auto& k = data_[i - 2].knots;
        if (k[k.size() - 2].x == a) k.erase(k.end() - 2);
      }
    }
    pending_ = std::move(next);
  }

  // Chooses a_l for the pending block, fills its interior, starts the next one.
  void finish_block() {
    Pending& b = pending_;
    const Hazard& down = params_.scales.lower;
    bool has_one = contains(b.slow, 1);
    const Hazard& witness = has_one ? r1_ : rprime_;
    Real frozen_sum(0);
    for (auto i : b.slow) {
      if (i != 1) frozen_sum += b.starts[i];
    }

    std::optional<Real> end;
    Real x = b.start;
    for (std::size_t step = 0; step < max_scan(); ++step) {
      auto next = witness.next_breakpoint(x);
      if (!next) break;
      x = *next;
      Real scale = down.left_limit(x);
      if (witness.left_limit(x) <= b.eps * scale && frozen_sum <= b.eps * scale) {
        end = x;
        break;
      }
    }
    if (!end) {
      throw Error(ErrorCode::witness_exhausted,
                  "no endpoint for block " + std::to_string(b.l) + " after " + b.start.to_string());
    }

    auto lowest = ratio_extremum(pair_sum_, params_.scales.upper, b.start, *end, false, Extreme::min);
    if (!lowest.empty && !lowest.infinite && lowest.value < params_.gamma) {
      throw Error(ErrorCode::precondition_violated,
                  "R_1 + R' below gamma R_up at " + lowest.at.to_string());
    }

    const Real gamma = params_.gamma;
    Real km1(static_cast<long>(params_.k - 1));
    for (std::size_t i = 2; i <= params_.n; ++i) {
      std::vector<Knot> w;
      if (!contains(b.slow, i)) {
        w = window_knots(params_.scales.upper, b.start, *end, b.starts[i], gamma);
      } else if (!has_one) {
        w = window_knots(rprime_, b.start, *end, b.starts[i], Real(1) / km1);
      }
      if (w.size() > 1) data_[i - 2].knots.insert(data_[i - 2].knots.end(), w.begin() + 1, w.end());
    }
    blocks_.push_back(Block{b.l, b.slow, b.start, *end, b.eps, b.catchup});
    start_block(b.l + 1, *end);
  }

  struct Pending {
    std::size_t l = 0;
    Real start;
    Subset slow;
    Real eps;
    std::vector<Real> starts;
    std::vector<Real> catchup;
  };

  std::mutex mu_;
  Hazard r1_;
  Hazard rprime_;
  KofNParams params_;
  Hazard pair_sum_;
  std::vector<Subset> period_;
  std::vector<HazardData> data_;
  std::vector<Block> blocks_;
  Pending pending_;
};

}  // namespace

KofNResult build_k_of_n(const Hazard& r1, const Hazard& rprime, const KofNParams& params) {
  schedule_subsets(params.n, params.k);
  if (!(params.gamma.sign() > 0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  auto builder = std::make_shared<Builder>(r1, rprime, params);
  std::size_t blocks = params.blocks ? params.blocks : 3 * builder->period();
  builder->build_blocks(blocks);

  KofNResult result;
  result.hazards.push_back(r1);
  for (std::size_t i = 2; i <= params.n; ++i) {
    Generator gen = [builder, i](HazardData& data, const Real& target) {
      builder->build_past(max(target, *data.horizon + Real(1)));
      data = builder->data(i);
    };
    result.hazards.emplace_back(builder->data(i), std::move(gen));
  }
  result.plan = builder->plan();
  return result;
}

namespace {

void subsets_of(std::size_t n, std::size_t size, std::size_t from, Subset& cur, std::vector<Subset>& out) {
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = from; i <= n; ++i) {
    cur.push_back(i);
    subsets_of(n, size, i + 1, cur, out);
    cur.pop_back();
  }
}

std::string describe(const Subset& s) {
  std::string out = "{";
  for (std::size_t j = 0; j < s.size(); ++j) out += (j ? "," : "") + std::to_string(s[j]);
  return out + "}";
}

}  // namespace

KofNReport verify_k_of_n(const std::vector<Hazard>& hazards, const KofNPlan& plan,
                         const ScalePair& scales) {
  if (hazards.size() != plan.n) throw Error(ErrorCode::bad_arity, "hazard count differs from n");
  KofNReport report;
  if (plan.blocks.empty()) return report;
  const Real last = plan.blocks.back().end;

  std::vector<Subset> ks;
  Subset cur;
  subsets_of(plan.n, plan.k, 1, cur, ks);
  for (const auto& K : ks) {
    std::vector<Hazard> terms;
    for (auto i : K) terms.push_back(hazards[i - 1]);
    auto m = ratio_extremum(add(terms), scales.upper, plan.a0, last, false, Extreme::min);
    SubsetCheck check{K, m.value, m.at, m.empty || m.infinite || m.value >= plan.gamma};
    if (!check.ok && !report.violation) {
      report.violation = Violation{ViolationKind::ratio, 0, m.at,
                                   "k-fold sum over " + describe(K) + " below gamma R_up"};
    }
    report.light.push_back(std::move(check));
  }

  std::vector<Subset> js;
  subsets_of(plan.n, plan.k - 1, 1, cur, js);
  for (const auto& J : js) {
    SubsetCheck check{J, Real(0), plan.a0, true};
    bool seen = false;
    for (const auto& b : plan.blocks) {
      if (b.slow != J) continue;
      Real sum(0);
      for (auto i : J) sum += hazards[i - 1].left_limit(b.end);
      Real ratio = sum / scales.lower.left_limit(b.end);
      bool ok = ratio <= Real(2) * b.eps;
      if (!seen || ratio > check.worst) {
        check.worst = ratio;
        check.at = b.end;
      }
      seen = true;
      if (!ok) {
        check.ok = false;
        if (!report.violation) {
          report.violation = Violation{ViolationKind::heaviness, b.l, b.end,
                                       "endpoint ratio of " + describe(J) + " = " + ratio.to_string() +
                                           " exceeds 2 eps_l = " + (Real(2) * b.eps).to_string()};
        }
      }
    }
    report.heavy.push_back(std::move(check));
  }
  return report;
}

}  // namespace hazardlab
