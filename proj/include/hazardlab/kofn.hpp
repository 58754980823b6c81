#ifndef HAZARDLAB_KOFN_HPP
#define HAZARDLAB_KOFN_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "hazardlab/hazard.hpp"
#include "hazardlab/report.hpp"
#include "hazardlab/sequence.hpp"

namespace hazardlab {

using Subset = std::vector<std::size_t>;  // 1-based, ascending

// All (k-1)-subsets of {1..n} in lexicographic order; the schedule cycles them.
std::vector<Subset> schedule_subsets(std::size_t n, std::size_t k);

enum class BlockRule { fast, frozen, proxy };

struct Block {
  std::size_t l;       // 1-based
  Subset slow;         // I_l
  Real start;          // a_{l-1}
  Real end;            // a_l
  Real eps;            // eps_l
  std::vector<Real> catchup;  // Delta_i for i in I_l (proxy blocks), else empty
};

struct KofNPlan {
  std::size_t n = 0;
  std::size_t k = 0;
  Real gamma;
  Real a0;
  std::vector<Subset> schedule;  // one period, M = C(n, k-1)
  std::vector<Block> blocks;

  std::vector<Real> endpoints() const;  // a_0, a_1, ..., a_L
  BlockRule rule(std::size_t block_index, std::size_t i) const;
};

struct KofNParams {
  std::size_t n = 3;
  std::size_t k = 2;
  Real gamma;
  Real a0;
  std::size_t blocks = 0;  // 0: three schedule periods
  Sequence eps = Sequence::geometric(Real(1), Real::ratio(1, 2));  // 2^{-l}
  ScalePair scales = ScalePair::linear();
};

struct KofNResult {
  std::vector<Hazard> hazards;  // R_1 .. R_n (R_1 is the input)
  KofNPlan plan;
};

// Builds R_2..R_n block by block from R_1 and the proxy R'. The hazards stay
// generator-backed past the requested blocks. Throws WitnessExhausted when no
// endpoint satisfies a block's inequalities and PreconditionViolated when
// R_1 + R' < gamma R_up on a built block.
KofNResult build_k_of_n(const Hazard& r1, const Hazard& rprime, const KofNParams& params);

struct SubsetCheck {
  Subset subset;
  Real worst;            // min ratio (light) or max endpoint ratio (heavy)
  Real at;
  bool ok = false;
};

struct KofNReport {
  std::vector<SubsetCheck> light;  // |K| = k over [a_0, a_L)
  std::vector<SubsetCheck> heavy;  // |J| = k-1 at their scheduled endpoints
  std::optional<Violation> violation;

  bool passed() const { return !violation; }
};

// Endpoint ratios use left limits at a_l, where the next block's jumps sit.
KofNReport verify_k_of_n(const std::vector<Hazard>& hazards, const KofNPlan& plan,
                         const ScalePair& scales);

}  // namespace hazardlab

#endif  // HAZARDLAB_KOFN_HPP
