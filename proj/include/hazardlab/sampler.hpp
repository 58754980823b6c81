#ifndef HAZARDLAB_SAMPLER_HPP
#define HAZARDLAB_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hazardlab/hazard.hpp"

namespace hazardlab {

// Counter-based stream: u_i = mix(key + i * 0x9E3779B97F4A7C15) with
// key = mix(seed ^ mix(stream + 0xD1B54A32D192ED03)), where mix is the
// SplitMix64 finalizer. Draw i maps the top 53 bits to (0, 1].
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t bits(std::uint64_t i) const;
  double uniform(std::uint64_t i) const;      // (0, 1]
  double exponential(std::uint64_t i) const;  // -log(uniform)

 private:
  std::uint64_t key_;
};

// generalized_inverse(H, E_i) for standard exponential draws E_i of `stream`.
// Deterministic for a given seed regardless of `threads`.
std::vector<double> sample(const Hazard& h, std::uint64_t seed, std::size_t count,
                           std::uint64_t stream = 0, unsigned threads = 1);

// (x, fraction of samples > x) for each grid point.
std::vector<std::pair<double, double>> empirical_survival(const std::vector<double>& samples,
                                                          const std::vector<double>& grid);

struct SurvivalCheck {
  std::vector<double> grid;
  std::vector<double> empirical;
  std::vector<double> expected;  // exp(-R(x))
  double max_deviation = 0;
};

SurvivalCheck survival_check(const Hazard& h, const std::vector<double>& samples,
                             const std::vector<double>& grid);

// Minima of independent draws from H1 (stream 1) and H2 (stream 2) against
// exp(-(R1 + R2)(x)).
SurvivalCheck min_law_check(const Hazard& h1, const Hazard& h2, std::uint64_t seed,
                            std::size_t count, const std::vector<double>& grid, unsigned threads = 1);

}  // namespace hazardlab

#endif  // HAZARDLAB_SAMPLER_HPP
