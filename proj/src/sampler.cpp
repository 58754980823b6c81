#include "hazardlab/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "hazardlab/error.hpp"

namespace hazardlab {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed ^ mix(stream + 0xD1B54A32D192ED03ULL))) {}

std::uint64_t CounterRng::bits(std::uint64_t i) const { return mix(key_ + i * 0x9E3779B97F4A7C15ULL); }

double CounterRng::uniform(std::uint64_t i) const {
  return static_cast<double>((bits(i) >> 11) + 1) * 0x1.0p-53;
}

double CounterRng::exponential(std::uint64_t i) const { return -std::log(uniform(i)); }

std::vector<double> sample(const Hazard& h, std::uint64_t seed, std::size_t count, std::uint64_t stream,
                           unsigned threads) {
  CounterRng rng(seed, stream);
  std::vector<double> levels(count);
  double top = 0;
  for (std::size_t i = 0; i < count; ++i) {
    levels[i] = rng.exponential(i);
    top = std::max(top, levels[i]);
  }
  if (count == 0) return {};
  // Materialize once so workers only read a private snapshot.
  if (h.generator_backed()) h.extend_to_level(Real::approx(top));
  const HazardData data = h.snapshot();

  std::vector<double> out(count);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      Real x = detail::data_inverse(data, Real::approx(levels[i]));
      out[i] = x.is_infinite() ? std::numeric_limits<double>::infinity() : x.to_double();
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    work(0, count);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    std::size_t lo = std::min(count, t * chunk);
    std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([&, t, lo, hi] {
      try {
        work(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<std::pair<double, double>> empirical_survival(const std::vector<double>& samples,
                                                          const std::vector<double>& grid) {
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  double n = static_cast<double>(sorted.size());
  for (double x : grid) {
    auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), x);
    out.emplace_back(x, n > 0 ? static_cast<double>(above) / n : 0.0);
  }
  return out;
}

SurvivalCheck survival_check(const Hazard& h, const std::vector<double>& samples,
                             const std::vector<double>& grid) {
  SurvivalCheck check;
  check.grid = grid;
  for (const auto& [x, frac] : empirical_survival(samples, grid)) {
    double expected = std::exp(-h.eval(Real::approx(x)).to_double());
    check.empirical.push_back(frac);
    check.expected.push_back(expected);
    check.max_deviation = std::max(check.max_deviation, std::abs(frac - expected));
  }
  return check;
}

SurvivalCheck min_law_check(const Hazard& h1, const Hazard& h2, std::uint64_t seed, std::size_t count,
                            const std::vector<double>& grid, unsigned threads) {
  auto a = sample(h1, seed, count, 1, threads);
  auto b = sample(h2, seed, count, 2, threads);
  for (std::size_t i = 0; i < count; ++i) a[i] = std::min(a[i], b[i]);
  return survival_check(add(h1, h2), a, grid);
}

}  // namespace hazardlab
