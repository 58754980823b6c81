#ifndef HAZARDLAB_CONFIG_HPP
#define HAZARDLAB_CONFIG_HPP

#include <cstddef>

namespace hazardlab {

inline constexpr std::size_t kDefaultMaxScan = 1'000'000;
inline constexpr std::size_t kDefaultPrefix = 20;

// Step budget for every inf/sup search and generator loop. Reads
// HAZARDLAB_MAXSCAN when set to a positive integer.
std::size_t max_scan();

}  // namespace hazardlab

#endif  // HAZARDLAB_CONFIG_HPP
