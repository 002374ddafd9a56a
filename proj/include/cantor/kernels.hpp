#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cantor/equiv.hpp"

namespace cantor {

/// prod H_i!, or nullopt when it exceeds 2^64.
std::optional<std::uint64_t> gamma_order(const KRPartition& xi);

/// Mixed factoradic: tower 0 holds the least significant digits; within a
/// tower the Lehmer code is read from floor 0.
TowerPermutation unrank_gamma(const KRPartition& xi, std::uint64_t index);

struct GammaCensus {
  /// Distinct piecewise elements, sorted.
  std::vector<PiecewisePower> elements;
  std::uint64_t even = 0;
  std::uint64_t members = 0;  // passing membership_gamma at the base point
};

/// Every element of Gamma_level. Throws ResourceCap above `limit` elements.
GammaCensus gamma_census_serial(const KRSequence& seq, std::size_t level, std::uint64_t limit = 1'000'000);
GammaCensus gamma_census_parallel(const KRSequence& seq, std::size_t level, std::uint64_t limit = 1'000'000);

/// Row-major verdicts of orbit_decide over all ordered pairs.
std::vector<OrbitVerdict> orbit_table_serial(const KRSequence& seq, const std::vector<Clopen>& clopens,
                                             std::size_t max_level);
std::vector<OrbitVerdict> orbit_table_parallel(const KRSequence& seq, const std::vector<Clopen>& clopens,
                                               std::size_t max_level);

}  // namespace cantor
