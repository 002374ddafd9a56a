#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cantor/fullgroup.hpp"

namespace cantor {

/// Cantor pairing. `pair` throws ResourceCap on overflow.
std::uint64_t pair(std::uint64_t a, std::uint64_t b);
std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t z);

/// 0, 1, -1, 2, -2, ...
std::int64_t zigzag(std::uint64_t n);
std::uint64_t unzigzag(std::int64_t k);

/// Clopens in a fixed order: EMPTY, X, then by canonical depth, and within a
/// depth by the bit mask over the lexicographically sorted words. Supported
/// while a depth has at most 62 words.
std::uint64_t clopens_of_depth(const SpacePtr& space, std::size_t depth);
Clopen clopen_at(const SpacePtr& space, std::uint64_t index);
std::uint64_t clopen_index(const Clopen& a);

/// Code c -> (k-1, t); t unpaired into k entries; each entry unpairs into
/// (zigzag power, clopen index).
std::vector<Piece> decode_pieces(const SpacePtr& space, std::uint64_t code);
std::uint64_t encode_pieces(const std::vector<Piece>& pieces);
/// The element with the given code, or the identity when the pieces are not
/// a valid element. A piece with an empty domain makes the code invalid.
PiecewisePower element_at(const System& sys, std::uint64_t code);
bool code_is_valid(const System& sys, std::uint64_t code);

struct Enumerated {
  std::uint64_t code = 0;
  PiecewisePower element;
};

struct Stream {
  std::vector<Enumerated> items;
  /// The scan budget ran out before `count` items were produced.
  bool truncated = false;
};

inline constexpr std::uint64_t kDefaultCodeBudget = 1'000'000;

/// Codes start, start+1, ... With dedup, repeats are dropped and up to
/// `count` distinct elements are produced within `budget` codes.
Stream enum_tfg(const System& sys, std::uint64_t start, std::uint64_t count, bool dedup,
                std::uint64_t budget = kDefaultCodeBudget);

struct GammaFilter {
  PiecewisePower element;
  /// The orbit scan hit `horizon` before the bounds were known.
  bool horizon_exhausted = false;
};

/// f when f lies in Gamma_{x0}, the identity otherwise.
GammaFilter is_in_gamma(const System& sys, const Point& x0, const PiecewisePower& f,
                        std::size_t horizon = kDefaultOrbitCap);

/// The filter above applied to each code of enum_tfg.
Stream enum_gamma(const System& sys, const Point& x0, std::uint64_t start, std::uint64_t count, bool dedup,
                  std::uint64_t budget = kDefaultCodeBudget, std::size_t horizon = kDefaultOrbitCap);

/// Distinct members of the commutator subgroup. Steps cycle through three
/// kinds: the next commutator [g_i, g_j] of distinct Gamma elements along the
/// pairing diagonal, the next product of two listed elements along the
/// diagonal, and the inverse of the next listed element. `code` is the step
/// that produced the element; `budget` bounds both the steps and the codes
/// scanned for Gamma elements.
Stream enum_dgamma(const System& sys, const Point& x0, std::uint64_t count,
                   std::uint64_t budget = kDefaultCodeBudget);

}  // namespace cantor
