#include "cantor/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <tuple>

#include "cantor/errors.hpp"

namespace cantor {

std::uint64_t pair(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 s = static_cast<unsigned __int128>(a) + b;
  const unsigned __int128 z = s * (s + 1) / 2 + b;
  if (z > std::numeric_limits<std::uint64_t>::max()) throw ResourceCap("code exceeds 64 bits");
  return static_cast<std::uint64_t>(z);
}

std::pair<std::uint64_t, std::uint64_t> unpair(std::uint64_t z) {
  // w = floor((sqrt(8z+1)-1)/2), corrected for rounding.
  auto tri = [](unsigned __int128 w) { return w * (w + 1) / 2; };
  unsigned __int128 w = static_cast<unsigned __int128>((std::sqrt(8.0L * z + 1) - 1) / 2);
  while (tri(w) > z) --w;
  while (tri(w + 1) <= z) ++w;
  const std::uint64_t b = z - static_cast<std::uint64_t>(tri(w));
  return {static_cast<std::uint64_t>(w) - b, b};
}

std::int64_t zigzag(std::uint64_t n) {
  return n % 2 ? static_cast<std::int64_t>((n + 1) / 2) : -static_cast<std::int64_t>(n / 2);
}

std::uint64_t unzigzag(std::int64_t k) {
  return k > 0 ? 2 * static_cast<std::uint64_t>(k) - 1 : 2 * static_cast<std::uint64_t>(-k);
}

namespace {

constexpr std::uint64_t kMaxWords = 62;

std::uint64_t checked_words(const SpacePtr& space, std::size_t d) {
  const std::uint64_t w = space->word_count(d);
  if (w > kMaxWords) throw ResourceCap("depth " + std::to_string(d) + " has more than 62 words");
  return w;
}

/// Sizes of the sibling blocks at depth d (words sharing their first d-1
/// symbols), in lexicographic order.
std::vector<std::uint64_t> blocks(const SpacePtr& space, std::size_t d) {
  std::vector<std::uint64_t> out;
  const auto ws = space->words(d);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (i == 0 || !std::equal(ws[i].begin(), ws[i].end() - 1, ws[i - 1].begin())) out.push_back(0);
    ++out.back();
  }
  return out;
}

/// Masks below m that are unions of whole blocks (bit i is word i).
std::uint64_t closed_below(const std::vector<std::uint64_t>& blk, std::uint64_t m) {
  std::vector<std::uint64_t> lo(blk.size());
  std::uint64_t acc = 0;
  for (std::size_t b = 0; b < blk.size(); ++b) {
    lo[b] = acc;
    acc += blk[b];
  }
  if (m >> acc) return std::uint64_t{1} << blk.size();
  std::uint64_t count = 0;
  for (std::size_t b = blk.size(); b-- > 0;) {
    const std::uint64_t full = (std::uint64_t{1} << blk[b]) - 1;
    const std::uint64_t seg = (m >> lo[b]) & full;
    if (seg == 0) continue;
    count += std::uint64_t{1} << b;
    if (seg != full) return count;
  }
  return count;
}

}  // namespace

std::uint64_t clopens_of_depth(const SpacePtr& space, std::size_t depth) {
  if (depth == 0) return 2;
  const std::uint64_t w = checked_words(space, depth);
  const std::uint64_t prev = space->word_count(depth - 1);
  return (std::uint64_t{1} << w) - (std::uint64_t{1} << prev);
}

Clopen clopen_at(const SpacePtr& space, std::uint64_t index) {
  if (index == 0) return Clopen::empty(space);
  if (index == 1) return Clopen::full(space);
  std::uint64_t r = index - 2;
  for (std::size_t d = 1;; ++d) {
    const std::uint64_t c = clopens_of_depth(space, d);
    if (r >= c) {
      r -= c;
      continue;
    }
    const auto blk = blocks(space, d);
    const std::uint64_t w = space->word_count(d);
    // Smallest x with x - closed_below(x) > r; the mask is x - 1.
    std::uint64_t lo = 0, hi = std::uint64_t{1} << w;
    while (lo < hi) {
      const std::uint64_t mid = lo + (hi - lo) / 2;
      if (mid - closed_below(blk, mid) > r) hi = mid;
      else lo = mid + 1;
    }
    const std::uint64_t mask = lo - 1;
    const auto ws = space->words(d);
    std::vector<Word> keep;
    for (std::size_t i = 0; i < ws.size(); ++i)
      if (mask >> i & 1) keep.push_back(ws[i]);
    return make_canonical(space, d, std::move(keep));
  }
}

std::uint64_t clopen_index(const Clopen& a) {
  if (a.is_empty()) return 0;
  if (a.is_full()) return 1;
  const auto& space = a.space();
  const std::size_t d = a.depth();
  std::uint64_t base = 2;
  for (std::size_t e = 1; e < d; ++e) base += clopens_of_depth(space, e);
  checked_words(space, d);
  const auto ws = space->words(d);
  std::uint64_t mask = 0;
  for (const auto& w : a.words()) {
    auto it = std::lower_bound(ws.begin(), ws.end(), w);
    mask |= std::uint64_t{1} << (it - ws.begin());
  }
  return base + mask - closed_below(blocks(space, d), mask);
}

std::vector<Piece> decode_pieces(const SpacePtr& space, std::uint64_t code) {
  auto [km1, t] = unpair(code);
  std::vector<Piece> out;
  for (std::uint64_t i = 0; i <= km1; ++i) {
    std::uint64_t e = t;
    if (i < km1) std::tie(e, t) = unpair(t);
    const auto [zp, ci] = unpair(e);
    out.push_back({clopen_at(space, ci), zigzag(zp)});
  }
  return out;
}

std::uint64_t encode_pieces(const std::vector<Piece>& pieces) {
  if (pieces.empty()) throw InputError("no pieces");
  std::vector<std::uint64_t> entries;
  for (const auto& p : pieces) entries.push_back(pair(unzigzag(p.power), clopen_index(p.domain)));
  std::uint64_t t = entries.back();
  for (std::size_t i = entries.size() - 1; i-- > 0;) t = pair(entries[i], t);
  return pair(entries.size() - 1, t);
}

namespace {

/// Pieces of a code when every domain is nonempty and the decode stays
/// within the supported depths.
std::optional<std::vector<Piece>> decode_nonempty(const SpacePtr& space, std::uint64_t code) {
  auto [km1, t] = unpair(code);
  std::vector<std::uint64_t> entries;
  for (std::uint64_t i = 0; i <= km1; ++i) {
    std::uint64_t e = t;
    if (i < km1) std::tie(e, t) = unpair(t);
    if (unpair(e).second == 0) return std::nullopt;
    entries.push_back(e);
  }
  std::vector<Piece> out;
  try {
    for (auto e : entries) {
      const auto [zp, ci] = unpair(e);
      out.push_back({clopen_at(space, ci), zigzag(zp)});
    }
  } catch (const ResourceCap&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

bool code_is_valid(const System& sys, std::uint64_t code) {
  auto pieces = decode_nonempty(sys.space(), code);
  return pieces && is_valid_piecewise(sys, *pieces);
}

PiecewisePower element_at(const System& sys, std::uint64_t code) {
  auto pieces = decode_nonempty(sys.space(), code);
  if (!pieces) return PiecewisePower::identity(sys);
  try {
    return validate_piecewise(sys, *pieces);
  } catch (const InvalidElement&) {
    return PiecewisePower::identity(sys);
  }
}

Stream enum_tfg(const System& sys, std::uint64_t start, std::uint64_t count, bool dedup, std::uint64_t budget) {
  Stream out;
  std::set<PiecewisePower> seen;
  for (std::uint64_t c = start; out.items.size() < count; ++c) {
    if (dedup && c - start >= budget) {
      out.truncated = true;
      break;
    }
    auto f = element_at(sys, c);
    if (dedup && !seen.insert(f).second) continue;
    out.items.push_back({c, std::move(f)});
  }
  return out;
}

namespace {

GammaFilter filter(OrbitWindow& orbit, const PiecewisePower& f, std::size_t horizon) {
  try {
    if (membership_gamma(orbit, f, horizon).yes) return {f, false};
    return {PiecewisePower::identity(f.system()), false};
  } catch (const ResourceCap&) {
    return {PiecewisePower::identity(f.system()), true};
  }
}

}  // namespace

GammaFilter is_in_gamma(const System& sys, const Point& x0, const PiecewisePower& f, std::size_t horizon) {
  OrbitWindow orbit(sys, x0);
  return filter(orbit, f, horizon);
}

Stream enum_gamma(const System& sys, const Point& x0, std::uint64_t start, std::uint64_t count, bool dedup,
                  std::uint64_t budget, std::size_t horizon) {
  Stream out;
  std::set<PiecewisePower> seen;
  OrbitWindow orbit(sys, x0);
  for (std::uint64_t c = start; out.items.size() < count; ++c) {
    if (dedup && c - start >= budget) {
      out.truncated = true;
      break;
    }
    auto f = filter(orbit, element_at(sys, c), horizon).element;
    if (dedup && !seen.insert(f).second) continue;
    out.items.push_back({c, std::move(f)});
  }
  return out;
}

Stream enum_dgamma(const System& sys, const Point& x0, std::uint64_t count, std::uint64_t budget) {
  std::vector<PiecewisePower> gamma;
  std::set<PiecewisePower> gamma_seen, seen;
  Stream out;
  OrbitWindow orbit(sys, x0);
  std::uint64_t next_code = 0, comm_diag = 0, prod_diag = 0, inv_next = 0;
  // Extends the distinct Gamma elements to index i; false when the code budget is spent.
  auto reach = [&](std::size_t i) {
    while (gamma.size() <= i) {
      if (next_code >= budget) return false;
      auto f = filter(orbit, element_at(sys, next_code++), kDefaultOrbitCap).element;
      if (gamma_seen.insert(f).second) gamma.push_back(std::move(f));
    }
    return true;
  };
  auto emit = [&](std::uint64_t step, PiecewisePower f) {
    if (seen.insert(f).second) out.items.push_back({step, std::move(f)});
  };
  for (std::uint64_t step = 0; out.items.size() < count; ++step) {
    if (step >= budget) {
      out.truncated = true;
      break;
    }
    switch (step % 3) {
      case 0: {
        const auto [i, j] = unpair(comm_diag);
        if (!reach(std::max<std::size_t>(i, j))) break;
        ++comm_diag;
        const auto& f = gamma[i];
        const auto& g = gamma[j];
        emit(step, compose(compose(f, g), compose(inverse(f), inverse(g))));
        break;
      }
      case 1: {
        const auto [i, j] = unpair(prod_diag);
        if (i >= out.items.size() || j >= out.items.size()) break;
        ++prod_diag;
        emit(step, compose(out.items[i].element, out.items[j].element));
        break;
      }
      default:
        if (inv_next < out.items.size()) emit(step, inverse(out.items[inv_next++].element));
    }
  }
  return out;
}

}  // namespace cantor
