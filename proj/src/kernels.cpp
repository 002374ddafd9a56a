#include "cantor/kernels.hpp"

#include <algorithm>
#include <limits>

#include <omp.h>

#include "cantor/errors.hpp"

namespace cantor {

std::optional<std::uint64_t> gamma_order(const KRPartition& xi) {
  std::uint64_t n = 1;
  for (const auto& t : xi.towers)
    for (std::uint64_t k = 2; k <= t.height(); ++k) {
      if (n > std::numeric_limits<std::uint64_t>::max() / k) return std::nullopt;
      n *= k;
    }
  return n;
}

TowerPermutation unrank_gamma(const KRPartition& xi, std::uint64_t index) {
  TowerPermutation tp{xi.level, {}};
  for (const auto& t : xi.towers) {
    const std::size_t h = t.height();
    std::vector<std::uint32_t> pool(h);
    for (std::uint32_t j = 0; j < h; ++j) pool[j] = j;
    std::vector<std::uint32_t> perm(h);
    for (std::size_t j = 0; j < h; ++j) {
      const std::size_t radix = h - j;
      const auto pick = static_cast<std::size_t>(index % radix);
      index /= radix;
      perm[j] = pool[pick];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    tp.perms.push_back(std::move(perm));
  }
  return tp;
}

namespace {

std::uint64_t checked_order(const KRPartition& xi, std::uint64_t limit) {
  const auto n = gamma_order(xi);
  if (!n || *n > limit) throw ResourceCap("Gamma_" + std::to_string(xi.level) + " has more than " +
                                          std::to_string(limit) + " elements");
  return *n;
}

void finish(GammaCensus& c) {
  std::sort(c.elements.begin(), c.elements.end());
  c.elements.erase(std::unique(c.elements.begin(), c.elements.end()), c.elements.end());
}

}  // namespace

GammaCensus gamma_census_serial(const KRSequence& seq, std::size_t level, std::uint64_t limit) {
  const KRPartition& xi = seq.level(level);
  const std::uint64_t n = checked_order(xi, limit);
  GammaCensus c;
  OrbitWindow orbit(seq.system(), seq.base_point());
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto tp = unrank_gamma(xi, i);
    auto f = gamma_element(seq.system(), xi, tp);
    c.even += sign_vector(tp).all_even();
    c.members += membership_gamma(orbit, f).yes;
    c.elements.push_back(std::move(f));
  }
  finish(c);
  return c;
}

GammaCensus gamma_census_parallel(const KRSequence& seq, std::size_t level, std::uint64_t limit) {
  const KRPartition& xi = seq.level(level);
  const auto n = static_cast<std::int64_t>(checked_order(xi, limit));
  GammaCensus c;
  std::vector<std::vector<PiecewisePower>> parts(static_cast<std::size_t>(omp_get_max_threads()));
  std::uint64_t even = 0, members = 0;
#pragma omp parallel reduction(+ : even, members)
  {
    OrbitWindow orbit(seq.system(), seq.base_point());
    auto& mine = parts[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto tp = unrank_gamma(xi, static_cast<std::uint64_t>(i));
      auto f = gamma_element(seq.system(), xi, tp);
      even += sign_vector(tp).all_even();
      members += membership_gamma(orbit, f).yes;
      mine.push_back(std::move(f));
    }
  }
  c.even = even;
  c.members = members;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(c.elements));
  finish(c);
  return c;
}

std::vector<OrbitVerdict> orbit_table_serial(const KRSequence& seq, const std::vector<Clopen>& clopens,
                                             std::size_t max_level) {
  const std::size_t n = clopens.size();
  std::vector<OrbitVerdict> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i * n + j] = orbit_decide(seq, clopens[i], clopens[j], max_level).verdict;
  return out;
}

std::vector<OrbitVerdict> orbit_table_parallel(const KRSequence& seq, const std::vector<Clopen>& clopens,
                                               std::size_t max_level) {
  seq.level(max_level);  // build every level before the threads read them
  const auto n = static_cast<std::int64_t>(clopens.size());
  std::vector<OrbitVerdict> out(clopens.size() * clopens.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      out[static_cast<std::size_t>(i * n + j)] =
          orbit_decide(seq, clopens[static_cast<std::size_t>(i)], clopens[static_cast<std::size_t>(j)], max_level)
              .verdict;
  return out;
}

}  // namespace cantor
