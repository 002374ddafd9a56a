#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/system.hpp"

namespace cantor {

struct Tower {
  /// floors[j] = phi^j(floors[0]).
  std::vector<Clopen> floors;

  const Clopen& base() const { return floors.front(); }
  const Clopen& top() const { return floors.back(); }
  std::size_t height() const { return floors.size(); }
};

struct KRPartition {
  std::size_t level = 0;
  std::vector<Tower> towers;

  std::size_t min_height() const;
  std::size_t atom_count() const;
  Clopen base() const;
  Clopen top() const;
  const Clopen& atom(std::size_t i, std::size_t j) const { return towers[i].floors[j]; }
};

/// Level-(n+1) towers as stacks of level-n towers. order[k] lists the level-n
/// towers traversed bottom-up by tower k; mult[k][i] counts tower i in it.
struct StackingMap {
  std::vector<std::vector<std::size_t>> order;
  std::vector<std::vector<std::uint64_t>> mult;
};

inline constexpr std::size_t kDefaultIterationCap = 1'000'000;

/// The single tower {X}.
KRPartition trivial_partition(const System& sys);

/// Towers of the first return map to a, indexed by increasing return time.
KRPartition kr_from_clopen(const System& sys, const Clopen& a, std::size_t cap = kDefaultIterationCap);

/// Splits every tower by itinerary classes. `splitter` returns a clopen
/// partition of the floor it is given; bases are cut so that every piece of
/// every floor lies in the algebra of the result.
KRPartition refine(const System& sys, const KRPartition& xi,
                   const std::function<std::vector<Clopen>(const Clopen&)>& splitter);
KRPartition refine_with_clopen(const System& sys, const KRPartition& xi, const Clopen& a);

/// Throws PreconditionError when xi_n1 is not a cutting and stacking of xi_n.
StackingMap stacking_map(const KRPartition& xi_n, const KRPartition& xi_n1, const System& sys);

/// (tower, floor) of the atom containing x.
std::pair<std::size_t, std::size_t> atom_at(const KRPartition& xi, const Point& x);

/// True when a is a union of atoms of xi.
bool in_algebra(const KRPartition& xi, const Clopen& a);
bool is_finer(const KRPartition& fine, const KRPartition& coarse);

/// Lazily built sequence of K-R partitions around a base point. Level 0 is
/// the trivial partition. Level n >= 1 is finer than level n-1, has a base
/// inside the depth-n cylinder of x0, contains the n-th length-lexicographic
/// cylinder in its algebra, and has every height > n.
class KRSequence {
 public:
  KRSequence(System sys, Point x0, std::size_t cap = kDefaultIterationCap);

  const System& system() const { return sys_; }
  const Point& base_point() const { return x0_; }

  const KRPartition& level(std::size_t n) const;
  /// Stacking of level n into level n+1.
  const StackingMap& stacking(std::size_t n) const;
  /// Depth of the cylinder condition defining the base of level n.
  std::size_t base_depth(std::size_t n) const;
  std::size_t built() const { return levels_.size(); }

 private:
  void extend_to(std::size_t n) const;
  KRPartition build_level(std::size_t n, std::size_t& depth) const;

  System sys_;
  Point x0_;
  std::size_t cap_;
  mutable std::vector<KRPartition> levels_;
  mutable std::vector<std::size_t> depths_;
  mutable std::vector<StackingMap> maps_;
};

}  // namespace cantor
