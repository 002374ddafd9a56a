#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cantor/clopen.hpp"

namespace cantor {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// A minimal homeomorphism of a diagram path space acting by the Vershik
/// successor. Odometers are the one-vertex-per-level case, where the
/// successor is addition with carry, least significant coordinate first.
class System {
 public:
  System() = default;
  static System odometer(std::vector<int> prefix, std::vector<int> period);
  static System diagram(std::vector<LevelSpec> levels, std::size_t period_start);
  /// Stationary diagram with incidence matrix M (M[v][u] = edges u -> v),
  /// fed from a root with one edge to each vertex. Edges entering a vertex
  /// are ordered by source.
  static System stationary(const std::vector<std::vector<int>>& matrix);

  bool is_odometer() const { return state_->odometer; }
  const SpacePtr& space() const { return state_->space; }
  /// Odometer base sequence prefix . period^inf (empty for diagrams).
  const std::vector<int>& base_prefix() const { return state_->prefix; }
  const std::vector<int>& base_period() const { return state_->period; }
  int base(std::size_t l) const { return static_cast<int>(space()->alphabet(l)); }

  /// True when there is exactly one infinite path of maximal edges and
  /// exactly one of minimal edges.
  bool properly_ordered() const { return state_->max_point && state_->min_point; }
  /// Throws PreconditionError unless properly ordered.
  const Point& max_point() const;
  const Point& min_point() const;

  std::string describe() const;
  bool same_as(const System& other) const;

 private:
  struct State {
    bool odometer = false;
    SpacePtr space;
    std::vector<int> prefix, period;
    std::optional<Point> max_point, min_point;
  };
  static System build(SpacePtr space, bool odometer, std::vector<int> prefix, std::vector<int> period);
  std::shared_ptr<const State> state_;
};

Point successor(const System& sys, const Point& x);
Point predecessor(const System& sys, const Point& x);
/// phi^k(x).
Point image_point(const System& sys, const Point& x, std::int64_t k);
/// phi^k(a), canonical.
Clopen image_clopen(const System& sys, const Clopen& a, std::int64_t k);

/// Unique invariant probability of a clopen; odometers only.
Rational invariant_measure(const System& sys, const Clopen& a);

enum class MinimalityVerdict { certified, evidence_to_horizon, failed };

struct MinimalityReport {
  MinimalityVerdict verdict = MinimalityVerdict::failed;
  /// Power of the period incidence matrix found positive (evidence case).
  std::size_t power = 0;
  /// Vertices (u, v) of the periodic level with v unreachable from u.
  std::optional<std::pair<int, int>> witness;
  std::string detail;
};

MinimalityReport minimality_evidence(const System& sys, std::size_t horizon);
const char* to_string(MinimalityVerdict v);

}  // namespace cantor
