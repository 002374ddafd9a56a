#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/towers.hpp"

namespace cantor {

struct Piece {
  Clopen domain;
  std::int64_t power = 0;

  friend bool operator==(const Piece&, const Piece&) = default;
  friend auto operator<=>(const Piece& a, const Piece& b) {
    if (auto c = a.power <=> b.power; c != 0) return c;
    return a.domain <=> b.domain;
  }
};

/// Element of the topological full group: phi^power on each domain. Kept
/// normalized (one piece per power, sorted by power, no empty domains), so
/// equal homeomorphisms have identical piece lists.
class PiecewisePower {
 public:
  PiecewisePower() = default;
  static PiecewisePower identity(const System& sys);
  /// phi^k.
  static PiecewisePower power(const System& sys, std::int64_t k);

  const System& system() const { return sys_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_identity() const { return pieces_.size() == 1 && pieces_[0].power == 0; }

  friend bool operator==(const PiecewisePower& a, const PiecewisePower& b) { return a.pieces_ == b.pieces_; }
  friend auto operator<=>(const PiecewisePower& a, const PiecewisePower& b) { return a.pieces_ <=> b.pieces_; }

 private:
  friend PiecewisePower normalized(const System& sys, std::vector<Piece> pieces);
  System sys_;
  std::vector<Piece> pieces_;
};

/// Merges domains sharing a power and drops empty ones. No validation.
PiecewisePower normalized(const System& sys, std::vector<Piece> pieces);

/// Rejection of a piece list, carrying the offending clopen.
class InvalidElement : public InputError {
 public:
  InvalidElement(const std::string& what, Clopen witness) : InputError(what), witness_(std::move(witness)) {}
  const Clopen& witness() const { return witness_; }

 private:
  Clopen witness_;
};

/// Accepts pieces whose domains and images both partition X.
PiecewisePower validate_piecewise(const System& sys, const std::vector<Piece>& pieces);
/// Same check without throwing.
bool is_valid_piecewise(const System& sys, const std::vector<Piece>& pieces);

/// f o g.
PiecewisePower compose(const PiecewisePower& f, const PiecewisePower& g);
PiecewisePower inverse(const PiecewisePower& f);
std::int64_t cocycle_at(const PiecewisePower& f, const Point& x);
Point apply(const PiecewisePower& f, const Point& x);
Clopen apply(const PiecewisePower& f, const Clopen& a);
/// Closure of the set moved by f.
Clopen support(const PiecewisePower& f);

/// Element of Gamma_n: one floor permutation per tower, perms[i][j] = image floor.
struct TowerPermutation {
  std::size_t level = 0;
  std::vector<std::vector<std::uint32_t>> perms;

  static TowerPermutation identity(const KRPartition& xi);
  bool is_identity() const;
  friend bool operator==(const TowerPermutation&, const TowerPermutation&) = default;
  friend auto operator<=>(const TowerPermutation&, const TowerPermutation&) = default;
};

/// a o b (same level and shape).
TowerPermutation compose(const TowerPermutation& a, const TowerPermutation& b);
TowerPermutation inverse(const TowerPermutation& a);
/// Throws InputError unless every entry is a permutation matching xi's heights.
void check_shape(const TowerPermutation& tp, const KRPartition& xi);

struct SignVector {
  std::size_t level = 0;
  std::vector<int> signs;

  bool all_even() const;
};

SignVector sign_vector(const TowerPermutation& tp);
/// Number of transpositions in the cycle decomposition, per tower, when every
/// cycle is a transposition or a fixed point; nullopt otherwise.
std::optional<std::vector<std::size_t>> transposition_counts(const TowerPermutation& tp);

PiecewisePower gamma_element(const System& sys, const KRPartition& xi, const TowerPermutation& tp);
TowerPermutation embed_level(const TowerPermutation& tp, const StackingMap& sm, const KRPartition& xi_n1);

/// Where the level-n towers sit inside the level-m towers (m >= n).
struct Copy {
  std::size_t tower;
  std::size_t offset;
};
std::vector<std::vector<Copy>> copies(const KRSequence& seq, std::size_t n, std::size_t m);
TowerPermutation embed_to(const KRSequence& seq, const TowerPermutation& tp, std::size_t m);
/// The tower permutation of f at `level`, when f lies in Gamma_level.
std::optional<TowerPermutation> as_tower_permutation(const KRSequence& seq, const PiecewisePower& f,
                                                     std::size_t level);

/// Cached orbit phi^k(x0) for k in a growing window around 0.
class OrbitWindow {
 public:
  OrbitWindow(System sys, Point x0);
  const Point& at(std::int64_t k);
  const Point& base_point() const { return forward_.front(); }
  const System& system() const { return sys_; }

 private:
  System sys_;
  std::vector<Point> forward_;   // k = 0, 1, ...
  std::vector<Point> backward_;  // k = -1, -2, ...
};

struct PieceBound {
  std::int64_t power = 0;
  std::int64_t m = 0;        // least k >= 0 with phi^k(x0) in the piece
  std::int64_t m_prime = 0;  // largest k < 0 with phi^k(x0) in the piece
  bool ok = false;
};

struct Membership {
  bool yes = false;
  std::vector<PieceBound> bounds;
  /// Index of the first violating piece and an orbit point it throws across
  /// the boundary of the forward orbit.
  std::optional<std::size_t> violating;
  std::optional<Point> witness;
  std::string reason;
};

inline constexpr std::size_t kDefaultOrbitCap = 1'000'000;

/// Decides f(Orb+(x0)) = Orb+(x0) via -m_i <= k_i <= -m'_i - 1 on every piece.
/// Throws ResourceCap when the orbit scan exceeds `cap`.
Membership membership_gamma(OrbitWindow& orbit, const PiecewisePower& h, std::size_t cap = kDefaultOrbitCap);
Membership membership_gamma(const System& sys, const Point& x0, const PiecewisePower& h,
                            std::size_t cap = kDefaultOrbitCap);

struct CommutatorVerdict {
  bool yes = false;
  std::size_t level = 0;  // first level with all signs +1, or last level scanned
  std::vector<SignVector> signs;
};

/// Scans levels tp.level..depth for an all-even embedding.
CommutatorVerdict in_commutator(const KRSequence& seq, const TowerPermutation& tp, std::size_t depth);

/// An all-even element of Gamma_target acting like tp on the algebra of
/// tp's level.
TowerPermutation derived_approx(const KRSequence& seq, const TowerPermutation& tp, std::size_t target_level);

/// Double transposition of four floors inside c in the tower holding the base
/// point, at the first level offering four such floors.
TowerPermutation involution_in(const KRSequence& seq, const Clopen& c, std::size_t max_level = 32);

}  // namespace cantor
