#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/fullgroup.hpp"

namespace cantor {

struct CountVector {
  std::size_t level = 0;
  std::vector<std::uint64_t> counts;

  friend bool operator==(const CountVector&, const CountVector&) = default;
};

/// Atoms of each tower contained in a. Throws PreconditionError when a is
/// not a union of atoms of xi.
CountVector count_vector(const KRPartition& xi, const Clopen& a);

/// Within each tower, sends the j-th atom of a to the j-th atom of b (floor
/// order), the atoms of b\a to those of a\b in order, and fixes the rest.
/// Requires equal count vectors.
TowerPermutation matching_permutation(const KRPartition& xi, const Clopen& a, const Clopen& b);

enum class OrbitVerdict { equivalent, not_yet_equivalent, certified_distinct };
const char* to_string(OrbitVerdict v);

struct OrbitStatus {
  OrbitVerdict verdict = OrbitVerdict::not_yet_equivalent;
  /// Level of the witness, or the last level scanned.
  std::size_t level = 0;
  std::optional<TowerPermutation> witness;
  std::optional<Rational> mu_a, mu_b;
};

inline constexpr const char* kNotYetCaveat =
    "NotYetEquivalent is not a proof of distinctness: no level up to the bound matched the count vectors.";

OrbitStatus orbit_decide(const KRSequence& seq, const Clopen& a, const Clopen& b, std::size_t max_level);

/// Involution of the second sequence's group sending a to b, given that a and
/// b have equal count vectors at `level` of the first sequence.
TowerPermutation base_point_witness(const KRSequence& seq, const KRSequence& other, const Clopen& a,
                                    const Clopen& b, std::size_t level, std::size_t max_level = 32);

struct MergePart {
  Clopen a;
  TowerPermutation h;
};

/// Glues witnesses h_i with f(a_i) = h_i(a_i) into one h of Gamma_level with
/// h(A) = f(A), A the disjoint union of the a_i. Atoms of f(A)\A are sent back
/// along f^-1 to the first atom of A\f(A).
TowerPermutation piecewise_merge(const KRSequence& seq, const PiecewisePower& f, const std::vector<MergePart>& parts,
                                 std::size_t level);

// ---------------------------------------------------------------- strong orbit equivalence

/// Prime valuation of the product of all bases; nullopt is infinity.
using Valuation = std::optional<std::uint64_t>;
std::map<std::uint64_t, Valuation> supernatural(const System& odometer);
std::string to_string(const Valuation& v);

struct Obstruction {
  std::uint64_t prime = 0;
  Valuation v1, v2;
  /// 1/p^(min+1): a clopen measure in exactly one of the systems.
  Rational gap;
  int realizable_in = 0;  // 1 or 2
};

struct SoeDecision {
  bool equivalent = false;
  std::optional<Obstruction> obstruction;
};

/// Odometers only; throws PreconditionError otherwise.
SoeDecision soe_decide(const System& sys1, const System& sys2);

struct Rung {
  std::size_t n = 0;  // level of the first system
  std::size_t m = 0;  // level of the second system
  bool forward = true;
  /// Heights as prime factorizations.
  std::map<std::uint64_t, std::uint64_t> h1, h2;
};

struct PartialIso {
  bool stuck = false;
  std::vector<Rung> rungs;
  /// Level and reason of the first generator with no image.
  std::size_t stuck_level = 0;
  std::string reason;
};

/// Alternating extension: a forward rung maps floor j of level n to the floors
/// j' = j mod H_n of level m of the second system (needs H_n | H'_m); a
/// backward rung is the mirror image. Measures match by construction.
/// Non-odometer input comes back stuck at level 0 with an "evidence only"
/// reason.
PartialIso soe_backandforth(const System& sys1, const System& sys2, std::size_t depth, std::size_t level_cap = 256);

/// Floors of the target level hit by floor j under rung k (materialized).
std::vector<std::uint64_t> rung_image(const Rung& r, std::uint64_t j);
std::uint64_t height_value(const std::map<std::uint64_t, std::uint64_t>& h);

struct CocyclePiece {
  std::size_t rung = 0;
  /// Floors [0, first_exceptional) of the source level carry cocycle 1.
  std::uint64_t first_exceptional = 0;
  Rational constant_measure;
  Rational exceptional_measure;
  std::uint64_t atoms_checked = 0;
};

struct CocycleReport {
  std::vector<CocyclePiece> rungs;
  bool violation = false;
  std::string detail;
};

/// Throws PreconditionError on a stuck ladder.
CocycleReport soe_cocycle_report(const PartialIso& pi, std::uint64_t horizon);

}  // namespace cantor
