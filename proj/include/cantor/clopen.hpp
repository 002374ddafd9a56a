#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/space.hpp"

namespace cantor {

/// Eventually periodic point prefix . period^inf, kept in normal form
/// (primitive period, shortest prefix) so that equality is structural.
class Point {
 public:
  Point() = default;
  /// Validates admissibility at every junction and normalizes.
  Point(const SpacePtr& space, Word prefix, Word period);

  const Word& prefix() const { return prefix_; }
  const Word& period() const { return period_; }
  Symbol at(std::size_t i) const {
    return i < prefix_.size() ? prefix_[i] : period_[(i - prefix_.size()) % period_.size()];
  }
  /// First n symbols.
  Word head(std::size_t n) const;
  /// Point whose first |head| symbols are replaced by `head`.
  Point spliced(const SpacePtr& space, const Word& head) const;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;

 private:
  Word prefix_;
  Word period_;
};

/// Clopen subset of a diagram path space in canonical form: the union of the
/// cylinders of `words`, all of length `depth`, where `depth` is minimal.
/// The empty set is depth 0 with no words; the whole space is depth 0 with
/// the empty word.
class Clopen {
 public:
  Clopen() = default;
  static Clopen empty(const SpacePtr& space);
  static Clopen full(const SpacePtr& space);
  /// Throws InputError naming the failing junction if `w` is inadmissible.
  static Clopen cylinder(const SpacePtr& space, Word w);
  /// Union of cylinders of arbitrary (possibly mixed) lengths.
  static Clopen from_words(const SpacePtr& space, const std::vector<Word>& words);

  const SpacePtr& space() const { return space_; }
  std::size_t depth() const { return depth_; }
  const std::vector<Word>& words() const { return words_; }
  bool is_empty() const { return words_.empty(); }
  bool is_full() const { return depth_ == 0 && words_.size() == 1; }

  /// Words of the same set expanded to length d >= depth() (not canonical).
  std::vector<Word> words_at(std::size_t d) const;
  bool contains(const Point& x) const;

  friend bool operator==(const Clopen& a, const Clopen& b) {
    return a.depth_ == b.depth_ && a.words_ == b.words_;
  }
  friend std::strong_ordering operator<=>(const Clopen& a, const Clopen& b) {
    if (auto c = a.depth_ <=> b.depth_; c != 0) return c;
    return a.words_ <=> b.words_;
  }

 private:
  friend Clopen make_canonical(const SpacePtr&, std::size_t, std::vector<Word>);
  SpacePtr space_;
  std::size_t depth_ = 0;
  std::vector<Word> words_;
};

/// Builds the canonical clopen of a set of distinct admissible depth-d words.
Clopen make_canonical(const SpacePtr& space, std::size_t depth, std::vector<Word> words);

enum class BoolOp { unite, intersect, complement, difference };

Clopen boolean_op(BoolOp kind, const Clopen& a, const std::optional<Clopen>& b = std::nullopt);
Clopen unite(const Clopen& a, const Clopen& b);
Clopen intersect(const Clopen& a, const Clopen& b);
Clopen complement(const Clopen& a);
Clopen difference(const Clopen& a, const Clopen& b);

enum class Relation { equal, subset, superset, disjoint, incomparable };

/// Relation of a to b: a==b, a⊂b, b⊂a, a∩b=∅, or none of these.
Relation compare(const Clopen& a, const Clopen& b);
bool is_subset(const Clopen& a, const Clopen& b);
bool are_disjoint(const Clopen& a, const Clopen& b);
const char* to_string(Relation r);

/// Literal syntax: "X", "EMPTY", or words joined by '+'. Words are digit
/// strings when every symbol is a single digit; otherwise symbols are
/// separated by '.' (e.g. "1.11.0").
std::string to_literal(const Clopen& a);
Clopen parse_clopen(const SpacePtr& space, std::string_view literal);

/// Point literal "prefix(period)", e.g. "1(0)" for 1.0^inf.
std::string to_literal(const Point& x);
Point parse_point(const SpacePtr& space, std::string_view literal);

/// The n-th cylinder of the canonical length-lexicographic basis (n = 0 is X).
Clopen basis_cylinder(const SpacePtr& space, std::uint64_t n);

}  // namespace cantor
