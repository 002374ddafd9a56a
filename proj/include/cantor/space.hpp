#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace cantor {

using Symbol = std::uint16_t;
using Word = std::vector<Symbol>;

/// An edge between consecutive levels of a diagram. `order` ranks the edge
/// among all edges entering `dst`.
struct Edge {
  int src = 0;
  int dst = 0;
  int order = 0;
};

/// One level of an eventually periodic diagram: its vertex count and the
/// edges leaving it towards the next level.
struct LevelSpec {
  int vertices = 1;
  std::vector<Edge> edges;
};

class Space;
using SpacePtr = std::shared_ptr<const Space>;

/// Path space of an eventually periodic ordered diagram. Level `l` symbols are
/// indices into the level's edge list; a word is admissible when consecutive
/// edges meet. Product spaces (odometers) are diagrams with one vertex per
/// level.
class Space {
 public:
  /// Product space of an odometer with base sequence prefix . period^inf.
  static SpacePtr product(const std::vector<int>& prefix_bases,
                          const std::vector<int>& period_bases);
  /// Path space of a diagram; `levels[l]` links level l to l+1, and the level
  /// after the last one is identified with `period_start`.
  static SpacePtr diagram(std::vector<LevelSpec> levels, std::size_t period_start);

  bool is_product() const { return product_; }
  std::size_t period_start() const { return period_start_; }
  std::size_t period_length() const { return levels_.size() - period_start_; }
  const std::vector<LevelSpec>& level_specs() const { return levels_; }

  /// Index into level_specs() describing level l.
  std::size_t level_index(std::size_t l) const {
    return l < period_start_ ? l : period_start_ + (l - period_start_) % period_length();
  }
  const LevelSpec& level(std::size_t l) const { return levels_[level_index(l)]; }
  int vertices(std::size_t l) const { return level(l).vertices; }
  std::size_t alphabet(std::size_t l) const { return level(l).edges.size(); }
  const Edge& edge(std::size_t l, Symbol s) const { return level(l).edges[s]; }

  /// Symbols leaving `vertex` at level l, ascending.
  std::span<const Symbol> children(std::size_t l, int vertex) const;
  /// Symbols entering `vertex` of level l+1, sorted by edge order.
  std::span<const Symbol> incoming(std::size_t l, int vertex) const;

  /// Vertex reached after reading `w` from the root.
  int end_vertex(std::span<const Symbol> w) const;
  /// First junction index at which `w` fails, or nullopt when admissible.
  std::optional<std::size_t> first_bad_index(std::span<const Symbol> w) const;
  bool admissible(std::span<const Symbol> w) const { return !first_bad_index(w); }

  bool is_max_edge(std::size_t l, Symbol s) const;
  bool is_min_edge(std::size_t l, Symbol s) const;
  /// Edge entering the same vertex with order +1 / -1.
  Symbol next_edge(std::size_t l, Symbol s) const;
  Symbol prev_edge(std::size_t l, Symbol s) const;
  /// Unique path of minimal (maximal) edges from the root into `vertex` at
  /// level `l`; has length l.
  Word min_path_to(std::size_t l, int vertex) const;
  Word max_path_to(std::size_t l, int vertex) const;

  /// Number of admissible words of length d (saturating at UINT64_MAX).
  std::uint64_t word_count(std::size_t d) const;
  /// All admissible words of length d in lexicographic order.
  std::vector<Word> words(std::size_t d) const;
  /// The n-th admissible word in length-lexicographic order (n = 0 is empty).
  Word length_lex_word(std::uint64_t n) const;

  /// Structural equality of presentations.
  bool same_as(const Space& other) const;

 private:
  Space() = default;
  void index();

  bool product_ = false;
  std::vector<LevelSpec> levels_;
  std::size_t period_start_ = 0;
  // per level spec: per vertex list of outgoing symbols / incoming symbols by order
  std::vector<std::vector<std::vector<Symbol>>> out_;
  std::vector<std::vector<std::vector<Symbol>>> in_;
};

bool same_space(const SpacePtr& a, const SpacePtr& b);

}  // namespace cantor
