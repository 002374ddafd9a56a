#include "cantor/space.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max()
                                                           : a + b;
}

}  // namespace

SpacePtr Space::product(const std::vector<int>& prefix_bases, const std::vector<int>& period_bases) {
  if (period_bases.empty()) throw InputError("odometer base period must be nonempty");
  std::vector<LevelSpec> levels;
  auto add = [&](int b) {
    if (b < 2) throw InputError("odometer bases must be >= 2, got " + std::to_string(b));
    LevelSpec spec;
    spec.vertices = 1;
    for (int s = 0; s < b; ++s) spec.edges.push_back({0, 0, s});
    levels.push_back(std::move(spec));
  };
  for (int b : prefix_bases) add(b);
  for (int b : period_bases) add(b);
  auto sp = diagram(std::move(levels), prefix_bases.size());
  std::const_pointer_cast<Space>(sp)->product_ = true;
  return sp;
}

SpacePtr Space::diagram(std::vector<LevelSpec> levels, std::size_t period_start) {
  if (levels.empty()) throw InputError("diagram needs at least one level");
  if (period_start >= levels.size())
    throw InputError("period_start " + std::to_string(period_start) + " outside level list");
  if (levels[0].vertices != 1) throw InputError("level 0 must consist of a single root vertex");
  for (std::size_t l = 0; l < levels.size(); ++l) {
    const auto& spec = levels[l];
    const int next = l + 1 < levels.size() ? levels[l + 1].vertices : levels[period_start].vertices;
    const std::string where = "level " + std::to_string(l);
    if (spec.vertices < 1) throw InputError(where + ": vertex count must be positive");
    if (spec.edges.size() > std::numeric_limits<Symbol>::max())
      throw InputError(where + ": too many edges");
    std::vector<int> out_deg(spec.vertices, 0);
    std::vector<std::vector<int>> orders(next);
    for (std::size_t e = 0; e < spec.edges.size(); ++e) {
      const auto& edge = spec.edges[e];
      if (edge.src < 0 || edge.src >= spec.vertices)
        throw InputError(where + ", edge " + std::to_string(e) + ": source out of range");
      if (edge.dst < 0 || edge.dst >= next)
        throw InputError(where + ", edge " + std::to_string(e) + ": range out of range");
      ++out_deg[edge.src];
      orders[edge.dst].push_back(edge.order);
    }
    for (int v = 0; v < spec.vertices; ++v)
      if (out_deg[v] == 0)
        throw InputError(where + ": vertex " + std::to_string(v) + " has no outgoing edge");
    for (int v = 0; v < next; ++v) {
      auto& o = orders[v];
      if (o.empty())
        throw InputError(where + ": vertex " + std::to_string(v) + " of the next level has no incoming edge");
      std::sort(o.begin(), o.end());
      for (std::size_t i = 0; i < o.size(); ++i)
        if (o[i] != static_cast<int>(i))
          throw InputError(where + ": orders of edges entering vertex " + std::to_string(v) +
                           " are not 0..k-1");
    }
  }
  auto sp = std::shared_ptr<Space>(new Space());
  sp->levels_ = std::move(levels);
  sp->period_start_ = period_start;
  sp->index();
  return sp;
}

void Space::index() {
  out_.assign(levels_.size(), {});
  in_.assign(levels_.size(), {});
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const auto& spec = levels_[l];
    const int next = l + 1 < levels_.size() ? levels_[l + 1].vertices : levels_[period_start_].vertices;
    out_[l].assign(spec.vertices, {});
    in_[l].assign(next, {});
    for (std::size_t e = 0; e < spec.edges.size(); ++e) {
      out_[l][spec.edges[e].src].push_back(static_cast<Symbol>(e));
      in_[l][spec.edges[e].dst].push_back(static_cast<Symbol>(e));
    }
    for (auto& list : in_[l])
      std::sort(list.begin(), list.end(),
                [&](Symbol a, Symbol b) { return spec.edges[a].order < spec.edges[b].order; });
  }
}

std::span<const Symbol> Space::children(std::size_t l, int vertex) const {
  return out_[level_index(l)][vertex];
}

std::span<const Symbol> Space::incoming(std::size_t l, int vertex) const {
  return in_[level_index(l)][vertex];
}

int Space::end_vertex(std::span<const Symbol> w) const {
  return w.empty() ? 0 : edge(w.size() - 1, w.back()).dst;
}

std::optional<std::size_t> Space::first_bad_index(std::span<const Symbol> w) const {
  int v = 0;
  for (std::size_t l = 0; l < w.size(); ++l) {
    if (w[l] >= alphabet(l)) return l;
    const auto& e = edge(l, w[l]);
    if (e.src != v) return l;
    v = e.dst;
  }
  return std::nullopt;
}

bool Space::is_max_edge(std::size_t l, Symbol s) const {
  const auto& e = edge(l, s);
  return e.order + 1 == static_cast<int>(incoming(l, e.dst).size());
}

bool Space::is_min_edge(std::size_t l, Symbol s) const { return edge(l, s).order == 0; }

Symbol Space::next_edge(std::size_t l, Symbol s) const {
  const auto& e = edge(l, s);
  return incoming(l, e.dst)[e.order + 1];
}

Symbol Space::prev_edge(std::size_t l, Symbol s) const {
  const auto& e = edge(l, s);
  return incoming(l, e.dst)[e.order - 1];
}

Word Space::min_path_to(std::size_t l, int vertex) const {
  Word w(l);
  for (std::size_t i = l; i-- > 0;) {
    w[i] = incoming(i, vertex).front();
    vertex = edge(i, w[i]).src;
  }
  return w;
}

Word Space::max_path_to(std::size_t l, int vertex) const {
  Word w(l);
  for (std::size_t i = l; i-- > 0;) {
    w[i] = incoming(i, vertex).back();
    vertex = edge(i, w[i]).src;
  }
  return w;
}

std::uint64_t Space::word_count(std::size_t d) const {
  std::vector<std::uint64_t> cnt(1, 1);
  for (std::size_t l = 0; l < d; ++l) {
    const int next = vertices(l + 1);
    std::vector<std::uint64_t> nxt(next, 0);
    for (const auto& e : level(l).edges) nxt[e.dst] = sat_add(nxt[e.dst], cnt[e.src]);
    cnt = std::move(nxt);
  }
  std::uint64_t total = 0;
  for (auto c : cnt) total = sat_add(total, c);
  return total;
}

std::vector<Word> Space::words(std::size_t d) const {
  std::vector<Word> out;
  Word cur;
  // depth-first in lexicographic symbol order
  auto rec = [&](auto&& self, std::size_t l, int v) -> void {
    if (l == d) {
      out.push_back(cur);
      return;
    }
    for (Symbol s : children(l, v)) {
      cur.push_back(s);
      self(self, l + 1, edge(l, s).dst);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

Word Space::length_lex_word(std::uint64_t n) const {
  std::size_t d = 0;
  for (;; ++d) {
    const auto c = word_count(d);
    if (n < c) break;
    n -= c;
    if (d > 4096) throw ResourceCap("length-lex index too large");
  }
  // completions[l][v]: number of admissible continuations of length d-l from v at level l
  std::vector<std::vector<std::uint64_t>> completions(d + 1);
  completions[d].assign(vertices(d), 1);
  for (std::size_t l = d; l-- > 0;) {
    completions[l].assign(vertices(l), 0);
    for (const auto& e : level(l).edges)
      completions[l][e.src] = sat_add(completions[l][e.src], completions[l + 1][e.dst]);
  }
  Word w;
  int v = 0;
  for (std::size_t l = 0; l < d; ++l) {
    for (Symbol s : children(l, v)) {
      const auto c = completions[l + 1][edge(l, s).dst];
      if (n < c) {
        w.push_back(s);
        v = edge(l, s).dst;
        break;
      }
      n -= c;
    }
  }
  return w;
}

bool Space::same_as(const Space& other) const {
  if (this == &other) return true;
  if (product_ != other.product_ || period_start_ != other.period_start_ ||
      levels_.size() != other.levels_.size())
    return false;
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    const auto& a = levels_[l];
    const auto& b = other.levels_[l];
    if (a.vertices != b.vertices || a.edges.size() != b.edges.size()) return false;
    for (std::size_t e = 0; e < a.edges.size(); ++e)
      if (a.edges[e].src != b.edges[e].src || a.edges[e].dst != b.edges[e].dst ||
          a.edges[e].order != b.edges[e].order)
        return false;
  }
  return true;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

}  // namespace cantor
