#include "cantor/towers.hpp"

#include <algorithm>
#include <map>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

std::vector<Clopen> split_by_depth(const Clopen& floor, std::size_t depth) {
  std::vector<Clopen> out;
  const auto& sp = floor.space();
  if (floor.depth() <= depth) {
    for (auto& w : floor.words_at(depth)) out.push_back(make_canonical(sp, depth, {w}));
    return out;
  }
  std::map<Word, std::vector<Word>> groups;
  for (const auto& w : floor.words()) groups[Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(depth))].push_back(w);
  for (auto& [_, ws] : groups) out.push_back(make_canonical(sp, floor.depth(), std::move(ws)));
  return out;
}

std::vector<Clopen> common_refinement(const std::vector<Clopen>& a, const std::vector<Clopen>& b) {
  std::vector<Clopen> out;
  for (const auto& p : a)
    for (const auto& q : b) {
      auto r = intersect(p, q);
      if (!r.is_empty()) out.push_back(std::move(r));
    }
  return out;
}

Tower tower_over(const System& sys, const Clopen& base, std::size_t height) {
  Tower t;
  t.floors.reserve(height);
  t.floors.push_back(base);
  for (std::size_t j = 1; j < height; ++j) t.floors.push_back(image_clopen(sys, t.floors.back(), 1));
  return t;
}

// Depth-L cylinder condition around x0: first L-1 symbols of x0, then any
// edge with the same order as x0's edge at level L-1.
Clopen base_cylinder(const System& sys, const Point& x0, std::size_t depth) {
  const auto& sp = sys.space();
  if (depth == 0) return Clopen::full(sp);
  Word head = x0.head(depth - 1);
  const int v = sp->end_vertex(head);
  const int order = sp->edge(depth - 1, x0.at(depth - 1)).order;
  std::vector<Word> words;
  for (Symbol s : sp->children(depth - 1, v))
    if (sp->edge(depth - 1, s).order == order) {
      Word w = head;
      w.push_back(s);
      words.push_back(std::move(w));
    }
  return make_canonical(sp, depth, std::move(words));
}

}  // namespace

std::size_t KRPartition::min_height() const {
  std::size_t h = towers.empty() ? 0 : towers[0].height();
  for (const auto& t : towers) h = std::min(h, t.height());
  return h;
}

std::size_t KRPartition::atom_count() const {
  std::size_t n = 0;
  for (const auto& t : towers) n += t.height();
  return n;
}

Clopen KRPartition::base() const {
  Clopen b = Clopen::empty(towers.at(0).base().space());
  for (const auto& t : towers) b = unite(b, t.base());
  return b;
}

Clopen KRPartition::top() const {
  Clopen b = Clopen::empty(towers.at(0).base().space());
  for (const auto& t : towers) b = unite(b, t.top());
  return b;
}

KRPartition trivial_partition(const System& sys) {
  KRPartition xi;
  xi.towers.push_back(Tower{{Clopen::full(sys.space())}});
  return xi;
}

KRPartition kr_from_clopen(const System& sys, const Clopen& a, std::size_t cap) {
  if (a.is_empty()) throw InputError("first return construction needs a nonempty clopen");
  KRPartition xi;
  Clopen wandering = a;
  for (std::size_t t = 1; !wandering.is_empty(); ++t) {
    if (t > cap) throw ResourceCap("return time exceeds the iteration cap " + std::to_string(cap));
    wandering = image_clopen(sys, wandering, 1);
    auto back = intersect(wandering, a);
    if (!back.is_empty()) {
      xi.towers.push_back(tower_over(sys, image_clopen(sys, back, -static_cast<std::int64_t>(t)), t));
      wandering = difference(wandering, a);
    }
  }
  return xi;
}

KRPartition refine(const System& sys, const KRPartition& xi,
                   const std::function<std::vector<Clopen>(const Clopen&)>& splitter) {
  KRPartition out;
  out.level = xi.level;
  for (const auto& tower : xi.towers) {
    const std::size_t h = tower.height();
    std::vector<Clopen> pieces{tower.base()};
    for (std::size_t j = 0; j < h; ++j) {
      if (j > 0)
        for (auto& p : pieces) p = image_clopen(sys, p, 1);
      auto parts = splitter(tower.floors[j]);
      if (parts.size() > 1) pieces = common_refinement(pieces, parts);
    }
    std::vector<Clopen> bases;
    for (auto& p : pieces) bases.push_back(image_clopen(sys, p, -static_cast<std::int64_t>(h - 1)));
    std::sort(bases.begin(), bases.end());
    for (auto& b : bases) out.towers.push_back(tower_over(sys, b, h));
  }
  return out;
}

KRPartition refine_with_clopen(const System& sys, const KRPartition& xi, const Clopen& a) {
  return refine(sys, xi, [&](const Clopen& floor) {
    std::vector<Clopen> parts;
    auto in = intersect(floor, a), out = difference(floor, a);
    if (!in.is_empty()) parts.push_back(in);
    if (!out.is_empty()) parts.push_back(out);
    return parts;
  });
}

StackingMap stacking_map(const KRPartition& xi_n, const KRPartition& xi_n1, const System&) {
  StackingMap sm;
  for (std::size_t k = 0; k < xi_n1.towers.size(); ++k) {
    const auto& t = xi_n1.towers[k];
    std::vector<std::size_t> order;
    std::vector<std::uint64_t> mult(xi_n.towers.size(), 0);
    for (std::size_t pos = 0; pos < t.height();) {
      std::optional<std::size_t> hit;
      for (std::size_t i = 0; i < xi_n.towers.size() && !hit; ++i)
        if (is_subset(t.floors[pos], xi_n.towers[i].base())) hit = i;
      if (!hit)
        throw PreconditionError("tower " + std::to_string(k) + " floor " + std::to_string(pos) +
                                " does not start a copy of a coarser tower");
      const auto& old = xi_n.towers[*hit];
      if (pos + old.height() > t.height())
        throw PreconditionError("tower " + std::to_string(k) + " ends inside a copy of tower " +
                                std::to_string(*hit));
      for (std::size_t j = 0; j < old.height(); ++j)
        if (!is_subset(t.floors[pos + j], old.floors[j]))
          throw PreconditionError("tower " + std::to_string(k) + " floor " + std::to_string(pos + j) +
                                  " is not inside the matching coarse atom");
      order.push_back(*hit);
      ++mult[*hit];
      pos += old.height();
    }
    sm.order.push_back(std::move(order));
    sm.mult.push_back(std::move(mult));
  }
  return sm;
}

std::pair<std::size_t, std::size_t> atom_at(const KRPartition& xi, const Point& x) {
  for (std::size_t i = 0; i < xi.towers.size(); ++i)
    for (std::size_t j = 0; j < xi.towers[i].height(); ++j)
      if (xi.towers[i].floors[j].contains(x)) return {i, j};
  throw PreconditionError("point lies in no atom: partition does not cover X");
}

bool in_algebra(const KRPartition& xi, const Clopen& a) {
  for (const auto& t : xi.towers)
    for (const auto& f : t.floors) {
      if (!is_subset(f, a) && !are_disjoint(f, a)) return false;
    }
  return true;
}

bool is_finer(const KRPartition& fine, const KRPartition& coarse) {
  for (const auto& t : fine.towers)
    for (const auto& f : t.floors) {
      bool inside = false;
      for (const auto& c : coarse.towers)
        for (const auto& g : c.floors)
          if (!inside && is_subset(f, g)) inside = true;
      if (!inside) return false;
    }
  return true;
}

// ---------------------------------------------------------------- sequences

KRSequence::KRSequence(System sys, Point x0, std::size_t cap) : sys_(std::move(sys)), x0_(std::move(x0)), cap_(cap) {
  // validates x0 against the space
  x0_ = Point(sys_.space(), x0_.prefix(), x0_.period());
  levels_.push_back(trivial_partition(sys_));
  depths_.push_back(0);
}

const KRPartition& KRSequence::level(std::size_t n) const {
  extend_to(n);
  return levels_[n];
}

const StackingMap& KRSequence::stacking(std::size_t n) const {
  extend_to(n + 1);
  return maps_[n];
}

std::size_t KRSequence::base_depth(std::size_t n) const {
  extend_to(n);
  return depths_[n];
}

void KRSequence::extend_to(std::size_t n) const {
  while (levels_.size() <= n) {
    const std::size_t next = levels_.size();
    std::size_t depth = 0;
    auto xi = build_level(next, depth);
    xi.level = next;
    maps_.push_back(stacking_map(levels_.back(), xi, sys_));
    levels_.push_back(std::move(xi));
    depths_.push_back(depth);
  }
}

KRPartition KRSequence::build_level(std::size_t n, std::size_t& depth) const {
  const auto& prev = levels_[n - 1];
  const Clopen target = basis_cylinder(sys_.space(), n);
  const Clopen near = Clopen::cylinder(sys_.space(), x0_.head(n));
  const std::size_t first = std::max(depths_[n - 1] + 1, n);
  for (std::size_t l = first; l < first + 64; ++l) {
    const Clopen base = base_cylinder(sys_, x0_, l);
    if (!is_subset(base, near)) continue;
    KRPartition xi;
    if (sys_.is_odometer()) {
      // one tower of cylinders: the floors are the residues of x0's head plus j
      BigInt height = 1;
      for (std::size_t i = 0; i < l; ++i) height *= sys_.base(i);
      if (height > cap_) throw ResourceCap("tower height exceeds the iteration cap");
      if (height <= n) continue;
      xi.towers.push_back(tower_over(sys_, base, static_cast<std::size_t>(height)));
    } else {
      xi = kr_from_clopen(sys_, base, cap_);
      if (xi.min_height() <= n) continue;
      xi = refine(sys_, xi, [&](const Clopen& floor) {
        auto parts = split_by_depth(floor, l);
        std::vector<Clopen> olds;
        for (const auto& t : prev.towers)
          for (const auto& f : t.floors) olds.push_back(f);
        parts = common_refinement(parts, olds);
        return common_refinement(parts, {target, complement(target)});
      });
    }
    depth = l;
    return xi;
  }
  throw ResourceCap("no admissible base depth found for level " + std::to_string(n));
}

}  // namespace cantor
