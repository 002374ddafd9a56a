#include "cantor/fullgroup.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cantor {

PiecewisePower normalized(const System& sys, std::vector<Piece> pieces) {
  std::map<std::int64_t, Clopen> by_power;
  for (auto& p : pieces) {
    auto it = by_power.find(p.power);
    if (it == by_power.end()) {
      by_power.emplace(p.power, std::move(p.domain));
    } else {
      it->second = unite(it->second, p.domain);
    }
  }
  PiecewisePower f;
  f.sys_ = sys;
  for (auto& [k, d] : by_power)
    if (!d.is_empty()) f.pieces_.push_back({std::move(d), k});
  return f;
}

PiecewisePower PiecewisePower::identity(const System& sys) { return power(sys, 0); }

PiecewisePower PiecewisePower::power(const System& sys, std::int64_t k) {
  return normalized(sys, {{Clopen::full(sys.space()), k}});
}

namespace {

std::optional<std::string> first_defect(const System& sys, const std::vector<Piece>& pieces, Clopen& witness) {
  const auto& sp = sys.space();
  std::vector<Clopen> images;
  for (const auto& p : pieces) {
    if (!same_space(p.domain.space(), sp)) {
      witness = Clopen::empty(sp);
      return "piece domain does not live on the system's space";
    }
    images.push_back(image_clopen(sys, p.domain, p.power));
  }
  auto check = [&](const std::vector<Clopen>& sets, const char* what) -> std::optional<std::string> {
    Clopen seen = Clopen::empty(sp);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      auto clash = intersect(seen, sets[i]);
      if (!clash.is_empty()) {
        witness = clash;
        return std::string(what) + " overlap at piece " + std::to_string(i);
      }
      seen = unite(seen, sets[i]);
    }
    if (!seen.is_full()) {
      witness = complement(seen);
      return std::string(what) + " do not cover X";
    }
    return std::nullopt;
  };
  std::vector<Clopen> domains;
  for (const auto& p : pieces) domains.push_back(p.domain);
  if (auto e = check(domains, "domains")) return e;
  if (auto e = check(images, "images")) return e;
  return std::nullopt;
}

}  // namespace

PiecewisePower validate_piecewise(const System& sys, const std::vector<Piece>& pieces) {
  Clopen witness;
  if (auto e = first_defect(sys, pieces, witness)) throw InvalidElement(*e, witness);
  return normalized(sys, pieces);
}

bool is_valid_piecewise(const System& sys, const std::vector<Piece>& pieces) {
  Clopen witness;
  return !first_defect(sys, pieces, witness);
}

PiecewisePower compose(const PiecewisePower& f, const PiecewisePower& g) {
  const auto& sys = f.system();
  std::vector<Piece> out;
  for (const auto& b : g.pieces())
    for (const auto& a : f.pieces()) {
      auto d = intersect(b.domain, image_clopen(sys, a.domain, -b.power));
      if (!d.is_empty()) out.push_back({std::move(d), a.power + b.power});
    }
  return normalized(sys, std::move(out));
}

PiecewisePower inverse(const PiecewisePower& f) {
  std::vector<Piece> out;
  for (const auto& p : f.pieces()) out.push_back({image_clopen(f.system(), p.domain, p.power), -p.power});
  return normalized(f.system(), std::move(out));
}

std::int64_t cocycle_at(const PiecewisePower& f, const Point& x) {
  for (const auto& p : f.pieces())
    if (p.domain.contains(x)) return p.power;
  throw PreconditionError("point lies in no piece");
}

Point apply(const PiecewisePower& f, const Point& x) { return image_point(f.system(), x, cocycle_at(f, x)); }

Clopen apply(const PiecewisePower& f, const Clopen& a) {
  Clopen out = Clopen::empty(a.space());
  for (const auto& p : f.pieces()) out = unite(out, image_clopen(f.system(), intersect(a, p.domain), p.power));
  return out;
}

Clopen support(const PiecewisePower& f) {
  Clopen out = Clopen::empty(f.system().space());
  for (const auto& p : f.pieces())
    if (p.power != 0) out = unite(out, p.domain);
  return out;
}

// ---------------------------------------------------------------- tower permutations

TowerPermutation TowerPermutation::identity(const KRPartition& xi) {
  TowerPermutation tp;
  tp.level = xi.level;
  for (const auto& t : xi.towers) {
    std::vector<std::uint32_t> p(t.height());
    std::iota(p.begin(), p.end(), 0u);
    tp.perms.push_back(std::move(p));
  }
  return tp;
}

bool TowerPermutation::is_identity() const {
  for (const auto& p : perms)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[j] != j) return false;
  return true;
}

TowerPermutation compose(const TowerPermutation& a, const TowerPermutation& b) {
  if (a.level != b.level || a.perms.size() != b.perms.size()) throw InputError("tower permutations of different shapes");
  TowerPermutation c = b;
  for (std::size_t i = 0; i < b.perms.size(); ++i) {
    if (a.perms[i].size() != b.perms[i].size()) throw InputError("tower permutations of different shapes");
    for (auto& x : c.perms[i]) x = a.perms[i][x];
  }
  return c;
}

TowerPermutation inverse(const TowerPermutation& a) {
  TowerPermutation c = a;
  for (std::size_t i = 0; i < a.perms.size(); ++i)
    for (std::size_t j = 0; j < a.perms[i].size(); ++j) c.perms[i][a.perms[i][j]] = static_cast<std::uint32_t>(j);
  return c;
}

void check_shape(const TowerPermutation& tp, const KRPartition& xi) {
  if (tp.level != xi.level)
    throw InputError("permutation is for level " + std::to_string(tp.level) + ", partition is level " +
                     std::to_string(xi.level));
  if (tp.perms.size() != xi.towers.size()) throw InputError("permutation has the wrong number of towers");
  for (std::size_t i = 0; i < tp.perms.size(); ++i) {
    const auto& p = tp.perms[i];
    if (p.size() != xi.towers[i].height())
      throw InputError("permutation of tower " + std::to_string(i) + " has the wrong length");
    std::vector<char> seen(p.size(), 0);
    for (auto x : p) {
      if (x >= p.size() || seen[x]) throw InputError("tower " + std::to_string(i) + " entry is not a permutation");
      seen[x] = 1;
    }
  }
}

bool SignVector::all_even() const {
  return std::all_of(signs.begin(), signs.end(), [](int s) { return s == 1; });
}

SignVector sign_vector(const TowerPermutation& tp) {
  SignVector sv;
  sv.level = tp.level;
  for (const auto& p : tp.perms) {
    std::vector<char> seen(p.size(), 0);
    std::size_t even_cycles = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (seen[j]) continue;
      std::size_t len = 0;
      for (std::size_t x = j; !seen[x]; x = p[x]) seen[x] = 1, ++len;
      if (len % 2 == 0) ++even_cycles;
    }
    sv.signs.push_back(even_cycles % 2 ? -1 : 1);
  }
  return sv;
}

std::optional<std::vector<std::size_t>> transposition_counts(const TowerPermutation& tp) {
  std::vector<std::size_t> out;
  for (const auto& p : tp.perms) {
    std::size_t n = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[p[j]] != j) return std::nullopt;
      if (p[j] > j) ++n;
    }
    out.push_back(n);
  }
  return out;
}

PiecewisePower gamma_element(const System& sys, const KRPartition& xi, const TowerPermutation& tp) {
  check_shape(tp, xi);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < xi.towers.size(); ++i)
    for (std::size_t j = 0; j < xi.towers[i].height(); ++j)
      pieces.push_back({xi.towers[i].floors[j], static_cast<std::int64_t>(tp.perms[i][j]) - static_cast<std::int64_t>(j)});
  return normalized(sys, std::move(pieces));
}

TowerPermutation embed_level(const TowerPermutation& tp, const StackingMap& sm, const KRPartition& xi_n1) {
  TowerPermutation out;
  out.level = xi_n1.level;
  if (sm.order.size() != xi_n1.towers.size()) throw InputError("stacking map does not match the finer partition");
  for (std::size_t k = 0; k < sm.order.size(); ++k) {
    std::vector<std::uint32_t> p;
    std::uint32_t offset = 0;
    for (auto i : sm.order[k]) {
      if (i >= tp.perms.size()) throw InputError("stacking map refers to a missing tower");
      for (auto x : tp.perms[i]) p.push_back(offset + x);
      offset += static_cast<std::uint32_t>(tp.perms[i].size());
    }
    if (p.size() != xi_n1.towers[k].height()) throw InputError("stacking map heights are inconsistent");
    out.perms.push_back(std::move(p));
  }
  return out;
}

std::vector<std::vector<Copy>> copies(const KRSequence& seq, std::size_t n, std::size_t m) {
  if (m < n) throw InputError("cannot embed into a coarser level");
  std::vector<std::vector<Copy>> cur;
  for (std::size_t i = 0; i < seq.level(n).towers.size(); ++i) cur.push_back({{i, 0}});
  for (std::size_t l = n; l < m; ++l) {
    const auto& sm = seq.stacking(l);
    const auto& xi = seq.level(l);
    std::vector<std::vector<Copy>> next;
    for (const auto& order : sm.order) {
      std::vector<Copy> list;
      std::size_t offset = 0;
      for (auto t : order) {
        for (const auto& c : cur[t]) list.push_back({c.tower, offset + c.offset});
        offset += xi.towers[t].height();
      }
      next.push_back(std::move(list));
    }
    cur = std::move(next);
  }
  return cur;
}

TowerPermutation embed_to(const KRSequence& seq, const TowerPermutation& tp, std::size_t m) {
  check_shape(tp, seq.level(tp.level));
  if (m == tp.level) return tp;
  const auto cps = copies(seq, tp.level, m);
  TowerPermutation out;
  out.level = m;
  const auto& xi = seq.level(m);
  for (std::size_t k = 0; k < cps.size(); ++k) {
    std::vector<std::uint32_t> p(xi.towers[k].height());
    for (const auto& c : cps[k]) {
      const auto& src = tp.perms[c.tower];
      for (std::size_t j = 0; j < src.size(); ++j) p[c.offset + j] = static_cast<std::uint32_t>(c.offset + src[j]);
    }
    out.perms.push_back(std::move(p));
  }
  return out;
}

std::optional<TowerPermutation> as_tower_permutation(const KRSequence& seq, const PiecewisePower& f,
                                                     std::size_t level) {
  const auto& xi = seq.level(level);
  TowerPermutation tp;
  tp.level = level;
  for (const auto& t : xi.towers) {
    std::vector<std::uint32_t> p;
    const auto h = static_cast<std::int64_t>(t.height());
    for (std::int64_t j = 0; j < h; ++j) {
      std::optional<std::int64_t> k;
      for (const auto& piece : f.pieces())
        if (is_subset(t.floors[j], piece.domain)) {
          k = piece.power;
          break;
        }
      if (!k || j + *k < 0 || j + *k >= h) return std::nullopt;
      p.push_back(static_cast<std::uint32_t>(j + *k));
    }
    tp.perms.push_back(std::move(p));
  }
  check_shape(tp, xi);
  return tp;
}

// ---------------------------------------------------------------- membership

OrbitWindow::OrbitWindow(System sys, Point x0) : sys_(std::move(sys)) {
  forward_.push_back(Point(sys_.space(), x0.prefix(), x0.period()));
}

const Point& OrbitWindow::at(std::int64_t k) {
  if (k >= 0) {
    while (forward_.size() <= static_cast<std::size_t>(k)) forward_.push_back(successor(sys_, forward_.back()));
    return forward_[static_cast<std::size_t>(k)];
  }
  const auto idx = static_cast<std::size_t>(-k - 1);
  while (backward_.size() <= idx)
    backward_.push_back(predecessor(sys_, backward_.empty() ? forward_.front() : backward_.back()));
  return backward_[idx];
}

Membership membership_gamma(OrbitWindow& orbit, const PiecewisePower& h, std::size_t cap) {
  const auto& pieces = h.pieces();
  const std::size_t n = pieces.size();
  Membership out;
  out.bounds.resize(n);
  auto scan = [&](std::int64_t start, std::int64_t step, auto setter) {
    std::vector<char> found(n, 0);
    std::size_t left = n;
    for (std::int64_t k = start; left > 0; k += step) {
      if (static_cast<std::size_t>(k < 0 ? -k : k) > cap)
        throw ResourceCap("orbit scan exceeded the cap of " + std::to_string(cap) + " points");
      const Point& y = orbit.at(k);
      for (std::size_t i = 0; i < n; ++i)
        if (pieces[i].domain.contains(y)) {
          if (!found[i]) found[i] = 1, --left, setter(i, k);
          break;
        }
    }
  };
  scan(0, 1, [&](std::size_t i, std::int64_t k) { out.bounds[i].m = k; });
  scan(-1, -1, [&](std::size_t i, std::int64_t k) { out.bounds[i].m_prime = k; });
  out.yes = true;
  for (std::size_t i = 0; i < n; ++i) {
    auto& b = out.bounds[i];
    b.power = pieces[i].power;
    b.ok = -b.m <= b.power && b.power <= -b.m_prime - 1;
    if (b.ok || !out.yes) continue;
    out.yes = false;
    out.violating = i;
    if (b.power < -b.m) {
      out.witness = orbit.at(b.m);
      out.reason = "piece " + std::to_string(i) + " sends phi^" + std::to_string(b.m) + "(x0) to phi^" +
                   std::to_string(b.m + b.power) + "(x0), below the base point";
    } else {
      out.witness = orbit.at(b.m_prime);
      out.reason = "piece " + std::to_string(i) + " sends phi^" + std::to_string(b.m_prime) + "(x0) to phi^" +
                   std::to_string(b.m_prime + b.power) + "(x0), into the forward orbit";
    }
  }
  return out;
}

Membership membership_gamma(const System& sys, const Point& x0, const PiecewisePower& h, std::size_t cap) {
  OrbitWindow w(sys, x0);
  return membership_gamma(w, h, cap);
}

// ---------------------------------------------------------------- commutators

CommutatorVerdict in_commutator(const KRSequence& seq, const TowerPermutation& tp, std::size_t depth) {
  if (depth < tp.level) throw InputError("depth must be at least the permutation's level");
  check_shape(tp, seq.level(tp.level));
  CommutatorVerdict v;
  TowerPermutation cur = tp;
  for (std::size_t l = tp.level;; ++l) {
    v.signs.push_back(sign_vector(cur));
    v.level = l;
    if (v.signs.back().all_even()) {
      v.yes = true;
      return v;
    }
    if (l == depth) return v;
    cur = embed_level(cur, seq.stacking(l), seq.level(l + 1));
  }
}

TowerPermutation derived_approx(const KRSequence& seq, const TowerPermutation& tp, std::size_t target_level) {
  if (target_level < tp.level) throw InputError("target level is below the permutation's level");
  auto out = embed_to(seq, tp, target_level);
  const auto sv = sign_vector(out);
  if (sv.all_even()) return out;
  const auto cps = copies(seq, tp.level, target_level);
  for (std::size_t k = 0; k < out.perms.size(); ++k) {
    if (sv.signs[k] == 1) continue;
    std::map<std::size_t, std::vector<std::size_t>> offsets;
    for (const auto& c : cps[k]) offsets[c.tower].push_back(c.offset);
    auto pick = std::find_if(offsets.begin(), offsets.end(), [](const auto& e) { return e.second.size() >= 2; });
    if (pick == offsets.end())
      throw PreconditionError("tower " + std::to_string(k) + " of level " + std::to_string(target_level) +
                              " holds no two copies of a coarse tower; increase the level");
    const auto a = static_cast<std::uint32_t>(pick->second[0]);
    const auto b = static_cast<std::uint32_t>(pick->second[1]);
    for (auto& x : out.perms[k]) x = x == a ? b : x == b ? a : x;
  }
  return out;
}

TowerPermutation involution_in(const KRSequence& seq, const Clopen& c, std::size_t max_level) {
  if (c.is_empty()) throw InputError("involution support must be nonempty");
  for (std::size_t n = 1; n <= max_level; ++n) {
    const auto& xi = seq.level(n);
    const auto tower = atom_at(xi, seq.base_point()).first;
    std::vector<std::uint32_t> inside;
    for (std::size_t j = 0; j < xi.towers[tower].height() && inside.size() < 4; ++j)
      if (is_subset(xi.towers[tower].floors[j], c)) inside.push_back(static_cast<std::uint32_t>(j));
    if (inside.size() < 4) continue;
    auto tp = TowerPermutation::identity(xi);
    auto& p = tp.perms[tower];
    std::swap(p[inside[0]], p[inside[1]]);
    std::swap(p[inside[2]], p[inside[3]]);
    return tp;
  }
  throw ResourceCap("no level up to " + std::to_string(max_level) + " has four base-tower floors inside the clopen");
}

}  // namespace cantor
