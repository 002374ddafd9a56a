#include "cantor/equiv.hpp"

#include <algorithm>
#include <limits>

#include "cantor/errors.hpp"

namespace cantor {

CountVector count_vector(const KRPartition& xi, const Clopen& a) {
  CountVector cv{xi.level, std::vector<std::uint64_t>(xi.towers.size(), 0)};
  for (std::size_t i = 0; i < xi.towers.size(); ++i) {
    for (const auto& floor : xi.towers[i].floors) {
      if (is_subset(floor, a)) {
        ++cv.counts[i];
      } else if (!are_disjoint(floor, a)) {
        throw PreconditionError("clopen " + to_literal(a) + " is not in the algebra of level " +
                                std::to_string(xi.level));
      }
    }
  }
  return cv;
}

TowerPermutation matching_permutation(const KRPartition& xi, const Clopen& a, const Clopen& b) {
  if (count_vector(xi, a) != count_vector(xi, b)) throw PreconditionError("count vectors differ");
  TowerPermutation tp = TowerPermutation::identity(xi);
  for (std::size_t i = 0; i < xi.towers.size(); ++i) {
    std::vector<std::uint32_t> in_a, in_b, a_only, b_only;
    for (std::uint32_t j = 0; j < xi.towers[i].height(); ++j) {
      const bool ia = is_subset(xi.atom(i, j), a), ib = is_subset(xi.atom(i, j), b);
      if (ia) in_a.push_back(j);
      if (ib) in_b.push_back(j);
      if (ia && !ib) a_only.push_back(j);
      if (ib && !ia) b_only.push_back(j);
    }
    for (std::size_t t = 0; t < in_a.size(); ++t) tp.perms[i][in_a[t]] = in_b[t];
    for (std::size_t t = 0; t < b_only.size(); ++t) tp.perms[i][b_only[t]] = a_only[t];
  }
  return tp;
}

const char* to_string(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::equivalent: return "Equivalent";
    case OrbitVerdict::not_yet_equivalent: return "NotYetEquivalent";
    case OrbitVerdict::certified_distinct: return "CertifiedDistinct";
  }
  return "?";
}

OrbitStatus orbit_decide(const KRSequence& seq, const Clopen& a, const Clopen& b, std::size_t max_level) {
  const System& sys = seq.system();
  OrbitStatus st;
  if (sys.is_odometer()) {
    st.mu_a = invariant_measure(sys, a);
    st.mu_b = invariant_measure(sys, b);
    if (*st.mu_a != *st.mu_b) {
      st.verdict = OrbitVerdict::certified_distinct;
      return st;
    }
  } else if (a.is_empty() != b.is_empty() || a.is_full() != b.is_full()) {
    st.verdict = OrbitVerdict::certified_distinct;
    return st;
  }
  for (std::size_t n = 0; n <= max_level; ++n) {
    const KRPartition& xi = seq.level(n);
    st.level = n;
    if (!in_algebra(xi, a) || !in_algebra(xi, b)) continue;
    if (count_vector(xi, a) == count_vector(xi, b)) {
      st.verdict = OrbitVerdict::equivalent;
      st.witness = matching_permutation(xi, a, b);
      return st;
    }
  }
  st.verdict = OrbitVerdict::not_yet_equivalent;
  return st;
}

TowerPermutation base_point_witness(const KRSequence& seq, const KRSequence& other, const Clopen& a,
                                    const Clopen& b, std::size_t level, std::size_t max_level) {
  const KRPartition& xi = seq.level(level);
  if (count_vector(xi, a) != count_vector(xi, b))
    throw PreconditionError("count vectors differ at level " + std::to_string(level));
  const auto [ti, fj] = atom_at(xi, other.base_point());
  const Clopen& atom = xi.atom(ti, fj);
  for (std::size_t m = 0; m <= max_level; ++m) {
    const KRPartition& fine = other.level(m);
    if (!is_subset(fine.base(), atom) || !is_finer(fine, xi)) continue;
    TowerPermutation tp = TowerPermutation::identity(fine);
    for (std::size_t i = 0; i < fine.towers.size(); ++i) {
      std::vector<std::uint32_t> a_only, b_only;
      for (std::uint32_t j = 0; j < fine.towers[i].height(); ++j) {
        const bool ia = is_subset(fine.atom(i, j), a), ib = is_subset(fine.atom(i, j), b);
        if (ia && !ib) a_only.push_back(j);
        if (ib && !ia) b_only.push_back(j);
      }
      if (a_only.size() != b_only.size())
        throw PreconditionError("unbalanced tower " + std::to_string(i) + " at level " + std::to_string(m));
      for (std::size_t t = 0; t < a_only.size(); ++t) {
        tp.perms[i][a_only[t]] = b_only[t];
        tp.perms[i][b_only[t]] = a_only[t];
      }
    }
    return tp;
  }
  throw ResourceCap("no level up to " + std::to_string(max_level) +
                    " refines level " + std::to_string(level) + " with base inside the atom of the new base point");
}

namespace {

std::optional<std::uint32_t> floor_index(const Tower& t, const Clopen& c) {
  for (std::uint32_t j = 0; j < t.height(); ++j)
    if (t.floors[j] == c) return j;
  return std::nullopt;
}

}  // namespace

TowerPermutation piecewise_merge(const KRSequence& seq, const PiecewisePower& f, const std::vector<MergePart>& parts,
                                 std::size_t level) {
  const System& sys = seq.system();
  const KRPartition& xi = seq.level(level);
  Clopen big = Clopen::empty(sys.space());
  std::vector<TowerPermutation> hs;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = parts[p];
    if (!are_disjoint(big, part.a)) throw PreconditionError("parts overlap at part " + std::to_string(p));
    if (!in_algebra(xi, part.a)) throw PreconditionError("part " + std::to_string(p) + " is not in the algebra");
    if (part.h.level > level) throw PreconditionError("witness of part " + std::to_string(p) + " is above the level");
    hs.push_back(embed_to(seq, part.h, level));
    if (apply(gamma_element(sys, xi, hs.back()), part.a) != apply(f, part.a))
      throw PreconditionError("witness of part " + std::to_string(p) + " disagrees with f");
    big = unite(big, part.a);
  }
  const Clopen image = apply(f, big);
  if (!in_algebra(xi, image)) throw PreconditionError("f(A) is not in the algebra");
  const PiecewisePower finv = inverse(f);

  TowerPermutation out = TowerPermutation::identity(xi);
  for (std::size_t i = 0; i < xi.towers.size(); ++i) {
    const Tower& tower = xi.towers[i];
    for (std::uint32_t j = 0; j < tower.height(); ++j) {
      const Clopen& atom = tower.floors[j];
      bool done = false;
      for (std::size_t p = 0; p < parts.size() && !done; ++p) {
        if (is_subset(atom, parts[p].a)) {
          out.perms[i][j] = hs[p].perms[i][j];
          done = true;
        }
      }
      if (done || !is_subset(atom, image)) continue;
      Clopen d = atom;
      for (std::size_t step = 0;; ++step) {
        if (step > tower.height()) throw PreconditionError("backward chase does not terminate");
        d = apply(finv, d);
        auto k = floor_index(tower, d);
        if (!k) throw PreconditionError("f^-1 chase leaves the atoms of tower " + std::to_string(i));
        if (!is_subset(d, image)) {
          out.perms[i][j] = *k;
          break;
        }
      }
    }
  }
  check_shape(out, xi);
  return out;
}

// ---------------------------------------------------------------- strong orbit equivalence

namespace {

using Factor = std::map<std::uint64_t, std::uint64_t>;

Factor factorize(std::uint64_t v) {
  Factor f;
  for (std::uint64_t p = 2; p * p <= v; ++p)
    while (v % p == 0) {
      ++f[p];
      v /= p;
    }
  if (v > 1) ++f[v];
  return f;
}

void add_into(Factor& acc, const Factor& f) {
  for (auto [p, e] : f) acc[p] += e;
}

bool divides(const Factor& a, const Factor& b) {
  for (auto [p, e] : a) {
    auto it = b.find(p);
    if (it == b.end() || it->second < e) return false;
  }
  return true;
}

/// Factorized heights H_0 = 1, H_{n+1} = H_n * base(n), extended on demand.
class Heights {
 public:
  explicit Heights(const System& sys) : sys_(sys) { h_.push_back({}); }
  const Factor& at(std::size_t n) {
    while (h_.size() <= n) {
      Factor next = h_.back();
      add_into(next, factorize(static_cast<std::uint64_t>(sys_.base(h_.size() - 1))));
      h_.push_back(std::move(next));
    }
    return h_[n];
  }

 private:
  const System& sys_;
  std::vector<Factor> h_;
};

void require_odometer(const System& s) {
  if (!s.is_odometer()) throw PreconditionError("strong orbit equivalence is decided for odometers only");
}

bool less_val(const Valuation& a, const Valuation& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

}  // namespace

std::map<std::uint64_t, Valuation> supernatural(const System& odo) {
  require_odometer(odo);
  std::map<std::uint64_t, Valuation> out;
  for (int b : odo.base_prefix())
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(b))) {
      auto& v = out[p];
      v = v.value_or(0) + e;
    }
  for (int b : odo.base_period())
    for (auto [p, e] : factorize(static_cast<std::uint64_t>(b))) out[p] = std::nullopt;
  return out;
}

std::string to_string(const Valuation& v) { return v ? std::to_string(*v) : "inf"; }

SoeDecision soe_decide(const System& sys1, const System& sys2) {
  const auto s1 = supernatural(sys1), s2 = supernatural(sys2);
  std::map<std::uint64_t, std::pair<Valuation, Valuation>> both;
  for (auto& [p, v] : s1) both[p] = {v, Valuation{0}};
  for (auto& [p, v] : s2) {
    auto it = both.find(p);
    if (it == both.end()) both[p] = {Valuation{0}, v};
    else it->second.second = v;
  }
  SoeDecision d;
  for (auto& [p, vv] : both) {
    if (vv.first == vv.second) continue;
    Obstruction ob{p, vv.first, vv.second, Rational(0), 0};
    const bool first_smaller = less_val(vv.first, vv.second);
    const std::uint64_t low = first_smaller ? *vv.first : *vv.second;
    ob.gap = Rational(BigInt(1), boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(low + 1)));
    ob.realizable_in = first_smaller ? 2 : 1;
    d.obstruction = ob;
    return d;
  }
  d.equivalent = true;
  return d;
}

std::uint64_t height_value(const Factor& h) {
  std::uint64_t v = 1;
  for (auto [p, e] : h)
    for (std::uint64_t t = 0; t < e; ++t) {
      if (v > (std::numeric_limits<std::uint64_t>::max() >> 2) / p) throw ResourceCap("height exceeds 2^62");
      v *= p;
    }
  return v;
}

PartialIso soe_backandforth(const System& sys1, const System& sys2, std::size_t depth, std::size_t level_cap) {
  PartialIso pi;
  if (!sys1.is_odometer() || !sys2.is_odometer()) {
    pi.stuck = true;
    pi.reason = "evidence only: the height ladder is built for odometers";
    return pi;
  }
  Heights h1(sys1), h2(sys2);
  std::size_t n = 0, m = 0;
  for (std::size_t k = 0; k < depth; ++k) {
    const bool forward = k % 2 == 0;
    if (forward) {
      ++n;
      std::size_t t = m;
      while (t <= m + level_cap && !divides(h1.at(n), h2.at(t))) ++t;
      if (t > m + level_cap) {
        pi.stuck = true;
        pi.stuck_level = n;
        pi.reason = "floor 0 of level " + std::to_string(n) + " of the first system has no image: no level up to " +
                    std::to_string(m + level_cap) + " of the second has height divisible by " +
                    std::to_string(height_value(h1.at(n)));
        return pi;
      }
      m = t;
    } else {
      ++m;
      std::size_t t = n;
      while (t <= n + level_cap && !divides(h2.at(m), h1.at(t))) ++t;
      if (t > n + level_cap) {
        pi.stuck = true;
        pi.stuck_level = m;
        pi.reason = "floor 0 of level " + std::to_string(m) + " of the second system has no preimage: no level up to " +
                    std::to_string(n + level_cap) + " of the first has height divisible by " +
                    std::to_string(height_value(h2.at(m)));
        return pi;
      }
      n = t;
    }
    pi.rungs.push_back(Rung{n, m, forward, h1.at(n), h2.at(m)});
  }
  return pi;
}

std::vector<std::uint64_t> rung_image(const Rung& r, std::uint64_t j) {
  const std::uint64_t src = height_value(r.forward ? r.h1 : r.h2);
  const std::uint64_t dst = height_value(r.forward ? r.h2 : r.h1);
  if (j >= src) throw InputError("floor index out of range");
  std::vector<std::uint64_t> out;
  for (std::uint64_t t = j; t < dst; t += src) out.push_back(t);
  return out;
}

CocycleReport soe_cocycle_report(const PartialIso& pi, std::uint64_t horizon) {
  if (pi.stuck) throw PreconditionError("ladder is stuck: " + pi.reason);
  CocycleReport rep;
  std::optional<Rational> last[2];
  std::uint64_t budget = horizon;
  for (std::size_t k = 0; k < pi.rungs.size(); ++k) {
    const Rung& r = pi.rungs[k];
    const std::uint64_t src = height_value(r.forward ? r.h1 : r.h2);
    const std::uint64_t dst = height_value(r.forward ? r.h2 : r.h1);
    CocyclePiece piece;
    piece.rung = k;
    piece.first_exceptional = src - 1;
    piece.exceptional_measure = Rational(1, src);
    piece.constant_measure = 1 - piece.exceptional_measure;
    // phi' moves the image of floor j onto the image of floor j + 1 below the top.
    for (std::uint64_t j = 0; j + 1 < src && budget > 0; ++j) {
      for (std::uint64_t t = j; t < dst && budget > 0; t += src, --budget) {
        ++piece.atoms_checked;
        if (t + 1 >= dst || (t + 1) % src != j + 1) {
          rep.violation = true;
          rep.detail = "rung " + std::to_string(k) + ": floor " + std::to_string(j) + " has cocycle != 1";
        }
      }
    }
    auto& prev = last[r.forward ? 0 : 1];
    if (prev && !(piece.exceptional_measure < *prev)) {
      rep.violation = true;
      rep.detail = "rung " + std::to_string(k) + ": exceptional region does not shrink";
    }
    prev = piece.exceptional_measure;
    rep.rungs.push_back(std::move(piece));
  }
  return rep;
}

}  // namespace cantor
