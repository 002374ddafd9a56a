// Acceptance run: one line per criterion with its verdict, wall time and limit.
#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cantor/cli.hpp"
#include "cantor/enumerate.hpp"
#include "cantor/equiv.hpp"
#include "cantor/kernels.hpp"

using namespace cantor;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

System odo(std::vector<int> period) { return System::odometer({}, std::move(period)); }

Point zero_point(const System& s) { return Point(s.space(), {}, {0}); }

TowerPermutation random_tp(const KRPartition& xi, std::mt19937_64& rng) {
  auto tp = TowerPermutation::identity(xi);
  for (auto& p : tp.perms) std::shuffle(p.begin(), p.end(), rng);
  return tp;
}

TowerPermutation swap_floors(const KRPartition& xi, std::uint32_t a, std::uint32_t b) {
  auto tp = TowerPermutation::identity(xi);
  std::swap(tp.perms[0][a], tp.perms[0][b]);
  return tp;
}

/// Index of each depth-d cylinder of a one-tower odometer level in word order.
std::vector<Clopen> cylinders(const System& s, std::size_t d) {
  std::vector<Clopen> out;
  for (const auto& w : s.space()->words(d)) out.push_back(Clopen::cylinder(s.space(), w));
  return out;
}

/// The permutation of the cylinders induced by f.
std::vector<std::uint8_t> atom_action(const PiecewisePower& f, const std::vector<Clopen>& atoms) {
  std::vector<std::uint8_t> pi(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto img = apply(f, atoms[i]);
    pi[i] = static_cast<std::uint8_t>(std::find(atoms.begin(), atoms.end(), img) - atoms.begin());
  }
  return pi;
}

bool even_permutation(const std::vector<std::uint8_t>& pi) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    for (std::size_t j = i + 1; j < pi.size(); ++j) inversions += pi[i] > pi[j];
  return inversions % 2 == 0;
}

/// Orbit index of y around x0 found by stepping both ways, or nullopt.
std::optional<std::int64_t> orbit_index(const System& s, const Point& x0, const Point& y, std::int64_t reach) {
  Point f = x0, b = x0;
  for (std::int64_t k = 0; k <= reach; ++k) {
    if (f == y) return k;
    if (b == y) return -k;
    f = successor(s, f);
    b = predecessor(s, b);
  }
  return std::nullopt;
}

std::set<std::uint64_t> prime_support(std::vector<int> bases) {
  std::set<std::uint64_t> ps;
  for (int b : bases)
    for (int p = 2; b > 1; ++p)
      while (b % p == 0) ps.insert(p), b /= p;
  return ps;
}

Outcome ac1() {
  const auto s = odo({3});
  KRSequence seq(s, zero_point(s));
  seq.level(6);
  const auto g = swap_floors(seq.level(1), 0, 1);
  std::ostringstream d;
  bool ok = true;
  std::uint64_t expect = 1;
  for (std::size_t n = 2; n <= 6; ++n) {
    expect *= 3;
    const auto up = embed_to(seq, g, n);
    const auto counts = transposition_counts(up);
    const auto sv = sign_vector(up);
    const bool good = counts && (*counts)[0] == expect && sv.signs == std::vector<int>{-1};
    ok &= good;
    d << "n=" << n << ":" << (counts ? std::to_string((*counts)[0]) : "-") << " ";
  }
  const auto r = cli::run({"group", "commutator", "--system", "odometer:3", "--perm",
                           R"({"level":1,"perms":[[1,0,2]]})", "--depth", "8"});
  ok &= r.verdict == "NotUpToDepth" && r.exit_code == 1;
  d << "commutator --depth 8: " << r.verdict;
  return {ok, d.str()};
}

Outcome ac2() {
  const auto s = odo({2});
  KRSequence seq(s, zero_point(s));
  const auto census = gamma_census_parallel(seq, 3);
  // Oracle: the action on the eight depth-3 cylinders, with parity by inversions.
  const auto atoms = cylinders(s, 3);
  std::set<std::vector<std::uint8_t>> actions;
  std::size_t even = 0;
  for (const auto& f : census.elements) {
    const auto pi = atom_action(f, atoms);
    even += even_permutation(pi);
    actions.insert(pi);
  }
  const bool ok = census.elements.size() == 40320 && actions.size() == 40320 && census.members == 40320 &&
                  census.even == 20160 && even == 20160;
  std::ostringstream d;
  d << census.elements.size() << " elements, " << actions.size() << " distinct atom actions, " << census.members
    << " members, " << census.even << " even (oracle " << even << ")";
  return {ok, d.str()};
}

Outcome ac3() {
  const auto s = odo({2});
  KRSequence seq(s, zero_point(s));
  const auto words = s.space()->words(3);
  std::vector<Clopen> all;
  for (unsigned mask = 0; mask < 256; ++mask) {
    std::vector<Word> keep;
    for (std::size_t i = 0; i < 8; ++i)
      if (mask >> i & 1) keep.push_back(words[i]);
    all.push_back(make_canonical(s.space(), 3, keep));
  }
  const auto table = orbit_table_parallel(seq, all, 3);

  // Oracle (a): close each mask under the cylinder actions of all of Gamma_3.
  const auto census = gamma_census_parallel(seq, 3);
  const auto atoms = cylinders(s, 3);
  std::vector<std::vector<std::uint8_t>> actions;
  for (const auto& f : census.elements) actions.push_back(atom_action(f, atoms));
  std::vector<std::array<bool, 256>> reach(256);
  for (unsigned a = 0; a < 256; ++a) {
    reach[a].fill(false);
    for (const auto& pi : actions) {
      unsigned img = 0;
      for (std::size_t i = 0; i < 8; ++i)
        if (a >> i & 1) img |= 1u << pi[i];
      reach[a][img] = true;
    }
  }
  std::size_t mismatch_orbit = 0, mismatch_measure = 0, equivalent = 0;
  for (unsigned a = 0; a < 256; ++a)
    for (unsigned b = 0; b < 256; ++b) {
      const auto v = table[a * 256 + b];
      const bool eq = v == OrbitVerdict::equivalent;
      equivalent += eq;
      // Off-diagonal verdicts on an odometer must be certified, never "not yet".
      if (eq != reach[a][b] || (!eq && v != OrbitVerdict::certified_distinct)) ++mismatch_orbit;
      // Oracle (b): measure equality, counted in eighths.
      if (eq != (std::popcount(a) == std::popcount(b))) ++mismatch_measure;
    }
  std::ostringstream d;
  d << equivalent << " equivalent pairs of 65536; mismatches: orbit search " << mismatch_orbit << ", measure "
    << mismatch_measure;
  return {mismatch_orbit == 0 && mismatch_measure == 0 && equivalent == 12870, d.str()};
}

Outcome ac4() {
  std::ostringstream d;
  bool ok = true;
  const std::vector<std::pair<std::string, System>> systems = {
      {"odometer:2", odo({2})}, {"odometer:3", odo({3})}, {"stationary:1,1/1,1", System::stationary({{1, 1}, {1, 1}})}};
  for (const auto& [name, s] : systems) {
    const Point x0 = s.is_odometer() ? zero_point(s) : s.min_point();
    KRSequence seq(s, x0);
    seq.level(6);
    std::size_t failures = 0, floors = 0;
    for (std::size_t n = 0; n <= 6; ++n) {
      const auto& xi = seq.level(n);
      if (n > 0) {
        const auto& prev = seq.level(n - 1);
        failures += !is_finer(xi, prev);
        failures += !is_subset(xi.base(), prev.base());
      }
      failures += !xi.base().contains(x0);
      failures += !is_subset(xi.base(), Clopen::cylinder(s.space(), x0.head(n)));
      failures += !in_algebra(xi, basis_cylinder(s.space(), n));
      failures += !(xi.min_height() > n);
      Clopen tops = Clopen::empty(s.space());
      for (const auto& t : xi.towers) {
        for (std::size_t j = 1; j < t.height(); ++j, ++floors)
          failures += !(image_clopen(s, t.floors[j - 1], 1) == t.floors[j]);
        tops = unite(tops, image_clopen(s, t.floors.back(), 1));
      }
      failures += !(tops == xi.base());
    }
    ok &= failures == 0;
    d << name << ": " << failures << " failures over " << floors << " floor steps; ";
  }
  return {ok, d.str()};
}

Outcome ac5() {
  std::mt19937_64 rng(5);
  const auto s = odo({2});
  const auto x0 = zero_point(s);
  KRSequence seq(s, x0);
  seq.level(5);
  std::size_t yes = 0, spot_fail = 0, no = 0, bad_witness = 0;
  std::vector<PiecewisePower> members;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 5;
    const auto f = gamma_element(s, seq.level(n), random_tp(seq.level(n), rng));
    const auto m = membership_gamma(s, x0, f);
    yes += m.yes;
    // Forward orbit spot check: k + c(phi^k x0) stays non-negative.
    Point y = x0;
    for (std::int64_t k = 0; k < 32; ++k, y = successor(s, y)) spot_fail += k + cocycle_at(f, y) < 0;
    members.push_back(f);
  }
  auto check_no = [&](const PiecewisePower& f) {
    const auto m = membership_gamma(s, x0, f);
    if (m.yes) return;
    ++no;
    if (!m.witness || !m.violating) {
      ++bad_witness;
      return;
    }
    // The witness lies in the violating piece and f moves it across 0 in the orbit.
    const auto& piece = f.pieces()[*m.violating];
    const auto i = orbit_index(s, x0, *m.witness, 4096);
    const auto j = i ? orbit_index(s, x0, apply(f, *m.witness), 4096) : std::nullopt;
    if (!piece.domain.contains(*m.witness) || !i || !j || (*i >= 0) == (*j >= 0)) ++bad_witness;
  };
  check_no(PiecewisePower::power(s, 1));
  check_no(PiecewisePower::power(s, -1));
  for (int t = 0; t < 20; ++t) {
    const std::int64_t k = (t % 2 ? 1 : -1) * static_cast<std::int64_t>(1 + rng() % 3);
    check_no(compose(members[rng() % members.size()], PiecewisePower::power(s, k)));
  }
  std::ostringstream d;
  d << yes << "/200 Yes, " << no << "/22 No, " << bad_witness << " bad witnesses, " << spot_fail
    << " negative forward indices";
  return {yes == 200 && no == 22 && bad_witness == 0 && spot_fail == 0, d.str()};
}

Outcome ac6() {
  std::mt19937_64 rng(6);
  std::size_t done = 0, failures = 0;
  for (const auto& s : {odo({2}), odo({3})}) {
    KRSequence seq(s, zero_point(s));
    seq.level(4);
    for (int found = 0; found < 25;) {
      const std::size_t n = 1 + rng() % 3;
      const auto tp = random_tp(seq.level(n), rng);
      if (sign_vector(tp).all_even()) continue;
      ++found;
      const auto a = derived_approx(seq, tp, n + 1);
      const auto fa = gamma_element(s, seq.level(a.level), a), ft = gamma_element(s, seq.level(n), tp);
      bool agree = sign_vector(a).all_even();
      for (const auto& t : seq.level(n).towers)
        for (const auto& fl : t.floors) agree &= apply(fa, fl) == apply(ft, fl);
      failures += !agree;
      ++done;
    }
  }
  return {done == 50 && failures == 0, std::to_string(done) + " odd elements, " + std::to_string(failures) + " failures"};
}

Outcome ac7() {
  std::mt19937_64 rng(7);
  std::size_t failures = 0, instances = 0;
  for (int it = 0; it < 100; ++it) {
    const auto s = it % 2 ? odo({3}) : odo({2});
    KRSequence seq(s, zero_point(s));
    const std::size_t level = 2 + rng() % 2;
    const auto& xi = seq.level(level);
    const auto f = gamma_element(s, xi, random_tp(xi, rng));
    const std::size_t k = 1 + rng() % 3;
    std::vector<Clopen> pieces(k, Clopen::empty(s.space()));
    for (std::uint32_t j = 0; j < xi.towers[0].height(); ++j) {
      const auto r = rng() % (k + 1);
      if (r < k) pieces[r] = unite(pieces[r], xi.atom(0, j));
    }
    std::vector<MergePart> parts;
    Clopen big = Clopen::empty(s.space());
    bool ok = true;
    for (const auto& a : pieces) {
      const auto st = orbit_decide(seq, a, apply(f, a), level);
      if (st.verdict != OrbitVerdict::equivalent || st.level > level) {
        ok = false;
        break;
      }
      parts.push_back({a, embed_to(seq, *st.witness, level)});
      big = unite(big, a);
    }
    if (ok) {
      const auto h = piecewise_merge(seq, f, parts, level);
      const auto hg = gamma_element(s, seq.level(level), h);
      ok = apply(hg, big) == apply(f, big) && as_tower_permutation(seq, hg, level) == h &&
           membership_gamma(s, seq.base_point(), hg).yes;
    }
    failures += !ok;
    ++instances;
  }
  return {failures == 0, std::to_string(instances) + " instances, " + std::to_string(failures) + " failures"};
}

Outcome ac8() {
  const std::vector<std::pair<std::string, std::vector<int>>> bases = {
      {"2", {2}}, {"3", {3}}, {"4", {4}}, {"6", {6}}, {"12", {12}}, {"(2,3)", {2, 3}}, {"10", {10}}};
  std::size_t pairs = 0, disagree = 0, oracle_disagree = 0, equivalent = 0;
  std::string obstruction = "none";
  for (std::size_t i = 0; i < bases.size(); ++i)
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      const auto a = odo(bases[i].second), b = odo(bases[j].second);
      const auto d = soe_decide(a, b);
      const auto pi = soe_backandforth(a, b, 5);
      disagree += d.equivalent != !pi.stuck;
      // Oracle: periodic bases give infinite valuations exactly at the primes dividing them.
      oracle_disagree += d.equivalent != (prime_support(bases[i].second) == prime_support(bases[j].second));
      equivalent += d.equivalent;
      ++pairs;
      if (i == 0 && j == 1 && d.obstruction) obstruction = "p=" + std::to_string(d.obstruction->prime);
    }
  std::ostringstream o;
  o << pairs << " pairs, " << equivalent << " equivalent, " << disagree << " decision/ladder disagreements, "
    << oracle_disagree << " oracle disagreements; 2 vs 3 obstruction " << obstruction;
  return {pairs == 21 && disagree == 0 && oracle_disagree == 0 && obstruction == "p=2", o.str()};
}

Outcome ac9() {
  const auto s = odo({2});
  const auto x0 = zero_point(s);
  const auto tfg = enum_tfg(s, 0, 10000, false);
  std::size_t bad = 0, filter_mismatch = 0, valid = 0;
  for (const auto& e : tfg.items) {
    // Oracle: decode independently, validate the raw pieces, compare.
    const auto raw = decode_pieces(s.space(), e.code);
    bool nonempty = !raw.empty();
    for (const auto& p : raw) nonempty &= !p.domain.is_empty();
    const bool ok_raw = nonempty && is_valid_piecewise(s, raw);
    if (ok_raw) {
      ++valid;
      bad += !(e.element == normalized(s, raw));
    } else {
      bad += !e.element.is_identity();
    }
    bad += !compose(e.element, inverse(e.element)).is_identity();
    const auto m = membership_gamma(s, x0, e.element);
    const auto g = is_in_gamma(s, x0, e.element);
    filter_mismatch += !(g.element == (m.yes ? e.element : PiecewisePower::identity(s)));
  }
  const auto dg = enum_dgamma(s, x0, 200);
  KRSequence seq(s, x0);
  std::size_t odd = 0;
  std::set<PiecewisePower> distinct;
  for (const auto& e : dg.items) {
    distinct.insert(e.element);
    for (std::size_t n = 0; n <= 10; ++n)
      if (auto tp = as_tower_permutation(seq, e.element, n)) {
        odd += !sign_vector(*tp).all_even();
        break;
      }
  }
  std::ostringstream d;
  d << tfg.items.size() << " codes (" << valid << " valid), " << bad << " bad, " << filter_mismatch
    << " filter mismatches; dgamma " << distinct.size() << "/200 distinct" << (dg.truncated ? " (budget exhausted)" : "")
    << ", " << odd << " odd";
  return {tfg.items.size() == 10000 && bad == 0 && filter_mismatch == 0 && distinct.size() >= 200 && odd == 0, d.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1 3-odometer witness", 1, ac1},
      {"AC2 Gamma_3 census of the 2-odometer", 30, ac2},
      {"AC3 orbit decision on 256x256 clopen pairs", 120, ac3},
      {"AC4 K-R sequence properties to level 6", 10, ac4},
      {"AC5 membership decisions", 10, ac5},
      {"AC6 even approximations", 10, ac6},
      {"AC7 piecewise merge", 10, ac7},
      {"AC8 SOE decision against the ladder", 60, ac8},
      {"AC9 enumeration contract", 60, ac9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs < c.limit;
    failed += !pass;
    std::printf("%s %s (%.2f s, limit %.0f s): %s\n", pass ? "PASS" : "FAIL", c.name, secs, c.limit, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
