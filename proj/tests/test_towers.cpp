#include "cantor/towers.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace cantor;
using testing::lit;
using testing::odo;
using testing::pt;

namespace {

std::vector<std::size_t> heights(const KRPartition& xi) {
  std::vector<std::size_t> h;
  for (const auto& t : xi.towers) h.push_back(t.height());
  return h;
}

// Partition and tower checks done on sampled points with the point map only.
void check_kr_by_points(const System& sys, const KRPartition& xi, std::mt19937_64& rng) {
  const auto& sp = sys.space();
  for (int s = 0; s < 40; ++s) {
    auto x = testing::random_point(sp, rng);
    int hits = 0;
    std::size_t ti = 0, fj = 0;
    for (std::size_t i = 0; i < xi.towers.size(); ++i)
      for (std::size_t j = 0; j < xi.towers[i].height(); ++j)
        if (xi.towers[i].floors[j].contains(x)) ++hits, ti = i, fj = j;
    REQUIRE(hits == 1);
    auto y = successor(sys, x);
    if (fj + 1 < xi.towers[ti].height()) {
      CHECK(xi.towers[ti].floors[fj + 1].contains(y));
    } else {
      CHECK(xi.base().contains(y));
    }
  }
}

}  // namespace

TEST_CASE("first return partitions") {
  auto s2 = odo({2});
  auto xi = kr_from_clopen(s2, lit(s2, "0"));
  REQUIRE(xi.towers.size() == 1);
  CHECK(xi.towers[0].floors == std::vector<Clopen>{lit(s2, "0"), lit(s2, "1")});
  auto s3 = odo({3});
  xi = kr_from_clopen(s3, lit(s3, "0"));
  REQUIRE(xi.towers.size() == 1);
  CHECK(xi.towers[0].floors == std::vector<Clopen>{lit(s3, "0"), lit(s3, "1"), lit(s3, "2")});
  xi = kr_from_clopen(s2, Clopen::full(s2.space()));
  CHECK(heights(xi) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(kr_from_clopen(s2, Clopen::empty(s2.space())), InputError);
  CHECK_THROWS_AS(kr_from_clopen(s2, lit(s2, "000"), 4), ResourceCap);
}

TEST_CASE("first return times against the orbit of sampled points") {
  std::mt19937_64 rng(5);
  for (auto sys : {odo({2}), odo({3}), odo({2, 3}), testing::bv11()}) {
    for (int trial = 0; trial < 6; ++trial) {
      auto a = testing::random_clopen(sys.space(), 3, rng);
      if (a.is_empty()) continue;
      auto xi = kr_from_clopen(sys, a);
      CHECK(xi.base() == a);
      check_kr_by_points(sys, xi, rng);
      for (int s = 0; s < 20; ++s) {
        auto x = testing::random_point(sys.space(), rng);
        if (!a.contains(x)) continue;
        std::size_t t = 1;
        for (auto y = successor(sys, x); !a.contains(y); y = successor(sys, y)) ++t;
        auto [i, j] = atom_at(xi, x);
        CHECK(j == 0);
        CHECK(xi.towers[i].height() == t);
      }
    }
  }
}

TEST_CASE("refinement by itinerary classes") {
  auto s = odo({2});
  auto xi = kr_from_clopen(s, lit(s, "0"));
  auto r = refine_with_clopen(s, xi, lit(s, "00"));
  REQUIRE(r.towers.size() == 2);
  CHECK(r.towers[0].base() == lit(s, "00"));
  CHECK(r.towers[1].base() == lit(s, "01"));
  CHECK(in_algebra(r, lit(s, "00")));
  CHECK_FALSE(in_algebra(xi, lit(s, "00")));
  CHECK(is_finer(r, xi));
  auto same = refine_with_clopen(s, xi, Clopen::full(s.space()));
  CHECK(heights(same) == heights(xi));
  CHECK(same.towers[0].floors == xi.towers[0].floors);
  same = refine_with_clopen(s, xi, lit(s, "1"));
  CHECK(same.towers[0].floors == xi.towers[0].floors);

  std::mt19937_64 rng(9);
  for (auto sys : {odo({3}), testing::bv11()}) {
    auto base = kr_from_clopen(sys, testing::random_clopen(sys.space(), 1, rng));
    for (int t = 0; t < 5; ++t) {
      auto a = testing::random_clopen(sys.space(), 3, rng);
      auto fine = refine_with_clopen(sys, base, a);
      CHECK(in_algebra(fine, a));
      CHECK(is_finer(fine, base));
      check_kr_by_points(sys, fine, rng);
    }
  }
}

TEST_CASE("sequences on the worked examples") {
  auto s2 = odo({2});
  KRSequence q2(s2, pt(s2, "(0)"));
  CHECK(heights(q2.level(1)) == std::vector<std::size_t>{2});
  CHECK(heights(q2.level(2)) == std::vector<std::size_t>{4});
  CHECK(heights(q2.level(3)) == std::vector<std::size_t>{8});
  CHECK(q2.level(1).base() == lit(s2, "0"));
  CHECK(q2.level(2).base() == lit(s2, "00"));
  CHECK(q2.level(3).base() == lit(s2, "000"));
  CHECK(q2.stacking(1).order == std::vector<std::vector<std::size_t>>{{0, 0}});
  CHECK(q2.stacking(1).mult == std::vector<std::vector<std::uint64_t>>{{2}});
  CHECK(atom_at(q2.level(2), pt(s2, "(0)")) == std::pair<std::size_t, std::size_t>{0, 0});
  CHECK(atom_at(q2.level(2), pt(s2, "1(0)")) == std::pair<std::size_t, std::size_t>{0, 1});
  CHECK(atom_at(q2.level(2), pt(s2, "(1)")) == std::pair<std::size_t, std::size_t>{0, 3});

  auto s3 = odo({3});
  KRSequence q3(s3, pt(s3, "(0)"));
  CHECK(heights(q3.level(1)) == std::vector<std::size_t>{3});
  CHECK(heights(q3.level(2)) == std::vector<std::size_t>{9});
  CHECK(q3.stacking(1).order == std::vector<std::vector<std::size_t>>{{0, 0, 0}});
  CHECK(q3.stacking(1).mult == std::vector<std::vector<std::uint64_t>>{{3}});

  auto b = testing::bv11();
  KRSequence qb(b, b.min_point());
  CHECK(heights(qb.level(1)) == std::vector<std::size_t>{2, 2});
  CHECK(heights(qb.level(2)) == std::vector<std::size_t>{4, 4});

  auto id = stacking_map(q2.level(2), q2.level(2), s2);
  CHECK(id.order == std::vector<std::vector<std::size_t>>{{0}});
  CHECK(id.mult == std::vector<std::vector<std::uint64_t>>{{1}});
  CHECK_THROWS_AS(stacking_map(q2.level(2), q2.level(1), s2), PreconditionError);
}

TEST_CASE("odometer fast path agrees with the generic construction") {
  for (std::vector<int> period : {std::vector<int>{2}, std::vector<int>{3}, std::vector<int>{2, 3}}) {
    auto fast = odo(period);
    auto generic = System::diagram(fast.space()->level_specs(), fast.space()->period_start());
    REQUIRE_FALSE(generic.is_odometer());
    for (auto x : {std::string("(0)"), std::string("1(0)"), std::string("01(1)")}) {
      KRSequence a(fast, pt(fast, x));
      KRSequence b(generic, parse_point(generic.space(), x));
      for (std::size_t n = 1; n <= 4; ++n) {
        const auto& p = a.level(n);
        const auto& q = b.level(n);
        REQUIRE(p.towers.size() == q.towers.size());
        for (std::size_t i = 0; i < p.towers.size(); ++i) {
          REQUIRE(p.towers[i].height() == q.towers[i].height());
          for (std::size_t j = 0; j < p.towers[i].height(); ++j)
            CHECK(p.towers[i].floors[j].words() == q.towers[i].floors[j].words());
        }
      }
    }
  }
}

TEST_CASE("sequence properties, count additivity and measure") {
  std::mt19937_64 rng(21);
  for (auto sys : {odo({2}), odo({3}), odo({2, 3}), testing::bv11(), System::stationary({{2, 1}, {1, 1}})}) {
    for (int trial = 0; trial < 2; ++trial) {
      auto x0 = testing::random_point(sys.space(), rng);
      KRSequence q(sys, x0);
      for (std::size_t n = 1; n <= 4; ++n) {
        const auto& xi = q.level(n);
        const auto& prev = q.level(n - 1);
        CHECK(is_finer(xi, prev));
        CHECK(is_subset(xi.base(), prev.base()));
        CHECK(xi.base().contains(x0));
        CHECK(is_subset(xi.base(), Clopen::cylinder(sys.space(), x0.head(n))));
        CHECK(in_algebra(xi, basis_cylinder(sys.space(), n)));
        CHECK(xi.min_height() > n);
        check_kr_by_points(sys, xi, rng);

        const auto& sm = q.stacking(n - 1);
        for (std::size_t k = 0; k < xi.towers.size(); ++k) {
          std::size_t total = 0;
          for (auto i : sm.order[k]) total += prev.towers[i].height();
          CHECK(total == xi.towers[k].height());
        }
        // counts of an element of the coarse algebra stack additively
        Clopen a = Clopen::empty(sys.space());
        for (const auto& t : prev.towers)
          for (const auto& f : t.floors)
            if (rng() & 1) a = unite(a, f);
        for (std::size_t k = 0; k < xi.towers.size(); ++k) {
          std::uint64_t fine = 0, stacked = 0;
          for (const auto& f : xi.towers[k].floors) fine += is_subset(f, a) ? 1 : 0;
          for (std::size_t i = 0; i < prev.towers.size(); ++i) {
            std::uint64_t c = 0;
            for (const auto& f : prev.towers[i].floors) c += is_subset(f, a) ? 1 : 0;
            stacked += sm.mult[k][i] * c;
          }
          CHECK(fine == stacked);
        }
        if (sys.is_odometer()) {
          Rational total = 0;
          for (const auto& t : xi.towers) total += Rational(t.height()) * invariant_measure(sys, t.base());
          CHECK(total == 1);
        }
      }
    }
  }
}
