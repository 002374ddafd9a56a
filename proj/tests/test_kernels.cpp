#include "cantor/kernels.hpp"

#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace cantor;
using testing::odo;
using testing::pt;

TEST_CASE("factoradic unranking") {
  auto s = odo({2});
  KRSequence seq(s, pt(s, "(0)"));
  const auto& xi = seq.level(2);
  REQUIRE(gamma_order(xi) == 24);
  std::set<TowerPermutation> seen;
  for (std::uint64_t i = 0; i < 24; ++i) {
    auto tp = unrank_gamma(xi, i);
    check_shape(tp, xi);
    seen.insert(tp);
  }
  CHECK(seen.size() == 24);
  CHECK(unrank_gamma(xi, 0).is_identity());

  auto b = testing::bv11();
  KRSequence sb(b, b.min_point());
  std::uint64_t expect = 1;
  for (const auto& t : sb.level(2).towers)
    for (std::uint64_t k = 2; k <= t.height(); ++k) expect *= k;
  CHECK(gamma_order(sb.level(2)) == expect);
  CHECK_FALSE(gamma_order(seq.level(5)).has_value());
}

TEST_CASE("census kernels agree") {
  auto s = odo({2});
  KRSequence seq(s, pt(s, "(0)"));
  auto a = gamma_census_serial(seq, 2);
  auto b = gamma_census_parallel(seq, 2);
  CHECK(a.elements.size() == 24);
  CHECK(a.even == 12);
  CHECK(a.members == 24);
  CHECK(a.elements == b.elements);
  CHECK(a.even == b.even);
  CHECK(a.members == b.members);

  auto bv = testing::bv11();
  KRSequence sb(bv, bv.min_point());
  auto c = gamma_census_serial(sb, 1);
  auto d = gamma_census_parallel(sb, 1);
  CHECK(c.elements == d.elements);
  CHECK(c.members == c.elements.size());
  CHECK(c.even * 4 == c.elements.size());  // two towers of height >= 2
  CHECK_THROWS_AS(gamma_census_serial(seq, 4, 1000), ResourceCap);
}

TEST_CASE("orbit table kernels agree") {
  for (const System& sys : {odo({2}), testing::bv11()}) {
    KRSequence seq(sys, sys.is_odometer() ? pt(sys, "(0)") : sys.min_point());
    std::vector<Clopen> all;
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
      std::vector<Word> keep;
      const auto ws = sys.space()->words(2);
      for (std::size_t i = 0; i < ws.size() && i < 4; ++i)
        if (mask >> i & 1) keep.push_back(ws[i]);
      all.push_back(make_canonical(sys.space(), 2, keep));
    }
    auto x = orbit_table_serial(seq, all, 3);
    auto y = orbit_table_parallel(seq, all, 3);
    CHECK(x == y);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(x[i * all.size() + i] == OrbitVerdict::equivalent);
  }
}
