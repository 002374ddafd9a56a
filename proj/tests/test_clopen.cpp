#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"

using namespace cantor;
using testing::lit;
using testing::odo;

TEST_CASE("cylinders") {
  auto s2 = odo({2});
  auto s3 = odo({3});
  auto n0 = Clopen::cylinder(s2.space(), {0});
  CHECK(n0.depth() == 1);
  CHECK(n0.words() == std::vector<Word>{{0}});
  CHECK(Clopen::cylinder(s2.space(), {}).is_full());
  auto c = Clopen::cylinder(s3.space(), {0, 2});
  CHECK(c.depth() == 2);
  CHECK(to_literal(c) == "02");
  CHECK_THROWS_AS(Clopen::cylinder(s2.space(), {0, 2}), InputError);
  try {
    Clopen::cylinder(s2.space(), {0, 1, 5});
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("junction 2") != std::string::npos);
  }
}

TEST_CASE("boolean operations on the 2-odometer space") {
  auto s = odo({2});
  auto n0 = lit(s, "0"), n1 = lit(s, "1");
  CHECK(unite(n0, n1).is_full());
  CHECK(intersect(n0, n1).is_empty());
  CHECK(to_literal(complement(lit(s, "00"))) == "01+10+11");
  CHECK(complement(lit(s, "00")).words_at(2) == std::vector<Word>{{0, 1}, {1, 0}, {1, 1}});
  CHECK(difference(Clopen::full(s.space()), n0) == n1);
  CHECK(boolean_op(BoolOp::complement, n0) == n1);
  CHECK_THROWS_AS(boolean_op(BoolOp::unite, n0), InputError);
  CHECK_THROWS_AS(unite(n0, lit(odo({3}), "0")), InputError);
}

TEST_CASE("compare and contains") {
  auto s = odo({2});
  CHECK(compare(lit(s, "0"), lit(s, "0")) == Relation::equal);
  CHECK(compare(lit(s, "00"), lit(s, "0")) == Relation::subset);
  CHECK(compare(lit(s, "0"), lit(s, "00")) == Relation::superset);
  CHECK(compare(lit(s, "0"), lit(s, "1")) == Relation::disjoint);
  CHECK(compare(lit(s, "0+10"), lit(s, "1")) == Relation::incomparable);
  CHECK(lit(s, "0").contains(testing::pt(s, "(0)")));
  CHECK_FALSE(lit(s, "1").contains(testing::pt(s, "(0)")));
  CHECK(lit(s, "01").contains(testing::pt(s, "0(1)")));
  CHECK_FALSE(Clopen::empty(s.space()).contains(testing::pt(s, "(1)")));
}

TEST_CASE("canonical form") {
  auto s = odo({2});
  auto a = Clopen::from_words(s.space(), {{0, 0}, {0, 1}, {1}});
  CHECK(a.is_full());
  auto e = Clopen::empty(s.space());
  CHECK(e.depth() == 0);
  CHECK(e.words().empty());
  CHECK(lit(s, "EMPTY") == e);
  CHECK(lit(s, "X").is_full());
  CHECK(lit(s, "000+001") == lit(s, "00"));
}

TEST_CASE("point normal form") {
  auto s = odo({2});
  Point a(s.space(), {1, 0}, {0});
  Point b(s.space(), {1}, {0, 0});
  CHECK(a == b);
  CHECK(a.prefix() == Word{1});
  CHECK(a.period() == Word{0});
  Point c(s.space(), {0, 1, 0, 1}, {0, 1});
  CHECK(c.prefix().empty());
  CHECK(c.period() == Word{0, 1});
  CHECK(to_literal(c) == "(01)");
  CHECK(c.spliced(s.space(), {1, 1, 1}) == Point(s.space(), {1, 1, 1}, {1, 0}));
  CHECK_THROWS_AS(Point(s.space(), {}, {2}), InputError);
  CHECK_THROWS_AS(Point(s.space(), {}, {}), InputError);
}

TEST_CASE("literals round trip") {
  auto s12 = odo({12});
  auto a = Clopen::cylinder(s12.space(), {11, 3});
  CHECK(to_literal(a) == "11.3");
  CHECK(parse_clopen(s12.space(), to_literal(a)) == a);
  auto b = Clopen::cylinder(s12.space(), {11});
  CHECK(parse_clopen(s12.space(), to_literal(b)) == b);
  Point x(s12.space(), {11}, {10, 3});
  CHECK(parse_point(s12.space(), to_literal(x)) == x);
  CHECK_THROWS_AS(parse_clopen(odo({2}).space(), "0a"), InputError);
  CHECK_THROWS_AS(parse_point(odo({2}).space(), "01"), InputError);
}

TEST_CASE("length-lexicographic basis") {
  auto s = odo({2});
  CHECK(basis_cylinder(s.space(), 0).is_full());
  CHECK(basis_cylinder(s.space(), 1) == lit(s, "0"));
  CHECK(basis_cylinder(s.space(), 2) == lit(s, "1"));
  CHECK(basis_cylinder(s.space(), 3) == lit(s, "00"));
  CHECK(basis_cylinder(s.space(), 6) == lit(s, "11"));
  CHECK(basis_cylinder(s.space(), 7) == lit(s, "000"));
}

TEST_CASE("Boolean laws and compare against word-level oracle") {
  std::mt19937_64 rng(7);
  for (auto sys : {odo({2}), odo({3}), odo({2, 3}), testing::bv11()}) {
    const auto& sp = sys.space();
    const std::size_t D = 6;
    for (int trial = 0; trial < 40; ++trial) {
      std::uniform_int_distribution<std::size_t> dd(0, 4);
      auto a = testing::random_clopen(sp, dd(rng), rng);
      auto b = testing::random_clopen(sp, dd(rng), rng);
      auto c = testing::random_clopen(sp, dd(rng), rng);
      CHECK(make_canonical(sp, a.depth() + 2, a.words_at(a.depth() + 2)) == a);
      CHECK(unite(a, unite(b, c)) == unite(unite(a, b), c));
      CHECK(intersect(a, intersect(b, c)) == intersect(intersect(a, b), c));
      CHECK(complement(unite(a, b)) == intersect(complement(a), complement(b)));
      CHECK(complement(intersect(a, b)) == unite(complement(a), complement(b)));
      CHECK(complement(complement(a)) == a);
      CHECK(difference(a, b) == intersect(a, complement(b)));
      CHECK(parse_clopen(sp, to_literal(a)) == a);

      auto x = testing::expand_oracle(a, D), y = testing::expand_oracle(b, D);
      std::vector<Word> both;
      std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
      Relation expect;
      if (x == y) expect = Relation::equal;
      else if (both.size() == x.size()) expect = Relation::subset;
      else if (both.size() == y.size()) expect = Relation::superset;
      else if (both.empty()) expect = Relation::disjoint;
      else expect = Relation::incomparable;
      CHECK(compare(a, b) == expect);
      CHECK(testing::expand_oracle(unite(a, b), D).size() == x.size() + y.size() - both.size());
    }
  }
}
