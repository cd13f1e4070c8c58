#include "cresets/names.hpp"

#include "doctest.h"
#include "oracles.hpp"

using namespace cresets;

TEST_CASE("query returns the approximation") {
  auto third = FastCauchyName::constant(Point{Rational(1, 3)});
  CHECK(query(third, 10) == Point{Rational(1, 3)});
  FastCauchyName up{1, [](Index n) { return Point{1 - oracle::p2(-long(n))}; }};
  CHECK(query(up, 3) == Point{Rational(7, 8)});
  FastCauchyName bad{2, [](Index) { return Point{0}; }};
  CHECK_THROWS_AS(query(bad, 0), ContractViolation);
}

TEST_CASE("fast Cauchy spot check") {
  CHECK(validate_fast_cauchy(FastCauchyName::constant(Point{0}), 20).is_yes());
  FastCauchyName alt{1, [](Index n) { return Point{n % 2 ? -1 : 1}; }};
  auto v = validate_fast_cauchy(alt, 2);
  REQUIRE(v.is_no());
  // |1 - (-1)| = 2 exceeds 2^0 + 2^-1 already at the pair (0, 1).
  CHECK(v.witness->indices == std::vector<Index>{0, 1});
  FastCauchyName up{1, [](Index n) { return Point{1 - oracle::p2(-long(n))}; }};
  CHECK(validate_fast_cauchy(up, 30).is_yes());
}

TEST_CASE("cantor pairing is a bijection on a prefix") {
  for (Index t = 0; t < 5000; ++t) {
    const auto [a, b] = cantor_unpair(t);
    CHECK(cantor_pair(a, b) == t);
    CHECK((a + b) * (a + b + 1) / 2 + b == t);
  }
  const Index big = cantor_pair(3000000000ULL, 7);
  CHECK(cantor_unpair(big) == std::pair<Index, Index>{3000000000ULL, 7});
}

TEST_CASE("names are deterministic") {
  auto s = LowerName::cycle(1, {Point{0}, Point{1}});
  for (Index i = 0; i < 50; ++i) CHECK(*s.points(i) == *s.points(i));
  CHECK(*s.points(3) == Point{1});
}

TEST_CASE("interleave and prefix") {
  auto a = BallStream::of(1, {closed_ball({0}, 1)});
  auto b = BallStream::of(1, {closed_ball({5}, 1), closed_ball({6}, 1)});
  auto merged = interleave<Ball>({a.next, b.next});
  CHECK(merged(0)->center == Point{0});
  CHECK(merged(1)->center == Point{5});
  CHECK_FALSE(merged(2).has_value());
  CHECK(merged(3)->center == Point{6});
  CHECK(prefix(merged, 10).size() == 3);
}

TEST_CASE("upper names without bound fail fast where a bound is needed") {
  UpperName a{1, [](Index) { return std::nullopt; }, std::nullopt};
  CHECK_THROWS_AS(a.require_bound("op"), std::invalid_argument);
}
