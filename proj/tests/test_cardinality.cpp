#include "cresets/cardinality.hpp"

#include "cresets/constructions.hpp"
#include "cresets/fixtures.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace cresets;

namespace {
FastCauchyName pt(Rational x) { return FastCauchyName::constant(Point{std::move(x)}); }
}  // namespace

TEST_CASE("singleton from an upper name") {
  auto half = upper_name_of(points_shape({Point{Rational(1, 2)}}), Box::unit(1));
  auto p = singleton_point(half, 6, Fuel{2000});
  REQUIRE(p);
  CHECK(oracle::sqdist(*p, Point{Rational(1, 2)}) <= oracle::p2(-12));
  const Point third{Rational(1, 3), Rational(1, 3)};
  auto a = upper_name_of(points_shape({third}), Box::unit(2));
  auto q = singleton_point(a, 4, Fuel{5000});
  REQUIRE(q);
  CHECK(oracle::sqdist(*q, third) <= oracle::p2(-8));
  CHECK_FALSE(singleton_point(a, 20, Fuel{10}).has_value());
  auto empty = upper_name_of(empty_shape(1), Box::unit(1));
  CHECK_THROWS_AS(singleton_point(empty, 3, Fuel{100}), ContractViolation);
}

TEST_CASE("singleton name is a valid fast Cauchy name") {
  const Point x{Rational(2, 7)};
  auto name = singleton_from_upper(upper_name_of(points_shape({x}), Box::unit(1)));
  CHECK(validate_fast_cauchy(name, 10).is_yes());
  for (Index n = 0; n <= 10; ++n) CHECK(oracle::sqdist(query(name, n), x) <= oracle::p2(-2 * long(n)));
}

TEST_CASE("finite points from a lower name") {
  auto alt = LowerName::cycle(1, {Point{0}, Point{1}});
  auto two = finite_points_from_lower(alt, 2, Fuel{20});
  REQUIRE(two);
  CHECK(query(two->members[0], 0) == Point{0});
  CHECK(query(two->members[1], 0) == Point{1});
  auto one = finite_points_from_lower(LowerName::cycle(1, {Point{Rational(1, 2)}}), 1, Fuel{3});
  REQUIRE(one);
  CHECK(query(one->members[0], 5) == Point{Rational(1, 2)});
  for (std::uint64_t f : {5, 50, 500}) CHECK_FALSE(finite_points_from_lower(alt, 3, Fuel{f}));
}

TEST_CASE("finite points to names") {
  FiniteTupleName pts{{pt(0), pt(1)}};
  auto names = finite_points_to_names(pts);
  // Level 3 cells around 1/2 are at least 2 * 2^-3 away from both points.
  bool near_half = false;
  for (Index j = 0; j < 8; ++j) {
    if (auto b = names.upper.excluded(cantor_pair(3, j))) {
      CHECK(!oracle::in_ball(*b, Point{0}));
      CHECK(!oracle::in_ball(*b, Point{1}));
      if (oracle::in_ball(*b, Point{Rational(1, 2)})) near_half = true;
    }
  }
  CHECK(near_half);
  auto single = finite_points_to_names(FiniteTupleName{{pt(Rational(1, 2))}});
  for (Index i = 0; i < 10; ++i) CHECK(*single.lower.points(i) == Point{Rational(1, 2)});
}

TEST_CASE("round trip through the tuple representation") {
  std::vector<Point> pts{Point{Rational(1, 5), Rational(3, 4)}, Point{Rational(2, 3), 0},
                         Point{Rational(1, 2), Rational(1, 2)}};
  auto names = finite_points_to_names(FiniteTupleName{{FastCauchyName::constant(pts[0]),
                                                       FastCauchyName::constant(pts[1]),
                                                       FastCauchyName::constant(pts[2])}});
  auto back = finite_points_from_lower(names.lower, 3, Fuel{50});
  REQUIRE(back);
  for (const auto& m : back->members) {
    const Point q = query(m, 12);
    CHECK(std::any_of(pts.begin(), pts.end(), [&](const Point& p) { return p == q; }));
  }
}

TEST_CASE("finite isolation") {
  auto a = upper_name_of(points_shape({Point{Rational(1, 4)}, Point{Rational(3, 4)}}), Box::unit(1));
  auto parts = finite_isolate(a, 2, Fuel{500});
  REQUIRE(parts);
  REQUIRE(parts->size() == 2);
  CHECK(contains((*parts)[0].box, Point{Rational(1, 4)}));
  CHECK(contains((*parts)[1].box, Point{Rational(3, 4)}));
  for (const auto& part : *parts) {
    auto x = singleton_point(part.part, 8, Fuel{5000});
    REQUIRE(x);
    const Rational d = std::min(oracle::sqdist(*x, Point{Rational(1, 4)}),
                                oracle::sqdist(*x, Point{Rational(3, 4)}));
    CHECK(d <= oracle::p2(-16));
  }
  CHECK_FALSE(finite_isolate(a, 2, Fuel{1}));
  auto one = finite_isolate(upper_name_of(points_shape({Point{Rational(1, 3)}}), Box::unit(1)), 1,
                            Fuel{10});
  REQUIRE(one);
  CHECK(one->size() == 1);
}

TEST_CASE("isolation answer flips once the late gap appears") {
  // B = {0, 1/2}; machine 1 halts at step 37, and only then is the gap
  // around 1/4 visible. Before that the first piece wrongly covers 1/4.
  MachineTable t({std::nullopt, 37});
  auto b = countable_b(t);
  auto covers_quarter = [](const std::vector<Isolated>& parts) {
    return std::any_of(parts.begin(), parts.end(),
                       [](const Isolated& p) { return contains(p.box, Point{Rational(1, 4)}); });
  };
  auto early = finite_isolate(b, 2, Fuel{30});
  REQUIRE(early);
  CHECK(covers_quarter(*early));
  auto late = finite_isolate(b, 2, Fuel{400});
  REQUIRE(late);
  CHECK_FALSE(covers_quarter(*late));
  CHECK(contains((*late)[0].box, Point{0}));
  CHECK(contains((*late)[1].box, Point{Rational(1, 2)}));
}

TEST_CASE("distinct extraction") {
  NameFamily harmonic = [](Index m) { return pt(Rational(1, long(m / 2 + 1))); };
  auto out = distinct_extraction(harmonic);
  std::vector<Rational> seen;
  for (Index p = 0; p < 60; ++p) {
    if (auto n = out(p)) seen.push_back(query(*n, 0)[0]);
  }
  REQUIRE(seen.size() >= 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(seen[i] == Rational(1, long(i + 1)));
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);

  NameFamily alt = [](Index m) { return pt(m % 2); };
  auto idx = distinct_indices(alt);
  std::vector<Index> got;
  for (Index p = 0; p < 40; ++p) {
    if (auto m = idx(p)) got.push_back(*m);
  }
  CHECK(got == std::vector<Index>{0, 1});
  NameFamily constant = [](Index) { return pt(Rational(1, 3)); };
  auto c = distinct_indices(constant);
  int count = 0;
  for (Index p = 0; p < 40; ++p) count += c(p).has_value();
  CHECK(count == 1);
}
