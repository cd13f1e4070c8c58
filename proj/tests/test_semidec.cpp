#include "cresets/semidec.hpp"

#include "cresets/fixtures.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cresets;

namespace {
FastCauchyName pt(Rational x) { return FastCauchyName::constant(Point{std::move(x)}); }
}  // namespace

TEST_CASE("semi_member") {
  auto u = BallStream::of(1, {open_ball({0}, 1)});
  CHECK(semi_member(u, pt(0), Fuel{4}).is_yes());
  for (std::uint64_t f : {1, 10, 200}) CHECK(semi_member(u, pt(2), Fuel{f}).is_unknown());
  BallStream shrinking{1, [](Index m) -> std::optional<Ball> {
                         return open_ball({Rational(1, 2)}, oracle::p2(-long(m) - 1));
                       }};
  auto v = semi_member(shrinking, pt(Rational(1, 2)), Fuel{8});
  REQUIRE(v.is_yes());
  CHECK(v.witness->indices[0] == 0);
  // Boundary points stay undecided.
  CHECK(semi_member(u, pt(1), Fuel{500}).is_unknown());
  CHECK_THROWS_AS(semi_member(u, FastCauchyName::constant(Point{0, 0}), Fuel{3}), DimensionMismatch);
}

TEST_CASE("semi_member agrees with the exact test on finite families") {
  std::vector<Ball> balls{open_ball({0, 0}, Rational(1, 2)), open_ball({1, 1}, Rational(1, 3))};
  auto u = BallStream::of(2, balls);
  for (const auto& p : oracle::grid(Box::cube(2, -1, 2), 3)) {
    const bool truth = oracle::in_ball(balls[0], p) || oracle::in_ball(balls[1], p);
    const auto v = semi_member(u, FastCauchyName::constant(p), Fuel{400});
    CHECK(v.is_yes() == truth);
  }
}

TEST_CASE("semi_neq") {
  // The strict test 1 > 2^(1-k) first holds at k = 2.
  auto v = semi_neq(pt(0), pt(1), Fuel{3});
  REQUIRE(v.is_yes());
  CHECK(v.witness->indices[0] == 2);
  CHECK(semi_neq(pt(0), pt(0), Fuel{100}).is_unknown());
  auto w = semi_neq(pt(0), pt(oracle::p2(-10)), Fuel{20});
  REQUIRE(w.is_yes());
  CHECK(w.witness->indices[0] == 12);
  CHECK(semi_neq(pt(0), pt(oracle::p2(-10)), Fuel{11}).is_unknown());
}

TEST_CASE("semi_subset_cover") {
  auto half = upper_name_of(points_shape({Point{Rational(1, 2)}}), Box::unit(1));
  std::vector<Ball> cover{open_ball({Rational(1, 2)}, Rational(1, 4))};
  CHECK(semi_subset_cover(half, cover, Fuel{16}).is_yes());
  auto unit = upper_name_of(box_shape(Box::unit(1)), Box::unit(1));
  for (std::uint64_t f : {4, 16, 64}) CHECK(semi_subset_cover(unit, cover, Fuel{f}).is_unknown());
  auto empty = upper_name_of(empty_shape(1), Box::unit(1));
  CHECK(semi_subset_cover(empty, {}, Fuel{8}).is_yes());
  UpperName unbounded{1, [](Index) { return std::nullopt; }, std::nullopt};
  CHECK_THROWS(semi_subset_cover(unbounded, cover, Fuel{4}));
}

TEST_CASE("semi_not_in on a fixture") {
  auto fx = *find_fixture("two-box");
  auto a = upper_name_of(fx.shape, fx.bound);
  CHECK(semi_not_in(a, pt(Rational(1, 2)), Fuel{20}).is_yes());
  for (std::uint64_t f : {5, 50, 200}) {
    CHECK(semi_not_in(a, pt(Rational(1, 4)), Fuel{f}).is_unknown());
    CHECK(semi_not_in(a, pt(0), Fuel{f}).is_unknown());
  }
}

TEST_CASE("fuel monotonicity") {
  auto u = BallStream::of(1, {open_ball({0}, Rational(1, 100))});
  bool seen = false;
  for (std::uint64_t f = 0; f < 120; ++f) {
    const bool y = semi_member(u, pt(Rational(1, 200)), Fuel{f}).is_yes();
    if (seen) CHECK(y);
    seen = seen || y;
  }
  CHECK(seen);
}

TEST_CASE("fixture exclusions never meet the set") {
  for (const auto& name : fixture_names()) {
    auto fx = *find_fixture(name);
    auto a = upper_name_of(fx.shape, fx.bound);
    const Rational spacing = oracle::p2(fx.shape.dim == 1 ? -8 : -5);
    for (const auto& b : prefix(a.excluded, fx.shape.dim == 3 ? 80 : 300)) {
      CHECK_MESSAGE(oracle::sampled_hits(fx.shape, b, spacing).empty(), name);
    }
  }
}
