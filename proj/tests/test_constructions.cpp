#include "cresets/constructions.hpp"

#include "cresets/semidec.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace cresets;

namespace {

const auto never = std::nullopt;

MachineTable random_table(std::mt19937& rng, std::size_t max_size, std::uint64_t max_steps) {
  std::uniform_int_distribution<std::size_t> sz(1, max_size);
  std::uniform_int_distribution<std::uint64_t> st(1, max_steps);
  std::bernoulli_distribution halts(0.6);
  std::vector<std::optional<std::uint64_t>> steps(sz(rng));
  for (auto& s : steps) {
    if (halts(rng)) s = st(rng);
  }
  return MachineTable(steps);
}

// Sum of 1/2^(e+1) over halting e, by repeated halving.
Rational closed_form(const MachineTable& t) {
  Rational sum = 0, w(1, 2);
  for (std::size_t e = 0; e < t.size(); ++e, w /= 2) {
    if (t.steps(e)) sum += w;
  }
  return sum;
}

}  // namespace

TEST_CASE("bounded halting") {
  MachineTable t({never, 5, 2});
  CHECK(bounded_halting(t, 1, 4) == HaltStatus::NotYet);
  CHECK(bounded_halting(t, 1, 5) == HaltStatus::Halted);
  CHECK(bounded_halting(t, 0, 1000000) == HaltStatus::NotYet);
  CHECK_THROWS_AS(bounded_halting(t, 3, 1), std::out_of_range);
  CHECK_THROWS_AS(MachineTable({0}), std::invalid_argument);
}

TEST_CASE("specker partial sums") {
  MachineTable t({never, 5, never, 2});
  CHECK(specker_partial(t, 2) == Rational(1, 16));
  CHECK(specker_partial(t, 5) == Rational(5, 16));
  CHECK(specker_limit(t) == Rational(5, 16));
  MachineTable none({never, never});
  for (Index m = 0; m < 20; ++m) CHECK(specker(none).approx(m) == Point{0});
}

TEST_CASE("specker sums are monotone and reach the closed form") {
  std::mt19937 rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const auto t = random_table(rng, 12, 40);
    const Rational limit = closed_form(t);
    Rational prev = -1;
    for (std::uint64_t m = 0; m <= 45; ++m) {
      const Rational x = specker_partial(t, m);
      CHECK(x >= prev);
      CHECK(x <= limit);
      prev = x;
    }
    CHECK(specker_partial(t, t.max_finite()) == limit);
  }
}

TEST_CASE("singular cover") {
  std::vector<Rational> vals{0, 1, Rational(1, 2), Rational(1, 3)};
  PointFamily xs = [vals](Index m) { return FastCauchyName::constant(Point{vals[m % vals.size()]}); };
  auto cover = singular_cover(xs, Rational(1, 2));
  const Ball b0 = *cover.next(0);
  CHECK(b0.radius == Rational(1, 8));
  CHECK(oracle::in_ball(b0, Point{0}));
  auto unit = singular_cover(xs, 1);
  Rational total = 0;
  for (Index m = 0; m < 40; ++m) {
    const Ball b = *unit.next(m);
    CHECK(oracle::in_ball(b, Point{vals[m % vals.size()]}));
    total += 2 * b.radius;
    CHECK(total < 1);
  }
  CHECK_THROWS(singular_cover(xs, 0));
}

TEST_CASE("singular cover holds moving names inside their intervals") {
  // Name of 1/3 through binary truncations.
  PointFamily xs = [](Index m) {
    return FastCauchyName{1, [m](Index k) {
                            Rational q = Rational(1, 3) + oracle::frac(long(m), 7);
                            const Rational s = oracle::p2(long(k));
                            return Point{Rational(floor(q * s)) / s};
                          }};
  };
  auto cover = singular_cover(xs, Rational(1, 64));
  for (Index m = 0; m < 30; ++m) {
    CHECK(oracle::in_ball(*cover.next(m), Point{Rational(1, 3) + oracle::frac(long(m), 7)}));
  }
}

TEST_CASE("cantor embedding") {
  auto zeros = cantor_embed([](Index) { return false; });
  auto ones = cantor_embed([](Index) { return true; });
  auto first = cantor_embed([](Index n) { return n == 0; });
  for (Index k = 0; k < 20; ++k) {
    CHECK(query(zeros, k) == Point{0});
    CHECK(oracle::sqdist(query(ones, k), Point{1}) <= oracle::p2(-2 * long(k)));
    if (k > 0) CHECK(query(first, k) == Point{Rational(2, 3)});
  }
  auto alt = cantor_embed([](Index n) { return n % 3 == 1; });
  CHECK(validate_fast_cauchy(alt, 16).is_yes());
  CHECK(validate_fast_cauchy(ones, 16).is_yes());
  // Ternary digits of the approximants avoid 1.
  Rational v = query(alt, 16)[0];
  for (int digit = 0; digit < 10; ++digit) {
    v *= 3;
    const Rational d = floor(v);
    CHECK(d != 1);
    v -= d;
  }
}

TEST_CASE("countable B gadget") {
  MachineTable t({never, 3});
  const Shape b = gadget_shape(GadgetKind::CountableB, t);
  CHECK(b.contains(Point{Rational(1, 2)}));
  CHECK_FALSE(b.contains(Point{Rational(1, 4)}));
  auto a = countable_b(t);
  auto appears = [&](Index count) {
    for (const auto& ball : prefix(a.excluded, count)) {
      if (ball.center == Point{Rational(1, 4)}) return true;
    }
    return false;
  };
  CHECK(appears(100));
  Index first = 0;
  while (!(a.excluded(first) && a.excluded(first)->center == Point{Rational(1, 4)})) ++first;
  CHECK(first + 1 >= 3);
  CHECK(semi_not_in(a, FastCauchyName::constant(Point{Rational(1, 4)}), Fuel{60}).is_yes());
  CHECK(semi_not_in(a, FastCauchyName::constant(Point{Rational(1, 2)}), Fuel{200}).is_unknown());
}

TEST_CASE("interval lower gadget") {
  MachineTable none({never, never});
  auto a = interval_lower(none);
  for (Index i = 0; i < 200; ++i) {
    if (auto p = a.points(i)) CHECK(*p == Point{0});
  }
  MachineTable t({4});
  auto b = interval_lower(t);
  for (Index i = 0; i < 500; ++i) {
    if (auto p = b.points(i)) CHECK(((*p)[0] >= 0 && (*p)[0] <= Rational(1, 2)));
  }
}

TEST_CASE("comb gadget") {
  MachineTable t({never});
  const Shape comb = gadget_shape(GadgetKind::Comb2D, t);
  CHECK(comb.contains(Point{0, 0}));
  auto a = comb2d(t);
  for (const auto& ball : prefix(a.excluded, 2000)) {
    CHECK(oracle::sampled_hits(comb, ball, oracle::p2(-6)).empty());
  }
  MachineTable h({never, 3});
  const Shape comb_h = gadget_shape(GadgetKind::Comb2D, h);
  CHECK_FALSE(comb_h.contains(Point{1, 0}));
  CHECK(comb_h.contains(Point{1, Rational(-1, 8)}));
  CHECK(semi_not_in(comb2d(h), FastCauchyName::constant(Point{1, 0}), Fuel{60}).is_yes());
}

TEST_CASE("gadget exclusions never meet the ground truth") {
  std::mt19937 rng(5);
  for (int rep = 0; rep < 12; ++rep) {
    const auto t = random_table(rng, 5, 12);
    for (auto kind : {GadgetKind::IntervalUpper, GadgetKind::CountableB, GadgetKind::Comb2D}) {
      const auto a = std::get<UpperName>(halting_gadget(kind, t));
      const Shape s = gadget_shape(kind, t);
      const Rational spacing = oracle::p2(kind == GadgetKind::Comb2D ? -6 : -8);
      for (const auto& ball : prefix(a.excluded, kind == GadgetKind::Comb2D ? 300 : 200)) {
        CHECK(oracle::sampled_hits(s, ball, spacing).empty());
      }
    }
    const auto lower = interval_lower(t);
    const Rational x = closed_form(t);
    for (Index i = 0; i < 300; ++i) {
      if (auto p = lower.points(i)) CHECK(((*p)[0] >= 0 && (*p)[0] <= x));
    }
  }
}
