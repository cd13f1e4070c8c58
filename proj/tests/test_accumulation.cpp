#include "cresets/accumulation.hpp"

#include <random>

#include "doctest.h"
#include "oracles.hpp"

using namespace cresets;

namespace {

// Terms emitted from rows m >= row_floor among the first `count` entries.
std::vector<Rational> late_terms(const RationalStream& s, Index count, Index row_floor) {
  std::vector<Rational> out;
  for (Index l = 0; l < count; ++l) {
    const auto [m, k] = cantor_unpair(l);
    if (m < row_floor) continue;
    if (auto q = s(l)) out.push_back(*q);
  }
  return out;
}

bool open_contains(const Ball& b, const Rational& x) {
  return oracle::in_ball(open_ball(b.center, b.radius), Point{x});
}

}  // namespace

TEST_CASE("canonical enumerations") {
  CHECK(canonical_interval(0) == open_interval(-1, 0));
  CHECK(canonical_interval(1) == open_interval(-1, 1));
  CHECK(canonical_interval(2) == open_interval(0, 2));
  CHECK(canonical_interval(3) == open_interval(1, 2));
  CHECK(canonical_interval(4) == open_interval(-2, 0));
  CHECK(canonical_interval(5) == open_interval(Rational(-1, 2), Rational(1, 2)));
  std::vector<Rational> want{0, 1, Rational(1, 2), Rational(1, 3), Rational(2, 3), Rational(1, 4),
                             Rational(3, 4), Rational(1, 5)};
  for (std::size_t k = 0; k < want.size(); ++k) CHECK(canonical_rational(k) == want[k]);
}

TEST_CASE("simplest rational matches a brute-force scan") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> num(-60, 60), den(1, 40);
  for (int rep = 0; rep < 300; ++rep) {
    Rational a = oracle::frac(num(rng), den(rng)), b = oracle::frac(num(rng), den(rng));
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    std::optional<Rational> brute;
    for (long q = 1; !brute; ++q) {
      for (long p = -3000; p <= 3000; ++p) {
        const Rational c(p, q);
        if (a < c && c < b && c.get_den() == q) {
          brute = c;
          break;
        }
      }
    }
    CHECK(simplest_between(a, b) == *brute);
  }
  CHECK(simplest_between(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
  CHECK(simplest_between(0, 1) == Rational(1, 2));
}

TEST_CASE("sequence to set") {
  auto half = sequence_to_set([](Index) { return Rational(1, 2); });
  std::set<Rational> seen;
  for (Index l = 0; l < 40; ++l) {
    const Rational r = *half(l);
    CHECK(seen.insert(r).second);
    CHECK(abs(r - Rational(1, 2)) < oracle::p2(-long(l)));
  }
  CHECK(abs(*half(0) - Rational(1, 2)) < 1);
  auto pw = sequence_to_set([](Index k) { return oracle::p2(-long(k)); });
  std::set<Rational> seen2;
  for (Index l = 0; l < 40; ++l) {
    const Rational r = *pw(l);
    CHECK(seen2.insert(r).second);
    CHECK(abs(r - oracle::p2(-long(l))) < oracle::p2(-long(l)));
  }
}

TEST_CASE("set to double sequence") {
  auto d = set_to_double([](Index k) { return oracle::p2(-long(k)); });
  const Index row = 20;
  for (Index n = 0; n < 200; ++n) {
    const Ball b = canonical_interval(n);
    if (open_contains(b, 0)) CHECK_FALSE(d.ball(row, n).has_value());
  }
  CHECK(d.ball(row, 4 + 5 + 7 + 7).has_value());  // (5/8, 7/8)
  CHECK(d.ball(row, 4 + 5 + 7 + 5).has_value());  // (3/8, 5/8) holds only 1/2

  // Finite Q: grid points of [0, 1] are all covered by persisting intervals.
  std::vector<Rational> fin{Rational(1, 3), Rational(1, 2), Rational(5, 7)};
  auto df = set_to_double([fin](Index k) { return fin[k % fin.size()]; });
  for (const auto& p : oracle::grid(Box::unit(1), 6)) {
    bool covered = false;
    for (Index n = 0; n < 300 && !covered; ++n) {
      if (auto b = df.ball(40, n)) covered = open_contains(*b, p[0]);
    }
    CHECK(covered);
  }
  // Q = rationals of [0, 1]: every interval meeting (0, 1) is eventually removed.
  auto dq = set_to_double([](Index k) { return canonical_rational(k); });
  for (Index n = 0; n < 40; ++n) {
    const Ball b = canonical_interval(n);
    if (b.center[0] + b.radius > 0 && b.center[0] - b.radius < 1) CHECK_FALSE(dq.ball(200, n));
  }
}

TEST_CASE("set_to_double never removes an interval away from the closure") {
  auto d = set_to_double([](Index k) -> std::optional<Rational> { return Rational(1, 2) + oracle::p2(-long(k) - 2); });
  for (Index n = 0; n < 100; ++n) {
    const Ball b = canonical_interval(n);
    const bool far = b.center[0] + b.radius <= Rational(1, 2) || b.center[0] - b.radius > Rational(3, 4);
    if (far) CHECK(d.ball(60, n).has_value());
  }
}

TEST_CASE("double to sequence") {
  DoubleSequence gap{[](Index, Index n) -> std::optional<Ball> {
    if (n == 0) return open_interval(Rational(1, 4), Rational(3, 4));
    return std::nullopt;
  }};
  auto s = double_to_sequence(gap);
  auto terms = late_terms(s, 6000, 20);
  for (const auto& q : terms) CHECK_FALSE((q > Rational(1, 4) && q < Rational(3, 4)));
  for (const auto& p : oracle::grid(Box::unit(1), 4)) {
    if (p[0] > Rational(1, 4) && p[0] < Rational(3, 4)) continue;
    CHECK(std::any_of(terms.begin(), terms.end(), [&](const Rational& q) { return abs(q - p[0]) <= Rational(1, 16); }));
  }
  DoubleSequence none{[](Index, Index) -> std::optional<Ball> { return std::nullopt; }};
  auto all = late_terms(double_to_sequence(none), 6000, 20);
  for (const auto& p : oracle::grid(Box::unit(1), 4)) {
    CHECK(std::any_of(all.begin(), all.end(), [&](const Rational& q) { return abs(q - p[0]) <= Rational(1, 16); }));
  }
}

TEST_CASE("rational near an excluded point") {
  auto pt = [](Rational x) { return FastCauchyName::constant(Point{std::move(x)}); };
  CHECK(rational_near_excluded(pt(Rational(1, 2)), {open_interval(0, Rational(1, 2))}, Rational(1, 8)) ==
        Point{Rational(1, 2)});
  CHECK(rational_near_excluded(pt(Rational(1, 3)), {}, Rational(1, 1000)) == Point{Rational(1, 3)});
  CHECK(rational_near_excluded(pt(0), {open_interval(-1, 0), open_interval(0, 1)}, Rational(1, 4)) == Point{0});
  // The approximation falls in a hole; the hole endpoint qualifies.
  FastCauchyName off{1, [](Index k) { return Point{oracle::p2(-long(k) - 1)}; }};
  const Point q = rational_near_excluded(off, {open_interval(0, 1)}, Rational(1, 4));
  CHECK_FALSE(oracle::in_ball(open_interval(0, 1), q));
  CHECK(oracle::sqdist(q, Point{0}) <= Rational(1, 16));
  // A narrow gap between holes is reached through a hole endpoint.
  auto inside = FastCauchyName::constant(Point{Rational(1, 2)});
  FastCauchyName near_gap{1, [](Index k) { return Point{Rational(1, 2) + oracle::p2(-long(k) - 1)}; }};
  const Point g = rational_near_excluded(near_gap, {open_interval(0, Rational(1, 2)),
                                                    open_interval(Rational(1, 2), 1)}, Rational(1, 4));
  CHECK(g == Point{Rational(1, 2)});
  (void)inside;
  CHECK_THROWS_AS(rational_near_excluded(pt(Rational(1, 2)), {open_interval(0, 1)}, Rational(1, 8)),
                  ContractViolation);
}

TEST_CASE("stabilization") {
  DoubleSequence constant{[](Index, Index n) -> std::optional<Ball> { return canonical_interval(n); }};
  auto r = stabilize(constant, 3, Fuel{10});
  CHECK(r.row.size() == 3);
  CHECK(r.revisable);
  CHECK(r.horizon == 0);
  CHECK(*r.row[2] == canonical_interval(2));
  CHECK(stabilize(constant, 0, Fuel{10}).row.empty());

  MachineTable t({std::nullopt, 7});
  auto d = lagnese_double(t, Rational(1, 2));
  auto exact = stabilize(d, 4, lagnese_certificate(t));
  CHECK_FALSE(exact.revisable);
  CHECK(exact.horizon == 7);
  REQUIRE(exact.row[3].has_value());
  auto early = stabilize(d, 4, Fuel{5});
  CHECK(early.revisable);
  CHECK_FALSE(early.row[3].has_value());
  for (std::uint64_t f = 7; f < 20; ++f) CHECK(stabilize(d, 4, Fuel{f}).row == exact.row);
}

TEST_CASE("sigma3 interval search") {
  auto half = sigma3_interval_search([](Index) { return Rational(1, 2); }, 3, Fuel{16});
  REQUIRE(half);
  CHECK(open_contains(*half, Rational(1, 2)));
  CHECK(half->radius * 2 <= Rational(1, 8));
  auto alt = sigma3_interval_search([](Index i) { return Rational(long(i % 2)); }, 1, Fuel{16});
  REQUIRE(alt);
  CHECK(*alt == open_interval(Rational(-1, 3), Rational(1, 6)));
  CHECK_FALSE(sigma3_interval_search([](Index i) { return Rational(long(i)); }, 2, Fuel{6}));
}

TEST_CASE("lagnese pipeline") {
  CHECK_THROWS(lagnese_pipeline(MachineTable({1}), 2));
  CHECK_THROWS(lagnese_pipeline(MachineTable({1}), 0));
  MachineTable t({3, std::nullopt, 5, 2});
  const Rational eps(1, 2);
  auto s = lagnese_pipeline(t, eps);
  std::vector<Ball> cover;
  for (std::size_t e = 0; e < t.size(); ++e) {
    if (auto n = t.steps(e)) cover.push_back(open_ball(Point{specker_partial(t, *n)}, eps * oracle::p2(-long(e) - 2)));
  }
  auto terms = late_terms(s, 4000, 10);
  REQUIRE_FALSE(terms.empty());
  for (const auto& q : terms) {
    for (const auto& b : cover) CHECK_FALSE(open_contains(b, q));
  }
  // A dense candidate found by the interval search stays outside the cover.
  if (auto iv = sigma3_interval_search([&](Index i) -> std::optional<Rational> {
        return i < terms.size() ? std::optional<Rational>(terms[i]) : std::nullopt; }, 4, Fuel{8})) {
    for (const auto& b : cover) {
      CHECK(ball_relation(*iv, b) != BallRelation::AContainsB);
      CHECK(ball_relation(*iv, b) != BallRelation::BContainsA);
    }
  }
}
