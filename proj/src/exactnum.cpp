// SPDX-License-Identifier: Apache-2.0

#include "cresets/exactnum.hpp"

#include <algorithm>
#include <cctype>

namespace cresets {

DimensionMismatch::DimensionMismatch(std::size_t a, std::size_t b)
    : std::invalid_argument("dimension mismatch: " + std::to_string(a) + " vs " +
                            std::to_string(b)) {}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto bad = [&] { return std::invalid_argument("malformed rational literal: '" + s + "'"); };
  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw bad();
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const auto frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    Integer num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) throw bad();
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

Rational floor(const Rational& q) {
  Integer z;
  mpz_fdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

Rational ceil(const Rational& q) {
  Integer z;
  mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(z);
}

// ---------------------------------------------------------------- Point

Point::Point(std::vector<Rational> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("points need dimension >= 1");
}

Point::Point(std::initializer_list<Rational> coords) : Point(std::vector<Rational>(coords)) {}

Point Point::zero(std::size_t dim) { return constant(dim, Rational(0)); }

Point Point::constant(std::size_t dim, const Rational& value) {
  return Point(std::vector<Rational>(dim, value));
}

bool lex_less(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim());
  return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(),
                                      b.coords_.end());
}

Point operator+(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<Rational> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] + b[i];
  return Point(std::move(c));
}

Point operator-(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<Rational> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = a[i] - b[i];
  return Point(std::move(c));
}

Point scale(const Point& p, const Rational& s) {
  std::vector<Rational> c(p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) c[i] = p[i] * s;
  return Point(std::move(c));
}

Point midpoint(const Point& a, const Point& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<Rational> c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) c[i] = (a[i] + b[i]) / 2;
  return Point(std::move(c));
}

// ---------------------------------------------------------------- Ball

Ball::Ball(Point c, Rational r, BallKind k) : center(std::move(c)), radius(std::move(r)), kind(k) {
  if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
}

Ball open_ball(Point c, Rational r) { return Ball(std::move(c), std::move(r), BallKind::Open); }
Ball closed_ball(Point c, Rational r) {
  return Ball(std::move(c), std::move(r), BallKind::Closed);
}

Ball closed_interval(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("interval with hi < lo");
  return closed_ball(Point{(lo + hi) / 2}, (hi - lo) / 2);
}

Ball open_interval(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("interval with hi < lo");
  return open_ball(Point{(lo + hi) / 2}, (hi - lo) / 2);
}

// ---------------------------------------------------------------- Box

Box::Box(Point l, Point h) : lo(std::move(l)), hi(std::move(h)) {
  require_same_dim(lo.dim(), hi.dim());
  for (std::size_t i = 0; i < lo.dim(); ++i) {
    if (hi[i] < lo[i]) throw std::invalid_argument("box with hi < lo on some axis");
  }
}

Box Box::unit(std::size_t dim) { return cube(dim, 0, 1); }

Box Box::cube(std::size_t dim, const Rational& lo, const Rational& hi) {
  return Box(Point::constant(dim, lo), Point::constant(dim, hi));
}

Rational Box::half_diag2() const {
  Rational s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    Rational h = width(i) / 2;
    s += h * h;
  }
  return s;
}

// ---------------------------------------------------------------- predicates

const char* to_string(BallRelation r) {
  switch (r) {
    case BallRelation::Disjoint: return "Disjoint";
    case BallRelation::Intersecting: return "Intersecting";
    case BallRelation::AContainsB: return "AContainsB";
    case BallRelation::BContainsA: return "BContainsA";
    case BallRelation::Tangent: return "Tangent";
  }
  return "?";
}

Rational dist2(const Point& p, const Point& q) {
  require_same_dim(p.dim(), q.dim());
  Rational s = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    Rational d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

namespace {

// Does `outer` contain `inner` as point sets? Both non-empty.
bool ball_contains_ball(const Ball& outer, const Ball& inner, const Rational& d2) {
  Rational slack = outer.radius - inner.radius;
  if (slack < 0) return false;
  // An open outer ball cannot reach the boundary of a closed inner ball
  // of positive radius, so the margin must be strict there.
  const bool strict = outer.is_open() && !inner.is_open() && inner.radius > 0;
  return strict ? (slack > 0 && d2 < slack * slack) : d2 <= slack * slack;
}

}  // namespace

BallRelation ball_relation(const Ball& a, const Ball& b) {
  require_same_dim(a.dim(), b.dim());
  if (a.empty() || b.empty()) {
    if (a.empty() && !b.empty()) return BallRelation::BContainsA;
    if (b.empty() && !a.empty()) return BallRelation::AContainsB;
    return BallRelation::Disjoint;
  }
  const Rational d2 = dist2(a.center, b.center);
  if (ball_contains_ball(a, b, d2)) return BallRelation::AContainsB;
  if (ball_contains_ball(b, a, d2)) return BallRelation::BContainsA;
  const Rational sum = a.radius + b.radius;
  const Rational sum2 = sum * sum;
  if (d2 > sum2) return BallRelation::Disjoint;
  if (d2 == sum2) {
    return (a.is_open() || b.is_open()) ? BallRelation::Tangent : BallRelation::Intersecting;
  }
  return BallRelation::Intersecting;
}

bool balls_meet(const Ball& a, const Ball& b) {
  switch (ball_relation(a, b)) {
    case BallRelation::Disjoint:
    case BallRelation::Tangent:
      return false;
    case BallRelation::AContainsB:
      return !b.empty();
    case BallRelation::BContainsA:
      return !a.empty();
    case BallRelation::Intersecting:
      return true;
  }
  return false;
}

std::vector<Box> box_subdivide(const Box& b, unsigned level) {
  const std::size_t d = b.dim();
  if (static_cast<unsigned long long>(d) * level >= 63) {
    throw std::invalid_argument("box_subdivide: too many sub-boxes requested");
  }
  const std::uint64_t per_axis = std::uint64_t{1} << level;
  const std::uint64_t total = std::uint64_t{1} << (d * level);
  std::vector<Rational> step(d);
  for (std::size_t i = 0; i < d; ++i) step[i] = b.width(i) / Rational(Integer(per_axis));
  std::vector<Box> out;
  out.reserve(total);
  std::vector<std::uint64_t> idx(d, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    // The last axis varies fastest, so the first axis is most significant.
    std::uint64_t rest = n;
    for (std::size_t i = d; i-- > 0;) {
      idx[i] = rest % per_axis;
      rest /= per_axis;
    }
    std::vector<Rational> lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
      lo[i] = b.lo[i] + step[i] * Rational(Integer(idx[i]));
      hi[i] = idx[i] + 1 == per_axis ? b.hi[i] : lo[i] + step[i];
    }
    out.emplace_back(Point(std::move(lo)), Point(std::move(hi)));
  }
  return out;
}

bool contains(const Ball& ball, const Point& p) {
  require_same_dim(ball.dim(), p.dim());
  const Rational d2 = dist2(ball.center, p);
  const Rational r2 = ball.radius * ball.radius;
  return ball.is_open() ? d2 < r2 : d2 <= r2;
}

bool contains(const Ball& ball, const Box& box) {
  require_same_dim(ball.dim(), box.dim());
  // A ball is convex, so it contains the box iff it contains the corner
  // farthest from its center.
  std::vector<Rational> far(box.dim());
  for (std::size_t i = 0; i < box.dim(); ++i) {
    const Rational dl = ball.center[i] - box.lo[i];
    const Rational dh = box.hi[i] - ball.center[i];
    far[i] = dl >= dh ? box.lo[i] : box.hi[i];
  }
  return contains(ball, Point(std::move(far)));
}

bool contains(const Box& box, const Point& p) {
  require_same_dim(box.dim(), p.dim());
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (p[i] < box.lo[i] || p[i] > box.hi[i]) return false;
  }
  return true;
}

Rational dist2(const Box& box, const Point& p) {
  require_same_dim(box.dim(), p.dim());
  Rational s = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    Rational d = 0;
    if (p[i] < box.lo[i]) d = box.lo[i] - p[i];
    else if (p[i] > box.hi[i]) d = p[i] - box.hi[i];
    s += d * d;
  }
  return s;
}

bool meets(const Ball& ball, const Box& box) {
  if (ball.empty()) return false;
  const Rational d2 = dist2(box, ball.center);
  const Rational r2 = ball.radius * ball.radius;
  return ball.is_open() ? d2 < r2 : d2 <= r2;
}

bool boxes_touch(const Box& a, const Box& b) {
  require_same_dim(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
  }
  return true;
}

Point nearest_on_segment(const Point& a, const Point& b, const Point& p) {
  const Point ab = b - a;
  const Rational len2 = dist2(a, b);
  if (len2 == 0) return a;
  Rational t = 0;
  const Point ap = p - a;
  for (std::size_t i = 0; i < p.dim(); ++i) t += ap[i] * ab[i];
  t /= len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return a + scale(ab, t);
}

Box hull(const Box& a, const Box& b) {
  require_same_dim(a.dim(), b.dim());
  std::vector<Rational> lo(a.dim()), hi(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    lo[i] = std::min(a.lo[i], b.lo[i]);
    hi[i] = std::max(a.hi[i], b.hi[i]);
  }
  return Box(Point(std::move(lo)), Point(std::move(hi)));
}

Box dyadic_cell(const Box& bound, unsigned level, std::uint64_t number) {
  const std::size_t d = bound.dim();
  if (static_cast<unsigned long long>(d) * level >= 63) {
    throw std::invalid_argument("dyadic_cell: level too deep");
  }
  const std::uint64_t per_axis = std::uint64_t{1} << level;
  std::vector<Rational> lo(d), hi(d);
  std::uint64_t rest = number;
  const Rational parts{Integer(per_axis)};
  for (std::size_t i = d; i-- > 0;) {
    const std::uint64_t k = rest % per_axis;
    rest /= per_axis;
    const Rational step = bound.width(i) / parts;
    lo[i] = bound.lo[i] + step * Rational(Integer(k));
    hi[i] = k + 1 == per_axis ? bound.hi[i] : Rational(lo[i] + step);
  }
  if (rest != 0) throw std::out_of_range("dyadic_cell: number exceeds level size");
  return Box(Point(std::move(lo)), Point(std::move(hi)));
}

std::uint64_t cells_before_level(std::size_t dim, unsigned level) {
  std::uint64_t total = 0;
  for (unsigned l = 0; l < level; ++l) total += std::uint64_t{1} << (dim * l);
  return total;
}

GridPosition grid_position(std::size_t dim, std::uint64_t i) {
  unsigned level = 0;
  for (;;) {
    if (static_cast<unsigned long long>(dim) * level >= 63) {
      throw std::out_of_range("grid_position: index too large");
    }
    const std::uint64_t count = std::uint64_t{1} << (dim * level);
    if (i < count) return {level, i};
    i -= count;
    ++level;
  }
}

Ball covering_ball(const Box& cell) {
  Rational r = 0;
  for (std::size_t i = 0; i < cell.dim(); ++i) r += cell.width(i);
  return closed_ball(cell.center(), r * Rational(3, 4));
}

}  // namespace cresets
