// SPDX-License-Identifier: Apache-2.0
//
// Exact rational arithmetic and rational geometry in dimension d.
//
// Every predicate in this header is decided exactly on rational data.
// Distances are never taken: comparisons go through squared Euclidean
// norms, so no square root (and no rounding) ever enters the core.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cresets {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when two geometric objects of different dimension are combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t a, std::size_t b);
};

/// Thrown when an input stream violates the contract its producer promised
/// (e.g. an upper name whose exclusions discard the whole bounding box of
/// a set asserted non-empty).
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2^e for any integer exponent.
Rational pow2(long e);

/// Canonical textual form "p/q" with q > 0 (integers print as "p/1").
std::string to_string(const Rational& q);

/// Parses "p/q", "p" or a finite decimal such as "-0.25"; the result is
/// canonicalized.
Rational parse_rational(std::string_view text);

Rational floor(const Rational& q);
Rational ceil(const Rational& q);

class Point {
 public:
  explicit Point(std::vector<Rational> coords);
  Point(std::initializer_list<Rational> coords);

  static Point zero(std::size_t dim);
  static Point constant(std::size_t dim, const Rational& value);

  std::size_t dim() const { return coords_.size(); }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Rational>& coords() const { return coords_; }

  friend bool operator==(const Point& a, const Point& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

  /// Lexicographic order, first axis most significant.
  friend bool lex_less(const Point& a, const Point& b);

 private:
  std::vector<Rational> coords_;
};

Point operator+(const Point& a, const Point& b);
Point operator-(const Point& a, const Point& b);
Point scale(const Point& p, const Rational& s);
Point midpoint(const Point& a, const Point& b);

enum class BallKind { Open, Closed };

struct Ball {
  Point center;
  Rational radius;
  BallKind kind;

  Ball(Point c, Rational r, BallKind k);

  std::size_t dim() const { return center.dim(); }
  bool is_open() const { return kind == BallKind::Open; }
  /// An open ball of radius 0 has no points.
  bool empty() const { return is_open() && radius == 0; }

  friend bool operator==(const Ball& a, const Ball& b) {
    return a.kind == b.kind && a.radius == b.radius && a.center == b.center;
  }
};

Ball open_ball(Point c, Rational r);
Ball closed_ball(Point c, Rational r);
/// Closed one-dimensional interval [lo, hi] as a closed ball.
Ball closed_interval(const Rational& lo, const Rational& hi);
/// Open one-dimensional interval (lo, hi) as an open ball.
Ball open_interval(const Rational& lo, const Rational& hi);

struct Box {
  Point lo;
  Point hi;

  Box(Point lo, Point hi);

  static Box unit(std::size_t dim);
  static Box cube(std::size_t dim, const Rational& lo, const Rational& hi);

  std::size_t dim() const { return lo.dim(); }
  Rational width(std::size_t axis) const { return hi[axis] - lo[axis]; }
  Point center() const { return midpoint(lo, hi); }
  /// Squared half-diagonal: every point of the box is within this squared
  /// distance of its center.
  Rational half_diag2() const;

  friend bool operator==(const Box& a, const Box& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

enum class BallRelation { Disjoint, Intersecting, AContainsB, BContainsA, Tangent };

const char* to_string(BallRelation r);

void require_same_dim(std::size_t a, std::size_t b);

/// Squared Euclidean distance, exact.
Rational dist2(const Point& p, const Point& q);

/// Exact classification of the relative position of two balls.
///
/// Containment is reported first; Tangent means the closures touch in a
/// single boundary point and at least one ball is open there, so the sets
/// themselves do not meet.
BallRelation ball_relation(const Ball& a, const Ball& b);

/// True when the two balls share at least one point.
bool balls_meet(const Ball& a, const Ball& b);

/// The 2^(d*level) congruent dyadic sub-boxes of b, lexicographic in the
/// corner index (first axis most significant).
std::vector<Box> box_subdivide(const Box& b, unsigned level);

bool contains(const Ball& ball, const Point& p);
bool contains(const Ball& ball, const Box& box);
bool contains(const Box& box, const Point& p);
/// True when the closed box and the ball share a point.
bool meets(const Ball& ball, const Box& box);
/// Closed boxes sharing at least one point (faces and corners count).
bool boxes_touch(const Box& a, const Box& b);

/// Squared distance from p to the nearest point of the closed box.
Rational dist2(const Box& box, const Point& p);

/// Nearest point of the closed segment [a, b] to p.
Point nearest_on_segment(const Point& a, const Point& b, const Point& p);

/// Hull of two boxes.
Box hull(const Box& a, const Box& b);

// Dyadic grids over a bounding box. Level L splits every axis into 2^L
// equal parts; cells are numbered lexicographically (first axis most
// significant). The cumulative numbering lists level 0, then level 1, ...

/// Cell `number` of the level-`level` grid over `bound`.
Box dyadic_cell(const Box& bound, unsigned level, std::uint64_t number);

struct GridPosition {
  unsigned level;
  std::uint64_t number;
};

/// Position of cumulative index i in the level-by-level numbering.
GridPosition grid_position(std::size_t dim, std::uint64_t i);

/// Number of cells on levels 0..level-1.
std::uint64_t cells_before_level(std::size_t dim, unsigned level);

/// Closed ball around the cell center with radius 3/4 of the summed widths.
/// The cell lies in its interior, so boundary points keep a margin.
Ball covering_ball(const Box& cell);

}  // namespace cresets
