// SPDX-License-Identifier: Apache-2.0
//
// Closed sets with exactly known geometry, and the names they induce.
//
// A Shape answers "is the closed ball of radius r around c touching the
// set?" exactly. That one predicate drives both the exclusion streams of
// fixture upper names and the brute-force grid oracles that audit them.

#pragma once

#include "cresets/names.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cresets {

struct Shape {
  std::size_t dim = 1;
  /// dist(center, S) <= radius, decided exactly. False for the empty set.
  std::function<bool(const Point& center, const Rational& radius)> within;
  /// Finitely many points of S, consecutive ones at most `spacing` apart
  /// along the set (empty for the empty set).
  std::function<std::vector<Point>(const Rational& spacing)> samples;
  std::string label;
  /// Optional: true only when the closed box lies inside S.
  std::function<bool(const Box&)> covers;

  bool contains(const Point& p) const { return within(p, Rational(0)); }
};

Shape empty_shape(std::size_t dim);
Shape box_shape(Box box);
Shape ball_shape(Point center, Rational radius);
Shape segment_shape(Point a, Point b);
Shape points_shape(std::vector<Point> points);
Shape union_shape(std::vector<Shape> parts);

/// Upper name of S within `bound`: walks the cumulative dyadic grid of the
/// bound and excludes each cell's covering ball whenever it misses S.
UpperName upper_name_of(const Shape& shape, const Box& bound);

/// Upper name of S within `bound` by breadth-first subdivision: a cell's
/// covering ball is excluded when it misses S, a cell inside S is dropped,
/// and any other cell is split; both of the latter give a Skip entry.
/// Cells far from S stop early, so a prefix reaches finer levels near S
/// than upper_name_of does.
UpperName adaptive_upper_name_of(const Shape& shape, const Box& bound);

/// Lower name of a box: dyadic grid points of the box, level by level.
LowerName lower_name_of(const Box& box);

/// A registered fixture: a set with ground truth inside a bounding box.
struct Fixture {
  std::string name;
  Shape shape;
  Box bound;
  /// Known point used by point finders and handles, when meaningful.
  std::optional<Point> marked;
};

/// Fixtures known by name: "empty", "half", "two-box", "unit", "disk",
/// "segment", "cross", "cube3-ball".
std::optional<Fixture> find_fixture(const std::string& name);
std::vector<std::string> fixture_names();

}  // namespace cresets
