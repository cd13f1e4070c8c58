// SPDX-License-Identifier: Apache-2.0
//
// Computable points of structured sets given by upper names: the
// lexicographic minimum as a naive name, points of convex sets by
// coordinate-wise slicing, and star points in the plane.
//
// A FoundPoint is certified when its distance bound follows from the data
// consumed; otherwise it is a best guess that more fuel may revise.

#pragma once

#include "cresets/names.hpp"

#include <optional>
#include <string>

namespace cresets {

struct FoundPoint {
  Point point;
  bool certified = false;
  std::string strategy;
};

/// approx(n): centre of the lexicographically least level-n cell of the
/// bound grid not contained in one of the first n^3 excluded balls.
/// Throws ContractViolation when every cell is discharged.
NaiveName lexmin_naive_point(const UpperName& a);

/// Upper name of the projection of A onto `axis`. Entry c is the closed
/// c-th cell of the cumulative dyadic grid on that axis, emitted when the
/// slab of A's bound over the cell is covered by the first `fuel` excluded
/// balls (cover search capped at `fuel` nodes).
UpperName project_axis(const UpperName& a, std::size_t axis, Fuel fuel);
/// project_axis on the last axis. Requires d >= 2.
UpperName project_last_axis(const UpperName& a, Fuel fuel);

/// One-dimensional A, nonempty interval by assertion. From the first
/// `fuel` exclusions: the hull midpoint when the hull of what survives has
/// width <= 2^(1-n) (certified), else the midpoint of the longest surviving
/// piece when it has width >= 2^(1-n) (revisable), else Unknown.
std::optional<FoundPoint> interval_point(const UpperName& a, Index n, Fuel fuel);

/// Nonempty convex A. Fixes coordinates from the last axis down. Each one
/// is chosen at precision n + 2 by the interval_point rule, applied to the
/// shadow on that axis of the cells surviving the first `fuel` exclusions
/// inside the slabs chosen so far (half-width 2^(-n-2)). Cells are split
/// along their wide axes until the rule settles or fuel 2^d cells are
/// spent. Certified when every coordinate was.
std::optional<FoundPoint> convex_point(const UpperName& a, Index n, Fuel fuel);

struct StarHints {
  Box square;
  /// Opening angle in degrees; rounded down to 15, 30, 45, 60, 90 or 180.
  Rational alpha;
  Point handle_x;
  Point handle_y;
};

struct StarEstimate {
  Point x;
  Point y;
  Point estimate;
};

struct StarSearch {
  std::optional<FoundPoint> found;
  /// Midpoint estimates of the handle-component branch, in emission order.
  std::vector<StarEstimate> estimates;
};

/// Rational lower bound of sin(alpha / 2) after rounding alpha down to a
/// table angle. Throws std::invalid_argument below 15 degrees.
Rational half_angle_sine_lower(const Rational& alpha_degrees);

/// Point of a nonempty star-shaped planar A within 2^-n of a star point.
/// With hints the component branch runs first: nearest ball centres x, y of
/// the handle components of Q minus A give the estimate (x + y) / 2,
/// certified once |x - y| <= 2 s 2^-n with s = half_angle_sine_lower.
/// Then the interior branch (a rational whose 2^-n ball meets none of the
/// first `fuel` exclusions) and finally convex_point.
StarSearch star_point_2d(const UpperName& a, Index n, const std::optional<StarHints>& hints,
                         Fuel fuel);

}  // namespace cresets
