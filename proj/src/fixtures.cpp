// SPDX-License-Identifier: Apache-2.0

#include "cresets/fixtures.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>

namespace cresets {

namespace {

// Number of equal steps needed to cover `length` with steps <= spacing.
std::uint64_t steps_for(const Rational& length, const Rational& spacing) {
  if (spacing <= 0) throw std::invalid_argument("sample spacing must be positive");
  const Rational n = ceil(length / spacing);
  if (n > 1 << 20) throw std::invalid_argument("sample spacing too fine");
  return std::max<std::uint64_t>(1, n.get_num().get_ui());
}

std::vector<Point> grid_points(const Box& box, const Rational& spacing) {
  const std::size_t d = box.dim();
  std::vector<std::uint64_t> n(d);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    n[i] = box.width(i) == 0 ? 0 : steps_for(box.width(i), spacing);
    total *= n[i] + 1;
  }
  std::vector<Point> out;
  out.reserve(total);
  for (std::uint64_t t = 0; t < total; ++t) {
    std::uint64_t rest = t;
    std::vector<Rational> c(d);
    for (std::size_t i = d; i-- > 0;) {
      const std::uint64_t k = rest % (n[i] + 1);
      rest /= n[i] + 1;
      c[i] = n[i] == 0 ? box.lo[i]
                       : Rational(box.lo[i] + box.width(i) * Rational(Integer(k), Integer(n[i])));
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

}  // namespace

Shape empty_shape(std::size_t dim) {
  return {dim, [](const Point&, const Rational&) { return false; },
          [](const Rational&) { return std::vector<Point>{}; }, "empty", nullptr};
}

Shape box_shape(Box box) {
  const std::size_t d = box.dim();
  return {d,
          [box](const Point& c, const Rational& r) { return dist2(box, c) <= r * r; },
          [box](const Rational& s) { return grid_points(box, s); }, "box",
          [box](const Box& cell) {
            for (std::size_t i = 0; i < cell.dim(); ++i) {
              if (cell.lo[i] < box.lo[i] || cell.hi[i] > box.hi[i]) return false;
            }
            return true;
          }};
}

Shape ball_shape(Point center, Rational radius) {
  const std::size_t d = center.dim();
  return {d,
          [center, radius](const Point& c, const Rational& r) {
            const Rational reach = r + radius;
            return dist2(center, c) <= reach * reach;
          },
          [center, radius](const Rational& s) {
            Box hullbox(center - Point::constant(center.dim(), radius),
                        center + Point::constant(center.dim(), radius));
            std::vector<Point> out{center};
            for (auto& p : grid_points(hullbox, s)) {
              if (dist2(p, center) <= radius * radius) out.push_back(std::move(p));
            }
            return out;
          },
          "ball",
          [center, radius](const Box& cell) {
            // Farthest corner.
            Rational far = 0;
            for (std::size_t i = 0; i < cell.dim(); ++i) {
              const Rational a = cell.lo[i] - center[i], b = cell.hi[i] - center[i];
              far += std::max(a * a, b * b);
            }
            return far <= radius * radius;
          }};
}

Shape segment_shape(Point a, Point b) {
  require_same_dim(a.dim(), b.dim());
  const std::size_t d = a.dim();
  return {d,
          [a, b](const Point& c, const Rational& r) {
            return dist2(nearest_on_segment(a, b, c), c) <= r * r;
          },
          [a, b](const Rational& s) {
            Rational l1 = 0;
            for (std::size_t i = 0; i < a.dim(); ++i) l1 += abs(b[i] - a[i]);
            const std::uint64_t n = l1 == 0 ? 1 : steps_for(l1, s);
            std::vector<Point> out;
            for (std::uint64_t k = 0; k <= n; ++k) {
              out.push_back(a + scale(b - a, Rational(Integer(k), Integer(n))));
            }
            return out;
          },
          "segment", nullptr};
}

Shape points_shape(std::vector<Point> points) {
  if (points.empty()) throw std::invalid_argument("points_shape needs a point; use empty_shape");
  const std::size_t d = points.front().dim();
  for (const auto& p : points) require_same_dim(d, p.dim());
  return {d,
          [points](const Point& c, const Rational& r) {
            return std::any_of(points.begin(), points.end(),
                               [&](const Point& p) { return dist2(p, c) <= r * r; });
          },
          [points](const Rational&) { return points; }, "points", nullptr};
}

Shape union_shape(std::vector<Shape> parts) {
  if (parts.empty()) throw std::invalid_argument("union_shape needs a part; use empty_shape");
  const std::size_t d = parts.front().dim;
  for (const auto& s : parts) require_same_dim(d, s.dim);
  return {d,
          [parts](const Point& c, const Rational& r) {
            return std::any_of(parts.begin(), parts.end(),
                               [&](const Shape& s) { return s.within(c, r); });
          },
          [parts](const Rational& sp) {
            std::vector<Point> out;
            for (const auto& s : parts) {
              auto more = s.samples(sp);
              out.insert(out.end(), std::make_move_iterator(more.begin()),
                         std::make_move_iterator(more.end()));
            }
            return out;
          },
          "union",
          [parts](const Box& cell) {
            return std::any_of(parts.begin(), parts.end(),
                               [&](const Shape& s) { return s.covers && s.covers(cell); });
          }};
}

UpperName upper_name_of(const Shape& shape, const Box& bound) {
  require_same_dim(shape.dim, bound.dim());
  return {shape.dim,
          [shape, bound](Index i) -> std::optional<Ball> {
            const auto pos = grid_position(bound.dim(), i);
            Ball ball = covering_ball(dyadic_cell(bound, pos.level, pos.number));
            if (shape.within(ball.center, ball.radius)) return std::nullopt;
            return ball;
          },
          bound};
}

UpperName adaptive_upper_name_of(const Shape& shape, const Box& bound) {
  require_same_dim(shape.dim, bound.dim());
  struct Walk {
    std::mutex lock;
    std::deque<Box> queue;
    std::vector<std::optional<Ball>> out;
  };
  auto walk = std::make_shared<Walk>();
  walk->queue.push_back(bound);
  return {shape.dim,
          [shape, walk](Index i) -> std::optional<Ball> {
            std::lock_guard guard(walk->lock);
            while (walk->out.size() <= i) {
              if (walk->queue.empty()) {
                walk->out.emplace_back();
                continue;
              }
              const Box cell = std::move(walk->queue.front());
              walk->queue.pop_front();
              Ball ball = covering_ball(cell);
              if (shape.covers && shape.covers(cell)) {
                walk->out.emplace_back();
              } else if (shape.within(ball.center, ball.radius)) {
                for (auto& kid : box_subdivide(cell, 1)) walk->queue.push_back(std::move(kid));
                walk->out.emplace_back();
              } else {
                walk->out.emplace_back(std::move(ball));
              }
            }
            return walk->out[i];
          },
          bound};
}

LowerName lower_name_of(const Box& box) {
  return {box.dim(), [box](Index i) -> std::optional<Point> {
            const auto pos = grid_position(box.dim(), i);
            return dyadic_cell(box, pos.level, pos.number).lo;
          }};
}

namespace {

std::map<std::string, Fixture> make_registry() {
  std::map<std::string, Fixture> reg;
  auto add = [&](Fixture f) { reg.emplace(f.name, std::move(f)); };
  const Rational q(1, 4), h(1, 2), tq(3, 4);
  add({"empty", empty_shape(1), Box::unit(1), std::nullopt});
  add({"half", points_shape({Point{h}}), Box::unit(1), Point{h}});
  add({"unit", box_shape(Box::unit(1)), Box::unit(1), Point{h}});
  add({"two-box",
       union_shape({box_shape(Box(Point{0}, Point{q})), box_shape(Box(Point{tq}, Point{1}))}),
       Box::unit(1), Point{0}});
  add({"disk", ball_shape(Point{h, h}, q), Box::unit(2), Point{h, h}});
  add({"segment", segment_shape(Point{Rational(1, 3), Rational(1, 3)},
                                Point{Rational(2, 3), Rational(2, 3)}),
       Box::unit(2), Point{h, h}});
  add({"cross",
       union_shape({segment_shape(Point{h, 0}, Point{h, 1}), segment_shape(Point{0, h}, Point{1, h})}),
       Box::unit(2), Point{h, h}});
  add({"cube3-ball", ball_shape(Point{h, h, h}, q), Box::unit(3), Point{h, h, h}});
  return reg;
}

const std::map<std::string, Fixture>& registry() {
  static const auto reg = make_registry();
  return reg;
}

}  // namespace

std::optional<Fixture> find_fixture(const std::string& name) {
  const auto& reg = registry();
  if (auto it = reg.find(name); it != reg.end()) return it->second;
  return std::nullopt;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : registry()) out.push_back(k);
  return out;
}

}  // namespace cresets
