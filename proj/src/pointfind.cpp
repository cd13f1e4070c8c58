// SPDX-License-Identifier: Apache-2.0

#include "cresets/pointfind.hpp"

#include "cresets/components.hpp"
#include "cresets/semidec.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <queue>

namespace cresets {

namespace {

long neg(Index k) { return -static_cast<long>(k); }

using Candidates = std::vector<std::uint32_t>;

// Keeps the candidates meeting `box`; true when one of them contains it.
bool filter(const Box& box, const std::vector<Ball>& balls, const Candidates& in, Candidates& out) {
  out.clear();
  for (auto i : in) {
    if (!meets(balls[i], box)) continue;
    if (contains(balls[i], box)) return true;
    out.push_back(i);
  }
  return false;
}

Candidates all_of(const std::vector<Ball>& balls) {
  Candidates c(balls.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::uint32_t>(i);
  return c;
}

Box with_axis(const Box& box, std::size_t axis, const Rational& lo, const Rational& hi) {
  Point a = box.lo, b = box.hi;
  a[axis] = lo;
  b[axis] = hi;
  return Box(std::move(a), std::move(b));
}

// Closures of the pieces of [lo, hi] outside the given balls, in order.
std::vector<std::pair<Rational, Rational>> surviving_pieces(const Rational& lo, const Rational& hi,
                                                            const std::vector<Ball>& balls) {
  struct Gap {
    Rational lo, hi;
    bool closed;
  };
  std::vector<Gap> gaps;
  for (const auto& b : balls) gaps.push_back({b.center[0] - b.radius, b.center[0] + b.radius, !b.is_open()});
  std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.closed && !b.closed);
  });
  std::vector<std::pair<Rational, Rational>> out;
  // The surviving set resumes at `at`, which itself survives unless `open`.
  Rational at = lo;
  bool open = false;
  for (const auto& g : gaps) {
    if (at > hi) break;
    const bool gap_before = g.lo > at || (g.lo == at && !g.closed && !open);
    if (gap_before) out.emplace_back(at, std::min(g.lo, hi));
    if (g.hi > at) {
      at = g.hi;
      open = g.closed;
    } else if (g.hi == at) {
      open = open || g.closed;
    }
  }
  if (at < hi || (at == hi && !open)) out.emplace_back(at, hi);
  return out;
}

// Interval decision on closed pieces: certified hull midpoint, or the
// midpoint of the longest piece once it is at least `wide`.
std::optional<FoundPoint> decide(const std::vector<std::pair<Rational, Rational>>& pieces, const Rational& width,
                                 const Rational& wide) {
  const Rational lo = pieces.front().first, hi = pieces.back().second;
  if (hi - lo <= width) return FoundPoint{Point{(lo + hi) / 2}, true, "hull"};
  const auto* best = &pieces.front();
  for (const auto& p : pieces) {
    if (p.second - p.first > best->second - best->first) best = &p;
  }
  if (best->second - best->first < wide) return std::nullopt;
  return FoundPoint{Point{(best->first + best->second) / 2}, false, "interior"};
}

}  // namespace

// ---------------------------------------------------------------- lexmin

NaiveName lexmin_naive_point(const UpperName& a) {
  const Box bound = a.require_bound("lexmin_naive_point");
  struct Cache {
    std::mutex lock;
    std::vector<Ball> balls;
    std::vector<Index> entry;  // stream index of each ball
    Index read = 0;
  };
  auto cache = std::make_shared<Cache>();
  return {a.dim, [a, bound, cache](Index n) {
            std::lock_guard guard(cache->lock);
            const Index count = n * n * n;
            for (; cache->read < count; ++cache->read) {
              if (auto b = a.excluded(cache->read)) {
                require_same_dim(a.dim, b->dim());
                cache->balls.push_back(std::move(*b));
                cache->entry.push_back(cache->read);
              }
            }
            const auto used = static_cast<std::size_t>(
                std::lower_bound(cache->entry.begin(), cache->entry.end(), count) - cache->entry.begin());
            // Balls narrower than a level-n cell cannot contain one.
            const Rational reach2 = dyadic_cell(bound, static_cast<unsigned>(n), 0).half_diag2();
            Candidates all;
            for (std::size_t i = 0; i < used; ++i) {
              const Rational& r = cache->balls[i].radius;
              if (r * r >= reach2) all.push_back(static_cast<std::uint32_t>(i));
            }

            struct Node {
              Box box;
              Index level;
              Candidates cand;
            };
            // Least low corner first; the coarser cell first on ties.
            auto later = [](const Node& x, const Node& y) {
              if (lex_less(y.box.lo, x.box.lo)) return true;
              if (lex_less(x.box.lo, y.box.lo)) return false;
              return x.level > y.level;
            };
            std::priority_queue<Node, std::vector<Node>, decltype(later)> open(later);
            open.push({bound, 0, std::move(all)});
            Candidates kept;
            while (!open.empty()) {
              // top() is const; the node is popped right after.
              Node node = std::move(const_cast<Node&>(open.top()));
              open.pop();
              if (filter(node.box, cache->balls, node.cand, kept)) continue;
              if (node.level == n) return node.box.center();
              for (auto& kid : box_subdivide(node.box, 1)) open.push({std::move(kid), node.level + 1, kept});
            }
            throw ContractViolation("lexmin_naive_point: exclusions discard the whole bound");
          }};
}

// ---------------------------------------------------------------- projection

UpperName project_axis(const UpperName& a, std::size_t axis, Fuel fuel) {
  const Box bound = a.require_bound("project_axis");
  if (axis >= a.dim) throw std::invalid_argument("project_axis: axis out of range");
  const Box line(Point{bound.lo[axis]}, Point{bound.hi[axis]});
  struct Slab {
    Candidates cand;
    bool covered = false;
  };
  struct State {
    std::mutex lock;
    std::optional<std::vector<Ball>> balls;
    std::map<std::pair<unsigned, std::uint64_t>, Slab> slabs;
  };
  auto st = std::make_shared<State>();
  const CoverBudget budget{64, std::max<std::uint64_t>(fuel.budget, 1)};

  // Slab state of a grid cell, derived from its parent's candidates.
  auto slab_of = [a, axis, bound, line, budget, fuel, st](unsigned level, std::uint64_t number) {
    if (!st->balls) st->balls = prefix(a.excluded, fuel.budget);
    const auto& balls = *st->balls;
    std::vector<std::pair<unsigned, std::uint64_t>> path;
    for (unsigned l = level;; --l) {
      const auto key = std::make_pair(l, number >> (level - l));
      if (st->slabs.count(key)) break;
      path.push_back(key);
      if (l == 0) break;
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      const auto [l, num] = *it;
      Slab s;
      const Slab* parent = l == 0 ? nullptr : &st->slabs.at({l - 1, num >> 1});
      if (parent && parent->covered) {
        s.covered = true;
      } else {
        const Box cell = dyadic_cell(line, l, num);
        const Box region = with_axis(bound, axis, cell.lo[0], cell.hi[0]);
        const Candidates from = parent ? parent->cand : all_of(balls);
        if (filter(region, balls, from, s.cand)) {
          s.covered = true;
          s.cand.clear();
        } else {
          std::vector<Ball> near;
          for (auto i : s.cand) near.push_back(balls[i]);
          s.covered = cover_box(region, near, budget) == CoverResult::Covered;
        }
      }
      st->slabs.emplace(*it, std::move(s));
    }
    return st->slabs.at({level, number}).covered;
  };

  return {1,
          [line, slab_of, st](Index i) -> std::optional<Ball> {
            const auto pos = grid_position(1, i);
            std::lock_guard guard(st->lock);
            if (!slab_of(pos.level, pos.number)) return std::nullopt;
            const Box cell = dyadic_cell(line, pos.level, pos.number);
            return closed_interval(cell.lo[0], cell.hi[0]);
          },
          line};
}

UpperName project_last_axis(const UpperName& a, Fuel fuel) {
  if (a.dim < 2) throw std::invalid_argument("project_last_axis: dimension must be at least 2");
  return project_axis(a, a.dim - 1, fuel);
}

// ---------------------------------------------------------------- interval

std::optional<FoundPoint> interval_point(const UpperName& a, Index n, Fuel fuel) {
  const Box& bound = a.require_bound("interval_point");
  if (a.dim != 1) throw std::invalid_argument("interval_point: dimension must be 1");
  const auto pieces = surviving_pieces(bound.lo[0], bound.hi[0], prefix(a.excluded, fuel.budget));
  if (pieces.empty()) throw ContractViolation("interval_point: exclusions discard the whole bound");
  const Rational width = pow2(1 - static_cast<long>(n));
  return decide(pieces, width, width);
}

// ---------------------------------------------------------------- convex

namespace {

// Halves the axes wider than half the widest one.
std::vector<Box> split_wide(const Box& box) {
  Rational widest = 0;
  for (std::size_t i = 0; i < box.dim(); ++i) widest = std::max(widest, box.width(i));
  std::vector<Box> out{box};
  for (std::size_t i = 0; i < box.dim(); ++i) {
    if (2 * box.width(i) <= widest) continue;
    std::vector<Box> next;
    for (const auto& b : out) {
      const Rational mid = (b.lo[i] + b.hi[i]) / 2;
      next.push_back(with_axis(b, i, b.lo[i], mid));
      next.push_back(with_axis(b, i, mid, b.hi[i]));
    }
    out = std::move(next);
  }
  return out;
}

struct Survivor {
  Box box;
  Candidates cand;
};

// Merged axis extents of the survivors.
std::vector<std::pair<Rational, Rational>> shadow_pieces(const std::vector<Survivor>& cells, std::size_t axis) {
  std::vector<std::pair<Rational, Rational>> ext;
  for (const auto& c : cells) ext.emplace_back(c.box.lo[axis], c.box.hi[axis]);
  std::sort(ext.begin(), ext.end());
  std::vector<std::pair<Rational, Rational>> out;
  for (auto& e : ext) {
    if (!out.empty() && e.first <= out.back().second) {
      out.back().second = std::max(out.back().second, e.second);
    } else {
      out.push_back(std::move(e));
    }
  }
  return out;
}

// A point of the shadow of A inside `region` on `axis` at precision m.
// Survivors are refined until the shadow is certified narrow, or its longest
// piece exceeds 2^(1-m) by four cell widths, or the work cap is reached.
std::optional<FoundPoint> shadow_point(const Box& region, const std::vector<Ball>& balls, std::size_t axis,
                                       Index m, std::uint64_t cap) {
  const Rational width = pow2(1 - static_cast<long>(m));
  // Balls this small only discharge cells finer than the refinement needs;
  // leaving them out can only enlarge the shadow.
  const Rational tiny = pow2(neg(m) - 4);
  Candidates usable;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (balls[i].radius >= tiny) usable.push_back(static_cast<std::uint32_t>(i));
  }
  std::vector<Survivor> cells;
  {
    Survivor root{region, {}};
    if (!filter(region, balls, usable, root.cand)) cells.push_back(std::move(root));
  }
  std::uint64_t work = 0;
  for (unsigned level = 0;; ++level) {
    if (cells.empty()) return std::nullopt;
    const auto pieces = shadow_pieces(cells, axis);
    Rational side = 0;
    for (const auto& c : cells) side = std::max(side, c.box.width(axis));
    if (auto p = decide(pieces, width, width + 4 * side)) return p;
    std::vector<Survivor> next;
    for (const auto& c : cells) {
      for (auto& kid : split_wide(c.box)) {
        if (++work > cap) return decide(pieces, width, width);
        Survivor s{std::move(kid), {}};
        if (!filter(s.box, balls, c.cand, s.cand)) next.push_back(std::move(s));
      }
    }
    cells = std::move(next);
  }
}

}  // namespace

std::optional<FoundPoint> convex_point(const UpperName& a, Index n, Fuel fuel) {
  const Box bound = a.require_bound("convex_point");
  if (a.dim == 1) return interval_point(a, n, fuel);
  const Rational half = pow2(neg(n) - 2);
  const auto balls = prefix(a.excluded, fuel.budget);
  const std::uint64_t cap = std::max<std::uint64_t>(fuel.budget, 1) << a.dim;
  Box region = bound;
  std::vector<Rational> coords(a.dim);
  bool certified = true;
  for (std::size_t k = a.dim; k-- > 0;) {
    const auto t = shadow_point(region, balls, k, n + 2, cap);
    if (!t) return std::nullopt;
    certified = certified && t->certified;
    coords[k] = t->point[0];
    region = with_axis(region, k, std::max(bound.lo[k], Rational(coords[k] - half)),
                       std::min(bound.hi[k], Rational(coords[k] + half)));
  }
  return FoundPoint{Point(std::move(coords)), certified, "convex"};
}

// ---------------------------------------------------------------- star

Rational half_angle_sine_lower(const Rational& alpha) {
  static const std::vector<std::pair<long, Rational>> table{
      {180, Rational(1)},      {90, Rational(7, 10)},   {60, Rational(1, 2)},
      {45, Rational(19, 50)},  {30, Rational(129, 500)}, {15, Rational(13, 100)}};
  for (const auto& [deg, s] : table) {
    if (alpha >= deg) return s;
  }
  throw std::invalid_argument("half_angle_sine_lower: angle below 15 degrees");
}

namespace {

// A rational whose closed `margin` ball meets none of the balls, searched
// over centres of level-`level` cells in lexicographic order.
std::optional<Point> clear_point(const Box& bound, const std::vector<Ball>& balls, const Rational& margin,
                                 Index level, std::uint64_t node_cap) {
  std::vector<Ball> grown;
  for (const auto& b : balls) grown.push_back(closed_ball(b.center, b.radius + margin));
  struct Frame {
    Box box;
    Index level;
    Candidates cand;
  };
  std::vector<Frame> stack{{bound, 0, all_of(grown)}};
  std::uint64_t nodes = 0;
  Candidates kept;
  while (!stack.empty() && nodes++ < node_cap) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (filter(f.box, grown, f.cand, kept)) continue;
    if (f.level == level) {
      const Point c = f.box.center();
      if (std::none_of(kept.begin(), kept.end(), [&](auto i) { return contains(grown[i], c); })) return c;
      continue;
    }
    auto kids = box_subdivide(f.box, 1);
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({std::move(*it), f.level + 1, kept});
  }
  return std::nullopt;
}

// Interior branch: the clear point of largest dyadic margin, from 2^-n up.
std::optional<FoundPoint> interior_branch(const UpperName& a, Index n, Fuel fuel) {
  const Box& bound = a.require_bound("star_point_2d");
  const auto balls = prefix(a.excluded, fuel.budget);
  Rational widest = 0;
  for (std::size_t i = 0; i < a.dim; ++i) widest = std::max(widest, bound.width(i));
  const std::uint64_t cap = std::max<std::uint64_t>(fuel.budget, 1) << a.dim;
  std::optional<Point> best;
  for (Rational margin = pow2(neg(n)); margin <= widest; margin *= 2) {
    auto p = clear_point(bound, balls, margin, n + 1, cap);
    if (!p) break;
    best = std::move(p);
  }
  if (!best) return std::nullopt;
  return FoundPoint{std::move(*best), false, "interior"};
}

std::vector<Point> component_centres(const BallStream& u, const Point& handle, Fuel fuel) {
  const auto comp = open_component(u, FastCauchyName::constant(handle), fuel);
  std::vector<Point> out;
  for (Index i : comp.indices) out.push_back(u.next(i)->center);
  return out;
}

const Point& nearest(const std::vector<Point>& pts, const Point& to) {
  const Point* best = &pts.front();
  Rational d = dist2(*best, to);
  for (const auto& p : pts) {
    const Rational e = dist2(p, to);
    if (e < d) {
      d = e;
      best = &p;
    }
  }
  return *best;
}

// Component branch: alternate nearest-centre steps between the two handle
// components while |x - y| shrinks.
std::optional<FoundPoint> component_branch(const UpperName& a, Index n, const StarHints& h, Fuel fuel,
                                           std::vector<StarEstimate>& estimates) {
  const Box& q = h.square;
  std::vector<Ball> inside;
  for (const auto& b : prefix(a.excluded, fuel.budget)) {
    bool in = true;
    for (std::size_t i = 0; i < 2; ++i) {
      if (b.center[i] - b.radius < q.lo[i] || b.center[i] + b.radius > q.hi[i]) in = false;
    }
    if (in) inside.push_back(open_ball(b.center, b.radius));
  }
  const auto u = BallStream::of(2, inside);
  const Fuel f{std::max<std::uint64_t>(inside.size(), 1)};
  const auto xs = component_centres(u, h.handle_x, f);
  const auto ys = component_centres(u, h.handle_y, f);
  if (xs.empty() || ys.empty()) return std::nullopt;
  const Rational s = half_angle_sine_lower(h.alpha);
  const Rational target = 2 * s * pow2(neg(n));
  Point x = xs.front();
  Point y = nearest(ys, x);
  std::optional<Rational> last;
  while (true) {
    const Rational d2 = dist2(x, y);
    if (last && !(d2 < *last)) break;
    last = d2;
    estimates.push_back({x, y, midpoint(x, y)});
    if (d2 <= target * target) return FoundPoint{midpoint(x, y), true, "components"};
    Point nx = nearest(xs, y);
    Point ny = nearest(ys, nx);
    if (!(dist2(nx, ny) < d2)) break;
    x = std::move(nx);
    y = std::move(ny);
  }
  return std::nullopt;
}

}  // namespace

StarSearch star_point_2d(const UpperName& a, Index n, const std::optional<StarHints>& hints, Fuel fuel) {
  a.require_bound("star_point_2d");
  if (a.dim != 2) throw std::invalid_argument("star_point_2d: dimension must be 2");
  StarSearch out;
  if (hints) {
    require_same_dim(2, hints->square.dim());
    out.found = component_branch(a, n, *hints, fuel, out.estimates);
    if (out.found) return out;
  }
  out.found = interior_branch(a, n, fuel);
  if (out.found) return out;
  out.found = convex_point(a, n, fuel);
  return out;
}

}  // namespace cresets
