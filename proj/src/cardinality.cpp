// SPDX-License-Identifier: Apache-2.0

#include "cresets/cardinality.hpp"

#include "cresets/semidec.hpp"

#include <algorithm>
#include <mutex>

namespace cresets {

namespace {

struct Cell {
  Box box;
  std::vector<std::size_t> candidates;
};

// One subdivision round over the survivors. Returns false when the work cap
// is hit.
bool refine(std::vector<Cell>& cells, const std::vector<Ball>& balls, std::uint64_t& work,
            std::uint64_t cap) {
  std::vector<Cell> next;
  for (const auto& cell : cells) {
    for (auto& kid : box_subdivide(cell.box, 1)) {
      if (++work > cap) return false;
      std::vector<std::size_t> cand;
      bool dropped = false;
      for (std::size_t i : cell.candidates) {
        if (!meets(balls[i], kid)) continue;
        if (contains(balls[i], kid)) {
          dropped = true;
          break;
        }
        cand.push_back(i);
      }
      if (!dropped) next.push_back({std::move(kid), std::move(cand)});
    }
  }
  cells = std::move(next);
  return true;
}

Box hull_of(const std::vector<Cell>& cells, std::size_t from, std::size_t to) {
  Box h = cells[from].box;
  for (std::size_t i = from + 1; i < to; ++i) h = hull(h, cells[i].box);
  return h;
}

std::vector<Cell> initial_cells(const UpperName& a, const char* op, Fuel fuel,
                                std::vector<Ball>& balls) {
  const Box& bound = a.require_bound(op);
  balls = prefix(a.excluded, fuel.budget);
  std::vector<std::size_t> all(balls.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  for (const auto& b : balls) {
    if (contains(b, bound)) return {};
  }
  return {Cell{bound, std::move(all)}};
}

std::uint64_t work_cap(Fuel fuel, std::size_t dim) {
  return std::max<std::uint64_t>(fuel.budget, 1) << std::min<std::size_t>(dim, 20);
}

}  // namespace

std::optional<Point> singleton_point(const UpperName& a, Index n, Fuel fuel) {
  std::vector<Ball> balls;
  auto cells = initial_cells(a, "singleton_point", fuel, balls);
  const Rational target = pow2(-2 * static_cast<long>(n));
  std::uint64_t work = 0;
  const std::uint64_t cap = work_cap(fuel, a.dim);
  while (true) {
    if (cells.empty()) throw ContractViolation("singleton_point: exclusions discard the whole bound");
    const Box h = hull_of(cells, 0, cells.size());
    if (h.half_diag2() <= target) return h.center();
    if (!refine(cells, balls, work, cap)) return std::nullopt;
  }
}

FastCauchyName singleton_from_upper(const UpperName& a) {
  a.require_bound("singleton_from_upper");
  return {a.dim, [a](Index n) {
            for (std::uint64_t f = 64;; f *= 2) {
              if (auto p = singleton_point(a, n, Fuel{f})) return *p;
            }
          }};
}

std::optional<FiniteTupleName> finite_points_from_lower(const LowerName& a, std::size_t n,
                                                        Fuel fuel) {
  if (n == 0) throw std::invalid_argument("finite_points_from_lower: N must be >= 1");
  std::vector<FastCauchyName> chosen;
  for (Index i = 0; i < fuel.budget && chosen.size() < n; ++i) {
    const auto p = a.points(i);
    if (!p) continue;
    require_same_dim(a.dim, p->dim());
    const auto name = FastCauchyName::constant(*p);
    const bool distinct = std::all_of(chosen.begin(), chosen.end(), [&](const FastCauchyName& c) {
      return semi_neq(name, c, fuel).is_yes();
    });
    if (distinct) chosen.push_back(name);
  }
  if (chosen.size() < n) return std::nullopt;
  return FiniteTupleName{std::move(chosen)};
}

FiniteNames finite_points_to_names(const FiniteTupleName& pts, const Box& bound) {
  const std::size_t d = bound.dim();
  for (const auto& m : pts.members) require_same_dim(d, m.dim);
  auto members = std::make_shared<const std::vector<FastCauchyName>>(pts.members);
  LowerName lower{d, [members](Index i) -> std::optional<Point> {
                    if (members->empty()) return std::nullopt;
                    return query((*members)[i % members->size()], i / members->size());
                  }};
  UpperName upper{d,
                  [members, bound](Index i) -> std::optional<Ball> {
                    const auto [k, j] = cantor_unpair(i);
                    if (k * bound.dim() >= 63 || j >= (Index(1) << (k * bound.dim()))) {
                      return std::nullopt;
                    }
                    Ball ball = covering_ball(dyadic_cell(bound, static_cast<unsigned>(k), j));
                    const Rational reach = ball.radius + pow2(1 - static_cast<long>(k));
                    for (const auto& m : *members) {
                      if (dist2(query(m, k), ball.center) <= reach * reach) return std::nullopt;
                    }
                    return ball;
                  },
                  bound};
  return {std::move(lower), std::move(upper)};
}

FiniteNames finite_points_to_names(const FiniteTupleName& pts) {
  if (pts.members.empty()) {
    throw std::invalid_argument("finite_points_to_names: empty tuple needs an explicit bound");
  }
  return finite_points_to_names(pts, Box::unit(pts.members.front().dim));
}

std::optional<std::vector<Isolated>> finite_isolate(const UpperName& a, std::size_t n, Fuel fuel) {
  if (n == 0) throw std::invalid_argument("finite_isolate: N must be >= 1");
  std::vector<Ball> balls;
  auto cells = initial_cells(a, "finite_isolate", fuel, balls);
  std::uint64_t work = 0;
  const std::uint64_t cap = work_cap(fuel, a.dim);
  while (true) {
    if (cells.empty()) throw ContractViolation("finite_isolate: exclusions discard the whole bound");
    // Union-find over touching survivors.
    std::vector<std::size_t> parent(cells.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t i = 0; i < cells.size(); ++i) {
      for (std::size_t j = i + 1; j < cells.size(); ++j) {
        if (boxes_touch(cells[i].box, cells[j].box)) parent[find(i)] = find(j);
      }
    }
    std::vector<std::size_t> roots;
    std::vector<Box> hulls;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::size_t r = find(i);
      auto it = std::find(roots.begin(), roots.end(), r);
      if (it == roots.end()) {
        roots.push_back(r);
        hulls.push_back(cells[i].box);
      } else {
        auto& h = hulls[static_cast<std::size_t>(it - roots.begin())];
        h = hull(h, cells[i].box);
      }
    }
    bool separated = hulls.size() == n;
    for (std::size_t i = 0; separated && i < hulls.size(); ++i) {
      for (std::size_t j = i + 1; j < hulls.size(); ++j) {
        if (boxes_touch(hulls[i], hulls[j])) separated = false;
      }
    }
    if (separated) {
      std::vector<Isolated> out;
      for (const auto& h : hulls) out.push_back({h, restrict_bound(a, h)});
      return out;
    }
    if (!refine(cells, balls, work, cap)) return std::nullopt;
  }
}

namespace {

struct Phases {
  NameFamily xs;
  std::mutex lock;
  std::vector<Index> chosen;
  std::vector<std::optional<Index>> adopted;  // per completed phase
};

std::optional<Index> phase_result(Phases& st, Index p) {
  std::lock_guard guard(st.lock);
  while (st.adopted.size() <= p) {
    const Index phase = st.adopted.size();
    const Rational gap = 2 * pow2(-static_cast<long>(phase));
    std::vector<Point> anchors;
    for (Index m : st.chosen) anchors.push_back(query(st.xs(m), phase));
    std::optional<Index> pick;
    for (Index cand = 0; cand <= phase && !pick; ++cand) {
      if (std::find(st.chosen.begin(), st.chosen.end(), cand) != st.chosen.end()) continue;
      const Point q = query(st.xs(cand), phase);
      const bool apart = std::all_of(anchors.begin(), anchors.end(),
                                     [&](const Point& c) { return dist2(c, q) > gap * gap; });
      if (apart) pick = cand;
    }
    if (pick) st.chosen.push_back(*pick);
    st.adopted.push_back(pick);
  }
  return st.adopted[p];
}

}  // namespace

Stream<Index> distinct_indices(NameFamily xs) {
  auto st = std::make_shared<Phases>();
  st->xs = std::move(xs);
  return [st](Index p) { return phase_result(*st, p); };
}

Stream<FastCauchyName> distinct_extraction(NameFamily xs) {
  auto idx = distinct_indices(xs);
  return [idx, xs](Index p) -> std::optional<FastCauchyName> {
    if (auto m = idx(p)) return xs(*m);
    return std::nullopt;
  };
}

}  // namespace cresets
