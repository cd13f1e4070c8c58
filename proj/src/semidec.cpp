// SPDX-License-Identifier: Apache-2.0

#include "cresets/semidec.hpp"

#include <algorithm>

namespace cresets {

namespace {

long neg(Index k) { return -static_cast<long>(k); }

}  // namespace

Verdict semi_member(const BallStream& u, const FastCauchyName& x, Fuel fuel) {
  require_same_dim(u.dim, x.dim);
  for (Index t = 0; t < fuel.budget; ++t) {
    const auto [n, k] = cantor_unpair(t);
    const auto ball = u.next(n);
    if (!ball) continue;
    require_same_dim(u.dim, ball->dim());
    const Rational eps = pow2(neg(k));
    if (ball->radius <= eps) continue;
    const Rational slack = ball->radius - eps;
    if (dist2(query(x, k), ball->center) < slack * slack) {
      Witness w;
      w.indices = {n, k};
      w.balls = {*ball};
      return Verdict::yes(std::move(w));
    }
  }
  return Verdict::unknown();
}

Verdict semi_neq(const FastCauchyName& x, const FastCauchyName& y, Fuel fuel) {
  require_same_dim(x.dim, y.dim);
  for (Index k = 0; k <= fuel.budget; ++k) {
    const Rational gap = pow2(1 - static_cast<long>(k));
    const Point qx = query(x, k);
    const Point qy = query(y, k);
    if (dist2(qx, qy) > gap * gap) {
      Witness w;
      w.indices = {k};
      w.points = {qx, qy};
      return Verdict::yes(std::move(w));
    }
  }
  return Verdict::unknown();
}

Verdict semi_not_in(const UpperName& a, const FastCauchyName& x, Fuel fuel) {
  require_same_dim(a.dim, x.dim);
  std::vector<Point> approx;
  for (Index n = 0; n < fuel.budget; ++n) {
    const auto ball = a.excluded(n);
    if (!ball) continue;
    for (Index k = 0; k < fuel.budget; ++k) {
      if (approx.size() <= k) approx.push_back(query(x, k));
      const Rational eps = pow2(neg(k));
      const Rational d2 = dist2(approx[k], ball->center);
      // x lies outside the closed ball; no finer approximation helps.
      const Rational reach = ball->radius + eps;
      if (d2 > reach * reach) break;
      const Rational slack = ball->radius - eps;
      if (slack < 0) continue;
      if (d2 <= slack * slack) {
        Witness w;
        w.indices = {n, k};
        w.balls = {*ball};
        return Verdict::yes(std::move(w));
      }
    }
  }
  return Verdict::unknown();
}

std::vector<std::size_t> balls_meeting(const Box& box, std::span<const Ball> balls) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (meets(balls[i], box)) out.push_back(i);
  }
  return out;
}

CoverResult cover_box(const Box& box, std::span<const Ball> balls, CoverBudget budget,
                      std::uint64_t* nodes_used) {
  struct Frame {
    Box box;
    unsigned depth;
    std::vector<std::size_t> candidates;
  };
  std::vector<std::size_t> all(balls.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<Frame> stack;
  stack.push_back({box, 0, std::move(all)});
  std::uint64_t nodes = 0;
  CoverResult result = CoverResult::Covered;
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (nodes >= budget.max_nodes) {
      result = CoverResult::Exhausted;
      break;
    }
    ++nodes;
    std::vector<std::size_t> cand;
    bool discharged = false;
    for (std::size_t i : f.candidates) {
      const Ball& b = balls[i];
      if (!meets(b, f.box)) continue;
      if (contains(b, f.box)) {
        discharged = true;
        break;
      }
      cand.push_back(i);
    }
    if (discharged) continue;
    if (cand.empty()) {
      result = CoverResult::Uncovered;
      break;
    }
    if (f.depth >= budget.max_depth) {
      result = CoverResult::Exhausted;
      break;
    }
    auto kids = box_subdivide(f.box, 1);
    // Reverse push keeps the traversal in lexicographic order.
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      stack.push_back({std::move(*it), f.depth + 1, cand});
    }
  }
  if (nodes_used) *nodes_used = nodes;
  return result;
}

Verdict semi_subset_cover(const UpperName& a, std::span<const Ball> cover, Fuel fuel) {
  const Box& bound = a.require_bound("semi_subset_cover");
  std::vector<Ball> balls;
  for (const auto& b : cover) {
    require_same_dim(a.dim, b.dim());
    balls.push_back(b);
  }
  auto excl = prefix(a.excluded, fuel.budget);
  balls.insert(balls.end(), excl.begin(), excl.end());
  const CoverBudget budget{static_cast<unsigned>(std::min<std::uint64_t>(fuel.budget, 60)),
                           std::max<std::uint64_t>(fuel.budget, 1) << a.dim};
  std::uint64_t nodes = 0;
  if (cover_box(bound, balls, budget, &nodes) == CoverResult::Covered) {
    Witness w;
    w.indices = {nodes};
    return Verdict::yes(std::move(w));
  }
  return Verdict::unknown();
}

}  // namespace cresets
