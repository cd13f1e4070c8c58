// SPDX-License-Identifier: Apache-2.0

#include "cresets/names.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cresets {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "Yes";
    case Outcome::No: return "No";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

Index cantor_pair(Index a, Index b) {
  const Index s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Index, Index> cantor_unpair(Index t) {
  // Largest w with w(w+1)/2 <= t; the floating estimate is corrected.
  auto w = static_cast<Index>((std::sqrt(8.0L * static_cast<long double>(t) + 1) - 1) / 2);
  while (w * (w + 1) / 2 > t) --w;
  while ((w + 1) * (w + 2) / 2 <= t) ++w;
  const Index b = t - w * (w + 1) / 2;
  return {w - b, b};
}

FastCauchyName FastCauchyName::constant(Point p) {
  const std::size_t d = p.dim();
  return {d, [p = std::move(p)](Index) { return p; }};
}

BallStream BallStream::of(std::size_t dim, std::vector<Ball> balls) {
  for (const auto& b : balls) require_same_dim(dim, b.dim());
  auto shared = std::make_shared<const std::vector<Ball>>(std::move(balls));
  return {dim, [shared](Index i) -> std::optional<Ball> {
            if (i < shared->size()) return (*shared)[i];
            return std::nullopt;
          }};
}

LowerName LowerName::cycle(std::size_t dim, std::vector<Point> points) {
  for (const auto& p : points) require_same_dim(dim, p.dim());
  auto shared = std::make_shared<const std::vector<Point>>(std::move(points));
  return {dim, [shared](Index i) -> std::optional<Point> {
            if (shared->empty()) return std::nullopt;
            return (*shared)[i % shared->size()];
          }};
}

const Box& UpperName::require_bound(const char* op) const {
  if (!bound) throw std::invalid_argument(std::string(op) + ": upper name carries no bound");
  require_same_dim(dim, bound->dim());
  return *bound;
}

Point query(const FastCauchyName& name, Index n) {
  Point p = name.approx(n);
  if (p.dim() != name.dim) {
    throw ContractViolation("fast Cauchy name produced a point of dimension " +
                            std::to_string(p.dim()) + ", declared " + std::to_string(name.dim));
  }
  return p;
}

Verdict validate_fast_cauchy(const FastCauchyName& name, Index depth) {
  std::vector<Point> pts;
  pts.reserve(depth + 1);
  for (Index n = 0; n <= depth; ++n) pts.push_back(query(name, n));
  for (Index n = 0; n <= depth; ++n) {
    for (Index m = n + 1; m <= depth; ++m) {
      const Rational bound = pow2(-static_cast<long>(n)) + pow2(-static_cast<long>(m));
      if (dist2(pts[n], pts[m]) > bound * bound) {
        Witness w;
        w.indices = {n, m};
        w.points = {pts[n], pts[m]};
        return Verdict::no(std::move(w));
      }
    }
  }
  return Verdict::yes();
}

std::vector<Ball> prefix(const Stream<Ball>& stream, Index count) {
  std::vector<Ball> out;
  for (Index i = 0; i < count; ++i) {
    if (auto b = stream(i)) out.push_back(std::move(*b));
  }
  return out;
}

UpperName merge_exclusions(const UpperName& a, Stream<Ball> extra) {
  return {a.dim, interleave<Ball>({a.excluded, std::move(extra)}), a.bound};
}

UpperName restrict_bound(const UpperName& a, const Box& bound) {
  require_same_dim(a.dim, bound.dim());
  return {a.dim, a.excluded, bound};
}

}  // namespace cresets
