// SPDX-License-Identifier: Apache-2.0

#include "cresets/constructions.hpp"

#include <algorithm>
#include <stdexcept>

namespace cresets {

namespace {

long neg(std::uint64_t k) { return -static_cast<long>(k); }

Rational weight(std::size_t e) { return pow2(-static_cast<long>(e) - 1); }

}  // namespace

MachineTable::MachineTable(std::vector<std::optional<std::uint64_t>> steps)
    : steps_(std::move(steps)) {
  for (std::size_t e = 0; e < steps_.size(); ++e) {
    if (steps_[e] && *steps_[e] == 0) {
      throw std::invalid_argument("machine " + std::to_string(e) + ": halting step must be >= 1");
    }
  }
}

std::optional<std::uint64_t> MachineTable::steps(std::size_t e) const {
  if (e >= steps_.size()) {
    throw std::out_of_range("machine index " + std::to_string(e) + " outside table of size " +
                            std::to_string(steps_.size()));
  }
  return steps_[e];
}

std::uint64_t MachineTable::max_finite() const {
  std::uint64_t best = 0;
  for (const auto& s : steps_) {
    if (s) best = std::max(best, *s);
  }
  return best;
}

HaltStatus bounded_halting(const MachineTable& t, std::size_t e, std::uint64_t budget) {
  const auto n = t.steps(e);
  return n && *n <= budget ? HaltStatus::Halted : HaltStatus::NotYet;
}

Rational specker_partial(const MachineTable& t, std::uint64_t m) {
  Rational sum = 0;
  for (std::size_t e = 0; e < t.size(); ++e) {
    if (bounded_halting(t, e, m) == HaltStatus::Halted) sum += weight(e);
  }
  return sum;
}

Rational specker_limit(const MachineTable& t) { return specker_partial(t, t.max_finite()); }

NaiveName specker(const MachineTable& t) {
  return {1, [t](Index m) { return Point{specker_partial(t, m)}; }};
}

Rational singular_radius(const Rational& eps, Index m) { return eps * pow2(neg(m) - 2); }

BallStream singular_cover(PointFamily xs, Rational eps) {
  if (eps <= 0) throw std::invalid_argument("singular_cover: eps must be positive");
  return {1, [xs = std::move(xs), eps](Index m) -> std::optional<Ball> {
            const Rational target = eps * pow2(neg(m) - 3);
            Index k = 0;
            while (pow2(neg(k)) > target) ++k;
            const FastCauchyName x = xs(m);
            require_same_dim(1, x.dim);
            return open_ball(query(x, k), singular_radius(eps, m));
          }};
}

FastCauchyName cantor_embed(std::function<bool(Index)> bits) {
  return {1, [bits = std::move(bits)](Index k) {
            // T terms leave a tail of at most 3^-T <= 2^-k.
            const Integer goal = Integer(1) << k;
            Integer three_t = 1;
            Rational sum = 0;
            Rational scale = Rational(2, 3);
            for (Index n = 0; three_t < goal; ++n) {
              if (bits(n)) sum += scale;
              scale /= 3;
              three_t *= 3;
            }
            return Point{sum};
          }};
}

const char* to_string(GadgetKind k) {
  switch (k) {
    case GadgetKind::IntervalLower: return "interval-lower";
    case GadgetKind::IntervalUpper: return "interval-upper";
    case GadgetKind::CountableB: return "countable-b";
    case GadgetKind::Comb2D: return "comb2d";
  }
  return "?";
}

std::optional<GadgetKind> parse_gadget_kind(std::string_view text) {
  for (auto k : {GadgetKind::IntervalLower, GadgetKind::IntervalUpper, GadgetKind::CountableB,
                 GadgetKind::Comb2D}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

LowerName interval_lower(const MachineTable& t) {
  return {1, [t](Index i) -> std::optional<Point> {
            const auto [m, j] = cantor_unpair(i);
            const Rational q = Rational(Integer(j)) * pow2(neg(m));
            if (q > specker_partial(t, m)) return std::nullopt;
            return Point{q};
          }};
}

UpperName interval_upper(const MachineTable& t) {
  // Entry m reflects stage m + 1 of the table.
  return {1,
          [t](Index m) -> std::optional<Ball> {
            const Rational right = specker_partial(t, m + 1) - pow2(neg(m + 1));
            return closed_interval(-1, right);
          },
          Box::unit(1)};
}

namespace {

struct Gap {
  Rational lo, hi;
  std::optional<std::size_t> gated_by;
};

// Open gaps of B in [0, 1]: g = 0 right of 1/2, g = 1 below the table,
// then per machine e the permanent gap and the one opened when e halts.
std::optional<Gap> countable_gap(const MachineTable& t, Index g) {
  const auto n = static_cast<long>(t.size());
  if (g == 0) return Gap{Rational(1, 2), Rational(3, 2), std::nullopt};
  if (g == 1) return Gap{0, pow2(-n - 1), std::nullopt};
  const Index e = (g - 2) / 2;
  if (e >= t.size()) return std::nullopt;
  const long le = static_cast<long>(e);
  if (g % 2 == 0) return Gap{pow2(-le - 2), pow2(-le - 1), std::nullopt};
  return Gap{pow2(-le - 2), 3 * pow2(-le - 2), e};
}

}  // namespace

UpperName countable_b(const MachineTable& t) {
  return {1,
          [t](Index i) -> std::optional<Ball> {
            const auto [g, k] = cantor_unpair(i);
            const auto gap = countable_gap(t, g);
            if (!gap) return std::nullopt;
            if (gap->gated_by && bounded_halting(t, *gap->gated_by, i + 1) != HaltStatus::Halted) {
              return std::nullopt;
            }
            const Rational inset = (gap->hi - gap->lo) * pow2(neg(k) - 2);
            return closed_interval(gap->lo + inset, gap->hi - inset);
          },
          Box::unit(1)};
}

namespace {

Rational tooth_height(const MachineTable& t, std::size_t e, std::uint64_t stage) {
  if (bounded_halting(t, e, stage) == HaltStatus::Halted) {
    return -pow2(-static_cast<long>(*t.steps(e)));
  }
  return 0;
}

Shape comb_shape_at(const MachineTable& t, std::uint64_t stage) {
  const Rational width{Integer(t.size())};
  std::vector<Shape> parts{segment_shape(Point{0, -1}, Point{width, -1})};
  for (std::size_t e = 0; e < t.size(); ++e) {
    const Rational x{Integer(e)};
    parts.push_back(segment_shape(Point{x, -1}, Point{x, tooth_height(t, e, stage)}));
  }
  return union_shape(std::move(parts));
}

Box comb_bound(const MachineTable& t) {
  return Box(Point{-1, -1}, Point{Rational(Integer(t.size())), 1});
}

}  // namespace

UpperName comb2d(const MachineTable& t) {
  const Box bound = comb_bound(t);
  return {2,
          [t, bound](Index i) -> std::optional<Ball> {
            const std::uint64_t stage = i + 1;
            for (std::size_t e = 0; e < t.size(); ++e) {
              const auto n = t.steps(e);
              if (n && *n == stage) {
                return closed_ball(Point{Rational(Integer(e)), 0},
                                   pow2(-static_cast<long>(*n) - 1));
              }
            }
            const auto pos = grid_position(2, i);
            Ball ball = covering_ball(dyadic_cell(bound, pos.level, pos.number));
            if (comb_shape_at(t, stage).within(ball.center, ball.radius)) return std::nullopt;
            return ball;
          },
          bound};
}

std::variant<LowerName, UpperName> halting_gadget(GadgetKind kind, const MachineTable& t) {
  switch (kind) {
    case GadgetKind::IntervalLower: return interval_lower(t);
    case GadgetKind::IntervalUpper: return interval_upper(t);
    case GadgetKind::CountableB: return countable_b(t);
    case GadgetKind::Comb2D: return comb2d(t);
  }
  throw std::invalid_argument("unknown gadget kind");
}

Shape gadget_shape(GadgetKind kind, const MachineTable& t) {
  const Rational x = specker_limit(t);
  switch (kind) {
    case GadgetKind::IntervalLower: return box_shape(Box(Point{0}, Point{x}));
    case GadgetKind::IntervalUpper: return box_shape(Box(Point{x}, Point{1}));
    case GadgetKind::CountableB: {
      std::vector<Point> pts{Point{0}};
      for (std::size_t e = 0; e < t.size(); ++e) {
        if (!t.steps(e)) pts.push_back(Point{weight(e)});
      }
      return points_shape(std::move(pts));
    }
    case GadgetKind::Comb2D: return comb_shape_at(t, t.max_finite());
  }
  throw std::invalid_argument("unknown gadget kind");
}

Box gadget_bound(GadgetKind kind, const MachineTable& t) {
  return kind == GadgetKind::Comb2D ? comb_bound(t) : Box::unit(1);
}

}  // namespace cresets
