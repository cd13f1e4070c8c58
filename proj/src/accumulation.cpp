// SPDX-License-Identifier: Apache-2.0

#include "cresets/accumulation.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace cresets {

namespace {

long neg(Index k) { return -static_cast<long>(k); }

Rational lower_end(const Ball& b) { return b.center[0] - b.radius; }
Rational upper_end(const Ball& b) { return b.center[0] + b.radius; }

}  // namespace

Ball canonical_interval(Index i) {
  for (long level = 0;; ++level) {
    const Index count = (Index(1) << level) + 3;
    if (i >= count) {
      i -= count;
      continue;
    }
    if (i == 0) return open_interval(-level - 1, 0);
    if (i == count - 1) return open_interval(1, level + 2);
    const Rational j{Integer(i - 1)};
    const Rational w = pow2(-level);
    return open_interval((j - 1) * w, (j + 1) * w);
  }
}

Rational canonical_rational(Index k) {
  static std::mutex lock;
  static std::vector<Rational> table{Rational(0), Rational(1)};
  static unsigned long next_den = 2;
  std::lock_guard guard(lock);
  while (table.size() <= k) {
    for (unsigned long p = 1; p < next_den; ++p) {
      if (std::gcd(p, next_den) == 1) table.emplace_back(Integer(p), Integer(next_den));
    }
    ++next_den;
  }
  return table[k];
}

namespace {

// Least denominator in (lo, hi); hi absent means +infinity.
Rational simplest_open(const Rational& lo, const std::optional<Rational>& hi) {
  const Rational first_int = floor(lo) + 1;
  if (!hi || first_int < *hi) return first_int;
  const Rational fl = floor(lo);
  // Both ends inside (fl, fl + 1]: recurse on the reciprocals.
  const Rational inv_lo = 1 / (*hi - fl);
  std::optional<Rational> inv_hi;
  if (lo != fl) inv_hi = 1 / (lo - fl);
  return fl + 1 / simplest_open(inv_lo, inv_hi);
}

}  // namespace

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw std::invalid_argument("simplest_between: empty interval");
  const Rational s = simplest_open(lo, hi);
  // Least numerator among fractions of that denominator.
  const Integer den = s.get_den();
  const Rational p = floor(lo * den) + 1;
  const Rational c = p / Rational(den);
  return c < hi ? c : s;
}

Index agreeing_columns(const DoubleSequence& d, Index m) {
  Index c = 0;
  while (c < m && d.ball(m, c) == d.ball(m + 1, c)) ++c;
  return c;
}

RationalStream double_to_sequence(DoubleSequence d) {
  struct Cache {
    std::mutex lock;
    // Avoided open intervals of a row as (lo, hi).
    std::map<Index, std::shared_ptr<const std::vector<std::pair<Rational, Rational>>>> rows;
  };
  auto cache = std::make_shared<Cache>();
  return [d = std::move(d), cache](Index l) -> std::optional<Rational> {
    const auto [m, k] = cantor_unpair(l);
    std::shared_ptr<const std::vector<std::pair<Rational, Rational>>> holes;
    {
      std::lock_guard guard(cache->lock);
      auto it = cache->rows.find(m);
      if (it == cache->rows.end()) {
        auto row = std::make_shared<std::vector<std::pair<Rational, Rational>>>();
        const Index c = agreeing_columns(d, m);
        for (Index n = 0; n < c; ++n) {
          if (auto b = d.ball(m, n)) row->emplace_back(lower_end(*b), upper_end(*b));
        }
        it = cache->rows.emplace(m, std::move(row)).first;
      }
      holes = it->second;
    }
    const Rational q = canonical_rational(k);
    for (const auto& [lo, hi] : *holes) {
      if (q > lo && q < hi) return std::nullopt;
    }
    return q;
  };
}

RationalStream sequence_to_set(RationalStream q) {
  struct State {
    std::mutex lock;
    std::set<Rational> emitted;
    std::vector<std::optional<Rational>> out;
  };
  auto st = std::make_shared<State>();
  return [q = std::move(q), st](Index l) -> std::optional<Rational> {
    std::lock_guard guard(st->lock);
    while (st->out.size() <= l) {
      const Index i = st->out.size();
      const auto centre = q(i);
      if (!centre) {
        st->out.emplace_back();
        continue;
      }
      const Rational w = pow2(neg(i));
      const Rational lo = *centre - w, hi = *centre + w;
      // Pieces of the window between already-emitted values.
      std::optional<Rational> best;
      Rational left = lo;
      auto consider = [&](const Rational& a, const Rational& b) {
        if (!(a < b)) return;
        const Rational s = simplest_between(a, b);
        if (!best || s.get_den() < best->get_den() ||
            (s.get_den() == best->get_den() && s.get_num() < best->get_num())) {
          best = s;
        }
      };
      for (auto it = st->emitted.upper_bound(lo); it != st->emitted.end() && *it < hi; ++it) {
        consider(left, *it);
        left = *it;
      }
      consider(left, hi);
      st->emitted.insert(*best);
      st->out.push_back(best);
    }
    return st->out[l];
  };
}

DoubleSequence set_to_double(RationalStream q) {
  struct Prefix {
    std::mutex lock;
    std::vector<std::optional<Rational>> terms;
  };
  auto pre = std::make_shared<Prefix>();
  return {[q = std::move(q), pre](Index m, Index n) -> std::optional<Ball> {
    const Ball b = canonical_interval(n);
    const Rational lo = lower_end(b), hi = upper_end(b);
    std::lock_guard guard(pre->lock);
    while (pre->terms.size() < m) pre->terms.push_back(q(pre->terms.size()));
    std::optional<Rational> seen;
    for (Index i = 0; i < m; ++i) {
      const auto& t = pre->terms[i];
      if (!t || !(*t > lo && *t < hi)) continue;
      if (seen && *seen != *t) return std::nullopt;
      seen = *t;
    }
    return b;
  }};
}

Point rational_near_excluded(const FastCauchyName& x, const std::vector<Ball>& holes,
                             const Rational& eps) {
  if (eps <= 0) throw std::invalid_argument("rational_near_excluded: eps must be positive");
  for (const auto& h : holes) require_same_dim(x.dim, h.dim());
  Index k = 0;
  const Rational quarter = eps / 4;
  while (pow2(neg(k)) > quarter) ++k;
  const Point a = query(x, k);
  auto free = [&](const Point& p) {
    return std::none_of(holes.begin(), holes.end(), [&](const Ball& h) { return contains(h, p); });
  };
  if (free(a)) return a;
  // Candidates within 3/4 eps of a, hence within eps of x.
  const Rational reach2 = (3 * quarter) * (3 * quarter);
  const std::size_t d = x.dim;
  std::vector<int> offs(d, -3);
  while (true) {
    std::vector<Rational> c(d);
    Rational off2 = 0;
    for (std::size_t i = 0; i < d; ++i) {
      c[i] = a[i] + offs[i] * quarter;
      off2 += Rational(offs[i] * offs[i]) * quarter * quarter;
    }
    Point p(std::move(c));
    if (off2 <= reach2 && free(p)) return p;
    std::size_t i = 0;
    while (i < d && offs[i] == 3) offs[i++] = -3;
    if (i == d) break;
    ++offs[i];
  }
  if (d == 1) {
    for (const auto& h : holes) {
      for (const Rational& e : {lower_end(h), upper_end(h)}) {
        const Point p{e};
        if (dist2(p, a) <= reach2 && free(p)) return p;
      }
    }
  }
  throw ContractViolation("rational_near_excluded: no rational outside the holes near x");
}

namespace {

std::vector<std::optional<Ball>> row_prefix(const DoubleSequence& d, Index m, std::size_t n) {
  std::vector<std::optional<Ball>> row;
  for (Index c = 0; c < n; ++c) row.push_back(d.ball(m, c));
  return row;
}

}  // namespace

StableRow stabilize(const DoubleSequence& d, std::size_t n, const StabilizationCertificate& cert) {
  if (n == 0) return {};
  const Index h = cert.horizon(n);
  return {row_prefix(d, h, n), h, false};
}

StableRow stabilize(const DoubleSequence& d, std::size_t n, Fuel fuel) {
  if (n == 0) return {{}, 0, true};
  const Index top = fuel.budget;
  auto row = row_prefix(d, top, n);
  Index h = top;
  while (h > 0 && row_prefix(d, h - 1, n) == row) --h;
  return {std::move(row), h, true};
}

std::optional<Ball> sigma3_interval_search(const RationalStream& q, Index m, Fuel fuel) {
  const Index f = fuel.budget;
  if (f == 0) return std::nullopt;
  std::vector<Rational> terms;
  for (Index i = 0; i < f * f; ++i) {
    if (auto t = q(i)) terms.push_back(std::move(*t));
  }
  if (terms.empty()) return std::nullopt;
  std::sort(terms.begin(), terms.end());
  const Rational w = pow2(neg(m));
  for (Index den = 1; den <= f; ++den) {
    const Rational dr{Integer(den)};
    const Rational p_lo = floor((terms.front() - w) * dr);
    const Rational p_hi = ceil(terms.back() * dr);
    for (Rational p = p_lo; p <= p_hi; p += 1) {
      if (gcd(p.get_num(), Integer(den)) != 1) continue;
      const Rational a = p / dr;
      auto lo = std::upper_bound(terms.begin(), terms.end(), a);
      auto hi = std::lower_bound(lo, terms.end(), a + w);
      if (static_cast<Index>(hi - lo) >= f) return open_interval(a, a + w);
    }
  }
  return std::nullopt;
}

DoubleSequence lagnese_double(const MachineTable& t, const Rational& eps) {
  return {[t, eps](Index m, Index n) -> std::optional<Ball> {
    if (n == 0) return open_interval(-1, 0);
    if (n == 1) return open_interval(1, 2);
    const Index e = n - 2;
    if (e >= t.size() || bounded_halting(t, e, m) != HaltStatus::Halted) return std::nullopt;
    const Rational c = specker_partial(t, *t.steps(e));
    return open_ball(Point{c}, eps * pow2(neg(e) - 2));
  }};
}

StabilizationCertificate lagnese_certificate(const MachineTable& t) {
  return {[t](std::size_t n) {
    Index h = 0;
    for (std::size_t e = 0; e + 2 < n && e < t.size(); ++e) {
      if (auto s = t.steps(e)) h = std::max<Index>(h, *s);
    }
    return h;
  }};
}

RationalStream lagnese_pipeline(const MachineTable& t, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("lagnese_pipeline: eps must lie in (0, 1)");
  return double_to_sequence(lagnese_double(t, eps));
}

}  // namespace cresets
