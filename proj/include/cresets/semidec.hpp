// SPDX-License-Identifier: Apache-2.0
//
// Fuel-bounded semi-decisions. Yes (and No, where a predicate has one) is
// always sound; running out of fuel yields Unknown. Raising the fuel never
// turns a Yes into anything else.

#pragma once

#include "cresets/names.hpp"

#include <span>

namespace cresets {

/// "x in U". Dove-tails (ball index n, precision k) along the Cantor
/// diagonal for `fuel` steps; Yes(n, k) once dist(approx_k(x), c_n) + 2^-k
/// < r_n. Never No.
Verdict semi_member(const BallStream& u, const FastCauchyName& x, Fuel fuel);

/// "x != y". Yes(k) for the first k <= fuel with
/// |approx_k(x) - approx_k(y)| > 2^(1-k). Never No.
Verdict semi_neq(const FastCauchyName& x, const FastCauchyName& y, Fuel fuel);

/// "x not in A". Yes(n, k) once the n-th excluded closed ball provably
/// contains x (dist(approx_k(x), c_n) + 2^-k <= r_n), for n, k < fuel.
Verdict semi_not_in(const UpperName& a, const FastCauchyName& x, Fuel fuel);

/// "A is covered by the open balls of `cover`". A's bound is subdivided
/// dyadically; a sub-box is discharged once it lies inside a single cover
/// ball or a single one of the first `fuel` excluded balls of A. Depth and
/// node count are capped by the fuel. Never No.
Verdict semi_subset_cover(const UpperName& a, std::span<const Ball> cover, Fuel fuel);

/// Budget for cover_box.
struct CoverBudget {
  unsigned max_depth = 0;
  std::uint64_t max_nodes = 0;
};

enum class CoverResult { Covered, Uncovered, Exhausted };

/// Dyadic-subdivision check that `box` lies in the union of `balls`.
/// Uncovered is reported only when some sub-box meets none of the balls,
/// which certifies a gap; otherwise an unfinished search is Exhausted.
CoverResult cover_box(const Box& box, std::span<const Ball> balls, CoverBudget budget,
                      std::uint64_t* nodes_used = nullptr);

/// Indices of the balls in `balls` that meet the closed box.
std::vector<std::size_t> balls_meeting(const Box& box, std::span<const Ball> balls);

}  // namespace cresets
