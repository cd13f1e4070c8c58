// SPDX-License-Identifier: Apache-2.0
//
// Connected components of enumerated open sets and of compact sets given
// by exclusions, and the intersection of a closed set with an open one.

#pragma once

#include "cresets/names.hpp"

#include <optional>

namespace cresets {

struct OpenComponent {
  /// Stream indices of the reachable balls, in discovery order.
  std::vector<Index> indices;
  /// For each entry of `indices`, the entry it was reached from (nullopt
  /// for balls containing x).
  std::vector<std::optional<std::size_t>> via;
  BallStream balls;
};

/// Balls among the first `fuel` entries of U joined to x by a chain of
/// overlapping balls. Chains start at balls confirmed to contain x by
/// semi_member at the same fuel.
OpenComponent open_component(const BallStream& u, const FastCauchyName& x, Fuel fuel);

/// Exclusion stream over the cumulative grid of `bound`: the covering ball
/// of a cell, when it misses the closure of every ball in `inner`.
Stream<Ball> exclude_outside(const Box& bound, std::vector<Ball> inner);

struct CompactComponent {
  /// A's exclusions merged with those of every passing separator.
  UpperName name;
  /// Inner families that passed, coarsest first.
  std::vector<std::vector<Ball>> separators;
  /// Yes once a separator passed, Unknown otherwise.
  Verdict verdict;
};

/// Component of x in the compact set A. On each grid level the surviving
/// cells are grouped into touching clusters; the open balls over x's
/// cluster and over the other clusters form a candidate separator, kept
/// when the two families are disjoint, x lies in the inner one and the
/// union covers A. Dimensions 1 to 3.
CompactComponent compact_component(const UpperName& a, const FastCauchyName& x, Fuel fuel);

/// Points of A confirmed in U: entry <n, s> is A's n-th point when
/// semi_member at fuel s accepts it and s < fuel.
LowerName closed_intersect_open(const LowerName& a, const BallStream& u, Fuel fuel);

struct SeparatorCheck {
  Verdict verdict;
  /// Upper name of A restricted to the closed inner balls, on Yes.
  std::optional<UpperName> part;
};

/// No with the first meeting (inner, outer) pair as witness; Yes when the
/// union covers A and x lies in an inner ball; Unknown otherwise.
SeparatorCheck verify_separator(const UpperName& a, const FastCauchyName& x,
                                const std::vector<Ball>& inner, const std::vector<Ball>& outer,
                                Fuel fuel);

}  // namespace cresets
