// SPDX-License-Identifier: Apache-2.0
//
// Name conversions for closed sets of known finite cardinality, and the
// extraction of distinct values from a sequence of points.

#pragma once

#include "cresets/names.hpp"

#include <optional>

namespace cresets {

/// Point within 2^-n of the only point of A in its bound, or nullopt when
/// the fuel runs out. Survivor cells are subdivided and dropped once a
/// single one of the first `fuel` exclusions contains them; work is capped
/// at fuel * 2^d cell visits.
/// Throws ContractViolation when every cell is dropped (A is empty).
std::optional<Point> singleton_point(const UpperName& a, Index n, Fuel fuel);

/// Fast Cauchy name of the single point of A: each query doubles the fuel
/// of singleton_point until it answers. Diverges on non-singletons.
FastCauchyName singleton_from_upper(const UpperName& a);

/// N pairwise confirmed-distinct points among the first `fuel` entries of
/// A, as constant names; nullopt if fewer were found.
std::optional<FiniteTupleName> finite_points_from_lower(const LowerName& a, std::size_t n,
                                                        Fuel fuel);

struct FiniteNames {
  LowerName lower;
  UpperName upper;
};

/// Lower name cycling through the members (member i mod N at precision
/// i div N) and upper name within `bound`. Entry <k, j> of the upper name
/// is the covering ball of cell j of the level-k grid, emitted when its
/// centre is farther than radius + 2^(1-k) from every k-th approximation.
FiniteNames finite_points_to_names(const FiniteTupleName& pts, const Box& bound);
FiniteNames finite_points_to_names(const FiniteTupleName& pts);

struct Isolated {
  Box box;
  UpperName part;
};

/// Splits A into N separated pieces: survivor cells are clustered (cells
/// touching at a face or corner join), and the search stops at the first
/// level with exactly N clusters whose hulls do not touch. Each piece is A
/// restricted to a hull. Exclusions alone cannot show that a cluster is
/// occupied, so the answer is only correct once the visible exclusions
/// have emptied every unoccupied cluster.
std::optional<std::vector<Isolated>> finite_isolate(const UpperName& a, std::size_t n, Fuel fuel);

using NameFamily = std::function<FastCauchyName(Index)>;

/// Phase p considers the indices m' <= p not yet chosen whose closed
/// 2^-p balls around their p-th approximations miss those of every chosen
/// index, and adopts the least one. Entry p is the index adopted in phase
/// p, or Skip.
Stream<Index> distinct_indices(NameFamily xs);

/// The names of distinct_indices, in adoption order.
Stream<FastCauchyName> distinct_extraction(NameFamily xs);

}  // namespace cresets
