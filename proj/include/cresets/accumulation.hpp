// SPDX-License-Identifier: Apache-2.0
//
// Accumulation points on the line: conversions among rational sequences,
// enumerated rational sets and stabilizing double sequences of open
// intervals, plus a bounded search for intervals holding many terms.
//
// Sequences are streams; a Skip entry contributes no term.

#pragma once

#include "cresets/constructions.hpp"
#include "cresets/names.hpp"

#include <optional>

namespace cresets {

using RationalStream = Stream<Rational>;

/// Row m, column n: an open interval or Empty (nullopt). Rows are expected
/// to stabilize column by column; the complement of the limit intervals is
/// the named closed set.
struct DoubleSequence {
  std::function<std::optional<Ball>(Index m, Index n)> ball;
};

/// Open rational intervals, level by level: (-L-1, 0), then
/// ((j-1) 2^-L, (j+1) 2^-L) for j = 0..2^L, then (1, L+2).
Ball canonical_interval(Index i);

/// Rationals of [0, 1] in lowest terms, by denominator then numerator.
Rational canonical_rational(Index k);

/// Simplest rational of the open interval (lo, hi): least denominator,
/// then least numerator.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Column count c(m) <= m: rows m and m+1 agree on every column n < c(m).
Index agreeing_columns(const DoubleSequence& d, Index m);

/// Entry <m, k> is the k-th canonical rational unless it lies in one of the
/// first c(m) intervals of row m, in which case it is Skip.
RationalStream double_to_sequence(DoubleSequence d);

/// Entry l is the simplest rational of (q_l - 2^-l, q_l + 2^-l) not emitted
/// before (least denominator, then numerator). Skip when q_l is Skip.
RationalStream sequence_to_set(RationalStream q);

/// Column n of row m is canonical interval n unless it contains two
/// distinct terms among q_0..q_{m-1}.
DoubleSequence set_to_double(RationalStream q);

/// A rational within eps of x outside every open hole. The approximation
/// at precision eps/4 is tried first, then grid points of pitch eps/4
/// around it and, on the line, the hole endpoints.
/// Throws ContractViolation when nothing qualifies.
Point rational_near_excluded(const FastCauchyName& x, const std::vector<Ball>& holes,
                             const Rational& eps);

struct StabilizationCertificate {
  /// Row from which columns 0..N-1 never change.
  std::function<Index(std::size_t n)> horizon;
};

struct StableRow {
  std::vector<std::optional<Ball>> row;
  Index horizon = 0;
  bool revisable = false;
};

/// Columns 0..N-1 at the certified horizon; exact.
StableRow stabilize(const DoubleSequence& d, std::size_t n, const StabilizationCertificate& cert);
/// Row `fuel`, with the earliest row from which columns 0..N-1 stayed
/// unchanged through `fuel`; revisable.
StableRow stabilize(const DoubleSequence& d, std::size_t n, Fuel fuel);

/// First interval (a, a + 2^-m) with a = p/D in lowest terms, D = 1..fuel,
/// holding at least `fuel` of the first fuel^2 terms.
std::optional<Ball> sigma3_interval_search(const RationalStream& q, Index m, Fuel fuel);

/// Columns 0 and 1 are (-1, 0) and (1, 2); column e + 2 is the interval
/// of radius eps 2^(-e-2) around x_{n_e}, present from row n_e on.
DoubleSequence lagnese_double(const MachineTable& t, const Rational& eps);
/// Horizon for N columns: the largest finite n_e among the table columns.
StabilizationCertificate lagnese_certificate(const MachineTable& t);
/// Sequence whose accumulation set is [0, 1] minus the cover of the
/// table's halting stages. eps must lie in (0, 1).
RationalStream lagnese_pipeline(const MachineTable& t, const Rational& eps);

}  // namespace cresets
