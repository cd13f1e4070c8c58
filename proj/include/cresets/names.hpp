// SPDX-License-Identifier: Apache-2.0
//
// Stream representations ("names") of real points and closed/open sets.
//
// A name is an infinite stream. Here every name is a deterministic, total
// function of an index; a stream that has nothing to say at some index
// returns std::nullopt (a Skip token), which keeps dove-tailed enumerations
// total. Consumers see only finite prefixes, bounded by an explicit Fuel.

#pragma once

#include "cresets/exactnum.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace cresets {

using Index = std::uint64_t;

/// Explicit budget of stream elements or search steps an operation may
/// consume. Every operation taking Fuel terminates.
struct Fuel {
  std::uint64_t budget = 0;
};

// ---------------------------------------------------------------- Verdict

enum class Outcome { Yes, No, Unknown };

const char* to_string(Outcome o);

/// Evidence attached to a Yes/No verdict.
struct Witness {
  std::vector<Index> indices;
  std::vector<Ball> balls;
  std::vector<Point> points;
};

/// Result of a semi-decision. Yes and No are always sound; Unknown is the
/// only outcome fuel exhaustion may produce.
struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<Witness> witness;

  static Verdict yes(Witness w = {}) { return {Outcome::Yes, std::move(w)}; }
  static Verdict no(Witness w = {}) { return {Outcome::No, std::move(w)}; }
  static Verdict unknown() { return {Outcome::Unknown, std::nullopt}; }

  bool is_yes() const { return outcome == Outcome::Yes; }
  bool is_no() const { return outcome == Outcome::No; }
  bool is_unknown() const { return outcome == Outcome::Unknown; }
};

// ---------------------------------------------------------------- pairing

/// Cantor pairing: t = (a+b)(a+b+1)/2 + b.
Index cantor_pair(Index a, Index b);
/// Inverse of cantor_pair; returns (a, b).
std::pair<Index, Index> cantor_unpair(Index t);

// ---------------------------------------------------------------- names

template <class T>
using Stream = std::function<std::optional<T>(Index)>;

/// rho^d-name: approx(n) is within 2^-n of the named point.
struct FastCauchyName {
  std::size_t dim = 1;
  std::function<Point(Index)> approx;

  static FastCauchyName constant(Point p);
};

/// Converging rational sequence with no promised modulus.
struct NaiveName {
  std::size_t dim = 1;
  std::function<Point(Index)> approx;
};

/// theta<-name of an open set: the union of the enumerated open balls.
struct BallStream {
  std::size_t dim = 1;
  Stream<Ball> next;

  /// Finite list of balls as a stream (Skip after the end).
  static BallStream of(std::size_t dim, std::vector<Ball> balls);
};

/// psi<-name of a closed set: enumerated points all lie in the set and are
/// dense in it.
struct LowerName {
  std::size_t dim = 1;
  Stream<Point> points;

  /// Finite point list, cycled forever.
  static LowerName cycle(std::size_t dim, std::vector<Point> points);
};

/// psi>-name of a closed set A: every enumerated closed ball is disjoint
/// from A, and together they exhaust the complement of A (within `bound`
/// when a bound is present).
struct UpperName {
  std::size_t dim = 1;
  Stream<Ball> excluded;
  std::optional<Box> bound;

  const Box& require_bound(const char* op) const;
};

/// (rho^d)^~N: one fast Cauchy name per element, each element at least once.
struct FiniteTupleName {
  std::vector<FastCauchyName> members;
};

/// approx(n) of the name; checks the producer's dimension.
Point query(const FastCauchyName& name, Index n);

/// Spot check of the fast-Cauchy contract on indices 0..depth:
/// |approx(n) - approx(m)| <= 2^-n + 2^-m for all pairs, exactly.
/// No carries the first failing pair (n, m) with n < m.
Verdict validate_fast_cauchy(const FastCauchyName& name, Index depth);

/// The first `count` stream entries with the Skip tokens dropped.
std::vector<Ball> prefix(const Stream<Ball>& stream, Index count);

/// Round-robin merge: index i reads stream (i mod k) at index (i div k).
template <class T>
Stream<T> interleave(std::vector<Stream<T>> streams) {
  auto shared = std::make_shared<const std::vector<Stream<T>>>(std::move(streams));
  return [shared](Index i) -> std::optional<T> {
    const auto& s = *shared;
    if (s.empty()) return std::nullopt;
    return s[i % s.size()](i / s.size());
  };
}

/// Upper name of A intersected with a closed set whose complement is
/// exhausted by `extra` (the union of the two exclusion streams).
UpperName merge_exclusions(const UpperName& a, Stream<Ball> extra);

/// Same set, smaller bounding box: names A intersected with `bound`.
UpperName restrict_bound(const UpperName& a, const Box& bound);

}  // namespace cresets
