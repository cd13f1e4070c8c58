// SPDX-License-Identifier: Apache-2.0
//
// Concrete sets and sequences driven by a finite halting table: Specker
// sums, singular coverings, the middle-third embedding and the halting
// gadgets used as fixtures by every other module.

#pragma once

#include "cresets/fixtures.hpp"
#include "cresets/names.hpp"

#include <optional>
#include <variant>

namespace cresets {

/// Finite stand-in for the halting problem: entry e is the step at which
/// machine e halts, or nullopt for "never".
class MachineTable {
 public:
  MachineTable() = default;
  /// Throws std::invalid_argument on a finite entry of 0.
  explicit MachineTable(std::vector<std::optional<std::uint64_t>> steps);

  std::size_t size() const { return steps_.size(); }
  /// Throws std::out_of_range for e >= size().
  std::optional<std::uint64_t> steps(std::size_t e) const;
  /// Largest finite entry, 0 when nothing halts.
  std::uint64_t max_finite() const;

  friend bool operator==(const MachineTable&, const MachineTable&) = default;

 private:
  std::vector<std::optional<std::uint64_t>> steps_;
};

enum class HaltStatus { Halted, NotYet };

HaltStatus bounded_halting(const MachineTable& t, std::size_t e, std::uint64_t budget);

/// x_m = sum of 2^(-e-1) over e with n_e <= m.
Rational specker_partial(const MachineTable& t, std::uint64_t m);
/// sum of 2^(-e-1) over all halting e.
Rational specker_limit(const MachineTable& t);
/// The partial sums as a converging (not fast) name.
NaiveName specker(const MachineTable& t);

using PointFamily = std::function<FastCauchyName(Index)>;

/// Radius of the m-th singular-cover interval: eps * 2^(-m-2).
Rational singular_radius(const Rational& eps, Index m);
/// Open intervals, the m-th centred on a 2^-k approximation of xs(m) with
/// 2^-k <= eps * 2^(-m-3). Total length stays below eps.
BallStream singular_cover(PointFamily xs, Rational eps);

/// Name of sum 2 b_n 3^(-n-1).
FastCauchyName cantor_embed(std::function<bool(Index)> bits);

enum class GadgetKind { IntervalLower, IntervalUpper, CountableB, Comb2D };

const char* to_string(GadgetKind k);
std::optional<GadgetKind> parse_gadget_kind(std::string_view text);

/// Lower name of [0, x], x the Specker limit.
LowerName interval_lower(const MachineTable& t);
/// Upper name of [x, 1] within [0, 1].
UpperName interval_upper(const MachineTable& t);
/// Upper name of {0} and the points 2^(-e-1) with n_e = never, within [0, 1].
UpperName countable_b(const MachineTable& t);
/// Upper name of the comb: base [0, size] x {-1} and teeth {e} x [-1, h_e],
/// h_e = 0 for non-halting e and -2^(-n_e) otherwise.
UpperName comb2d(const MachineTable& t);

std::variant<LowerName, UpperName> halting_gadget(GadgetKind kind, const MachineTable& t);

/// Exact ground truth of the gadget and its bounding box.
Shape gadget_shape(GadgetKind kind, const MachineTable& t);
Box gadget_bound(GadgetKind kind, const MachineTable& t);

}  // namespace cresets
