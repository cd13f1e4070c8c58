// SPDX-License-Identifier: Apache-2.0
//
// JSONL form of name prefixes. Line 1 is a header
//   {"rep": ..., "dim": d, "bound": {"lo": [...], "hi": [...]} | null}
// and every further line one entry
//   {"i": k, "point": [...]} | {"i": k, "ball": {...}} | {"i": k, "skip": true}.
// Rationals are strings "p/q"; entries missing from a file read as Skip.

#pragma once

#include "cresets/names.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace cresets::jsonl {

using nlohmann::json;

json rational(const Rational& q);
Rational rational(const json& j);
json point(const Point& p);
Point point(const json& j);
json ball(const Ball& b);
Ball ball(const json& j);
json box(const Box& b);
Box box(const json& j);

json header(const std::string& rep, std::size_t dim, const std::optional<Box>& bound);

/// Entry k of a prefix: the payload is "point" or "ball".
json entry(Index i, const std::optional<Point>& p);
json entry(Index i, const std::optional<Ball>& b);

struct Prefix {
  std::string rep;
  std::size_t dim = 1;
  std::optional<Box> bound;
  std::map<Index, Point> points;
  std::map<Index, Ball> balls;
  /// One past the largest index present.
  Index length = 0;

  UpperName upper() const;
  LowerName lower() const;
  BallStream open() const;
};

/// Throws std::runtime_error with the line number on malformed input.
Prefix read_prefix(std::istream& in);
Prefix read_prefix_file(const std::string& path);

/// Whole file parsed as one JSON value.
json read_json_file(const std::string& path);

}  // namespace cresets::jsonl
