// SPDX-License-Identifier: Apache-2.0

#include "jsonl.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace cresets::jsonl {

json rational(const Rational& q) { return to_string(q); }

Rational rational(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  throw std::runtime_error("expected a rational string, got " + j.dump());
}

json point(const Point& p) {
  json out = json::array();
  for (const auto& c : p.coords()) out.push_back(rational(c));
  return out;
}

Point point(const json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("expected a coordinate array, got " + j.dump());
  std::vector<Rational> coords;
  for (const auto& c : j) coords.push_back(rational(c));
  return Point(std::move(coords));
}

json ball(const Ball& b) {
  return {{"center", point(b.center)}, {"radius", rational(b.radius)}, {"open", b.is_open()}};
}

Ball ball(const json& j) {
  return Ball(point(j.at("center")), rational(j.at("radius")),
              j.value("open", false) ? BallKind::Open : BallKind::Closed);
}

json box(const Box& b) { return {{"lo", point(b.lo)}, {"hi", point(b.hi)}}; }

Box box(const json& j) { return Box(point(j.at("lo")), point(j.at("hi"))); }

json header(const std::string& rep, std::size_t dim, const std::optional<Box>& bound) {
  return {{"rep", rep}, {"dim", dim}, {"bound", bound ? box(*bound) : json(nullptr)}};
}

json entry(Index i, const std::optional<Point>& p) {
  if (!p) return {{"i", i}, {"skip", true}};
  return {{"i", i}, {"point", point(*p)}};
}

json entry(Index i, const std::optional<Ball>& b) {
  if (!b) return {{"i", i}, {"skip", true}};
  return {{"i", i}, {"ball", ball(*b)}};
}

UpperName Prefix::upper() const {
  auto shared = std::make_shared<const std::map<Index, Ball>>(balls);
  return {dim,
          [shared](Index i) -> std::optional<Ball> {
            auto it = shared->find(i);
            if (it == shared->end()) return std::nullopt;
            return it->second;
          },
          bound};
}

LowerName Prefix::lower() const {
  auto shared = std::make_shared<const std::map<Index, Point>>(points);
  return {dim, [shared](Index i) -> std::optional<Point> {
            auto it = shared->find(i);
            if (it == shared->end()) return std::nullopt;
            return it->second;
          }};
}

BallStream Prefix::open() const {
  auto shared = std::make_shared<const std::map<Index, Ball>>(balls);
  return {dim, [shared](Index i) -> std::optional<Ball> {
            auto it = shared->find(i);
            if (it == shared->end()) return std::nullopt;
            return it->second;
          }};
}

Prefix read_prefix(std::istream& in) {
  Prefix out;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      if (!have_header) {
        out.rep = j.at("rep").get<std::string>();
        out.dim = j.at("dim").get<std::size_t>();
        if (j.contains("bound") && !j.at("bound").is_null()) out.bound = box(j.at("bound"));
        if (out.bound && out.bound->dim() != out.dim) throw std::runtime_error("bound dimension");
        have_header = true;
        continue;
      }
      const Index i = j.at("i").get<Index>();
      if (j.contains("point")) {
        Point p = point(j.at("point"));
        if (p.dim() != out.dim) throw std::runtime_error("point dimension");
        out.points.insert_or_assign(i, std::move(p));
      } else if (j.contains("ball")) {
        Ball b = ball(j.at("ball"));
        if (b.dim() != out.dim) throw std::runtime_error("ball dimension");
        out.balls.insert_or_assign(i, std::move(b));
      } else if (!j.value("skip", false)) {
        throw std::runtime_error("entry has no point, ball or skip");
      }
      out.length = std::max(out.length, i + 1);
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_header) throw std::runtime_error("missing header line");
  return out;
}

Prefix read_prefix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return read_prefix(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace cresets::jsonl
