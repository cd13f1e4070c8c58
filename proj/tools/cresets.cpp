// SPDX-License-Identifier: Apache-2.0
//
// cresets: name prefixes in, name prefixes or single records out.
// Exit codes: 0 success or Yes, 2 Unknown at this fuel, 1 error (with an
// {"error": ...} record on stdout).

#include "cresets/accumulation.hpp"
#include "cresets/cardinality.hpp"
#include "cresets/components.hpp"
#include "cresets/constructions.hpp"
#include "cresets/fixtures.hpp"
#include "cresets/pointfind.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "jsonl.hpp"

using namespace cresets;
using jsonl::json;

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kUnknown = 2;

struct Common {
  std::string out;
  std::optional<std::uint64_t> fuel;
};

std::uint64_t fuel_of(const Common& c) {
  if (c.fuel) return *c.fuel;
  if (const char* env = std::getenv("CRESETS_DEFAULT_FUEL")) {
    std::size_t used = 0;
    const std::string text(env);
    const auto v = std::stoull(text, &used);
    if (used != text.size()) throw std::runtime_error("CRESETS_DEFAULT_FUEL is not a natural number");
    return v;
  }
  return 10000;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  void line(const json& j) { stream() << j.dump() << '\n'; }

 private:
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  std::ofstream file_;
};

MachineTable read_table(const std::string& path) {
  json j = jsonl::read_json_file(path);
  if (j.is_object()) j = j.at("steps");
  if (!j.is_array()) throw std::runtime_error(path + ": expected an array of steps");
  std::vector<std::optional<std::uint64_t>> steps;
  for (const auto& s : j) {
    if (s.is_null()) {
      steps.emplace_back();
    } else {
      steps.emplace_back(s.get<std::uint64_t>());
    }
  }
  return MachineTable(std::move(steps));
}

Point read_handle(const std::string& path) {
  try {
    auto p = jsonl::read_prefix_file(path);
    if (p.points.empty()) throw std::runtime_error(path + ": no point record");
    return p.points.begin()->second;
  } catch (const std::runtime_error&) {
    const json j = jsonl::read_json_file(path);
    return jsonl::point(j.is_object() ? j.at("point") : j);
  }
}

Fixture require_fixture(const std::string& name) {
  auto f = find_fixture(name);
  if (!f) throw std::runtime_error("unknown fixture " + name);
  return *f;
}

jsonl::Prefix require_rep(const std::string& path, std::initializer_list<const char*> reps) {
  auto p = jsonl::read_prefix_file(path);
  for (const char* r : reps) {
    if (p.rep == r) return p;
  }
  throw std::runtime_error(path + ": representation " + p.rep + " not accepted here");
}

template <class T>
void write_stream(Output& out, const Stream<T>& s, Index count) {
  for (Index i = 0; i < count; ++i) out.line(jsonl::entry(i, s(i)));
}

// ---------------------------------------------------------------- construct

struct ConstructArgs {
  Common common;
  std::string kind, table, fixture, points, rep = "upper", eps = "1/2";
  Index prefix = 100;
};

int run_construct(const ConstructArgs& a) {
  Output out(a.common.out);
  if (a.kind == "specker") {
    const auto t = read_table(a.table);
    const auto name = specker(t);
    out.line(jsonl::header("naive", 1, std::nullopt));
    for (Index i = 0; i < a.prefix; ++i) out.line(jsonl::entry(i, std::optional<Point>(name.approx(i))));
    return kOk;
  }
  if (a.kind == "singular") {
    const auto family = require_rep(a.points, {"lower", "points"});
    std::vector<Point> pts;
    for (const auto& [i, p] : family.points) pts.push_back(p);
    if (pts.empty()) throw std::runtime_error(a.points + ": no points");
    auto cover = singular_cover([pts](Index m) { return FastCauchyName::constant(pts[m % pts.size()]); },
                                jsonl::rational(json(a.eps)));
    out.line(jsonl::header("open", family.dim, std::nullopt));
    write_stream(out, cover.next, a.prefix);
    return kOk;
  }
  if (a.kind == "fixture") {
    const auto f = require_fixture(a.fixture);
    if (a.rep == "upper") {
      out.line(jsonl::header("upper", f.bound.dim(), f.bound));
      write_stream(out, adaptive_upper_name_of(f.shape, f.bound).excluded, a.prefix);
    } else if (a.rep == "lower") {
      out.line(jsonl::header("lower", f.bound.dim(), f.bound));
      const auto pts = f.shape.samples(pow2(-8));
      for (Index i = 0; i < a.prefix; ++i) {
        out.line(jsonl::entry(i, pts.empty() ? std::optional<Point>() : pts[i % pts.size()]));
      }
    } else {
      throw std::runtime_error("--rep must be upper or lower");
    }
    return kOk;
  }
  const auto kind = parse_gadget_kind(a.kind);
  if (!kind) throw std::runtime_error("unknown kind " + a.kind);
  const auto t = read_table(a.table);
  const auto bound = gadget_bound(*kind, t);
  const auto name = halting_gadget(*kind, t);
  if (const auto* lower = std::get_if<LowerName>(&name)) {
    out.line(jsonl::header("lower", lower->dim, bound));
    write_stream(out, lower->points, a.prefix);
  } else {
    const auto& upper = std::get<UpperName>(name);
    out.line(jsonl::header("upper", upper.dim, upper.bound ? upper.bound : bound));
    write_stream(out, upper.excluded, a.prefix);
  }
  return kOk;
}

// ---------------------------------------------------------------- convert

struct ConvertArgs {
  Common common;
  std::string set, to;
  Index precision = 6, count = 1, prefix = 100;
};

int run_convert(const ConvertArgs& a) {
  Output out(a.common.out);
  const Fuel fuel{fuel_of(a.common)};
  if (a.to == "singleton") {
    const auto p = require_rep(a.set, {"upper"});
    if (!p.bound) throw std::runtime_error(a.set + ": bound required");
    const auto pt = singleton_point(p.upper(), a.precision, fuel);
    if (!pt) {
      out.line({{"verdict", "unknown"}});
      return kUnknown;
    }
    out.line({{"point", jsonl::point(*pt)}, {"precision", a.precision}});
    return kOk;
  }
  if (a.to == "finite") {
    const auto p = require_rep(a.set, {"lower"});
    const auto tuple = finite_points_from_lower(p.lower(), a.count, fuel);
    if (!tuple) {
      out.line({{"verdict", "unknown"}});
      return kUnknown;
    }
    out.line(jsonl::header("points", p.dim, p.bound));
    for (std::size_t i = 0; i < tuple->members.size(); ++i) {
      out.line(jsonl::entry(i, std::optional<Point>(query(tuple->members[i], a.precision))));
    }
    return kOk;
  }
  if (a.to == "projection") {
    const auto p = require_rep(a.set, {"upper"});
    if (!p.bound) throw std::runtime_error(a.set + ": bound required");
    const auto proj = project_last_axis(p.upper(), fuel);
    out.line(jsonl::header("upper", proj.dim, proj.bound));
    write_stream(out, proj.excluded, a.prefix);
    return kOk;
  }
  throw std::runtime_error("--to must be singleton, finite or projection");
}

// ---------------------------------------------------------------- accpoints

struct AccArgs {
  Common common;
  std::string seq, table, eps = "1/8";
  Index prefix = 100;
};

int run_accpoints(const AccArgs& a) {
  Output out(a.common.out);
  RationalStream result;
  if (!a.table.empty()) {
    result = lagnese_pipeline(read_table(a.table), jsonl::rational(json(a.eps)));
  } else {
    const auto p = require_rep(a.seq, {"rationals", "naive", "points"});
    if (p.dim != 1) throw std::runtime_error(a.seq + ": sequences are one-dimensional");
    auto terms = std::make_shared<const std::map<Index, Point>>(p.points);
    RationalStream q = [terms](Index i) -> std::optional<Rational> {
      auto it = terms->find(i);
      if (it == terms->end()) return std::nullopt;
      return it->second[0];
    };
    result = double_to_sequence(set_to_double(q));
  }
  out.line(jsonl::header("rationals", 1, std::nullopt));
  for (Index i = 0; i < a.prefix; ++i) {
    const auto q = result(i);
    out.line(jsonl::entry(i, q ? std::optional<Point>(Point{*q}) : std::nullopt));
  }
  return kOk;
}

// ---------------------------------------------------------------- component

struct ComponentArgs {
  Common common;
  std::string set, handle;
  bool compact = false;
  Index prefix = 100;
};

int run_component(const ComponentArgs& a) {
  Output out(a.common.out);
  const Fuel fuel{fuel_of(a.common)};
  const auto x = FastCauchyName::constant(read_handle(a.handle));
  if (!a.compact) {
    const auto p = require_rep(a.set, {"open"});
    const auto comp = open_component(p.open(), x, fuel);
    if (comp.indices.empty()) {
      out.line({{"verdict", "unknown"}});
      return kUnknown;
    }
    out.line(jsonl::header("open", p.dim, std::nullopt));
    for (std::size_t k = 0; k < comp.indices.size(); ++k) {
      out.line({{"i", k}, {"ball", jsonl::ball(*p.open().next(comp.indices[k]))}, {"source", comp.indices[k]}});
    }
    return kOk;
  }
  const auto p = require_rep(a.set, {"upper"});
  if (!p.bound) throw std::runtime_error(a.set + ": bound required");
  const auto comp = compact_component(p.upper(), x, fuel);
  if (comp.verdict.is_unknown()) {
    out.line({{"verdict", "unknown"}});
    return kUnknown;
  }
  out.line(jsonl::header("upper", comp.name.dim, comp.name.bound));
  write_stream(out, comp.name.excluded, a.prefix);
  return kOk;
}

// ---------------------------------------------------------------- find-point

struct FindArgs {
  Common common;
  std::string strategy, set, hints;
  Index precision = 6, approx_index = 10;
};

StarHints read_hints(const std::string& path) {
  const json j = jsonl::read_json_file(path);
  const auto& handles = j.at("handles");
  if (!handles.is_array() || handles.size() != 2) throw std::runtime_error(path + ": two handles required");
  return {jsonl::box(j.at("square")), jsonl::rational(j.at("alpha")), jsonl::point(handles[0]),
          jsonl::point(handles[1])};
}

json found_record(const FoundPoint& f) {
  return {{"point", jsonl::point(f.point)}, {"certified", f.certified}, {"strategy", f.strategy}};
}

int run_find_point(const FindArgs& a) {
  Output out(a.common.out);
  const Fuel fuel{fuel_of(a.common)};
  const auto p = require_rep(a.set, {"upper"});
  if (!p.bound) throw std::runtime_error(a.set + ": bound required");
  const auto name = p.upper();
  std::optional<FoundPoint> found;
  if (a.strategy == "lexmin") {
    const auto naive = lexmin_naive_point(name);
    out.line({{"point", jsonl::point(naive.approx(a.approx_index))},
              {"index", a.approx_index},
              {"certified", false},
              {"strategy", "lexmin"}});
    return kOk;
  } else if (a.strategy == "interval") {
    found = interval_point(name, a.precision, fuel);
  } else if (a.strategy == "convex") {
    found = convex_point(name, a.precision, fuel);
  } else if (a.strategy == "star") {
    std::optional<StarHints> hints;
    if (!a.hints.empty()) hints = read_hints(a.hints);
    auto search = star_point_2d(name, a.precision, hints, fuel);
    for (const auto& e : search.estimates) {
      out.line({{"x", jsonl::point(e.x)}, {"y", jsonl::point(e.y)}, {"estimate", jsonl::point(e.estimate)}});
    }
    found = std::move(search.found);
  } else {
    throw std::runtime_error("--strategy must be lexmin, convex, interval or star");
  }
  if (!found) {
    out.line({{"verdict", "unknown"}});
    return kUnknown;
  }
  out.line(found_record(*found));
  return kOk;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
  Common common;
  std::string fixture, run, table, eps;
  Index precision = 6;
};

struct Report {
  Output& out;
  bool ok = true;
  void check(const std::string& name, bool pass, json witness = nullptr) {
    ok = ok && pass;
    json line = {{"check", name}, {"pass", pass}};
    if (!pass && !witness.is_null()) line["witness"] = std::move(witness);
    out.line(line);
  }
};

int run_audit(const AuditArgs& a) {
  Output out(a.common.out);
  Report report{out};
  if (a.fixture == "specker") {
    const auto t = read_table(a.table);
    const auto p = require_rep(a.run, {"naive"});
    const Rational limit = specker_limit(t);
    std::optional<Index> bad;
    for (const auto& [i, pt] : p.points) {
      if (pt[0] != specker_partial(t, i)) {
        bad = i;
        break;
      }
    }
    report.check("partial-sums", !bad, bad ? json{{"i", *bad}} : json(nullptr));
    const Index m = t.max_finite();
    const auto at = p.points.find(m);
    if (at != p.points.end()) {
      report.check("closed-form-limit", at->second[0] == limit,
                   {{"i", m}, {"value", jsonl::rational(at->second[0])}, {"limit", jsonl::rational(limit)}});
    }
    return report.ok ? kOk : kError;
  }
  if (a.fixture == "cover") {
    if (a.eps.empty()) throw std::runtime_error("--eps required for a cover audit");
    const Rational eps = jsonl::rational(json(a.eps));
    const auto p = require_rep(a.run, {"open"});
    if (p.dim != 1) throw std::runtime_error("measure audit needs a one-dimensional cover");
    Rational total = 0;
    std::optional<json> witness;
    for (const auto& [i, b] : p.balls) {
      total += 2 * b.radius;
      if (!witness && total >= eps) witness = json{{"i", i}, {"length", jsonl::rational(total)}};
    }
    report.check("measure-below-eps", !witness, witness.value_or(nullptr));
    return report.ok ? kOk : kError;
  }
  const auto f = require_fixture(a.fixture);
  std::ifstream probe(a.run);
  if (!probe) throw std::runtime_error("cannot open " + a.run);
  json first;
  {
    std::string line;
    while (std::getline(probe, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
    }
    if (!line.empty()) first = json::parse(line);
  }
  if (first.is_null()) {
    // An empty run claims nothing; it is consistent only with the empty set.
    report.check("empty-output", f.shape.samples(Rational(1)).empty());
    return report.ok ? kOk : kError;
  }
  if (!first.contains("rep")) {
    // Point results may be preceded by estimate lines; audit the last point.
    std::optional<json> rec;
    if (first.contains("point")) rec = first;
    std::string line;
    while (std::getline(probe, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      json j = json::parse(line);
      if (j.contains("point")) rec = std::move(j);
    }
    if (!rec) throw std::runtime_error(a.run + ": no point record");
    const Point p = jsonl::point(rec->at("point"));
    report.check("within-precision", f.shape.within(p, pow2(-static_cast<long>(a.precision))),
                 {{"point", jsonl::point(p)}});
    return report.ok ? kOk : kError;
  }
  const auto p = jsonl::read_prefix_file(a.run);
  if (p.dim != f.bound.dim()) throw std::runtime_error("run dimension differs from the fixture");
  if (p.rep == "upper") {
    std::optional<json> witness;
    for (const auto& [i, b] : p.balls) {
      if (f.shape.within(b.center, b.radius)) {
        witness = json{{"i", i}, {"ball", jsonl::ball(b)}};
        break;
      }
    }
    report.check("exclusions-miss-set", !witness, witness.value_or(nullptr));
  } else if (p.rep == "lower" || p.rep == "points") {
    std::optional<json> witness;
    for (const auto& [i, pt] : p.points) {
      if (!f.shape.contains(pt)) {
        witness = json{{"i", i}, {"point", jsonl::point(pt)}};
        break;
      }
    }
    report.check("points-in-set", !witness, witness.value_or(nullptr));
  } else {
    throw std::runtime_error("no fixture audit for representation " + p.rep);
  }
  return report.ok ? kOk : kError;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--out", c.out, "Output file (default stdout)");
  sub->add_option("--fuel", c.fuel, "Fuel budget (default $CRESETS_DEFAULT_FUEL or 10000)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on closed, open and finite sets given by names"};
  app.require_subcommand(1);

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Emit a name prefix of a construction or fixture");
  add_common(c, construct.common);
  c->add_option("--kind", construct.kind,
                "specker, singular, interval-lower, interval-upper, countable-b, comb2d or fixture")
      ->required();
  c->add_option("--table", construct.table, "Machine table JSON: array of halt steps or null");
  c->add_option("--fixture", construct.fixture, "Fixture name for --kind fixture");
  c->add_option("--rep", construct.rep, "upper or lower, for --kind fixture");
  c->add_option("--points", construct.points, "Point family JSONL for --kind singular");
  c->add_option("--eps", construct.eps, "Cover measure bound for --kind singular");
  c->add_option("--prefix", construct.prefix, "Number of entries");

  ConvertArgs convert;
  auto* v = app.add_subcommand("convert", "Convert between set representations");
  add_common(v, convert.common);
  v->add_option("--set", convert.set, "Input name JSONL")->required();
  v->add_option("--to", convert.to, "singleton, finite or projection")->required();
  v->add_option("--precision", convert.precision, "Output precision n (error 2^-n)");
  v->add_option("--count", convert.count, "Number of points for --to finite");
  v->add_option("--prefix", convert.prefix, "Entries for --to projection");

  AccArgs acc;
  auto* s = app.add_subcommand("accpoints", "Sequence whose accumulation points form the input's");
  add_common(s, acc.common);
  auto* seq = s->add_option("--seq", acc.seq, "Rational sequence JSONL");
  auto* tab = s->add_option("--table", acc.table, "Machine table for the halting-driven sequence");
  seq->excludes(tab);
  s->add_option("--eps", acc.eps, "Window radius for --table");
  s->add_option("--prefix", acc.prefix, "Number of entries");

  ComponentArgs comp;
  auto* k = app.add_subcommand("component", "Connected component of a handle point");
  add_common(k, comp.common);
  k->add_flag("--compact", comp.compact, "Input is an upper name of a compact set");
  k->add_option("--set", comp.set, "Input name JSONL")->required();
  k->add_option("--handle", comp.handle, "Handle point file")->required();
  k->add_option("--prefix", comp.prefix, "Entries of the output name (--compact)");

  FindArgs find;
  auto* f = app.add_subcommand("find-point", "Computable point of a set given by exclusions");
  add_common(f, find.common);
  f->add_option("--strategy", find.strategy, "lexmin, convex, interval or star")->required();
  f->add_option("--set", find.set, "Upper name JSONL with bound")->required();
  f->add_option("--precision", find.precision, "Precision n (error 2^-n)");
  f->add_option("--index", find.approx_index, "Approximant index for lexmin");
  f->add_option("--hints", find.hints, "Star hints JSON: square, alpha, handles");

  AuditArgs audit;
  auto* u = app.add_subcommand("audit", "Replay ground-truth checks against a run output");
  add_common(u, audit.common);
  u->add_option("--fixture", audit.fixture, "Fixture name, or specker / cover")->required();
  u->add_option("--run", audit.run, "Run output file")->required();
  u->add_option("--table", audit.table, "Machine table for specker");
  u->add_option("--eps", audit.eps, "Measure bound for cover");
  u->add_option("--precision", audit.precision, "Precision of point records");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", e.what()}}.dump() << '\n';
    return kError;
  }

  try {
    if (*c) return run_construct(construct);
    if (*v) return run_convert(convert);
    if (*s) return run_accpoints(acc);
    if (*k) return run_component(comp);
    if (*f) return run_find_point(find);
    if (*u) return run_audit(audit);
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << '\n';
    return kError;
  }
  return kError;
}
