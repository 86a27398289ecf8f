#include "tropos/io.hpp"

#include <fstream>
#include <sstream>

namespace tropos {

Json to_json(const Rational &q) {
  Rational c = q;
  c.canonicalize();
  return Json{{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}};
}

Rational rational_from_json(const Json &j) {
  if (j.is_number_integer())
    return Rational(j.get<long>());
  if (j.is_string()) {
    Rational q(j.get<std::string>());
    q.canonicalize();
    return q;
  }
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw Error("rational must be {\"num\": ..., \"den\": ...}");
  auto part = [](const Json &x) {
    if (x.is_string())
      return Integer(x.get<std::string>());
    return Integer(x.get<long>());
  };
  Integer den = part(j.at("den"));
  if (den == 0)
    throw Error("rational with zero denominator");
  Rational q(part(j.at("num")), den);
  q.canonicalize();
  return q;
}

Json to_json(const Vec &v) {
  Json a = Json::array();
  for (const auto &x : v)
    a.push_back(to_json(x));
  return a;
}

Vec vec_from_json(const Json &j) {
  if (!j.is_array())
    throw Error("expected an array of rationals");
  Vec v;
  for (const auto &x : j)
    v.push_back(rational_from_json(x));
  return v;
}

Json to_json(const GroupElement &e) {
  Json j{{"free", e.free_part}};
  if (!e.torsion_part.empty())
    j["torsion"] = e.torsion_part;
  return j;
}

Json to_json(const LaurentPoly &f) {
  Json terms = Json::array();
  for (const auto &[e, c] : f.terms())
    terms.push_back({{"exponent", to_json(e)}, {"coefficient", c.get_str()}});
  Json j{{"text", f.str()}, {"terms", terms}};
  if (f.modulus() != 0)
    j["modulus"] = f.modulus();
  return j;
}

Json to_json(const Polyhedron &p, const std::vector<std::string> &labels) {
  Polyhedron c = p.canonical();
  Json cons = Json::array();
  for (const auto &k : c.constraints())
    cons.push_back({{"a", to_json(k.a)}, {"b", to_json(k.b)}, {"relation", k.equality ? "=" : ">="}});
  auto g = c.generators();
  Json gens{{"vertices", Json::array()}, {"rays", Json::array()}, {"lineality", Json::array()}};
  for (const auto &v : g.vertices)
    gens["vertices"].push_back(to_json(v));
  for (const auto &v : g.rays)
    gens["rays"].push_back(to_json(v));
  for (const auto &v : g.lineality)
    gens["lineality"].push_back(to_json(v));
  return Json{{"ambient_dim", c.ambient_dim()},
              {"dimension", c.dimension()},
              {"constraints", cons},
              {"generators", gens},
              {"text", c.str(labels)}};
}

Polyhedron polyhedron_from_json(const Json &j) {
  Polyhedron p(j.at("ambient_dim").get<std::size_t>());
  for (const auto &k : j.at("constraints")) {
    Vec a = vec_from_json(k.at("a"));
    if (a.size() != p.ambient_dim())
      throw Error("constraint has the wrong length");
    Rational b = rational_from_json(k.at("b"));
    std::string rel = k.value("relation", ">=");
    if (rel == "=")
      p.add_eq(a, b);
    else if (rel == ">=")
      p.add_ge(a, b);
    else if (rel == "<=")
      p.add_le(a, b);
    else
      throw Error("unknown relation '" + rel + "'");
  }
  return p;
}

namespace {

std::string kind_name(TropicalCell::Kind k) {
  switch (k) {
  case TropicalCell::Kind::Tie:
    return "tie";
  case TropicalCell::Kind::UnitFailure:
    return "unit_failure";
  case TropicalCell::Kind::Whole:
    return "whole";
  case TropicalCell::Kind::Intersection:
    return "intersection";
  }
  return "?";
}

Provenance provenance_from_string(const std::string &s) {
  if (s == "EXACT")
    return Provenance::Exact;
  if (s == "UPPER_BOUND")
    return Provenance::UpperBound;
  if (s == "UNKNOWN")
    return Provenance::Unknown;
  throw Error("unknown provenance '" + s + "'");
}

} // namespace

Json to_json(const TropicalRegion &r) {
  Json cells = Json::array();
  for (const auto &c : r.cells()) {
    Json cell{{"kind", kind_name(c.kind)}, {"polyhedron", to_json(c.polyhedron, r.labels())}};
    if (c.kind == TropicalCell::Kind::Tie) {
      Json ts = Json::array();
      for (const auto &e : c.tie_set)
        ts.push_back(to_json(e));
      cell["tie_set"] = ts;
    }
    if (c.witness)
      cell["unit_witness"] = to_json(*c.witness);
    if (!c.note.empty())
      cell["note"] = c.note;
    cells.push_back(cell);
  }
  return Json{{"source", r.source()},
              {"provenance", to_string(r.provenance())},
              {"ambient_dim", r.ambient_dim()},
              {"labels", r.labels()},
              {"cells", cells},
              {"diagnostics", r.diagnostics()}};
}

TropicalRegion region_from_json(const Json &j) {
  TropicalRegion r(j.at("ambient_dim").get<std::size_t>(), j.value("source", ""));
  r.set_provenance(provenance_from_string(j.value("provenance", "EXACT")));
  if (j.contains("labels"))
    r.set_labels(j.at("labels").get<std::vector<std::string>>());
  for (const auto &c : j.at("cells")) {
    TropicalCell cell;
    cell.kind = TropicalCell::Kind::Intersection;
    cell.polyhedron = polyhedron_from_json(c.at("polyhedron"));
    if (cell.polyhedron.ambient_dim() != r.ambient_dim())
      throw Error("cell dimension does not match the region");
    r.add_cell(cell);
  }
  return r;
}

Json to_json(const SphericalSet &s, Provenance p) {
  Json j{{"ambient_dim", s.ambient_dim()}, {"provenance", to_string(p)}, {"text", s.str()}};
  const std::size_t n = s.ambient_dim();
  if (n == 1) {
    Json pts = Json::array();
    if (s.has_plus())
      pts.push_back({{"type", "point"}, {"dir", to_json(Vec{Rational(1)})}});
    if (s.has_minus())
      pts.push_back({{"type", "point"}, {"dir", to_json(Vec{Rational(-1)})}});
    j["parts"] = pts;
  } else if (n == 2) {
    Json parts = Json::array();
    for (const auto &a : s.arcs()) {
      if (a.full)
        parts.push_back({{"type", "circle"}});
      else if (a.is_point())
        parts.push_back({{"type", "point"}, {"dir", to_json(a.from)}});
      else
        parts.push_back({{"type", "arc"},
                         {"from", to_json(a.from)},
                         {"to", to_json(a.to)},
                         {"from_closed", a.from_closed},
                         {"to_closed", a.to_closed}});
    }
    j["parts"] = parts;
  } else if (n >= 3) {
    Json pieces = Json::array();
    for (const auto &q : s.pieces())
      pieces.push_back(to_json(q));
    j["pieces"] = pieces;
    j["complemented"] = s.negated();
  }
  return j;
}

SphericalSet sphere_from_json(const Json &j) {
  const auto n = j.at("ambient_dim").get<std::size_t>();
  if (n >= 3) {
    std::vector<Polyhedron> pieces;
    for (const auto &q : j.at("pieces"))
      pieces.push_back(polyhedron_from_json(q));
    auto s = SphericalSet::from_polyhedra(n, pieces);
    return j.value("complemented", false) ? s.complement() : s;
  }
  SphericalSet s = SphericalSet::empty(n);
  for (const auto &part : j.at("parts")) {
    std::string type = part.at("type");
    if (type == "point") {
      Vec d = vec_from_json(part.at("dir"));
      if (d.size() != n)
        throw Error("direction has the wrong length");
      s = s.unite(SphericalSet::points(n, {d}));
    } else if (type == "circle" && n == 2) {
      s = SphericalSet::full(2);
    } else if (type == "arc" && n == 2) {
      Vec from = vec_from_json(part.at("from")), to = vec_from_json(part.at("to"));
      bool from_closed = part.value("from_closed", true), to_closed = part.value("to_closed", true);
      if (from == to) {
        // The circle with one point removed, or the whole circle.
        auto whole = SphericalSet::full(2);
        s = s.unite(from_closed || to_closed ? whole : SphericalSet::points(2, {from}).complement());
      } else {
        s = s.unite(SphericalSet::arc(from, to, from_closed, to_closed));
      }
    } else {
      throw Error("unknown sphere part '" + type + "'");
    }
  }
  return s;
}

Json to_json(const JumpIdeal &j) {
  Json gens = Json::array();
  for (const auto &g : j.generators)
    gens.push_back(g.str());
  Json res = Json::array();
  for (const auto &g : j.residual)
    res.push_back(g.str());
  return Json{{"degree", j.degree},
              {"generators", gens},
              {"principal_part", j.principal_part.str()},
              {"residual", res},
              {"minors_enumerated", j.minors_enumerated}};
}

Json to_json(const BnsrBound &b) {
  Json degrees = Json::array();
  for (const auto &d : b.degrees)
    degrees.push_back({{"ideal", to_json(d.ideal)},
                       {"residual_kind", to_string(d.residual_kind)},
                       {"principal_region", to_json(d.principal_region)},
                       {"residual_region", to_json(d.residual_region)},
                       {"sphere", to_json(d.sphere, d.provenance)},
                       {"provenance", to_string(d.provenance)}});
  return Json{{"degree", b.degree},
              {"degrees", degrees},
              {"trop_sphere", to_json(b.trop_sphere, b.provenance)},
              {"complement", to_json(b.complement, b.provenance)},
              {"outer_complement", to_json(b.outer_complement, Provenance::UpperBound)},
              {"provenance", to_string(b.provenance)}};
}

Json to_json(const InclusionReport &r) {
  Provenance p = r.included == Tri::Unknown ? Provenance::Unknown : Provenance::Exact;
  return Json{{"included", to_string(r.included)}, {"strict", to_string(r.strict)}, {"provenance", to_string(p)}};
}

Json to_json(const BnsFixture &f) {
  return Json{{"schema", kSchemaVersion},
              {"id", f.id},
              {"convention", f.convention},
              {"citation", f.citation},
              {"sigma", to_json(f.sigma)}};
}

BnsFixture fixture_from_json(const Json &j) {
  BnsFixture f;
  f.id = j.value("id", "");
  f.convention = j.value("convention", "Z");
  if (f.convention != "Z" && f.convention != "G")
    throw Error("fixture convention must be \"Z\" or \"G\"");
  f.citation = j.value("citation", "");
  f.sigma = sphere_from_json(j.at("sigma"));
  return f;
}

BnsFixture load_fixture(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open fixture file " + path);
  try {
    return fixture_from_json(Json::parse(in));
  } catch (const Json::exception &e) {
    throw Error("fixture " + path + ": " + e.what());
  }
}

Json to_json(const WraagJumpLoci &l, const WeightedGraph &g) {
  Json comps = Json::array();
  for (const auto &w : l.components) {
    Json names = Json::array();
    for (auto v : w)
      names.push_back(g.vertices[v]);
    comps.push_back(names);
  }
  Json deleted = Json::array();
  for (auto i : l.deleted_edges)
    deleted.push_back({{"u", g.vertices[g.edges[i].u]}, {"v", g.vertices[g.edges[i].v]},
                       {"weight", g.edges[i].weight}});
  return Json{{"characteristic", l.characteristic},
              {"components", comps},
              {"full_torus", l.full_torus},
              {"contains_trivial_character", true},
              {"deleted_edges", deleted},
              {"oracle", l.oracle},
              {"provenance", to_string(l.provenance)}};
}

Json to_json(const OrbifoldReport &r) {
  return Json{{"case", to_string(r.which)},
              {"euler_characteristic", to_json(r.euler)},
              {"theta", r.theta.get_str()},
              {"V1", r.v1},
              {"trop", r.trop},
              {"sigma1", r.sigma},
              {"provenance", "EXACT"}};
}

Json document(const std::string &command, Provenance p, Json body) {
  Json j = std::move(body);
  if (!j.is_object())
    j = Json{{"result", j}};
  j["schema"] = kSchemaVersion;
  j["command"] = command;
  j["provenance"] = to_string(p);
  return j;
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

} // namespace tropos
