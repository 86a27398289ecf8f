#include "tropos/examples.hpp"

#include <algorithm>
#include <sstream>

namespace tropos {

namespace {

const char *kBS12 = "gens: a b\nrel: a b a^-1 b^-2\n";
const char *kBrown = "gens: a b\nrel: a^-1 b^-1 a b^2 a^-1 b^-1 a^2 b^-1 a^-1 b a^-1 b a b^-1\n";

Vec V(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs)
    v.emplace_back(x);
  return v;
}

std::string vec_str(const Vec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + v[i].get_str();
  return s + ")";
}

std::string vecs_str(std::vector<Vec> vs) {
  std::sort(vs.begin(), vs.end(), [](const Vec &a, const Vec &b) { return vec_str(a) < vec_str(b); });
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i)
    s += (i ? ", " : "") + vec_str(vs[i]);
  return s + "]";
}

LaurentPoly x1_plus_x2_minus_2() { return parse_polynomial("x1 + x2 - 2"); }

TropicalRegion panel(char which) {
  auto f = x1_plus_x2_minus_2();
  switch (which) {
  case 'a':
    return trop_hypersurface_field(f, Valuation::trivial());
  case 'b':
    return trop_hypersurface_field(f, Valuation::modp(2));
  case 'c':
    return trop_hypersurface_field(f, Valuation::padic(2));
  default:
    return trop_hypersurface_Z(f);
  }
}

SphericalSet brown_sigma() {
  return SphericalSet::arc(V({1, 0}), V({0, 1}), false, false)
      .unite(SphericalSet::arc(V({0, 1}), V({-1, -1}), false, false));
}

struct Checker {
  std::vector<ExampleCheck> out;

  void check(const std::string &id, bool ok, const std::string &detail) { out.push_back({id, ok, detail}); }

  void same(const std::string &id, const std::string &got, const std::string &want) {
    check(id, got == want, got == want ? got : "got " + got + ", expected " + want);
  }

  void shapes(const std::string &id, const TropicalRegion &r, std::vector<std::string> want) {
    std::sort(want.begin(), want.end());
    auto got = region_shapes(r);
    std::string g, w;
    for (const auto &s : got)
      g += (g.empty() ? "" : "; ") + s;
    for (const auto &s : want)
      w += (w.empty() ? "" : "; ") + s;
    same(id, g, w);
  }

  void tri_true(const std::string &id, Tri t, const std::string &what) {
    check(id, t == Tri::True, what + ": " + to_string(t));
  }

  template <class Fn> void guarded(const std::string &id, Fn fn) {
    try {
      fn();
    } catch (const std::exception &e) {
      check(id, false, std::string("error: ") + e.what());
    }
  }
};

} // namespace

Presentation example_presentation(const std::string &id) {
  if (id == "bs12")
    return parse_presentation(kBS12);
  if (id == "brown")
    return parse_presentation(kBrown);
  if (id == "fox-factor")
    return presentation_with_fox_factor(x1_plus_x2_minus_2());
  throw Error("unknown example presentation '" + id + "'");
}

BnsFixture example_fixture(const std::string &id) {
  if (id == "bs12")
    return {"bs12", SphericalSet::points(1, {V({-1})}), "Z", "hand computation"};
  if (id == "brown")
    return {"brown", brown_sigma(), "Z", "two open arcs, Brown's algorithm"};
  throw Error("unknown fixture '" + id + "'");
}

std::vector<std::string> figure_ids() { return {"trop-q", "trop-f2", "trop-q2", "trop-z", "sphere-fields", "sphere-z", "brown-sigma", "brown-bound"}; }

SvgScene figure_scene(const std::string &id) {
  SvgScene s;
  s.title = id;
  if (id == "trop-q" || id == "trop-f2" || id == "trop-q2" || id == "trop-z") {
    s.regions.push_back(panel(id == "trop-q" ? 'a' : id == "trop-f2" ? 'b' : id == "trop-q2" ? 'c' : 'd'));
  } else if (id == "sphere-fields") {
    s.spheres.push_back(sphere_project(panel('a')).unite(sphere_project(panel('b'))));
  } else if (id == "sphere-z") {
    s.spheres.push_back(sphere_project(panel('d')));
  } else if (id == "brown-sigma") {
    s.spheres.push_back(example_fixture("brown").sigma_Z());
  } else if (id == "brown-bound") {
    s.spheres.push_back(bnsr_upper_bound(example_presentation("brown")).complement);
  } else {
    throw Error("unknown figure '" + id + "'");
  }
  return s;
}

std::string cell_shape(const Polyhedron &p) {
  auto g = p.generators();
  return "v=" + vecs_str(g.vertices) + " r=" + vecs_str(g.rays) + " l=" + vecs_str(g.lineality);
}

std::vector<std::string> region_shapes(const TropicalRegion &r) {
  std::vector<std::string> out;
  for (const auto &c : r.cells())
    out.push_back(cell_shape(c.polyhedron));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ExampleCheck> run_examples() {
  Checker c;
  const std::string ray00 = "v=[(0, 0)] r=";
  c.guarded("trop-q", [&] {
    c.shapes("trop-q", panel('a'), {ray00 + "[(-1, -1)] l=[]", ray00 + "[(0, 1)] l=[]", ray00 + "[(1, 0)] l=[]"});
  });
  c.guarded("trop-f2", [&] { c.shapes("trop-f2", panel('b'), {"v=[(0, 0)] r=[] l=[(1, 1)]"}); });
  c.guarded("trop-q2", [&] {
    c.shapes("trop-q2", panel('c'),
             {"v=[(1, 1)] r=[(-1, -1)] l=[]", "v=[(1, 1)] r=[(0, 1)] l=[]", "v=[(1, 1)] r=[(1, 0)] l=[]"});
  });
  c.guarded("trop-z", [&] {
    c.shapes("trop-z", panel('d'),
             {ray00 + "[(-1, -1)] l=[]", ray00 + "[(0, 1)] l=[]", ray00 + "[(1, 0)] l=[]",
              ray00 + "[(0, 1), (1, 0)] l=[]"});
  });
  c.guarded("sphere-fields", [&] {
    auto e = sphere_project(panel('a')).unite(sphere_project(panel('b')));
    c.tri_true("sphere-fields", e.equals(SphericalSet::points(2, {V({1, 0}), V({0, 1}), V({-1, -1}), V({1, 1})})),
               "four points " + e.str());
  });
  c.guarded("sphere-z", [&] {
    auto f = sphere_project(panel('d'));
    auto want = SphericalSet::arc(V({1, 0}), V({0, 1}), true, true).unite(SphericalSet::points(2, {V({-1, -1})}));
    c.tri_true("sphere-z", f.equals(want), "closed arc and a point " + f.str());
    auto u = sphere_project(panel('a')).unite(sphere_project(panel('b'))).unite(sphere_project(panel('c')));
    c.tri_true("sphere-z-union", u.equals(f), "sphere union of panels a-c equals panel f");
  });

  c.guarded("bs12", [&] {
    auto p = example_presentation("bs12");
    auto fox = fox_matrix(p);
    c.same("bs12-fox", fox.matrix(1, 0).str(), "x - 2");
    auto b = bnsr_upper_bound(p);
    c.same("bs12-principal", b.degrees.at(1).ideal.principal_part.str(), "x^2 - 3*x + 2");
    c.same("bs12-trop-sphere", b.trop_sphere.str(), "{+1}");
    auto field = sphere_project(trop_hypersurface_field(b.degrees.at(1).ideal.principal_part, Valuation::trivial()));
    c.tri_true("bs12-field-sphere", field.is_empty(), "field sphere empty");
    auto a = audit_inclusion(example_fixture("bs12"), b.complement);
    c.check("bs12-fixture", a.included == Tri::True && a.strict == Tri::False,
            "included " + to_string(a.included) + ", strict " + to_string(a.strict));
    c.check("bs12-provenance", b.provenance == Provenance::Exact, to_string(b.provenance));
  });

  c.guarded("brown", [&] {
    auto p = example_presentation("brown");
    auto fox = fox_matrix(p);
    auto g = fox.group;
    auto e1 = parse_polynomial("(x2^-1 - 1)*(x1^-1 - 1)", g);
    auto e2 = parse_polynomial("-x1^-1*x2^-1*(x1 - 1)^2", g);
    c.check("brown-fox", fox.matrix(0, 0) == e1 && fox.matrix(1, 0) == e2,
            fox.matrix(0, 0).str() + " | " + fox.matrix(1, 0).str());
    auto b = bnsr_upper_bound(p);
    auto want = SphericalSet::points(2, {V({0, 1}), V({0, -1})});
    c.tri_true("brown-trop-sphere", b.trop_sphere.equals(want), "sphere " + b.trop_sphere.str());
    auto field = sphere_project(trop_hypersurface_field(b.degrees.at(1).ideal.principal_part, Valuation::trivial()));
    c.tri_true("brown-field-sphere", field.equals(want), "field sphere " + field.str());
    auto a = audit_inclusion(example_fixture("brown"), b.complement);
    c.check("brown-fixture", a.included == Tri::True && a.strict == Tri::True,
            "included " + to_string(a.included) + ", strict " + to_string(a.strict));
  });

  c.guarded("fox-factor", [&] {
    auto chain = presentation_complex(example_presentation("fox-factor"));
    auto b = bnsr_upper_bound(chain);
    const auto &d1 = b.degrees.at(1);
    auto f = parse_polynomial("x1 + x2 - 2", chain.group);
    auto q = divide_exact(d1.ideal.principal_part, f);
    c.check("fox-factor-principal", q.has_value(), "principal part " + d1.ideal.principal_part.str());
    c.same("fox-factor-residual", to_string(d1.residual_kind), to_string(ResidualKind::Augmentation));
    auto z = sphere_project(trop_hypersurface_Z(f));
    auto fields = sphere_project(trop_hypersurface_field(f, Valuation::trivial()))
                      .unite(sphere_project(trop_hypersurface_field(f, Valuation::modp(2))));
    c.check("fox-factor-strict", fields.subset_of(z) == Tri::True && fields.equals(z) == Tri::False,
            fields.str() + " inside " + z.str());
    c.tri_true("fox-factor-bound", b.trop_sphere.equals(z), "bound sphere " + b.trop_sphere.str());
  });

  c.guarded("df", [&] {
    auto g = make_group(1, {}, {"x"});
    std::vector<LaurentPoly> ann{parse_polynomial("x - 2", g)};
    auto z = dwyer_fried_test(ann, TropRing::Z());
    c.check("df-Z", z.finitely_generated == Tri::False && sphere_project(z.region).str() == "{+1}",
            "over Z: " + to_string(z.finitely_generated) + ", sphere " + sphere_project(z.region).str());
    auto q = dwyer_fried_test(ann, TropRing::field(Valuation::trivial()));
    c.check("df-Q", q.finitely_generated == Tri::True, "over Q: " + to_string(q.finitely_generated));
    auto f3 = dwyer_fried_test(ann, TropRing::field(Valuation::modp(3)));
    c.check("df-F3", f3.finitely_generated == Tri::True, "over F_3: " + to_string(f3.finitely_generated));
  });

  c.guarded("brown-figures", [&] {
    auto a = figure_scene("brown-sigma").spheres.at(0);
    c.tri_true("brown-sigma", a.equals(brown_sigma()), "two open arcs " + a.str());
    auto bnd = figure_scene("brown-bound").spheres.at(0);
    auto halves = SphericalSet::points(2, {V({0, 1}), V({0, -1})}).complement();
    c.tri_true("brown-bound", bnd.equals(halves), "bound " + bnd.str());
  });
  return c.out;
}

} // namespace tropos
