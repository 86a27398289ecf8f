#include "doctest.h"
#include "support.hpp"

#include "tropos/sphere.hpp"
#include "tropos/tropical.hpp"

#include <set>

using namespace tropos;
using testsupport::uniform;

namespace {

const GroupPtr Z1 = make_group(1, {}, {"x"});
const GroupPtr Z2 = make_group(2);

LaurentPoly P(const std::string &s, const GroupPtr &g = Z2) { return parse_polynomial(s, g); }

Vec V(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs)
    v.emplace_back(x);
  return v;
}

using Shape = std::tuple<std::vector<Vec>, std::vector<Vec>, std::vector<Vec>>;

std::set<Shape> shapes(const TropicalRegion &r) {
  std::set<Shape> out;
  for (const auto &c : r.cells()) {
    auto g = c.polyhedron.generators();
    out.insert({g.vertices, g.rays, g.lineality});
  }
  return out;
}

Shape ray_from(Vec apex, Vec dir) { return {{apex}, {dir}, {}}; }

// Membership from the definition: the minimum is attained at least twice.
bool tie_oracle(const LaurentPoly &f, const Valuation &v, const Vec &w) {
  return trop_argmin_count(f, v, Character{w}) >= 2;
}

Vec random_point(std::mt19937_64 &r, std::size_t n) {
  Vec w;
  for (std::size_t i = 0; i < n; ++i)
    w.push_back(make_rational(uniform(r, -12, 12), uniform(r, 1, 3)));
  return w;
}

} // namespace

TEST_CASE("tropical evaluation") {
  auto f = P("x1+x2-2");
  CHECK(trop_eval(f, Valuation::trivial(), Character{{0, 0}}) == 0);
  CHECK(trop_eval(f, Valuation::padic(2), Character{{3, 5}}) == 1);
  CHECK(trop_eval(f, Valuation::modp(2), Character{{1, 1}}) == 1);
  CHECK_THROWS_AS(trop_eval(LaurentPoly(Z2), Valuation::trivial(), Character{{0, 0}}), Error);
}

TEST_CASE("figure one panels a to c") {
  auto f = P("x1+x2-2");
  auto a = trop_hypersurface_field(f, Valuation::trivial());
  CHECK(shapes(a) == std::set<Shape>{ray_from(V({0, 0}), V({0, 1})), ray_from(V({0, 0}), V({1, 0})),
                                     ray_from(V({0, 0}), V({-1, -1}))});
  auto b = trop_hypersurface_field(f, Valuation::modp(2));
  CHECK(shapes(b) == std::set<Shape>{{{V({0, 0})}, {}, {V({1, 1})}}});
  auto c = trop_hypersurface_field(f, Valuation::padic(2));
  CHECK(shapes(c) == std::set<Shape>{ray_from(V({1, 1}), V({0, 1})), ray_from(V({1, 1}), V({1, 0})),
                                     ray_from(V({1, 1}), V({-1, -1}))});
  for (const auto *r : {&a, &b, &c})
    CHECK(r->provenance() == Provenance::Exact);
}

TEST_CASE("figure one panel d and sphere images") {
  auto f = P("x1+x2-2");
  auto d = trop_hypersurface_Z(f);
  Shape quadrant{{V({0, 0})}, {V({0, 1}), V({1, 0})}, {}};
  CHECK(shapes(d) == std::set<Shape>{ray_from(V({0, 0}), V({0, 1})), ray_from(V({0, 0}), V({1, 0})),
                                     ray_from(V({0, 0}), V({-1, -1})), quadrant});
  auto sa = sphere_project(trop_hypersurface_field(f, Valuation::trivial()));
  auto sb = sphere_project(trop_hypersurface_field(f, Valuation::modp(2)));
  auto sc = sphere_project(trop_hypersurface_field(f, Valuation::padic(2)));
  auto sd = sphere_project(d);
  auto e = sa.unite(sb);
  CHECK(e.equals(SphericalSet::points(2, {V({1, 0}), V({0, 1}), V({-1, -1}), V({1, 1})})) == Tri::True);
  auto expected_f = SphericalSet::arc(V({1, 0}), V({0, 1}), true, true).unite(SphericalSet::points(2, {V({-1, -1})}));
  CHECK(sd.equals(expected_f) == Tri::True);
  CHECK(sa.unite(sb).unite(sc).equals(sd) == Tri::True);
  CHECK(sd.str() == "[(1, 0) -> (0, 1)] u {(-1, -1)}");
  // Panel (c) alone: open arc plus the antipodal direction.
  CHECK(sc.str() == "((1, 0) -> (0, 1)) u {(-1, -1)}");
  // The field union of (a) and (b) is strictly smaller than (f).
  CHECK(e.subset_of(sd) == Tri::True);
  CHECK(e.equals(sd) == Tri::False);
}

TEST_CASE("integral tropicalization in rank one") {
  auto r2 = trop_hypersurface_Z(P("x-2", Z1));
  // Tie point at the origin plus the unit-failure ray.
  CHECK(shapes(r2) == std::set<Shape>{{{V({0})}, {}, {}}, ray_from(V({0}), V({1}))});
  CHECK(sphere_project(r2).str() == "{+1}");
  auto r1 = trop_hypersurface_Z(P("x-1", Z1));
  CHECK(shapes(r1) == std::set<Shape>{{{V({0})}, {}, {}}});
  CHECK(sphere_project(r1).is_empty() == Tri::True);
  CHECK(trop_hypersurface_Z(P("-x1*x2^3")).is_empty());
  auto zero = trop_hypersurface_Z(LaurentPoly(Z2));
  CHECK(zero.contains(V({5, -7})));
  CHECK(sphere_project(zero).full_circle());
}

TEST_CASE("integral tropicalization with torsion uses the exact unit test") {
  auto g = make_group(1, {5}, {"x", "y"});
  // y + y^4 - 1 is a unit of Z[Z/5], so only the tie locus survives.
  auto f = parse_polynomial("x*(y + y^4 - 1) - 1", g);
  auto r = trop_hypersurface_Z(f);
  CHECK(shapes(r) == std::set<Shape>{{{V({0})}, {}, {}}});
  auto h = parse_polynomial("x*(y + 1) - 1", g);
  auto rh = trop_hypersurface_Z(h);
  CHECK(sphere_project(rh).str() == "{-1}");
  CHECK(rh.contains(V({-3})));
  CHECK_FALSE(rh.contains(V({3})));
  auto big = make_group(1, {1000}, {"x", "y"});
  CHECK_THROWS_WITH_AS(trop_hypersurface_Z(parse_polynomial("x*(y+y^2-1) - 1", big)),
                       doctest::Contains("UNDECIDED-TORSION"), Error);
}

TEST_CASE("decomposition into valuation families") {
  auto f = P("x1+x2-2");
  auto fam = trop_Z_decomposition(f);
  REQUIRE(fam.size() == 3);
  CHECK(fam[0].label == "Q,trivial");
  CHECK(fam[1].label == "Q,2-adic");
  CHECK(fam[2].label == "F_2,trivial");
  CHECK(trop_Z_decomposition(P("x-1", Z1)).size() == 1);

  auto g = P("2x-2", Z1);
  auto parts = trop_Z_decomposition(g);
  SphericalSet u = SphericalSet::empty(1);
  for (const auto &p : parts)
    u = u.unite(sphere_project(p.region));
  CHECK(u.equals(SphericalSet::full(1)) == Tri::True);
  CHECK(u.equals(sphere_project(trop_hypersurface_Z(g))) == Tri::True);
  CHECK(!parts[2].region.diagnostics().empty());
}

TEST_CASE("prevariety") {
  auto aug = prevariety({P("x1-1"), P("x2-1")}, TropRing::Z());
  CHECK(shapes(aug) == std::set<Shape>{{{V({0, 0})}, {}, {}}});
  CHECK(sphere_project(aug).is_empty() == Tri::True);
  CHECK(aug.provenance() == Provenance::UpperBound);

  auto single = prevariety({P("x1+x2-2")}, TropRing::Z());
  CHECK(shapes(single) == shapes(trop_hypersurface_Z(P("x1+x2-2"))));
  CHECK(single.provenance() == Provenance::Exact);

  auto strict = prevariety({P("x-1", Z1), P("x-2", Z1)}, TropRing::Z());
  CHECK(shapes(strict) == std::set<Shape>{{{V({0})}, {}, {}}});
  CHECK(strict.provenance() == Provenance::UpperBound);

  auto unit = prevariety({P("x-1", Z1), P("-1", Z1)}, TropRing::Z());
  CHECK(unit.is_empty());
  CHECK(unit.provenance() == Provenance::Exact);
}

TEST_CASE("pullback along a surjection") {
  IntMatrix psi{{1, 0}};
  auto r = trop_hypersurface_Z(P("x-2", Z1));
  auto pb = pullback(psi, r);
  CHECK(shapes(pb) == std::set<Shape>{{{V({0, 0})}, {}, {}}, ray_from(V({0, 0}), V({1, 0}))});
  // Preimage of (x-2) under x1 -> x, x2 -> 1 is (x1-2, x2-1).
  auto direct = prevariety({P("x1-2"), P("x2-1")}, TropRing::Z());
  auto rng = testsupport::rng(30);
  for (int k = 0; k < 200; ++k) {
    Vec w = random_point(rng, 2);
    if (k % 3 == 0)
      w[1] = 0;
    CHECK(pb.contains(w) == direct.contains(w));
    CHECK(pb.contains(w) == pb.cells_contain(w));
  }
  auto id = pullback(IntMatrix::identity(2), trop_hypersurface_Z(P("x1+x2-2")));
  CHECK(shapes(id) == shapes(trop_hypersurface_Z(P("x1+x2-2"))));
  auto origin = pullback(psi, trop_hypersurface_Z(P("x-1", Z1)));
  CHECK(shapes(origin) == std::set<Shape>{{{V({0, 0})}, {}, {}}});
  CHECK_THROWS_AS(pullback(IntMatrix{{2, 0}}, r), Error);
}

TEST_CASE("definition consistency and oracle agreement on random polynomials") {
  auto rng = testsupport::rng(31);
  std::vector<Valuation> vals{Valuation::trivial(), Valuation::padic(2), Valuation::padic(3),
                              Valuation::modp(2), Valuation::modp(3)};
  for (int t = 0; t < 60; ++t) {
    std::size_t n = uniform(rng, 1, 2);
    auto g = make_group(n);
    auto f = testsupport::random_poly(rng, g, 5, 12, 2);
    if (f.is_zero())
      continue;
    for (const auto &v : vals) {
      if (reduce_mod_p(f, v.p ? v.p : 2).is_zero() && v.kind == Valuation::Kind::ModP)
        continue;
      auto region = trop_hypersurface_field(f, v);
      for (int k = 0; k < 40; ++k) {
        Vec w = random_point(rng, n);
        bool tie = tie_oracle(f, v, w);
        CHECK(tie == (initial_form_field(f, Character{w}, v).size() >= 2));
        CHECK(tie == region.cells_contain(w));
      }
      // Points on cells are ties.
      for (const auto &c : region.cells())
        CHECK(tie_oracle(f, v, *c.polyhedron.relative_interior_point()));
      // Maximal cells have codimension one.
      if (f.size() >= 2)
        for (const auto &c : region.cells())
          CHECK(c.polyhedron.dimension() == static_cast<int>(n) - 1);
    }
  }
}

TEST_CASE("integral tropicalization properties") {
  auto rng = testsupport::rng(32);
  for (int t = 0; t < 80; ++t) {
    std::size_t n = uniform(rng, 1, 2);
    auto g = make_group(n);
    auto f = testsupport::random_poly(rng, g, 5, 6, 2);
    if (f.is_zero())
      continue;
    auto region = trop_hypersurface_Z(f);
    // Origin lies in the region iff f is not a unit.
    CHECK(region.contains(Vec(n, 0)) == !is_unit_over_Z(f));
    for (int k = 0; k < 30; ++k) {
      Vec w = random_point(rng, n);
      bool in = region.contains(w);
      CHECK(in == region.cells_contain(w));
      Vec scaled = w;
      Rational s = make_rational(uniform(rng, 1, 9), uniform(rng, 1, 9));
      for (auto &x : scaled)
        x *= s;
      CHECK(in == region.contains(scaled));
    }
    // Sphere identity with the valuation families.
    SphericalSet u = SphericalSet::empty(n);
    for (const auto &p : trop_Z_decomposition(f))
      u = u.unite(sphere_project(p.region));
    CHECK(u.equals(sphere_project(region)) == Tri::True);
    // Primes outside the relevant set give the trivial tropicalization.
    auto primes = relevant_primes(f);
    for (long p : {2L, 3L, 5L, 7L}) {
      if (std::find(primes.begin(), primes.end(), Integer(p)) != primes.end())
        continue;
      auto base = shapes(trop_hypersurface_field(f, Valuation::trivial()));
      CHECK(shapes(trop_hypersurface_field(f, Valuation::padic(p))) == base);
      CHECK(shapes(trop_hypersurface_field(f, Valuation::modp(p))) == base);
    }
  }
}
