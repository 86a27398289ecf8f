#include "doctest.h"
#include "support.hpp"

#include "tropos/alexander.hpp"

#include <set>

using namespace tropos;

namespace {

const char *kBS12 = "gens: a b\nrel: a b a^-1 b^-2\n";
const char *kBrown = "gens: a b\nrel: a^-1 b^-1 a b^2 a^-1 b^-1 a^2 b^-1 a^-1 b a^-1 b a b^-1\n";

Vec V(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs)
    v.emplace_back(x);
  return v;
}

std::set<std::string> strs(const std::vector<LaurentPoly> &v) {
  std::set<std::string> s;
  for (const auto &p : v)
    s.insert(p.str());
  return s;
}

// Fox derivative by splitting the word in halves:
// d(uv) = du + u dv, with the letter rules at the leaves.
LaurentPoly fox_oracle(const Word &w, std::size_t a, const Abelianization &ab, const GroupPtr &g) {
  if (w.empty())
    return LaurentPoly(g);
  if (w.size() == 1) {
    const Letter &l = w[0];
    if (l.generator != a)
      return LaurentPoly(g);
    if (l.exponent > 0)
      return LaurentPoly::constant(g, 1);
    return LaurentPoly::monomial(g, negate(*g, ab.generator_images[a]), -1);
  }
  Word u(w.begin(), w.begin() + static_cast<long>(w.size() / 2));
  Word v(w.begin() + static_cast<long>(w.size() / 2), w.end());
  LaurentPoly uu = LaurentPoly::monomial(g, ab.word_image(u));
  return fox_oracle(u, a, ab, g) + uu * fox_oracle(v, a, ab, g);
}

// Determinant by Laplace expansion along the first row.
LaurentPoly laplace(const PolyMatrix &m) {
  if (m.rows == 0)
    return LaurentPoly::constant(m.group, 1);
  LaurentPoly d(m.group);
  for (std::size_t j = 0; j < m.cols; ++j) {
    PolyMatrix sub(m.group, m.rows - 1, m.cols - 1);
    for (std::size_t r = 1; r < m.rows; ++r)
      for (std::size_t c = 0, cc = 0; c < m.cols; ++c) {
        if (c == j)
          continue;
        sub(r - 1, cc++) = m(r, c);
      }
    LaurentPoly t = m(0, j) * laplace(sub);
    if (j % 2)
      d -= t;
    else
      d += t;
  }
  return d;
}

// All k-minors of the full matrix, normalized, zero dropped.
std::set<std::string> brute_minors(const PolyMatrix &m, std::size_t k) {
  std::set<std::string> out;
  std::vector<std::size_t> rows, cols;
  std::function<void(std::size_t, std::size_t)> pick_cols;
  std::function<void(std::size_t)> pick_rows = [&](std::size_t start) {
    if (rows.size() == k) {
      pick_cols(0, 0);
      return;
    }
    for (std::size_t r = start; r < m.rows; ++r) {
      rows.push_back(r);
      pick_rows(r + 1);
      rows.pop_back();
    }
  };
  pick_cols = [&](std::size_t start, std::size_t) {
    if (cols.size() == k) {
      PolyMatrix sub(m.group, k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          sub(a, b) = m(rows[a], cols[b]);
      LaurentPoly d = laplace(sub);
      if (!d.is_zero())
        out.insert(normalize_unit(d).str());
      return;
    }
    for (std::size_t c = start; c < m.cols; ++c) {
      cols.push_back(c);
      pick_cols(c + 1, 0);
      cols.pop_back();
    }
  };
  pick_rows(0);
  return out;
}

Presentation random_presentation(std::mt19937_64 &r, std::size_t g, std::size_t rels, long len) {
  Presentation p;
  for (std::size_t i = 0; i < g; ++i)
    p.generators.push_back(std::string(1, static_cast<char>('a' + i)));
  for (std::size_t j = 0; j < rels; ++j) {
    Word w;
    long n = testsupport::uniform(r, 1, len);
    for (long t = 0; t < n; ++t)
      w.push_back({static_cast<std::size_t>(testsupport::uniform(r, 0, static_cast<long>(g) - 1)),
                   testsupport::uniform(r, 0, 1) ? 1 : -1});
    p.relators.push_back(w);
  }
  return p;
}

} // namespace

TEST_CASE("Fox derivatives of the examples") {
  auto p = parse_presentation(kBS12);
  auto fox = fox_matrix(p);
  CHECK(fox.group->rank() == 1);
  CHECK(fox.matrix(1, 0) == parse_polynomial("x - 2", fox.group));
  CHECK(fox.matrix(0, 0).is_zero());

  auto q = parse_presentation(kBrown);
  auto fq = fox_matrix(q);
  REQUIRE(fq.group->rank() == 2);
  CHECK(fq.matrix(0, 0) == parse_polynomial("(x2^-1 - 1)*(x1^-1 - 1)", fq.group));
  CHECK(fq.matrix(1, 0) == parse_polynomial("-x1^-1*x2^-1*(x1 - 1)^2", fq.group));
}

TEST_CASE("presentation complexes") {
  auto c = presentation_complex(parse_presentation(kBS12));
  CHECK(c.ranks == std::vector<std::size_t>{1, 2, 1});
  CHECK(c.boundaries[1](0, 0).is_zero());
  CHECK(c.boundaries[1](1, 0).str() == "x - 2");
  CHECK(c.boundaries[0](0, 0).str() == "x - 1");
  CHECK(c.boundaries[0](0, 1).is_zero());

  auto free = presentation_complex(parse_presentation("gens: a b\n"));
  CHECK(free.boundaries[1].cols == 0);
  CHECK(free.boundaries[0](0, 0).str() == "x1 - 1");
  CHECK(free.boundaries[0](0, 1).str() == "x2 - 1");

  auto f = parse_polynomial("x1 + x2 - 2");
  auto ex3 = presentation_complex(presentation_with_fox_factor(f));
  auto g = ex3.group;
  CHECK(ex3.boundaries[1](0, 0) == parse_polynomial("(x1 + x2 - 2)*(x2 - 1)", g));
  CHECK(ex3.boundaries[1](1, 0) == parse_polynomial("-(x1 + x2 - 2)*(x1 - 1)", g));
}

TEST_CASE("Fox derivative agrees with the splitting oracle and the fundamental identity") {
  auto r = testsupport::rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = static_cast<std::size_t>(testsupport::uniform(r, 1, 3));
    auto p = random_presentation(r, g, static_cast<std::size_t>(testsupport::uniform(r, 0, 2)), 12);
    auto ab = abelianize(p);
    auto grp = group_ring(ab);
    for (const auto &w : p.relators) {
      LaurentPoly sum(grp);
      for (std::size_t a = 0; a < g; ++a) {
        auto d = fox_derivative(w, a, ab, grp);
        CHECK(d == fox_oracle(w, a, ab, grp));
        sum += d * (LaurentPoly::monomial(grp, ab.generator_images[a]) - LaurentPoly::constant(grp, 1));
      }
      CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("fox factor presentations realize the column for random polynomials") {
  auto r = testsupport::rng(43);
  auto g = make_group(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = testsupport::random_poly(r, g, 3, 3, 2);
    if (f.is_zero())
      continue;
    auto c = presentation_complex(presentation_with_fox_factor(f));
    REQUIRE(c.group->rank() == 2);
    auto gg = c.group;
    LaurentPoly ff(gg);
    for (const auto &[e, k] : f.terms())
      ff.add_term(e, k);
    CHECK(c.boundaries[1](0, 0) == ff * parse_polynomial("x2 - 1", gg));
    CHECK(c.boundaries[1](1, 0) == -(ff * parse_polynomial("x1 - 1", gg)));
  }
}

TEST_CASE("jump ideals of the examples") {
  auto c = presentation_complex(parse_presentation(kBS12));
  auto j1 = jump_ideal(c, 1);
  CHECK(strs(j1.generators) == std::set<std::string>{"x^2 - 3*x + 2"});
  CHECK(j1.principal_part.str() == "x^2 - 3*x + 2");
  auto j0 = jump_ideal(c, 0);
  CHECK(strs(j0.generators) == std::set<std::string>{"x - 1"});

  auto b = presentation_complex(parse_presentation(kBrown));
  auto jb = jump_ideal(b, 1);
  CHECK(jb.principal_part.str() == "x1 - 1");

  auto f = parse_polynomial("x1 + x2 - 2");
  auto e3 = presentation_complex(presentation_with_fox_factor(f));
  auto j3 = jump_ideal(e3, 1);
  CHECK(j3.principal_part == parse_polynomial("x1 + x2 - 2", e3.group));
  CHECK(strs(j3.residual) == std::set<std::string>{"x1^2 - 2*x1 + 1", "x1*x2 - x1 - x2 + 1", "x2^2 - 2*x2 + 1"});
}

TEST_CASE("block minors agree with brute-force minors of the full matrix") {
  auto r = testsupport::rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = static_cast<std::size_t>(testsupport::uniform(r, 1, 3));
    auto p = random_presentation(r, g, static_cast<std::size_t>(testsupport::uniform(r, 0, 2)), 8);
    auto c = presentation_complex(p);
    for (std::size_t i = 0; i <= 1; ++i) {
      auto J = jump_ideal(c, i);
      CHECK(strs(J.generators) == brute_minors(jump_matrix(c, i), c.ranks[i]));
    }
  }
}

TEST_CASE("minor vanishing matches rank deficiency at random points") {
  auto r = testsupport::rng(53);
  RationalField Q;
  for (int trial = 0; trial < 30; ++trial) {
    auto g = static_cast<std::size_t>(testsupport::uniform(r, 1, 3));
    auto p = random_presentation(r, g, static_cast<std::size_t>(testsupport::uniform(r, 1, 2)), 8);
    auto c = presentation_complex(p);
    long m = 1;
    for (auto d : c.group->torsion_orders())
      m = std::lcm(m, static_cast<long>(d));
    for (long prime : {2L, 3L, 7L}) {
      auto pm = m;
      while (pm % prime == 0)
        pm /= prime;
      auto K = GaloisField::with_roots_of_unity(prime, static_cast<std::uint64_t>(pm), 8);
      for (std::size_t i = 0; i <= 1; ++i) {
        auto J = jump_ideal(c, i);
        for (int s = 0; s < 10; ++s) {
          auto pt = random_point(K, *c.group, r);
          bool vanish = std::all_of(J.generators.begin(), J.generators.end(),
                                    [&](const LaurentPoly &f) { return K.is_zero(evaluate(K, f, pt)); });
          std::size_t rk = rank_at(K, c.boundary(i), pt) + (i ? rank_at(K, c.boundary(i - 1), pt) : 0);
          CHECK(vanish == (rk < c.ranks[i]));
          CHECK(vanish == (homology_dim(K, c, i, pt) > 0));
        }
      }
    }
    if (!c.group->torsion_free())
      continue;
    for (int s = 0; s < 10; ++s) {
      auto pt = random_point(Q, *c.group, r);
      auto J = jump_ideal(c, 1);
      bool vanish = std::all_of(J.generators.begin(), J.generators.end(),
                                [&](const LaurentPoly &f) { return evaluate(Q, f, pt) == 0; });
      CHECK(vanish == (homology_dim(Q, c, 1, pt) > 0));
    }
  }
}

TEST_CASE("minor cap") {
  auto c = presentation_complex(parse_presentation(kBrown));
  CHECK_THROWS_WITH_AS(jump_ideal(c, 1, 2), doctest::Contains("above the cap"), Error);
}

TEST_CASE("chain data files") {
  const char *text = "ranks: 1 2 1\n"
                     "vars: x\n"
                     "d0:\n"
                     "x - 1, 0\n"
                     "d1:\n"
                     "0\n"
                     "x - 2\n";
  const char *transposed = "ranks: 1 2 1\n"
                           "vars: x\n"
                           "d0:\n"
                           "x - 1\n"
                           "0\n"
                           "d1:\n"
                           "0, x - 2\n";
  auto a = parse_chain_data(text);
  auto b = parse_chain_data(transposed, true);
  CHECK(a.boundaries[1](1, 0).str() == "x - 2");
  for (std::size_t i = 0; i < 2; ++i)
    CHECK(a.boundaries[i].data == b.boundaries[i].data);
  CHECK(strs(jump_ideal(a, 1).generators) == std::set<std::string>{"x^2 - 3*x + 2"});
  CHECK_THROWS_AS(parse_chain_data("ranks: 1 1\nd0:\nx - 1, 2\n"), Error);
  CHECK_THROWS_AS(parse_chain_data("ranks: 1 1 1\nd0:\nx - 1\nd1:\n1\n"), Error); // d0 d1 != 0

  // A three-term complex: the circle times the circle with d2 != 0.
  auto torus = parse_chain_data("ranks: 1 2 1\nvars: x y\nd0:\nx - 1, y - 1\nd1:\n1 - y\nx - 1\n");
  auto j2 = jump_ideal(torus, 2);
  CHECK(strs(j2.generators) == std::set<std::string>{"x - 1", "y - 1"});
}

TEST_CASE("BNSR bounds and fixture audits") {
  auto b1 = bnsr_upper_bound(parse_presentation(kBS12));
  CHECK(b1.provenance == Provenance::Exact);
  CHECK(b1.trop_sphere.str() == "{+1}");
  CHECK(b1.complement.str() == "{-1}");
  BnsFixture f1{"bs12", SphericalSet::points(1, {V({-1})}), "Z", "hand computation"};
  auto a1 = audit_inclusion(f1, b1.complement);
  CHECK(a1.included == Tri::True);
  CHECK(a1.strict == Tri::False);

  auto b2 = bnsr_upper_bound(parse_presentation(kBrown));
  CHECK(b2.provenance == Provenance::Exact);
  CHECK(b2.degrees[1].residual_kind == ResidualKind::Augmentation);
  CHECK(b2.trop_sphere.equals(SphericalSet::points(2, {V({0, 1}), V({0, -1})})) == Tri::True);
  auto arcs = SphericalSet::arc(V({1, 0}), V({0, 1}), false, false)
                  .unite(SphericalSet::arc(V({0, 1}), V({-1, -1}), false, false));
  auto a2 = audit_inclusion(BnsFixture{"brown", arcs, "Z", "two open arcs"}, b2.complement);
  CHECK(a2.included == Tri::True);
  CHECK(a2.strict == Tri::True);
  CHECK(audit_inclusion(BnsFixture{"empty", SphericalSet::empty(2), "Z", ""}, b2.complement).included == Tri::True);

  // The classical convention is the antipode.
  BnsFixture g1{"bs12-classical", SphericalSet::points(1, {V({1})}), "G", ""};
  CHECK(audit_inclusion(g1, b1.complement).included == Tri::True);

  auto f = parse_polynomial("x1 + x2 - 2");
  auto b3 = bnsr_upper_bound(presentation_with_fox_factor(f));
  CHECK(b3.provenance == Provenance::Exact);
  CHECK(b3.trop_sphere.equals(sphere_project(trop_hypersurface_Z(f))) == Tri::True);
  CHECK(b3.outer_complement.equals(b3.complement) == Tri::True);
}

TEST_CASE("BNSR bound provenance with a general residual") {
  // Residual (x1 + x2 - 2, x1 - 3): prevariety only, so an upper bound.
  auto c = parse_chain_data("ranks: 1 2 1\nvars: x1 x2\n"
                            "d0:\nx1 - 1, x2 - 1\n"
                            "d1:\n(x2 - 1)*(x1 + x2 + 1)\n-(x1 - 1)*(x1 + x2 + 1)\n");
  auto b = bnsr_upper_bound(c);
  CHECK(b.degrees[0].residual_kind == ResidualKind::Augmentation);
  CHECK(b.provenance == Provenance::Exact);

  auto g = parse_chain_data("ranks: 1 2 2\nvars: x1 x2\n"
                            "d0:\nx1 - 1, x2 - 1\n"
                            "d1:\n(x2 - 1)*(x1 + x2 - 2), (x2 - 1)*(x1 - 3)\n"
                            "-(x1 - 1)*(x1 + x2 - 2), -(x1 - 1)*(x1 - 3)\n");
  auto bg = bnsr_upper_bound(g);
  CHECK(bg.degrees[1].residual_kind == ResidualKind::General);
  CHECK(bg.provenance == Provenance::UpperBound);
  CHECK(bg.complement.subset_of(bg.outer_complement) == Tri::True);
}

TEST_CASE("Dwyer-Fried test") {
  auto x2 = parse_polynomial("x - 2");
  auto z = dwyer_fried_test({x2}, TropRing::Z());
  CHECK(z.finitely_generated == Tri::False);
  CHECK(sphere_project(z.region).str() == "{+1}");
  CHECK(dwyer_fried_test({x2}, TropRing::field(Valuation::trivial())).finitely_generated == Tri::True);
  CHECK(dwyer_fried_test({x2}, TropRing::field(Valuation::modp(3))).finitely_generated == Tri::True);
  CHECK(dwyer_fried_test({parse_polynomial("x - 1")}, TropRing::Z()).finitely_generated == Tri::True);
}

TEST_CASE("finite fields") {
  for (auto [p, k] : std::vector<std::pair<long, unsigned>>{{2, 1}, {2, 8}, {3, 5}, {7, 1}, {5, 3}}) {
    GaloisField K(p, k);
    auto r = testsupport::rng(static_cast<std::uint64_t>(p * 100 + k));
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(K.size() - 1));
    for (int t = 0; t < 300; ++t) {
      auto a = pick(r), b = pick(r), c = pick(r);
      CHECK(K.add(a, b) == K.add(b, a));
      CHECK(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)));
      CHECK(K.sub(K.add(a, b), b) == a);
      if (a != 0)
        CHECK(K.mul(a, K.inv(a)) == 1);
    }
    // p * 1 = 0 and the generator has full order.
    GaloisField::Elem s = 0;
    for (long i = 0; i < p; ++i)
      s = K.add(s, 1);
    CHECK(s == 0);
    CHECK(K.pow(K.generator(), static_cast<std::int64_t>(K.size() - 1)) == 1);
  }
  auto K = GaloisField::with_roots_of_unity(2, 3, 8);
  CHECK((K.size() - 1) % 3 == 0);
}
