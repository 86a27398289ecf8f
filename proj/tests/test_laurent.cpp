#include "doctest.h"
#include "support.hpp"

#include "tropos/laurent.hpp"

using namespace tropos;
using testsupport::uniform;

namespace {

const GroupPtr Z1 = make_group(1, {}, {"x"});
const GroupPtr Z2 = make_group(2);
const GroupPtr Z3 = make_group(3);

LaurentPoly P(const std::string &s, const GroupPtr &g = Z2, long p = 0) { return parse_polynomial(s, g, p); }

bool associates(const LaurentPoly &a, const LaurentPoly &b) { return normalize_unit(a) == normalize_unit(b); }

} // namespace

TEST_CASE("parse and print") {
  CHECK(P("x1 + x2 - 2").str() == "x1 + x2 - 2");
  CHECK(P("x^-1*x^2 + 3", Z1).str() == "x + 3");
  CHECK(P("-x1*x2^-3").str() == "-x1*x2^-3");
  CHECK(P("6x+10", Z1).str() == "6*x + 10");
  CHECK(P("(x1-1)^2").str() == "x1^2 - 2*x1 + 1");
  CHECK(P("0").str() == "0");
  CHECK(infer_variables({"x1 + x3"}) == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(infer_variables({"b + a"}) == std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(P("x1 +"), Error);
  CHECK_THROWS_AS(P("(x1+1)^-1"), Error);
  CHECK_THROWS_AS(P("y"), Error);
  CHECK_THROWS_WITH_AS(P("x1 $ 2"), doctest::Contains("position 3"), Error);
}

TEST_CASE("ring operations") {
  CHECK(P("x-1", Z1) * P("x+1", Z1) == P("x^2-1", Z1));
  auto f = P("x1+x2-2");
  CHECK((f + (-f)).is_zero());
  CHECK(P("x1+x2-2", Z2, 2) == P("x1+x2", Z2, 2));
  CHECK(reduce_mod_p(f, 2) == P("x1+x2", Z2, 2));
  CHECK(reduce_mod_p(P("x-2", Z1), 3) == P("x+1", Z1, 3));
  CHECK(reduce_mod_p(P("2x", Z1), 2).is_zero());
  CHECK_THROWS_AS(f + P("x1", Z2, 2), Error);
  CHECK_THROWS_AS(f + P("x1", Z3), Error);
}

TEST_CASE("ring axioms on random polynomials") {
  auto r = testsupport::rng(10);
  auto g = make_group(2, {2});
  for (int t = 0; t < 200; ++t) {
    auto a = testsupport::random_poly(r, g, 4, 5, 2);
    auto b = testsupport::random_poly(r, g, 4, 5, 2);
    auto c = testsupport::random_poly(r, g, 4, 5, 2);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - b) + b == a);
  }
}

TEST_CASE("coefficient valuations") {
  CHECK(coefficient_valuation(8, Valuation::padic(2)) == ExtRational(3L));
  CHECK(coefficient_valuation(6, Valuation::modp(2)).is_infinite());
  CHECK(coefficient_valuation(3, Valuation::modp(2)) == ExtRational(0L));
  CHECK(coefficient_valuation(-7, Valuation::trivial()) == ExtRational(0L));
  CHECK(coefficient_valuation(0, Valuation::trivial()).is_infinite());
  CHECK_THROWS_AS(Valuation::padic(4), Error);
  CHECK(parse_valuation("padic:3") == Valuation::padic(3));
  CHECK(parse_valuation("modp:2") == Valuation::modp(2));
  CHECK(parse_valuation("trivial") == Valuation::trivial());
  CHECK_THROWS_AS(parse_valuation("modp:9"), Error);
}

TEST_CASE("valuation axioms") {
  auto r = testsupport::rng(11);
  std::vector<Valuation> vals{Valuation::trivial(), Valuation::padic(2), Valuation::padic(3),
                              Valuation::modp(2), Valuation::modp(5)};
  for (const auto &v : vals) {
    CHECK(coefficient_valuation(1, v) == ExtRational(0L));
    for (int t = 0; t < 300; ++t) {
      Integer a = uniform(r, -60, 60), b = uniform(r, -60, 60);
      auto va = coefficient_valuation(a, v), vb = coefficient_valuation(b, v);
      CHECK(coefficient_valuation(a * b, v) == va + vb);
      auto m = va < vb ? va : vb;
      CHECK(m <= coefficient_valuation(a + b, v));
    }
  }
}

TEST_CASE("degrees and initial forms") {
  auto f = P("x1+x2-2");
  CHECK(chi_degree(f, Character{{1, 1}}) == 0);
  CHECK(chi_degree(P("x-2", Z1), Character{{1}}) == 0);
  CHECK(chi_degree(P("x^-1+x", Z1), Character{{1}}) == -1);
  CHECK_THROWS_AS(chi_degree(LaurentPoly(Z1), Character{{1}}), Error);

  CHECK(initial_form_ring(f, Character{{1, 1}}) == P("-2"));
  CHECK(initial_form_ring(f, Character{{0, 0}}) == f);
  CHECK(initial_form_ring(f, Character{{1, 0}}) == P("x2-2"));

  CHECK(initial_form_field(f, Character{{1, 1}}, Valuation::padic(2)) == f);
  CHECK(initial_form_field(f, Character{{1, 1}}, Valuation::trivial()) == P("-2"));
  CHECK(initial_form_field(f, Character{{0, 0}}, Valuation::padic(2)) == P("x1+x2"));
  CHECK(initial_form_field(f, Character{{1, 1}}, Valuation::modp(2)) == P("x1+x2", Z2, 2));
  CHECK_THROWS_AS(initial_form_field(P("2x1+4"), Character{{0, 0}}, Valuation::modp(2)), Error);
}

TEST_CASE("initial forms are multiplicative over a torsion-free group") {
  auto r = testsupport::rng(12);
  for (int t = 0; t < 300; ++t) {
    auto a = testsupport::random_poly(r, Z3, 4, 6, 2);
    auto b = testsupport::random_poly(r, Z3, 4, 6, 2);
    if (a.is_zero() || b.is_zero())
      continue;
    auto chi = testsupport::random_character(r, 3, 3, 2);
    CHECK(initial_form_ring(a * b, chi) == initial_form_ring(a, chi) * initial_form_ring(b, chi));
    CHECK(chi_degree(a * b, chi) == chi_degree(a, chi) + chi_degree(b, chi));
  }
}

TEST_CASE("units over Z") {
  CHECK(is_unit_over_Z(P("-x1*x2^-3")));
  CHECK_FALSE(is_unit_over_Z(P("-2")));
  CHECK_FALSE(is_unit_over_Z(P("x1+x2")));
  CHECK_FALSE(is_unit_over_Z(LaurentPoly(Z2)));

  // Z[Z/5]: 1 - y + y^2 ... the golden-ratio unit y + y^4 - 1 has inverse y^2 + y^3 - 1.
  auto c5 = make_group(0, {5}, {"y"});
  auto u = P("y + y^4 - 1", c5);
  CHECK(u * P("y^2 + y^3 - 1", c5) == P("1", c5));
  CHECK(unit_status_over_Z(u) == UnitStatus::Unit);
  CHECK(unit_status_over_Z(P("y + 1", c5)) == UnitStatus::NotUnit);
  CHECK(unit_status_over_Z(P("y", c5)) == UnitStatus::Unit);
  auto mixed = make_group(1, {5}, {"x", "y"});
  CHECK(unit_status_over_Z(P("x*y + x*y^4 - x", mixed)) == UnitStatus::Unit);
  CHECK(unit_status_over_Z(P("x + y", mixed)) == UnitStatus::NotUnit);
  // Z[Z/2]: only the trivial units exist.
  auto c2 = make_group(0, {2}, {"y"});
  CHECK(unit_status_over_Z(P("2y - 1", c2)) == UnitStatus::NotUnit);
  CHECK(unit_status_over_Z(P("-y", c2)) == UnitStatus::Unit);
  auto big = make_group(0, {1000}, {"y"});
  CHECK(unit_status_over_Z(P("y^2 + y - 1", big)) == UnitStatus::Undecided);
  CHECK_THROWS_AS(is_unit_over_Z(P("y^2 + y - 1", big)), Error);
}

TEST_CASE("content and gcd") {
  auto cp = content_primitive(P("6x+10", Z1));
  CHECK(cp.content == 2);
  CHECK(cp.primitive == P("3x+5", Z1));
  CHECK(relevant_primes(P("6x+10", Z1)) == std::vector<Integer>{2, 3, 5});
  CHECK(relevant_primes(P("x1+x2-2")) == std::vector<Integer>{2});
  CHECK(relevant_primes(P("x-1", Z1)).empty());

  auto a = P("(x1-1)*(x2-1)"), b = P("(x1-1)^2");
  auto g = gcd(a, b);
  CHECK(g == P("x1-1"));
  CHECK(divide_exact(a, g).has_value());
  CHECK(divide_exact(b, g).has_value());

  auto f = P("-x1^-1 * x2^2 + 3*x2^3");
  CHECK(gcd(f, LaurentPoly(Z2)) == normalize_unit(f));
  CHECK(normalize_unit(f) == P("3*x1*x2 - 1"));
  CHECK(gcd(P("x-2", Z1), P("x-1", Z1)) == P("1", Z1));
  CHECK(gcd(P("4x-4", Z1), P("6x^2-6", Z1)) == P("2x-2", Z1));
  CHECK_THROWS_AS(gcd(P("y", make_group(1, {2}, {"x", "y"})), P("y", make_group(1, {2}, {"x", "y"}))),
                  Error);
  CHECK(!divide_exact(P("x1+1"), P("x1-1")).has_value());
  CHECK(*divide_exact(P("x1^-2 - 1"), P("x1 - 1")) == -P("x1+1"));
}

TEST_CASE("gcd properties on random polynomials") {
  auto r = testsupport::rng(13);
  for (int t = 0; t < 150; ++t) {
    auto a = testsupport::random_poly(r, Z3, 3, 4, 1);
    auto b = testsupport::random_poly(r, Z3, 3, 4, 1);
    auto h = testsupport::random_poly(r, Z3, 3, 4, 1);
    if (a.is_zero() || b.is_zero() || h.is_zero())
      continue;
    auto g = gcd(a, b);
    CHECK(divide_exact(a, g).has_value());
    CHECK(divide_exact(b, g).has_value());
    CHECK(associates(gcd(a * h, b * h), g * h));
  }
}
