#include "doctest.h"
#include "support.hpp"

#include "tropos/abelian.hpp"

using namespace tropos;

namespace {

bool unimodular(const IntMatrix &m) { return abs(determinant(m)) == 1; }

bool divisibility_chain(const IntMatrix &d) {
  std::size_t k = std::min(d.rows, d.cols);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const Integer &a = d(i, i), &b = d(i + 1, i + 1);
    if (a < 0 || b < 0)
      return false;
    if (a == 0 ? b != 0 : b % a != 0)
      return false;
  }
  return true;
}

void check_snf(const IntMatrix &m) {
  auto s = smith_normal_form(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(s.D.is_diagonal());
  CHECK(unimodular(s.U));
  CHECK(unimodular(s.V));
  CHECK(divisibility_chain(s.D));
}

} // namespace

TEST_CASE("smith normal form examples") {
  auto id = smith_normal_form(IntMatrix::identity(2));
  CHECK(id.D == IntMatrix::identity(2));

  IntMatrix m{{2, 4}, {6, 8}};
  auto s = smith_normal_form(m);
  CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
  check_snf(m);

  auto z = smith_normal_form(IntMatrix{{0}});
  CHECK(z.D == IntMatrix{{0}});

  auto e = smith_normal_form(IntMatrix(0, 3));
  CHECK(e.D.rows == 0);
  CHECK(e.D.cols == 3);
}

TEST_CASE("smith normal form round trip on random matrices") {
  auto r = testsupport::rng(1);
  for (int t = 0; t < 300; ++t) {
    std::size_t rows = testsupport::uniform(r, 1, 4), cols = testsupport::uniform(r, 1, 4);
    IntMatrix m(rows, cols);
    for (auto &x : m.data)
      x = testsupport::uniform(r, -6, 6);
    check_snf(m);
  }
}

TEST_CASE("hermite normal form") {
  IntMatrix m{{3, 3, 1, 4}, {0, 1, 0, 0}, {0, 0, 19, 16}, {0, 0, 0, 3}};
  auto [h, l] = hermite_normal_form(m);
  CHECK(l * m == h);
  CHECK(unimodular(l));
  CHECK(h == IntMatrix{{3, 0, 1, 1}, {0, 1, 0, 0}, {0, 0, 19, 1}, {0, 0, 0, 3}});
}

TEST_CASE("abelianize BS(1,2)") {
  auto p = parse_presentation("gens: a b\nrel: a b a^-1 b^-2\n");
  auto ab = abelianize(p);
  CHECK(ab.group.rank() == 1);
  CHECK(ab.group.torsion_orders().empty());
  CHECK(ab.generator_images[0].free_part == std::vector<Exponent>{1});
  CHECK(ab.generator_images[1].free_part == std::vector<Exponent>{0});
  for (const auto &rel : p.relators)
    CHECK(ab.word_image(rel).is_identity());
}

TEST_CASE("abelianize commutator power and torsion") {
  auto p = parse_presentation("gens: a b\nrel: [a,b]^3\n");
  CHECK(p.relators[0].size() == 12);
  auto ab = abelianize(p);
  CHECK(ab.group.rank() == 2);
  CHECK(ab.group.torsion_free());

  auto q = parse_presentation("gens: a\nrel: a^3\n");
  auto aq = abelianize(q);
  CHECK(aq.group.rank() == 0);
  CHECK(aq.group.torsion_orders() == std::vector<Exponent>{3});

  auto f = parse_presentation("gens: a b\n");
  CHECK(abelianize(f).group.rank() == 2);
}

TEST_CASE("abelianize kills every relator") {
  auto r = testsupport::rng(2);
  for (int t = 0; t < 100; ++t) {
    Presentation p;
    std::size_t g = testsupport::uniform(r, 1, 3);
    for (std::size_t i = 0; i < g; ++i)
      p.generators.push_back("a" + std::to_string(i));
    std::size_t nrel = testsupport::uniform(r, 0, 3);
    for (std::size_t j = 0; j < nrel; ++j) {
      Word w;
      long len = testsupport::uniform(r, 1, 6);
      for (long k = 0; k < len; ++k)
        w.push_back({static_cast<std::size_t>(testsupport::uniform(r, 0, static_cast<long>(g) - 1)),
                     testsupport::uniform(r, 0, 1) ? 1 : -1});
      p.relators.push_back(w);
    }
    auto ab = abelianize(p);
    for (const auto &rel : p.relators)
      CHECK(ab.word_image(rel).is_identity());
  }
}

TEST_CASE("pairing and sphere normalization") {
  FGAbelianGroup h(2);
  Character chi{{1, 0}};
  CHECK(pair(chi, GroupElement{{2, 5}, {}}) == 2);
  Character half{{make_rational(1, 2), make_rational(1, 3)}};
  CHECK(pair(half, std::vector<Exponent>{2, 3}) == 2);
  FGAbelianGroup t(1, {4});
  CHECK(pair(Character{{7}}, GroupElement{{0}, {3}}) == 0);

  CHECK(sphere_normalize(Character{{make_rational(2, 3), make_rational(4, 3)}}) ==
        std::vector<Integer>{1, 2});
  CHECK(sphere_normalize(Character{{-1, -1}}) == std::vector<Integer>{-1, -1});
  CHECK(sphere_normalize(Character{{0, 5}}) == std::vector<Integer>{0, 1});
  CHECK_THROWS_AS(sphere_normalize(Character{{0, 0}}), Error);

  auto r = testsupport::rng(3);
  for (int k = 0; k < 100; ++k) {
    auto c = testsupport::random_character(r, 3, 9, 5);
    if (c.is_zero())
      continue;
    Rational s = make_rational(testsupport::uniform(r, 1, 20), testsupport::uniform(r, 1, 20));
    Character scaled = c;
    for (auto &x : scaled.coords)
      x *= s;
    CHECK(sphere_normalize(scaled) == sphere_normalize(c));
  }
}

TEST_CASE("presentation parse errors") {
  CHECK_THROWS_AS(parse_presentation("gens: a\nrel: b\n"), Error);
  CHECK_THROWS_AS(parse_presentation("rel: a\n"), Error);
}
