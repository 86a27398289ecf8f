#include "doctest.h"
#include "support.hpp"

#include "tropos/catalog.hpp"

#include <algorithm>
#include <functional>

using namespace tropos;

namespace {

WeightedGraph graph_from_mask(std::size_t n, std::uint32_t mask, const std::vector<long> &weights = {}) {
  WeightedGraph g;
  for (std::size_t v = 0; v < n; ++v)
    g.vertices.push_back("v" + std::to_string(v));
  std::size_t bit = 0;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1u)
        g.edges.push_back({u, v, weights.empty() ? 1 : weights[bit]});
  return g;
}

// Connectivity by depth-first search on an explicit vertex list.
bool connected_oracle(const WeightedGraph &g, const std::vector<std::size_t> &w) {
  if (w.empty())
    return true;
  std::vector<std::size_t> stack{w[0]}, seen{w[0]};
  auto in_w = [&](std::size_t x) { return std::find(w.begin(), w.end(), x) != w.end(); };
  while (!stack.empty()) {
    std::size_t x = stack.back();
    stack.pop_back();
    for (const auto &e : g.edges) {
      std::size_t y;
      if (e.u == x)
        y = e.v;
      else if (e.v == x)
        y = e.u;
      else
        continue;
      if (in_w(y) && std::find(seen.begin(), seen.end(), y) == seen.end()) {
        seen.push_back(y);
        stack.push_back(y);
      }
    }
  }
  return seen.size() == w.size();
}

std::vector<std::vector<std::size_t>> maximal_oracle(const WeightedGraph &g) {
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> disc;
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    std::vector<std::size_t> w;
    for (std::size_t v = 0; v < n; ++v)
      if (m >> v & 1u)
        w.push_back(v);
    if (!connected_oracle(g, w))
      disc.push_back(w);
  }
  std::vector<std::vector<std::size_t>> out;
  for (const auto &a : disc) {
    bool maximal = true;
    for (const auto &b : disc)
      if (b.size() > a.size() && std::includes(b.begin(), b.end(), a.begin(), a.end()))
        maximal = false;
    if (maximal)
      out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("graph JSON round trip and validation") {
  auto g = parse_graph(R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","weight":3},{"u":1,"v":2}]})");
  CHECK(g.size() == 3);
  REQUIRE(g.edges.size() == 2);
  CHECK(g.edges[0].weight == 3);
  CHECK(g.edges[1].weight == 1);
  auto back = parse_graph(graph_to_json(g));
  CHECK(graph_to_json(back) == graph_to_json(g));
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["a"],"edges":[{"u":"a","v":"a"}]})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","weight":0}]})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b"},{"u":"b","v":"a"}]})"), Error);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"z"}]})"), Error);
  CHECK_THROWS_AS(parse_graph("not json"), Error);
}

TEST_CASE("weighted RAAG presentation has the expected Fox columns") {
  auto g = parse_graph(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b","weight":3}]})");
  auto p = wraag_presentation(g);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0].size() == 12);
  auto fm = fox_matrix(p);
  CHECK(fm.matrix(0, 0).str() == "-3*x2 + 3");
  CHECK(fm.matrix(1, 0).str() == "3*x1 - 3");
}

TEST_CASE("maximally disconnected subsets agree with brute force") {
  for (std::size_t n = 0; n <= 5; ++n) {
    const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - (n > 0)) / 2);
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      auto g = graph_from_mask(n, mask);
      CHECK(maximally_disconnected_subsets(g) == maximal_oracle(g));
    }
  }
  auto path = graph_from_mask(3, 0b100 | 0b001); // v0-v1, v1-v2
  CHECK(maximally_disconnected_subsets(path) == std::vector<std::vector<std::size_t>>{{0, 2}});
  CHECK(maximally_disconnected_subsets(graph_from_mask(4, 0b111111)).empty());
}

TEST_CASE("vertex cap") {
  auto g = graph_from_mask(5, 0);
  CHECK_THROWS_AS(maximally_disconnected_subsets(g, 4), Error);
  CHECK_NOTHROW(maximally_disconnected_subsets(g, 5));
}

TEST_CASE("jump loci over Q match the rank oracle on small graphs") {
  auto rng = testsupport::rng(61);
  for (std::size_t n = 1; n <= 4; ++n) {
    const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      std::vector<long> w(pairs);
      for (auto &x : w)
        x = testsupport::uniform(rng, 1, 4);
      auto g = graph_from_mask(n, mask, w);
      auto loci = jump_loci_wraag(g, 0);
      CHECK(loci.provenance == Provenance::Exact);
      auto verdict = check_jump_loci(g, loci, rng);
      INFO(graph_to_json(g) << " " << verdict.detail);
      CHECK(verdict.agree);
      std::vector<std::size_t> all;
      for (std::size_t v = 0; v < n; ++v)
        all.push_back(v);
      CHECK(loci.full_torus == (n >= 2 && !connected_oracle(g, all)));
    }
  }
}

TEST_CASE("jump loci in positive characteristic") {
  auto g = parse_graph(R"({"vertices":["a","b","c"],"edges":[{"u":"a","v":"b","weight":2},{"u":"b","v":"c"}]})");
  CHECK_THROWS_AS(jump_loci_wraag(g, 2), Error);
  CHECK_THROWS_AS(jump_loci_wraag(g, 4, true), Error);
  auto l2 = jump_loci_wraag(g, 2, true);
  CHECK(l2.deleted_edges == std::vector<std::size_t>{0});
  CHECK(l2.full_torus);
  CHECK(l2.oracle == "agree");
  CHECK(l2.provenance == Provenance::Exact);
  auto l3 = jump_loci_wraag(g, 3, true);
  CHECK(l3.deleted_edges.empty());
  CHECK_FALSE(l3.full_torus);
  CHECK(l3.components == std::vector<std::vector<std::size_t>>{{0, 2}});
  CHECK(l3.provenance == Provenance::Exact);

  auto big = graph_from_mask(5, 0b1111111111);
  auto l5 = jump_loci_wraag(big, 2, true);
  CHECK(l5.oracle == "not run");
  CHECK(l5.provenance == Provenance::Unknown);
}

TEST_CASE("derived rule agrees with the oracle on small weighted graphs") {
  auto rng = testsupport::rng(62);
  for (long p : {2L, 3L}) {
    for (std::size_t n = 2; n <= 4; ++n) {
      const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
      for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
        std::vector<long> w(pairs);
        for (auto &x : w)
          x = testsupport::uniform(rng, 1, 6);
        auto g = graph_from_mask(n, mask, w);
        auto loci = jump_loci_wraag(g, p, true, 16, 4, rng());
        INFO(graph_to_json(g) << " p=" << p << " " << loci.oracle);
        CHECK(loci.oracle == "agree");
      }
    }
  }
}

TEST_CASE("Kahler classification") {
  for (std::size_t n = 0; n <= 6; ++n) {
    const std::uint32_t pairs = static_cast<std::uint32_t>(n * (n - (n > 0)) / 2);
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
      auto g = graph_from_mask(n, mask);
      bool complete = g.edges.size() == pairs;
      CHECK(kahler_classify(g).kahler == (complete && n % 2 == 0));
    }
  }
  // K4 with heavy edges forming a matching, then sharing a vertex.
  auto matching = graph_from_mask(4, 0b111111, {2, 1, 1, 1, 1, 3});
  CHECK(kahler_classify(matching).kahler);
  auto adjacent = graph_from_mask(4, 0b111111, {2, 2, 1, 1, 1, 1});
  auto v = kahler_classify(adjacent);
  CHECK_FALSE(v.kahler);
  CHECK(v.reason.find("adjacent") != std::string::npos);
  CHECK_FALSE(kahler_classify(graph_from_mask(3, 0b111)).kahler);
}

TEST_CASE("orbifold invariants") {
  CHECK(orbifold_euler({1, {}}) == 0);
  CHECK(orbifold_euler({1, {2}}) == Rational(-1, 2));
  CHECK(orbifold_euler({2, {2, 3}}) == Rational(-2 - Rational(1, 2) - Rational(2, 3)));
  CHECK(theta({}) == 1);
  CHECK(theta({2, 3}) == 1);
  CHECK(theta({2, 4}) == 2);
  CHECK(theta({6, 6, 6}) == 36);
  CHECK_THROWS_AS(orbifold_euler({0, {}}), Error);
  CHECK_THROWS_AS(orbifold_euler({1, {1}}), Error);

  auto p = orbifold_presentation({2, {3}});
  CHECK(p.generators == std::vector<std::string>{"x1", "x2", "y1", "y2", "z1"});
  CHECK(p.relators.size() == 2);
  auto ab = abelianize(p);
  CHECK(ab.group.rank() == 4);
  CHECK(ab.group.torsion_free());
  auto q = abelianize(orbifold_presentation({1, {2, 4}}));
  CHECK(q.group.rank() == 2);
  CHECK(q.group.torsion_size() == 2);
}

TEST_CASE("orbifold report cases") {
  auto t = orbifold_report({1, {}}, 0);
  CHECK(t.which == OrbifoldCase::Torus);
  CHECK(t.sigma_full);
  CHECK(t.trop_is_origin);
  CHECK(orbifold_report({2, {}}, 0).which == OrbifoldCase::Full);
  CHECK(orbifold_report({1, {2, 4}}, 0).which == OrbifoldCase::Punctured);
  CHECK(orbifold_report({1, {2, 4}}, 2).which == OrbifoldCase::Full);
  CHECK(orbifold_report({1, {2, 3}}, 0).which == OrbifoldCase::Trivial);
  CHECK(orbifold_report({1, {2, 3}}, 5).which == OrbifoldCase::Trivial);
  CHECK(orbifold_report({1, {2, 3}}, 3).which == OrbifoldCase::Full);
  auto r = orbifold_report({1, {2, 3}}, 0);
  CHECK(r.trop == "{0}");
  CHECK(r.sigma_empty);
  CHECK_THROWS_AS(orbifold_report({1, {2}}, 4), Error);
}

// Rank oracle over GF(q): H_1 at generic characters of the identity
// component and of the other components. Characteristic 0 is stood in for
// by a prime dividing no multiplicity.
TEST_CASE("orbifold cases agree with the Fox rank oracle") {
  auto rng = testsupport::rng(63);
  for (long g = 1; g <= 2; ++g)
    for (std::size_t s = 0; s <= 3; ++s) {
      std::vector<long> mu(s);
      for (int trial = 0; trial < 4; ++trial) {
        for (auto &m : mu)
          m = testsupport::uniform(rng, 2, 6);
        for (long p : {0L, 2L, 3L, 5L}) {
          OrbifoldData d{g, mu};
          auto rep = orbifold_report(d, p);
          long field_p = p == 0 ? 101 : p;
          auto pres = orbifold_presentation(d);
          auto ab = abelianize(pres);
          auto c = presentation_complex(pres);
          std::uint64_t m = 1;
          for (auto t : ab.group.torsion_orders()) {
            long tt = static_cast<long>(t);
            while (tt % field_p == 0)
              tt /= field_p;
            m = std::lcm<std::uint64_t>(m, static_cast<std::uint64_t>(tt));
          }
          auto K = GaloisField::with_roots_of_unity(field_p, m, 2048);
          INFO("g=" << g << " mu.size=" << s << " p=" << p << " case " << to_string(rep.which));
          bool seen_other = false;
          for (int k = 0; k < 6; ++k) {
            auto pt = random_point(K, ab.group, rng);
            bool identity_component = std::all_of(pt.torsion.begin(), pt.torsion.end(),
                                                  [&](auto x) { return x == K.one(); });
            bool inside = homology_dim(K, c, 1, pt) > 0;
            if (identity_component) {
              CHECK(inside == (rep.which == OrbifoldCase::Full));
            } else {
              seen_other = true;
              CHECK(rep.which != OrbifoldCase::Trivial);
              CHECK(inside);
            }
          }
          if (rep.which == OrbifoldCase::Punctured) {
            // Nontrivial torsion characters exist whenever theta > 1 and p
            // divides no multiplicity.
            CHECK(m > 1);
            (void)seen_other;
          }
          FieldPoint<GaloisField> one;
          one.free.assign(ab.group.rank(), K.one());
          one.torsion.assign(ab.group.torsion_orders().size(), K.one());
          CHECK(homology_dim(K, c, 1, one) > 0);
        }
      }
    }
}

TEST_CASE("jump loci oracle rejects wrong predictions") {
  auto rng = testsupport::rng(64);
  auto path = graph_from_mask(3, 0b101);
  auto loci = jump_loci_wraag(path, 0);
  auto wrong = loci;
  wrong.full_torus = true;
  CHECK_FALSE(check_jump_loci(path, wrong, rng).agree);
  wrong = loci;
  wrong.components.clear();
  auto v = check_jump_loci(path, wrong, rng);
  CHECK_FALSE(v.agree);
  CHECK(v.detail.find("predicted outside") != std::string::npos);
}
