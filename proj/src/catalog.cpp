#include "tropos/catalog.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace tropos {

using json = nlohmann::json;

void WeightedGraph::validate() const {
  std::set<std::string> names(vertices.begin(), vertices.end());
  if (names.size() != vertices.size())
    throw Error("duplicate vertex name");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto &e : edges) {
    if (e.u >= vertices.size() || e.v >= vertices.size())
      throw Error("edge endpoint out of range");
    if (e.u == e.v)
      throw Error("loop at vertex " + vertices[e.u]);
    if (e.weight < 1)
      throw Error("edge weight must be a positive integer");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      throw Error("repeated edge " + vertices[e.u] + "-" + vertices[e.v]);
  }
}

bool WeightedGraph::is_complete() const {
  const std::size_t n = vertices.size();
  return edges.size() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

WeightedGraph WeightedGraph::without_weights_divisible_by(long p) const {
  WeightedGraph g;
  g.vertices = vertices;
  for (const auto &e : edges)
    if (p == 0 || e.weight % p != 0)
      g.edges.push_back(e);
  return g;
}

WeightedGraph parse_graph(const std::string &json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception &e) {
    throw Error(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices"))
    throw Error("graph JSON needs a \"vertices\" array");
  WeightedGraph g;
  for (const auto &v : j.at("vertices")) {
    if (!v.is_string())
      throw Error("vertex names must be strings");
    g.vertices.push_back(v.get<std::string>());
  }
  auto endpoint = [&](const json &x) -> std::size_t {
    if (x.is_number_unsigned() || x.is_number_integer()) {
      auto i = x.get<long>();
      if (i < 0 || static_cast<std::size_t>(i) >= g.vertices.size())
        throw Error("edge endpoint index out of range");
      return static_cast<std::size_t>(i);
    }
    if (x.is_string()) {
      auto it = std::find(g.vertices.begin(), g.vertices.end(), x.get<std::string>());
      if (it == g.vertices.end())
        throw Error("unknown vertex '" + x.get<std::string>() + "'");
      return static_cast<std::size_t>(it - g.vertices.begin());
    }
    throw Error("edge endpoints must be names or indices");
  };
  if (j.contains("edges"))
    for (const auto &e : j.at("edges")) {
      WeightedEdge w;
      w.u = endpoint(e.at("u"));
      w.v = endpoint(e.at("v"));
      w.weight = e.contains("weight") ? e.at("weight").get<long>() : 1;
      g.edges.push_back(w);
    }
  g.validate();
  return g;
}

WeightedGraph load_graph(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw Error("cannot open graph file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_graph(ss.str());
}

std::string graph_to_json(const WeightedGraph &g) {
  json j;
  j["vertices"] = g.vertices;
  j["edges"] = json::array();
  for (const auto &e : g.edges)
    j["edges"].push_back({{"u", g.vertices[e.u]}, {"v", g.vertices[e.v]}, {"weight", e.weight}});
  return j.dump();
}

Presentation wraag_presentation(const WeightedGraph &g) {
  g.validate();
  Presentation p;
  p.generators = g.vertices;
  for (const auto &e : g.edges) {
    Word w;
    Word c = commutator(e.u, e.v);
    for (long k = 0; k < e.weight; ++k)
      w.insert(w.end(), c.begin(), c.end());
    p.relators.push_back(w);
  }
  p.validate();
  return p;
}

std::size_t default_vertex_cap() {
  if (const char *env = std::getenv("TROPOS_VERTEX_CAP")) {
    char *end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 30)
      return v;
  }
  return 16;
}

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency(const WeightedGraph &g) {
  std::vector<Mask> adj(g.size(), 0);
  for (const auto &e : g.edges) {
    adj[e.u] |= Mask(1) << e.v;
    adj[e.v] |= Mask(1) << e.u;
  }
  return adj;
}

bool induced_connected(const std::vector<Mask> &adj, Mask w) {
  if (w == 0)
    return true;
  Mask reached = w & (~w + 1);
  Mask frontier = reached;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1)
      next |= adj[static_cast<std::size_t>(__builtin_ctz(f))];
    next &= w & ~reached;
    reached |= next;
    frontier = next;
  }
  return reached == w;
}

std::vector<std::size_t> members(Mask w) {
  std::vector<std::size_t> out;
  for (; w; w &= w - 1)
    out.push_back(static_cast<std::size_t>(__builtin_ctz(w)));
  return out;
}

} // namespace

std::vector<std::vector<std::size_t>> maximally_disconnected_subsets(const WeightedGraph &g, std::size_t cap) {
  g.validate();
  const std::size_t n = g.size();
  if (n > cap)
    throw Error("graph has " + std::to_string(n) + " vertices, above the cap of " + std::to_string(cap));
  if (n > 30)
    throw Error("graph too large for the subset search");
  auto adj = adjacency(g);
  const Mask all = n == 0 ? 0 : static_cast<Mask>((std::uint64_t(1) << n) - 1);
  std::vector<bool> disconnected(std::size_t(all) + 1, false);
  for (Mask w = 1; w <= all && w != 0; ++w) {
    disconnected[w] = !induced_connected(adj, w);
    if (w == all)
      break;
  }
  std::vector<Mask> maximal;
  for (Mask w = 1; w <= all && w != 0; ++w) {
    if (disconnected[w]) {
      bool is_max = true;
      for (std::size_t v = 0; v < n && is_max; ++v) {
        Mask bit = Mask(1) << v;
        if (!(w & bit) && disconnected[w | bit])
          is_max = false;
      }
      // Adding one vertex at a time suffices only if disconnected supersets
      // are reachable that way; check all supersets otherwise.
      if (is_max) {
        Mask rest = all & ~w;
        for (Mask s = rest; s && is_max; s = (s - 1) & rest)
          if (disconnected[w | s])
            is_max = false;
      }
      if (is_max)
        maximal.push_back(w);
    }
    if (w == all)
      break;
  }
  std::vector<std::vector<std::size_t>> out;
  for (Mask w : maximal)
    out.push_back(members(w));
  std::sort(out.begin(), out.end());
  return out;
}

WraagJumpLoci jump_loci_wraag(const WeightedGraph &g, long p, bool derived_charp, std::size_t cap,
                              std::size_t oracle_limit, std::uint64_t seed) {
  g.validate();
  if (p < 0 || (p > 0 && !is_prime(p)))
    throw Error("characteristic must be 0 or a prime");
  if (p > 0 && !derived_charp)
    throw Error("positive characteristic uses the derived edge-deletion rule; pass --derived-charp");
  WraagJumpLoci out;
  out.characteristic = p;
  WeightedGraph h = g;
  if (p > 0) {
    h = g.without_weights_divisible_by(p);
    for (std::size_t i = 0; i < g.edges.size(); ++i)
      if (g.edges[i].weight % p == 0)
        out.deleted_edges.push_back(i);
  }
  out.components = maximally_disconnected_subsets(h, cap);
  Mask all_mask = 0;
  for (std::size_t v = 0; v < h.size(); ++v)
    all_mask |= Mask(1) << v;
  out.full_torus = h.size() >= 2 && !induced_connected(adjacency(h), all_mask);
  if (p > 0) {
    if (g.size() <= oracle_limit) {
      std::mt19937_64 rng(seed);
      auto v = check_jump_loci(g, out, rng);
      out.oracle = v.agree ? "agree" : "DISCREPANCY: " + v.detail;
      out.provenance = v.agree ? Provenance::Exact : Provenance::Unknown;
    } else {
      out.provenance = Provenance::Unknown;
    }
  }
  return out;
}

namespace {

template <class F>
bool h1_nonzero(const F &field, const ChainData &c, const std::vector<typename F::Elem> &t) {
  FieldPoint<F> pt;
  pt.free = t;
  return homology_dim(field, c, 1, pt) > 0;
}

template <class F, class Draw>
OracleVerdict run_oracle(const F &field, const WeightedGraph &g, const WraagJumpLoci &loci, Draw draw, int samples) {
  const std::size_t n = g.size();
  ChainData c = presentation_complex(wraag_presentation(g));
  // Generators must map to the standard basis of H = Z^n.
  auto ab = abelianize(wraag_presentation(g));
  if (ab.group.rank() != n || !ab.group.torsion_free())
    throw Error("unexpected abelianization of a weighted RAAG");
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t k = 0; k < n; ++k)
      if (ab.generator_images[v].free_part[k] != (v == k ? 1 : 0))
        throw Error("unexpected generator images of a weighted RAAG");
  std::vector<Mask> comps;
  for (const auto &w : loci.components) {
    Mask m = 0;
    for (auto v : w)
      m |= Mask(1) << v;
    comps.push_back(m);
  }
  const Mask all = n == 0 ? 0 : static_cast<Mask>((std::uint64_t(1) << n) - 1);
  for (Mask w = 0;; ++w) {
    bool predicted = w == 0 || loci.full_torus ||
                     std::any_of(comps.begin(), comps.end(), [&](Mask m) { return (m & w) == w; });
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
      std::vector<typename F::Elem> t(n, field.one());
      for (auto v : members(w))
        t[v] = draw();
      hits += h1_nonzero(field, c, t) ? 1 : 0;
    }
    // Membership on all of T_W is forced; off the locus a generic point
    // must miss it, so one miss out of several samples is required.
    bool ok = predicted ? hits == samples : hits < samples;
    if (!ok) {
      std::string names;
      for (auto v : members(w))
        names += (names.empty() ? "" : ",") + g.vertices[v];
      return {false, "subtorus {" + names + "}: predicted " + (predicted ? "inside" : "outside") + ", oracle found " +
                         std::to_string(hits) + "/" + std::to_string(samples) + " points inside"};
    }
    if (w == all)
      break;
  }
  return {true, ""};
}

} // namespace

OracleVerdict check_jump_loci(const WeightedGraph &g, const WraagJumpLoci &loci, std::mt19937_64 &rng, int samples) {
  if (g.size() > 12)
    throw Error("jump loci oracle is limited to 12 vertices");
  if (loci.characteristic == 0) {
    RationalField Q;
    std::uniform_int_distribution<long> mag(2, 40);
    std::uniform_int_distribution<long> den(1, 40);
    std::uniform_int_distribution<int> coin(0, 1);
    auto draw = [&] {
      Rational v(mag(rng), den(rng));
      v.canonicalize();
      if (v == 1)
        v = Rational(mag(rng) + 40);
      return coin(rng) ? v : Rational(-v);
    };
    return run_oracle(Q, g, loci, draw, samples);
  }
  auto K = GaloisField::with_roots_of_unity(loci.characteristic, 1, 1024);
  std::uniform_int_distribution<std::uint64_t> expo(1, K.size() - 2);
  auto draw = [&] { return K.pow(K.generator(), static_cast<std::int64_t>(expo(rng))); };
  return run_oracle(K, g, loci, draw, samples);
}

KahlerVerdict kahler_classify(const WeightedGraph &g) {
  g.validate();
  if (!g.is_complete())
    return {false, "graph is not complete"};
  if (g.size() % 2 != 0)
    return {false, "odd number of vertices"};
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (std::size_t j = i + 1; j < g.edges.size(); ++j) {
      const auto &a = g.edges[i], &b = g.edges[j];
      if (a.weight < 2 || b.weight < 2)
        continue;
      if (a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v)
        return {false, "adjacent edges of weight >= 2: " + g.vertices[a.u] + "-" + g.vertices[a.v] + " and " +
                            g.vertices[b.u] + "-" + g.vertices[b.v]};
    }
  return {true, "complete graph on an even number of vertices; heavy edges form a matching"};
}

void OrbifoldData::validate() const {
  if (genus < 1)
    throw Error("genus must be at least 1");
  for (long m : mu)
    if (m < 2)
      throw Error("multiplicities must be at least 2");
}

Rational orbifold_euler(const OrbifoldData &d) {
  d.validate();
  Rational chi = 2 - 2 * d.genus;
  for (long m : d.mu)
    chi -= 1 - Rational(1, m);
  chi.canonicalize();
  return chi;
}

Integer theta(const std::vector<long> &mu) {
  Integer prod = 1, l = 1;
  for (long m : mu) {
    prod *= m;
    l = lcm(l, Integer(m));
  }
  return prod / l;
}

Presentation orbifold_presentation(const OrbifoldData &d) {
  d.validate();
  Presentation p;
  for (long i = 1; i <= d.genus; ++i)
    p.generators.push_back("x" + std::to_string(i));
  for (long i = 1; i <= d.genus; ++i)
    p.generators.push_back("y" + std::to_string(i));
  for (std::size_t j = 1; j <= d.mu.size(); ++j)
    p.generators.push_back("z" + std::to_string(j));
  const auto g = static_cast<std::size_t>(d.genus);
  Word main;
  for (std::size_t i = 0; i < g; ++i) {
    Word c = commutator(i, g + i);
    main.insert(main.end(), c.begin(), c.end());
  }
  for (std::size_t j = 0; j < d.mu.size(); ++j)
    main.push_back({2 * g + j, 1});
  p.relators.push_back(main);
  for (std::size_t j = 0; j < d.mu.size(); ++j)
    p.relators.push_back(Word(static_cast<std::size_t>(d.mu[j]), Letter{2 * g + j, 1}));
  p.validate();
  return p;
}

std::string to_string(OrbifoldCase c) {
  switch (c) {
  case OrbifoldCase::Torus:
    return "torus";
  case OrbifoldCase::Full:
    return "full";
  case OrbifoldCase::Punctured:
    return "punctured";
  case OrbifoldCase::Trivial:
    return "trivial";
  }
  return "?";
}

OrbifoldReport orbifold_report(const OrbifoldData &d, long p) {
  d.validate();
  if (p < 0 || (p > 0 && !is_prime(p)))
    throw Error("characteristic must be 0 or a prime");
  OrbifoldReport r;
  r.euler = orbifold_euler(d);
  r.theta = theta(d.mu);
  const std::string torus = "Hom(H, k*)";
  const std::string space = "R^" + std::to_string(2 * d.genus);
  if (d.genus == 1 && d.mu.empty()) {
    r.which = OrbifoldCase::Torus;
    r.v1 = "{1}";
    r.trop = "{0}";
    r.trop_is_origin = true;
    r.sigma = "S^1";
    r.sigma_full = true;
    return r;
  }
  // p = 0 divides no multiplicity.
  bool p_divides = p > 0 && std::any_of(d.mu.begin(), d.mu.end(), [&](long m) { return m % p == 0; });
  if (d.genus > 1 || p_divides) {
    r.which = OrbifoldCase::Full;
    r.v1 = torus;
  } else if (r.theta > 1) {
    r.which = OrbifoldCase::Punctured;
    r.v1 = torus + "' u {1}";
  } else {
    r.which = OrbifoldCase::Trivial;
    r.v1 = "{1}";
  }
  r.trop_is_origin = r.which == OrbifoldCase::Trivial;
  r.trop = r.trop_is_origin ? "{0}" : space;
  r.sigma = "{}";
  r.sigma_empty = true;
  return r;
}

} // namespace tropos
