#pragma once

#include "tropos/alexander.hpp"

#include <random>
#include <string>
#include <vector>

namespace tropos {

struct WeightedEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  long weight = 1;
};

/// Simple graph with positive integer edge weights.
struct WeightedGraph {
  std::vector<std::string> vertices;
  std::vector<WeightedEdge> edges;

  std::size_t size() const { return vertices.size(); }
  /// Throws on loops, repeated edges, bad indices or weights < 1.
  void validate() const;
  bool is_complete() const;
  /// Edges with weight divisible by p removed.
  WeightedGraph without_weights_divisible_by(long p) const;
};

/// JSON: {"vertices": [names], "edges": [{"u": name|index, "v": ..., "weight": m}]}
/// with weight defaulting to 1.
WeightedGraph parse_graph(const std::string &json_text);
WeightedGraph load_graph(const std::string &path);
std::string graph_to_json(const WeightedGraph &g);

/// One generator per vertex, relator [a_u, a_v]^weight per edge.
Presentation wraag_presentation(const WeightedGraph &g);

/// Vertex cap from TROPOS_VERTEX_CAP, default 16.
std::size_t default_vertex_cap();

/// Vertex subsets inducing a disconnected subgraph, maximal for inclusion,
/// as sorted index lists in lexicographic order.
std::vector<std::vector<std::size_t>> maximally_disconnected_subsets(const WeightedGraph &g,
                                                                     std::size_t cap = default_vertex_cap());

/// First degree jump locus of the weighted RAAG over a field of
/// characteristic p: the union of the subtori T_W = {t : t_a = 1, a not in W}
/// over the listed W, together with the trivial character.
struct WraagJumpLoci {
  long characteristic = 0;
  std::vector<std::vector<std::size_t>> components;
  bool full_torus = false;
  /// Edges dropped by the characteristic-p rule.
  std::vector<std::size_t> deleted_edges;
  Provenance provenance = Provenance::Exact;
  /// "not run", "agree", or "DISCREPANCY: ...".
  std::string oracle = "not run";
};

/// p = 0: the unweighted graph decides. p > 0 requires derived_charp: edges
/// whose weight p divides are deleted first. The p > 0 result is checked
/// against the Fox-matrix rank oracle when the graph has at most
/// oracle_limit vertices; it is EXACT only when that check agrees.
WraagJumpLoci jump_loci_wraag(const WeightedGraph &g, long p, bool derived_charp = false,
                              std::size_t cap = default_vertex_cap(), std::size_t oracle_limit = 4,
                              std::uint64_t seed = 20240611);

struct OracleVerdict {
  bool agree = true;
  std::string detail;
};

/// For every vertex subset W', compares the rank of H_1 of the presentation
/// complex at random points of T_{W'} with the prediction of the loci.
OracleVerdict check_jump_loci(const WeightedGraph &g, const WraagJumpLoci &loci, std::mt19937_64 &rng,
                              int samples = 3);

struct KahlerVerdict {
  bool kahler = false;
  std::string reason;
};

/// Complete graph, even vertex count, and the edges of weight >= 2 pairwise
/// non-adjacent.
KahlerVerdict kahler_classify(const WeightedGraph &g);

struct OrbifoldData {
  long genus = 1;
  std::vector<long> mu;

  void validate() const;
};

Rational orbifold_euler(const OrbifoldData &d);
/// prod(mu) / lcm(mu); 1 for the empty vector.
Integer theta(const std::vector<long> &mu);

/// Presentation <x_i, y_i, z_j | prod [x_i, y_i] prod z_j, z_j^mu_j>.
Presentation orbifold_presentation(const OrbifoldData &d);

enum class OrbifoldCase {
  Torus,     // g = 1, s = 0: the fundamental group is Z^2
  Full,      // V^1 = Hom(H, k*)
  Punctured, // V^1 = Hom(H, k*)' u {1}
  Trivial,   // V^1 = {1}
};
std::string to_string(OrbifoldCase c);

struct OrbifoldReport {
  OrbifoldCase which = OrbifoldCase::Trivial;
  Rational euler;
  Integer theta;
  std::string v1;
  std::string trop;
  std::string sigma;
  bool trop_is_origin = false;
  bool sigma_empty = false;
  bool sigma_full = false;
};

OrbifoldReport orbifold_report(const OrbifoldData &d, long p);

} // namespace tropos
