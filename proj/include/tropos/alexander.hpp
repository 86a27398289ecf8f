#pragma once

#include "tropos/fields.hpp"
#include "tropos/sphere.hpp"
#include "tropos/tropical.hpp"

#include <string>
#include <vector>

namespace tropos {

/// Dense matrix over ZH.
struct PolyMatrix {
  GroupPtr group;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<LaurentPoly> data;

  PolyMatrix() = default;
  PolyMatrix(GroupPtr g, std::size_t r, std::size_t c);

  LaurentPoly &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const LaurentPoly &operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  PolyMatrix transpose() const;
  bool is_zero() const;
  friend PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b);
};

/// Determinant by expansion over column subsets.
LaurentPoly determinant(const PolyMatrix &m);

/// Free derivative of w with respect to a generator, pushed to ZH.
LaurentPoly fox_derivative(const Word &w, std::size_t generator, const Abelianization &ab, const GroupPtr &group);

/// Rows indexed by generators, columns by relators.
struct FoxMatrix {
  Abelianization ab;
  GroupPtr group;
  PolyMatrix matrix;
};

FoxMatrix fox_matrix(const Presentation &p);

/// The group ring of H with coordinate labels, shared by every polynomial
/// built for this abelianization.
GroupPtr group_ring(const Abelianization &ab);

/// Equivariant chain complex of the maximal abelian cover. boundaries[i] is
/// the map C_{i+1} -> C_i as a c_i x c_{i+1} matrix (column convention).
struct ChainData {
  GroupPtr group;
  std::vector<std::size_t> ranks;
  std::vector<PolyMatrix> boundaries;

  /// The boundary C_{i+1} -> C_i; the zero map above the top degree.
  PolyMatrix boundary(std::size_t i) const;
  /// Throws unless consecutive boundaries compose to zero.
  void check() const;
};

/// Presentation 2-complex: c = (1, #generators, #relators), with the Fox
/// matrix and the augmentation row (image(a_i) - 1).
ChainData presentation_complex(const Presentation &p);

/// Text format:
///   ranks: c0 c1 ... cN
///   vars: x y              (optional; names of the free coordinates)
///   d0:                    (then c0 rows of c1 comma-separated polynomials)
///   d1: ...
/// With transposed = true every matrix is read as its transpose (one row
/// per cell of the higher degree).
ChainData parse_chain_data(const std::string &text, bool transposed = false);
ChainData load_chain_data(const std::string &path, bool transposed = false);

/// diag(d_i, d_{i-1}) of shape (c_i + c_{i-1}) x (c_{i+1} + c_i).
PolyMatrix jump_matrix(const ChainData &c, std::size_t i);

struct JumpIdeal {
  std::size_t degree = 0;
  std::vector<LaurentPoly> generators;
  /// gcd of the generators; 0 for the zero ideal, 1 when the group has
  /// torsion.
  LaurentPoly principal_part;
  std::vector<LaurentPoly> residual;
  std::size_t minors_enumerated = 0;
};

/// Minor cap from TROPOS_MINOR_CAP, default 100000.
std::size_t default_minor_cap();

/// Ideal of c_i-minors of jump_matrix(c, i). Zero minors are dropped,
/// the rest normalized, deduplicated and sorted.
JumpIdeal jump_ideal(const ChainData &c, std::size_t i, std::size_t cap = default_minor_cap());

/// Classification of the residual ideal of a jump ideal.
enum class ResidualKind {
  None,         // no residual generators
  Unit,         // contains a unit
  Augmentation, // every free coordinate has a power of (x_i - 1) among the generators
  Origin,       // prevariety inside {0}
  General,      // prevariety with nonzero directions: an upper bound only
};
std::string to_string(ResidualKind k);

struct DegreeBound {
  JumpIdeal ideal;
  ResidualKind residual_kind = ResidualKind::None;
  TropicalRegion principal_region;
  TropicalRegion residual_region;
  SphericalSet sphere;
  Provenance provenance = Provenance::Exact;
};

struct BnsrBound {
  std::size_t degree = 1;
  std::vector<DegreeBound> degrees;
  /// S(Trop_Z(J^{<=k})) as computed.
  SphericalSet trop_sphere;
  /// Its complement: the bound for Sigma^k when provenance is EXACT.
  SphericalSet complement;
  /// Complement of the principal parts alone; always contains Sigma^k.
  SphericalSet outer_complement;
  Provenance provenance = Provenance::Exact;
};

BnsrBound bnsr_upper_bound(const ChainData &c, std::size_t k = 1, std::size_t cap = default_minor_cap());
BnsrBound bnsr_upper_bound(const Presentation &p, std::size_t cap = default_minor_cap());

/// A known Sigma^1(G; Z), entered by hand.
struct BnsFixture {
  std::string id;
  SphericalSet sigma;
  /// "Z" for Sigma(G; Z); "G" for the classical Sigma(G) = -Sigma(G; Z).
  std::string convention = "Z";
  std::string citation;

  /// The set in the Sigma(G; Z) convention.
  SphericalSet sigma_Z() const;
};

struct InclusionReport {
  Tri included = Tri::Unknown;
  Tri strict = Tri::Unknown;
};

InclusionReport audit_inclusion(const BnsFixture &fixture, const SphericalSet &bound_complement);

struct DwyerFriedResult {
  /// Whether the module with these annihilator generators is finitely
  /// generated over the coefficient ring.
  Tri finitely_generated = Tri::Unknown;
  TropicalRegion region;
};

DwyerFriedResult dwyer_fried_test(const std::vector<LaurentPoly> &ann, const TropRing &ring);

/// One-relator presentation on a, b whose Fox column is
/// (f * (y - 1), -f * (x - 1)) with x, y the images of a, b.
Presentation presentation_with_fox_factor(const LaurentPoly &f);

/// Rank of a polynomial matrix at a character.
template <class F> std::size_t rank_at(const F &field, const PolyMatrix &m, const FieldPoint<F> &pt) {
  std::vector<typename F::Elem> vals;
  vals.reserve(m.data.size());
  for (const auto &e : m.data)
    vals.push_back(evaluate(field, e, pt));
  return matrix_rank(field, std::move(vals), m.rows, m.cols);
}

/// dim H_i of the chain complex specialized at a character.
template <class F> std::size_t homology_dim(const F &field, const ChainData &c, std::size_t i, const FieldPoint<F> &pt) {
  std::size_t r_out = i == 0 ? 0 : rank_at(field, c.boundary(i - 1), pt);
  std::size_t r_in = rank_at(field, c.boundary(i), pt);
  return c.ranks[i] - r_out - r_in;
}

} // namespace tropos
