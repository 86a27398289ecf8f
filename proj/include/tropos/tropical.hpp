#pragma once

#include "tropos/laurent.hpp"
#include "tropos/polyhedron.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tropos {

enum class Provenance { Exact, UpperBound, Unknown };
std::string to_string(Provenance p);

struct TropicalCell {
  enum class Kind {
    Tie,          // the minimum is attained by every exponent in tie_set
    UnitFailure,  // the unique minimizing exponent has a non-unit coefficient
    Whole,        // all of R^n (zero polynomial)
    Intersection, // cell of a prevariety
  };
  Kind kind = Kind::Tie;
  std::vector<GroupElement> tie_set;
  std::optional<GroupElement> witness;
  Polyhedron polyhedron;
  std::string note;
};

/// Finite union of closed rational polyhedra, with a membership oracle
/// recomputed from the defining polynomials.
class TropicalRegion {
public:
  using Oracle = std::function<bool(const Vec &)>;

  TropicalRegion() = default;
  TropicalRegion(std::size_t n, std::string source) : n_(n), source_(std::move(source)) {}

  std::size_t ambient_dim() const { return n_; }
  const std::vector<TropicalCell> &cells() const { return cells_; }
  Provenance provenance() const { return provenance_; }
  const std::string &source() const { return source_; }
  const std::vector<std::string> &diagnostics() const { return diagnostics_; }
  const std::vector<std::string> &labels() const { return labels_; }

  void add_cell(TropicalCell c);
  void set_provenance(Provenance p) { provenance_ = p; }
  void set_oracle(Oracle o) { oracle_ = std::move(o); }
  void set_labels(std::vector<std::string> l) { labels_ = std::move(l); }
  void add_diagnostic(std::string d) { diagnostics_.push_back(std::move(d)); }

  /// Ground truth when an oracle is present, else the cell union.
  bool contains(const Vec &w) const;
  bool cells_contain(const Vec &w) const;
  bool has_oracle() const { return static_cast<bool>(oracle_); }
  bool is_empty() const { return cells_.empty(); }
  /// Every cell lies in {0}.
  bool within_origin() const;

private:
  std::size_t n_ = 0;
  std::vector<TropicalCell> cells_;
  Provenance provenance_ = Provenance::Exact;
  std::string source_;
  std::vector<std::string> diagnostics_;
  std::vector<std::string> labels_;
  Oracle oracle_;
};

/// min over the support of v(a_u) + <u, w>. ModP reduces first.
Rational trop_eval(const LaurentPoly &f, const Valuation &v, const Character &w);

/// Number of support exponents attaining trop_eval.
std::size_t trop_argmin_count(const LaurentPoly &f, const Valuation &v, const Character &w);

/// Tropical hypersurface over Q with v trivial or p-adic, or over F_p.
/// Torsion-free groups only.
TropicalRegion trop_hypersurface_field(const LaurentPoly &f, const Valuation &v);

/// {chi : in_chi(f) is not a unit of ZH}.
TropicalRegion trop_hypersurface_Z(const LaurentPoly &f);

struct LabeledRegion {
  std::string label;
  Valuation valuation;
  TropicalRegion region;
};

/// The trivial family plus, per relevant prime, the p-adic and mod-p ones.
std::vector<LabeledRegion> trop_Z_decomposition(const LaurentPoly &f);

/// Ring used for tropicalization: Z with the unit rule, or a valued field.
struct TropRing {
  bool integers = true;
  Valuation valuation;

  static TropRing Z() { return {}; }
  static TropRing field(Valuation v) { return {false, v}; }
  std::string str() const;
};

TropicalRegion trop_hypersurface(const LaurentPoly &f, const TropRing &ring);

/// Intersection of per-generator regions. An upper bound for the tropical
/// variety of the generated ideal.
TropicalRegion prevariety(const std::vector<LaurentPoly> &generators, const TropRing &ring);

/// psi: H -> H' as an (n' x n) integer matrix (columns are images of the
/// basis of H). Returns the image of a region over H' under the dual
/// embedding Hom(H'; R) -> Hom(H; R).
TropicalRegion pullback(const IntMatrix &psi, const TropicalRegion &region);

} // namespace tropos
