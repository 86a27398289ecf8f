#pragma once

#include "tropos/numeric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropos {

using Vec = std::vector<Rational>;

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(std::vector<Vec> &rows);
std::size_t rank(std::vector<Vec> rows);
/// Basis of {x : r . x = 0 for all rows r}, each scaled to a primitive
/// integer vector.
std::vector<Vec> nullspace(std::vector<Vec> rows, std::size_t n);
/// Scale a nonzero vector to a primitive integer vector.
Vec primitive(const Vec &v);

/// a . x >= b, or a . x = b.
struct Constraint {
  Vec a;
  Rational b;
  bool equality = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  Vec point;
};

/// Maximize c . x over free variables x subject to the constraints. Exact
/// two-phase simplex with Bland's rule.
LpResult lp_maximize(const Vec &c, const std::vector<Constraint> &cons);

struct PolyGenerators {
  std::vector<Vec> vertices;
  std::vector<Vec> rays;      // primitive
  std::vector<Vec> lineality; // primitive basis
};

/// Closed rational polyhedron in R^n given by linear constraints.
class Polyhedron {
public:
  explicit Polyhedron(std::size_t n = 0) : n_(n) {}

  static Polyhedron point(const Vec &p);

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Constraint> &constraints() const { return cons_; }

  void add_ge(Vec a, Rational b);
  void add_le(Vec a, Rational b);
  void add_eq(Vec a, Rational b);

  bool contains(const Vec &x) const;
  bool is_empty() const;
  /// -1 for the empty set.
  int dimension() const;
  std::optional<Vec> relative_interior_point() const;
  Polyhedron intersect(const Polyhedron &o) const;
  bool subset_of(const Polyhedron &o) const;
  /// Vertices of the pointed part, extreme rays, and a lineality basis.
  PolyGenerators generators() const;
  /// Some positive multiple of d lies in the polyhedron.
  bool ray_meets(const Vec &d) const;
  /// Constraints with implicit equalities made explicit and redundant copies
  /// dropped.
  Polyhedron canonical() const;

  std::string str(const std::vector<std::string> &names = {}) const;

private:
  struct Hull {
    bool empty = true;
    std::vector<bool> implicit;
    Vec interior;
  };
  Hull hull() const;

  std::size_t n_;
  std::vector<Constraint> cons_;
};

} // namespace tropos
