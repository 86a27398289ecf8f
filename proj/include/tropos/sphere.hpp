#pragma once

#include "tropos/polyhedron.hpp"
#include "tropos/tropical.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tropos {

enum class Tri { False, True, Unknown };
std::string to_string(Tri t);
inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }

/// Subset of the sphere S^{n-1} = (R^n - 0) / R_{>0}.
///
/// n = 1: the two points +1, -1.
/// n = 2: canonical cyclic list of breakpoints sorted by angle from (1,0),
///        each with a membership bit for the point and for the open arc that
///        follows it. Equality is structural.
/// n >= 3: union of sphere images of polyhedra, optionally complemented.
class SphericalSet {
public:
  struct Breakpoint {
    Vec dir; // primitive integer vector
    bool member = false;
    bool gap_after = false; // open arc up to the next breakpoint
    friend bool operator==(const Breakpoint &, const Breakpoint &) = default;
  };

  /// Maximal arc (counterclockwise from `from` to `to`) or isolated point
  /// (from == to, both closed).
  struct Arc {
    Vec from, to;
    bool from_closed = true, to_closed = true;
    bool is_point() const { return !full && from == to && from_closed && to_closed; }
    bool full = false;
  };

  SphericalSet() = default;
  static SphericalSet empty(std::size_t n);
  static SphericalSet full(std::size_t n);
  /// Union of the sphere images of the given polyhedra.
  static SphericalSet from_polyhedra(std::size_t n, const std::vector<Polyhedron> &pieces);
  static SphericalSet points(std::size_t n, const std::vector<Vec> &dirs);
  /// n = 2: counterclockwise arc from a to b (a != b).
  static SphericalSet arc(const Vec &a, const Vec &b, bool a_closed, bool b_closed);

  std::size_t ambient_dim() const { return n_; }
  bool contains(const Vec &d) const;

  SphericalSet unite(const SphericalSet &o) const;
  /// Exact for n <= 2; a complement flag for n >= 3.
  SphericalSet complement() const;
  /// n <= 2 only.
  SphericalSet intersect(const SphericalSet &o) const;

  Tri is_empty() const;
  Tri equals(const SphericalSet &o) const;
  Tri subset_of(const SphericalSet &o) const;

  /// n = 2 canonical data.
  const std::vector<Breakpoint> &breakpoints() const { return breaks_; }
  bool full_circle() const { return breaks_.empty() && full_bit_; }
  std::vector<Arc> arcs() const;

  /// n = 1 data.
  bool has_plus() const { return plus_; }
  bool has_minus() const { return minus_; }

  /// n >= 3 data.
  const std::vector<Polyhedron> &pieces() const { return pieces_; }
  bool negated() const { return negated_; }

  std::string str() const;

  /// Seed for the randomized witness search used when n >= 4.
  static void set_witness_seed(std::uint64_t seed);

private:
  static SphericalSet circle_from_predicate(const std::vector<Vec> &candidates,
                                            const std::function<bool(const Vec &)> &member);
  void canonicalize();
  std::vector<Vec> candidate_directions() const;

  std::size_t n_ = 0;
  bool plus_ = false, minus_ = false;
  std::vector<Breakpoint> breaks_;
  bool full_bit_ = false;
  std::vector<Polyhedron> pieces_;
  bool negated_ = false;
};

/// Directions of the nonzero points of a region.
SphericalSet sphere_project(const TropicalRegion &region);

/// Exact angular order on R^2 - 0 starting at (1,0), counterclockwise.
bool angle_less(const Vec &a, const Vec &b);

} // namespace tropos
