#pragma once

#include "tropos/numeric.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace tropos {

/// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Integer> data;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init);

  static IntMatrix identity(std::size_t n);

  Integer &operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Integer &operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  IntMatrix transpose() const;
  bool is_diagonal() const;
  friend IntMatrix operator*(const IntMatrix &a, const IntMatrix &b);
  friend bool operator==(const IntMatrix &a, const IntMatrix &b) = default;
};

/// Determinant by fraction-free elimination. Square matrices only.
Integer determinant(const IntMatrix &m);

struct SmithForm {
  IntMatrix U; // rows x rows, unimodular
  IntMatrix D; // diagonal, d_1 | d_2 | ... , nonnegative
  IntMatrix V; // cols x cols, unimodular
};

/// U * M * V = D.
SmithForm smith_normal_form(const IntMatrix &m);

/// Row-style Hermite normal form: returns (H, L) with L unimodular and
/// H = L * M in reduced echelon form (positive pivots, entries above a pivot
/// reduced into [0, pivot)).
std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix &m);

/// A finitely generated abelian group Z^rank + Z/d_1 + ... + Z/d_m with
/// d_1 | d_2 | ... | d_m and every d_i >= 2.
class FGAbelianGroup {
public:
  FGAbelianGroup() = default;
  explicit FGAbelianGroup(std::size_t rank, std::vector<Exponent> torsion = {},
                          std::vector<std::string> labels = {});

  std::size_t rank() const { return rank_; }
  const std::vector<Exponent> &torsion_orders() const { return torsion_; }
  const std::vector<std::string> &labels() const { return labels_; }
  bool torsion_free() const { return torsion_.empty(); }
  /// Order of the torsion subgroup.
  Integer torsion_size() const;

  friend bool operator==(const FGAbelianGroup &a, const FGAbelianGroup &b) {
    return a.rank_ == b.rank_ && a.torsion_ == b.torsion_;
  }

private:
  std::size_t rank_ = 0;
  std::vector<Exponent> torsion_;
  std::vector<std::string> labels_;
};

struct GroupElement {
  std::vector<Exponent> free_part;
  std::vector<Exponent> torsion_part;

  bool is_identity() const;
  friend auto operator<=>(const GroupElement &, const GroupElement &) = default;
};

GroupElement identity_element(const FGAbelianGroup &h);
GroupElement add(const FGAbelianGroup &h, const GroupElement &a, const GroupElement &b);
GroupElement negate(const FGAbelianGroup &h, const GroupElement &a);
GroupElement scale(const FGAbelianGroup &h, const GroupElement &a, Exponent k);
/// Reduce torsion entries into [0, d_i).
void reduce(const FGAbelianGroup &h, GroupElement &a);

/// A real character of H, stored by its values on the free coordinates.
/// Characters vanish on torsion.
struct Character {
  std::vector<Rational> coords;

  bool is_zero() const;
  friend bool operator==(const Character &, const Character &) = default;
};

Rational pair(const Character &chi, const GroupElement &h);
Rational pair(const Character &chi, const std::vector<Exponent> &free_part);

/// Primitive integer vector on the ray through chi. Throws on zero.
std::vector<Integer> sphere_normalize(const Character &chi);

struct Letter {
  std::size_t generator;
  int exponent; // +1 or -1
  friend bool operator==(const Letter &, const Letter &) = default;
};
using Word = std::vector<Letter>;

struct Presentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t generator_index(const std::string &name) const;
  void validate() const;
};

/// Parse the `gens:` / `rel:` text format.
Presentation parse_presentation(const std::string &text);
Presentation load_presentation(const std::string &path);
std::string format_word(const Presentation &p, const Word &w);
/// Word for the commutator [a,b] = a b a^-1 b^-1.
Word commutator(std::size_t a, std::size_t b);

struct Abelianization {
  FGAbelianGroup group;
  /// Image of each presentation generator in H.
  std::vector<GroupElement> generator_images;

  GroupElement word_image(const Word &w) const;
  GroupElement letter_image(const Letter &l) const;
};

Abelianization abelianize(const Presentation &p);

std::ostream &operator<<(std::ostream &os, const IntMatrix &m);

} // namespace tropos
