#pragma once

#include "tropos/abelian.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tropos {

using GroupPtr = std::shared_ptr<const FGAbelianGroup>;

inline GroupPtr make_group(std::size_t rank, std::vector<Exponent> torsion = {},
                           std::vector<std::string> labels = {}) {
  return std::make_shared<const FGAbelianGroup>(rank, std::move(torsion), std::move(labels));
}

/// Element of ZH (modulus 0) or F_p H (modulus p).
class LaurentPoly {
public:
  using TermMap = std::map<GroupElement, Integer>;

  LaurentPoly() = default;
  explicit LaurentPoly(GroupPtr group, long modulus = 0);

  static LaurentPoly constant(GroupPtr group, const Integer &c, long modulus = 0);
  static LaurentPoly monomial(GroupPtr group, const GroupElement &e, const Integer &c = 1,
                              long modulus = 0);
  /// x_i, the i-th free coordinate.
  static LaurentPoly variable(GroupPtr group, std::size_t i, long modulus = 0);

  const GroupPtr &group() const { return group_; }
  long modulus() const { return modulus_; }
  const TermMap &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(const GroupElement &e, const Integer &c);

  LaurentPoly operator-() const;
  LaurentPoly &operator+=(const LaurentPoly &o);
  LaurentPoly &operator-=(const LaurentPoly &o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b);
  friend LaurentPoly operator*(const Integer &c, const LaurentPoly &a);
  friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) {
    return a.modulus_ == b.modulus_ && a.terms_ == b.terms_;
  }

  LaurentPoly pow(unsigned k) const;
  /// Multiply every exponent by the group element e (shift the support).
  LaurentPoly shifted(const GroupElement &e) const;

  std::string str() const;

private:
  void check_compatible(const LaurentPoly &o) const;
  Integer canon(const Integer &c) const;

  GroupPtr group_;
  long modulus_ = 0;
  TermMap terms_;
};

struct Valuation {
  enum class Kind { Trivial, PAdic, ModP };
  Kind kind = Kind::Trivial;
  long p = 0;

  static Valuation trivial() { return {}; }
  static Valuation padic(long p);
  static Valuation modp(long p);

  std::string str() const;
  friend bool operator==(const Valuation &, const Valuation &) = default;
};

/// Parse "trivial", "padic:p", "modp:p".
Valuation parse_valuation(const std::string &text);

ExtRational coefficient_valuation(const Integer &c, const Valuation &v);

Rational chi_degree(const LaurentPoly &f, const Character &chi);

/// Terms of minimal chi-degree.
LaurentPoly initial_form_ring(const LaurentPoly &f, const Character &chi);

/// Terms minimizing v(a_u) + <u, w>. For ModP the polynomial is first reduced
/// mod p; throws if it vanishes there.
LaurentPoly initial_form_field(const LaurentPoly &f, const Character &w, const Valuation &v);

enum class UnitStatus { Unit, NotUnit, Undecided };

/// Units of ZH are (units of Z[T]) times H-monomials with T the torsion
/// subgroup; a Z[T]-element is a unit iff its multiplication matrix has
/// determinant +-1. Undecided only past `torsion_cap`.
UnitStatus unit_status_over_Z(const LaurentPoly &f, std::size_t torsion_cap = 256);
bool is_unit_over_Z(const LaurentPoly &f);

struct ContentSplit {
  Integer content;
  LaurentPoly primitive;
};
ContentSplit content_primitive(const LaurentPoly &f);

/// Positive leading coefficient (largest exponent in term order) and free
/// support translated to touch zero in every coordinate.
LaurentPoly normalize_unit(const LaurentPoly &f);

/// Multivariate gcd over Z for torsion-free groups, normalized with
/// normalize_unit.
LaurentPoly gcd(const LaurentPoly &f, const LaurentPoly &g);

/// Exact quotient f / g up to a monomial unit, if g divides f.
std::optional<LaurentPoly> divide_exact(const LaurentPoly &f, const LaurentPoly &g);

LaurentPoly reduce_mod_p(const LaurentPoly &f, long p);

/// Primes dividing some coefficient.
std::vector<Integer> relevant_primes(const LaurentPoly &f);

/// Parse the polynomial text syntax. With `names` empty the variables are
/// taken from the text: x1..xn by index when every name has that shape,
/// otherwise sorted alphabetically.
LaurentPoly parse_polynomial(const std::string &text, std::vector<std::string> names = {},
                             long modulus = 0);

/// Parse against an existing group; names are matched to group labels.
LaurentPoly parse_polynomial(const std::string &text, const GroupPtr &group, long modulus = 0);

/// Names a polynomial string would be parsed with, in coordinate order.
std::vector<std::string> infer_variables(const std::vector<std::string> &texts);

} // namespace tropos
