#pragma once

#include "tropos/laurent.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace tropos {

/// The rationals as an evaluation field.
struct RationalField {
  using Elem = Rational;

  long characteristic() const { return 0; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_integer(const Integer &c) const { return Rational(c); }
  Elem add(const Elem &a, const Elem &b) const { return a + b; }
  Elem sub(const Elem &a, const Elem &b) const { return a - b; }
  Elem mul(const Elem &a, const Elem &b) const { return a * b; }
  Elem inv(const Elem &a) const { return 1 / a; }
  bool is_zero(const Elem &a) const { return a == 0; }
  std::string str(const Elem &a) const { return a.get_str(); }
};

/// GF(p^k) with q = p^k below 2^20. Elements are integers in [0, q) read as
/// base-p digit vectors of polynomials modulo a fixed irreducible of degree k
/// with primitive root x; multiplication uses log tables.
class GaloisField {
public:
  using Elem = std::uint32_t;

  GaloisField(long p, unsigned k);

  /// Smallest field of characteristic p with at least min_size elements
  /// whose unit group order is divisible by m (m coprime to p).
  static GaloisField with_roots_of_unity(long p, std::uint64_t m, std::uint64_t min_size);

  long characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t size() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_integer(const Integer &c) const;
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  bool is_zero(Elem a) const { return a == 0; }
  Elem pow(Elem a, std::int64_t e) const;
  /// Primitive element x.
  Elem generator() const { return exp_[1]; }
  std::string str(Elem a) const;

private:
  long p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

/// A character H -> K^*: values on the free generators and on the cyclic
/// torsion generators (the latter roots of unity of the right order).
template <class F> struct FieldPoint {
  std::vector<typename F::Elem> free;
  std::vector<typename F::Elem> torsion;
};

template <class F>
typename F::Elem evaluate(const F &field, const LaurentPoly &f, const FieldPoint<F> &pt) {
  auto power = [&](typename F::Elem base, Exponent e) {
    typename F::Elem r = field.one();
    if (e < 0) {
      base = field.inv(base);
      e = -e;
    }
    while (e > 0) {
      if (e & 1)
        r = field.mul(r, base);
      base = field.mul(base, base);
      e >>= 1;
    }
    return r;
  };
  typename F::Elem sum = field.zero();
  for (const auto &[g, c] : f.terms()) {
    typename F::Elem term = field.from_integer(c);
    for (std::size_t i = 0; i < g.free_part.size(); ++i)
      term = field.mul(term, power(pt.free[i], g.free_part[i]));
    for (std::size_t i = 0; i < g.torsion_part.size(); ++i)
      term = field.mul(term, power(pt.torsion[i], g.torsion_part[i]));
    sum = field.add(sum, term);
  }
  return sum;
}

/// Rank of a dense matrix (row-major, rows x cols) by Gaussian elimination.
template <class F>
std::size_t matrix_rank(const F &field, std::vector<typename F::Elem> m, std::size_t rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && field.is_zero(m[piv * cols + c]))
      ++piv;
    if (piv == rows)
      continue;
    for (std::size_t j = 0; j < cols; ++j)
      std::swap(m[r * cols + j], m[piv * cols + j]);
    auto inv = field.inv(m[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (field.is_zero(m[i * cols + c]))
        continue;
      auto factor = field.mul(m[i * cols + c], inv);
      for (std::size_t j = c; j < cols; ++j)
        m[i * cols + j] = field.sub(m[i * cols + j], field.mul(factor, m[r * cols + j]));
    }
    ++r;
  }
  return r;
}

/// Random character of H into Q^*: free values are nonzero rationals with
/// numerator and denominator in [1, range] and random sign; torsion
/// generators of even order go to +-1, others to 1.
FieldPoint<RationalField> random_point(const RationalField &field, const FGAbelianGroup &h,
                                       std::mt19937_64 &rng, long range = 9);

/// Random character of H into GF(q)^*: free values uniform in GF(q)^*,
/// torsion values uniform among roots of unity of the torsion order.
FieldPoint<GaloisField> random_point(const GaloisField &field, const FGAbelianGroup &h, std::mt19937_64 &rng);

} // namespace tropos
