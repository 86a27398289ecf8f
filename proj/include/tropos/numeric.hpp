#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tropos {

using Integer = mpz_class;
using Rational = mpq_class;
using Exponent = std::int64_t;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A rational number or +infinity. Valuations land here.
class ExtRational {
public:
  ExtRational() : infinite_(true) {}
  ExtRational(Rational v) : value_(std::move(v)), infinite_(false) {}
  ExtRational(long v) : value_(v), infinite_(false) {}

  static ExtRational infinity() { return ExtRational(); }

  bool is_infinite() const { return infinite_; }
  const Rational &value() const {
    if (infinite_)
      throw Error("value() on infinite ExtRational");
    return value_;
  }

  friend ExtRational operator+(const ExtRational &a, const ExtRational &b) {
    if (a.infinite_ || b.infinite_)
      return infinity();
    return ExtRational(Rational(a.value_ + b.value_));
  }
  friend bool operator==(const ExtRational &a, const ExtRational &b) {
    if (a.infinite_ || b.infinite_)
      return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator<(const ExtRational &a, const ExtRational &b) {
    if (a.infinite_)
      return false;
    if (b.infinite_)
      return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtRational &a, const ExtRational &b) { return !(b < a); }

  std::string str() const { return infinite_ ? "inf" : value_.get_str(); }

private:
  Rational value_;
  bool infinite_;
};

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_prime(const Integer &p);
bool is_prime(long p);

/// Prime factors of |n| in increasing order, without multiplicity. n != 0.
std::vector<Integer> prime_factors(const Integer &n);

/// Exact p-adic order of a nonzero integer.
long padic_order(const Integer &n, const Integer &p);

Integer lcm(const Integer &a, const Integer &b);

/// Dot product of a rational vector with an integer vector.
Rational dot(const std::vector<Rational> &a, const std::vector<Exponent> &b);
Rational dot(const std::vector<Rational> &a, const std::vector<Rational> &b);

/// Scale a nonzero rational vector to the primitive integer vector with the
/// same direction.
std::vector<Integer> primitive_direction(const std::vector<Rational> &v);

} // namespace tropos
