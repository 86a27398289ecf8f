#include "tropos/numeric.hpp"

namespace tropos {

bool is_prime(const Integer &p) {
  if (p < 2)
    return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

bool is_prime(long p) { return is_prime(Integer(p)); }

std::vector<Integer> prime_factors(const Integer &n) {
  if (n == 0)
    throw Error("prime_factors of zero");
  Integer m = abs(n);
  std::vector<Integer> out;
  for (Integer d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0)
        m /= d;
    }
  }
  if (m > 1)
    out.push_back(m);
  return out;
}

long padic_order(const Integer &n, const Integer &p) {
  if (n == 0)
    throw Error("padic_order of zero");
  Integer m = abs(n);
  long k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  return k;
}

Integer lcm(const Integer &a, const Integer &b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Rational dot(const std::vector<Rational> &a, const std::vector<Exponent> &b) {
  if (a.size() != b.size())
    throw Error("dimension mismatch in pairing");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i] != 0)
      s += a[i] * Rational(static_cast<long>(b[i]));
  return s;
}

Rational dot(const std::vector<Rational> &a, const std::vector<Rational> &b) {
  if (a.size() != b.size())
    throw Error("dimension mismatch in dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

std::vector<Integer> primitive_direction(const std::vector<Rational> &v) {
  Integer den = 1;
  bool nonzero = false;
  for (const auto &x : v) {
    if (x != 0)
      nonzero = true;
    den = lcm(den, x.get_den());
  }
  if (!nonzero)
    throw Error("zero vector has no direction");
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto &x : v) {
    Integer c = x.get_num() * (den / x.get_den());
    g = gcd(g, c);
    out.push_back(c);
  }
  for (auto &c : out)
    c /= g;
  return out;
}

} // namespace tropos
