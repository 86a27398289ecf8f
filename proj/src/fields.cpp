#include "tropos/fields.hpp"

#include <numeric>

namespace tropos {

namespace {

using Poly = std::vector<long>; // coefficients mod p, index = degree

Poly poly_mod(Poly a, const Poly &m, long p) {
  const std::size_t d = m.size() - 1; // m is monic
  while (a.size() > d) {
    long c = a.back() % p;
    if (c != 0) {
      std::size_t shift = a.size() - 1 - d;
      for (std::size_t i = 0; i <= d; ++i)
        a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
    }
    a.pop_back();
  }
  return a;
}

std::uint64_t encode(const Poly &a, long p, unsigned k) {
  std::uint64_t v = 0;
  for (unsigned i = k; i-- > 0;)
    v = v * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(i < a.size() ? a[i] : 0);
  return v;
}

// Monic polynomial of degree k whose residue class x has multiplicative
// order p^k - 1, by enumeration; also fills the exp table.
bool try_modulus(const Poly &m, long p, unsigned k, std::uint64_t q, std::vector<std::uint32_t> &exp) {
  exp.assign(q - 1, 0);
  std::vector<bool> seen(q, false);
  Poly cur{1};
  for (std::uint64_t e = 0; e + 1 < q; ++e) {
    std::uint64_t code = encode(cur, p, k);
    if (code == 0 || seen[code])
      return false;
    seen[code] = true;
    exp[e] = static_cast<std::uint32_t>(code);
    Poly next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i)
      next[i + 1] = cur[i];
    cur = poly_mod(next, m, p);
  }
  return true;
}

} // namespace

GaloisField::GaloisField(long p, unsigned k) : p_(p), k_(k), q_(1) {
  if (!is_prime(p))
    throw Error("field characteristic must be prime");
  if (k == 0)
    throw Error("field degree must be positive");
  for (unsigned i = 0; i < k; ++i) {
    q_ *= static_cast<std::uint64_t>(p);
    if (q_ > (1u << 20))
      throw Error("finite field too large");
  }
  // Enumerate monic moduli x^k + lower terms.
  std::uint64_t tails = q_;
  bool found = false;
  for (std::uint64_t t = 0; t < tails && !found; ++t) {
    Poly m(k + 1, 0);
    std::uint64_t x = t;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = static_cast<long>(x % static_cast<std::uint64_t>(p));
      x /= static_cast<std::uint64_t>(p);
    }
    m[k] = 1;
    if (m[0] == 0)
      continue;
    found = try_modulus(m, p, k, q_, exp_);
  }
  if (!found)
    throw Error("no primitive modulus found");
  log_.assign(q_, 0);
  for (std::uint64_t e = 0; e + 1 < q_; ++e)
    log_[exp_[e]] = static_cast<std::uint32_t>(e);
}

GaloisField GaloisField::with_roots_of_unity(long p, std::uint64_t m, std::uint64_t min_size) {
  std::uint64_t q = 1;
  for (unsigned k = 1; k <= 20; ++k) {
    q *= static_cast<std::uint64_t>(p);
    if (q > (1u << 20))
      break;
    if (q >= min_size && (q - 1) % m == 0)
      return GaloisField(p, k);
  }
  throw Error("no small field with the requested roots of unity");
}

GaloisField::Elem GaloisField::from_integer(const Integer &c) const {
  Integer r = c % p_;
  if (r < 0)
    r += p_;
  return static_cast<Elem>(r.get_ui());
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (k_ == 1)
    return static_cast<Elem>((a + b) % static_cast<std::uint64_t>(p_));
  Elem out = 0, scale = 1;
  const auto p = static_cast<Elem>(p_);
  for (unsigned i = 0; i < k_; ++i) {
    out += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const {
  const auto p = static_cast<Elem>(p_);
  if (k_ == 1)
    return (a + p - b) % p;
  Elem out = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    out += ((a % p + p - b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return out;
}

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0)
    return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + log_[b]) % (q_ - 1)];
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0)
    throw Error("inverse of zero in finite field");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GaloisField::Elem GaloisField::pow(Elem a, std::int64_t e) const {
  if (a == 0)
    return e == 0 ? 1 : 0;
  auto order = static_cast<std::int64_t>(q_ - 1);
  std::int64_t l = (static_cast<std::int64_t>(log_[a]) * (e % order)) % order;
  if (l < 0)
    l += order;
  return exp_[static_cast<std::uint64_t>(l)];
}

std::string GaloisField::str(Elem a) const {
  if (k_ == 1)
    return std::to_string(a);
  if (a == 0)
    return "0";
  return "x^" + std::to_string(log_[a]);
}

FieldPoint<RationalField> random_point(const RationalField &, const FGAbelianGroup &h, std::mt19937_64 &rng,
                                       long range) {
  FieldPoint<RationalField> pt;
  std::uniform_int_distribution<long> mag(1, range);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t i = 0; i < h.rank(); ++i) {
    Rational v(mag(rng), mag(rng));
    v.canonicalize();
    pt.free.push_back(coin(rng) ? v : Rational(-v));
  }
  for (auto d : h.torsion_orders())
    pt.torsion.push_back(d % 2 == 0 && coin(rng) ? Rational(-1) : Rational(1));
  return pt;
}

FieldPoint<GaloisField> random_point(const GaloisField &field, const FGAbelianGroup &h, std::mt19937_64 &rng) {
  FieldPoint<GaloisField> pt;
  const std::uint64_t units = field.size() - 1;
  std::uniform_int_distribution<std::uint64_t> expo(0, units - 1);
  for (std::size_t i = 0; i < h.rank(); ++i)
    pt.free.push_back(field.pow(field.generator(), static_cast<std::int64_t>(expo(rng))));
  for (auto d : h.torsion_orders()) {
    std::uint64_t g = std::gcd(static_cast<std::uint64_t>(d), units);
    std::uniform_int_distribution<std::uint64_t> pick(0, g - 1);
    auto zeta = field.pow(field.generator(), static_cast<std::int64_t>(units / g));
    pt.torsion.push_back(field.pow(zeta, static_cast<std::int64_t>(pick(rng))));
  }
  return pt;
}

} // namespace tropos
