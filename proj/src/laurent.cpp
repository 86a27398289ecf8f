#include "tropos/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace tropos {

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(GroupPtr group, long modulus) : group_(std::move(group)), modulus_(modulus) {
  if (!group_)
    throw Error("LaurentPoly needs a group");
  if (modulus_ != 0 && !is_prime(modulus_))
    throw Error("coefficient modulus must be prime, got " + std::to_string(modulus_));
}

LaurentPoly LaurentPoly::constant(GroupPtr group, const Integer &c, long modulus) {
  LaurentPoly f(group, modulus);
  f.add_term(identity_element(*group), c);
  return f;
}

LaurentPoly LaurentPoly::monomial(GroupPtr group, const GroupElement &e, const Integer &c,
                                  long modulus) {
  LaurentPoly f(std::move(group), modulus);
  f.add_term(e, c);
  return f;
}

LaurentPoly LaurentPoly::variable(GroupPtr group, std::size_t i, long modulus) {
  GroupElement e = identity_element(*group);
  e.free_part.at(i) = 1;
  return monomial(std::move(group), e, 1, modulus);
}

Integer LaurentPoly::canon(const Integer &c) const {
  if (modulus_ == 0)
    return c;
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(modulus_));
  return r;
}

void LaurentPoly::add_term(const GroupElement &e, const Integer &c) {
  GroupElement key = e;
  if (key.free_part.size() != group_->rank() ||
      key.torsion_part.size() != group_->torsion_orders().size())
    throw Error("exponent does not belong to the polynomial's group");
  reduce(*group_, key);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    Integer v = canon(c);
    if (v != 0)
      terms_.emplace(std::move(key), std::move(v));
    return;
  }
  it->second = canon(it->second + c);
  if (it->second == 0)
    terms_.erase(it);
}

void LaurentPoly::check_compatible(const LaurentPoly &o) const {
  if (modulus_ != o.modulus_)
    throw Error("coefficient domain mismatch");
  if (!(*group_ == *o.group_))
    throw Error("polynomials live on different groups");
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r(group_, modulus_);
  for (const auto &[e, c] : terms_)
    r.add_term(e, -c);
  return r;
}

LaurentPoly &LaurentPoly::operator+=(const LaurentPoly &o) {
  check_compatible(o);
  for (const auto &[e, c] : o.terms_)
    add_term(e, c);
  return *this;
}

LaurentPoly &LaurentPoly::operator-=(const LaurentPoly &o) {
  check_compatible(o);
  for (const auto &[e, c] : o.terms_)
    add_term(e, -c);
  return *this;
}

LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
  a.check_compatible(b);
  LaurentPoly r(a.group_, a.modulus_);
  for (const auto &[ea, ca] : a.terms_)
    for (const auto &[eb, cb] : b.terms_)
      r.add_term(add(*a.group_, ea, eb), ca * cb);
  return r;
}

LaurentPoly operator*(const Integer &c, const LaurentPoly &a) {
  LaurentPoly r(a.group_, a.modulus_);
  for (const auto &[e, v] : a.terms_)
    r.add_term(e, c * v);
  return r;
}

LaurentPoly LaurentPoly::pow(unsigned k) const {
  LaurentPoly r = constant(group_, 1, modulus_);
  for (unsigned i = 0; i < k; ++i)
    r = r * *this;
  return r;
}

LaurentPoly LaurentPoly::shifted(const GroupElement &e) const {
  LaurentPoly r(group_, modulus_);
  for (const auto &[u, c] : terms_)
    r.add_term(add(*group_, u, e), c);
  return r;
}

namespace {

std::string monomial_str(const FGAbelianGroup &g, const GroupElement &e) {
  std::string out;
  auto emit = [&](const std::string &label, Exponent k) {
    if (k == 0)
      return;
    if (!out.empty())
      out += '*';
    out += label;
    if (k != 1)
      out += '^' + std::to_string(k);
  };
  for (std::size_t i = 0; i < e.free_part.size(); ++i)
    emit(g.labels()[i], e.free_part[i]);
  for (std::size_t i = 0; i < e.torsion_part.size(); ++i)
    emit(g.labels()[g.rank() + i], e.torsion_part[i]);
  return out;
}

} // namespace

std::string LaurentPoly::str() const {
  if (terms_.empty())
    return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[e, c] = *it;
    bool neg = c < 0;
    Integer mag = abs(c);
    std::string mono = monomial_str(*group_, e);
    std::string body;
    if (mono.empty())
      body = mag.get_str();
    else if (mag == 1)
      body = mono;
    else
      body = mag.get_str() + "*" + mono;
    if (first)
      out += (neg ? "-" : "") + body;
    else
      out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Valuations and initial forms

Valuation Valuation::padic(long p) {
  if (!is_prime(p))
    throw Error("p-adic valuation needs a prime, got " + std::to_string(p));
  return {Kind::PAdic, p};
}

Valuation Valuation::modp(long p) {
  if (!is_prime(p))
    throw Error("mod-p valuation needs a prime, got " + std::to_string(p));
  return {Kind::ModP, p};
}

std::string Valuation::str() const {
  switch (kind) {
  case Kind::Trivial:
    return "trivial";
  case Kind::PAdic:
    return "padic:" + std::to_string(p);
  case Kind::ModP:
    return "modp:" + std::to_string(p);
  }
  return "?";
}

Valuation parse_valuation(const std::string &text) {
  if (text == "trivial")
    return Valuation::trivial();
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw Error("unknown valuation '" + text + "' (use trivial, padic:p or modp:p)");
  std::string kind = text.substr(0, colon);
  long p = 0;
  try {
    p = std::stol(text.substr(colon + 1));
  } catch (...) {
    throw Error("bad prime in valuation '" + text + "'");
  }
  if (kind == "padic")
    return Valuation::padic(p);
  if (kind == "modp")
    return Valuation::modp(p);
  throw Error("unknown valuation '" + text + "'");
}

ExtRational coefficient_valuation(const Integer &c, const Valuation &v) {
  if (c == 0)
    return ExtRational::infinity();
  switch (v.kind) {
  case Valuation::Kind::Trivial:
    return ExtRational(0L);
  case Valuation::Kind::PAdic:
    return ExtRational(padic_order(c, v.p));
  case Valuation::Kind::ModP:
    if (c % v.p == 0)
      return ExtRational::infinity();
    return ExtRational(0L);
  }
  return ExtRational::infinity();
}

Rational chi_degree(const LaurentPoly &f, const Character &chi) {
  if (f.is_zero())
    throw Error("chi-degree of the zero polynomial");
  std::optional<Rational> best;
  for (const auto &[e, c] : f.terms()) {
    Rational v = pair(chi, e);
    if (!best || v < *best)
      best = v;
  }
  return *best;
}

LaurentPoly initial_form_ring(const LaurentPoly &f, const Character &chi) {
  Rational d = chi_degree(f, chi);
  LaurentPoly r(f.group(), f.modulus());
  for (const auto &[e, c] : f.terms())
    if (pair(chi, e) == d)
      r.add_term(e, c);
  return r;
}

LaurentPoly initial_form_field(const LaurentPoly &f, const Character &w, const Valuation &v) {
  if (f.is_zero())
    throw Error("initial form of the zero polynomial");
  LaurentPoly g = f;
  Valuation eff = v;
  if (v.kind == Valuation::Kind::ModP) {
    if (f.modulus() == 0)
      g = reduce_mod_p(f, v.p);
    else if (f.modulus() != v.p)
      throw Error("mod-p valuation does not match coefficient field");
    if (g.is_zero())
      throw Error("polynomial vanishes mod " + std::to_string(v.p));
    eff = Valuation::trivial();
  } else if (v.kind == Valuation::Kind::PAdic && f.modulus() != 0) {
    throw Error("p-adic valuation needs integer coefficients");
  }
  std::optional<Rational> best;
  for (const auto &[e, c] : g.terms()) {
    Rational val = coefficient_valuation(c, eff).value() + pair(w, e);
    if (!best || val < *best)
      best = val;
  }
  LaurentPoly r(g.group(), g.modulus());
  for (const auto &[e, c] : g.terms())
    if (coefficient_valuation(c, eff).value() + pair(w, e) == *best)
      r.add_term(e, c);
  return r;
}

// ---------------------------------------------------------------------------
// Units

UnitStatus unit_status_over_Z(const LaurentPoly &f, std::size_t torsion_cap) {
  if (f.modulus() != 0)
    throw Error("unit test over Z needs integer coefficients");
  if (f.is_zero())
    return UnitStatus::NotUnit;
  const auto &first = f.terms().begin()->first.free_part;
  for (const auto &[e, c] : f.terms())
    if (e.free_part != first)
      return UnitStatus::NotUnit;
  if (f.size() == 1)
    return abs(f.terms().begin()->second) == 1 ? UnitStatus::Unit : UnitStatus::NotUnit;

  // All terms share one free exponent: decide in Z[T].
  const auto &orders = f.group()->torsion_orders();
  Integer augmentation = 0;
  for (const auto &[e, c] : f.terms())
    augmentation += c;
  if (abs(augmentation) != 1)
    return UnitStatus::NotUnit;
  Integer tsize = f.group()->torsion_size();
  if (tsize > static_cast<long>(torsion_cap))
    return UnitStatus::Undecided;
  const std::size_t n = tsize.get_ui();

  auto index_of = [&](const std::vector<Exponent> &t) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < orders.size(); ++i)
      idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(t[i]);
    return idx;
  };
  auto element_at = [&](std::size_t idx) {
    std::vector<Exponent> t(orders.size());
    for (std::size_t i = orders.size(); i-- > 0;) {
      t[i] = static_cast<Exponent>(idx % static_cast<std::size_t>(orders[i]));
      idx /= static_cast<std::size_t>(orders[i]);
    }
    return t;
  };

  IntMatrix mult(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    auto base = element_at(col);
    for (const auto &[e, c] : f.terms()) {
      std::vector<Exponent> t(orders.size());
      for (std::size_t i = 0; i < orders.size(); ++i)
        t[i] = (e.torsion_part[i] + base[i]) % orders[i];
      mult(index_of(t), col) += c;
    }
  }
  return abs(determinant(mult)) == 1 ? UnitStatus::Unit : UnitStatus::NotUnit;
}

bool is_unit_over_Z(const LaurentPoly &f) {
  auto s = unit_status_over_Z(f);
  if (s == UnitStatus::Undecided)
    throw Error("UNDECIDED-TORSION: torsion subgroup too large for the unit test");
  return s == UnitStatus::Unit;
}

// ---------------------------------------------------------------------------
// Content, normalization, gcd

ContentSplit content_primitive(const LaurentPoly &f) {
  if (f.modulus() != 0)
    throw Error("content needs integer coefficients");
  Integer g = 0;
  for (const auto &[e, c] : f.terms())
    g = gcd(g, c);
  if (g == 0)
    return {0, f};
  LaurentPoly p(f.group(), 0);
  for (const auto &[e, c] : f.terms())
    p.add_term(e, c / g);
  return {g, p};
}

namespace {

GroupElement min_free_shift(const LaurentPoly &f) {
  GroupElement shift = identity_element(*f.group());
  bool first = true;
  for (const auto &[e, c] : f.terms()) {
    for (std::size_t i = 0; i < e.free_part.size(); ++i)
      if (first || e.free_part[i] < shift.free_part[i])
        shift.free_part[i] = e.free_part[i];
    first = false;
  }
  for (auto &x : shift.free_part)
    x = -x;
  return shift;
}

} // namespace

LaurentPoly normalize_unit(const LaurentPoly &f) {
  if (f.is_zero())
    return f;
  LaurentPoly g = f.shifted(min_free_shift(f));
  const Integer &lead = g.terms().rbegin()->second;
  if (g.modulus() == 0)
    return lead < 0 ? -g : g;
  Integer inv;
  Integer p = g.modulus();
  mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), p.get_mpz_t());
  return inv * g;
}

namespace {

// Sparse polynomial over Z with nonnegative exponents; lex order, leading
// term at rbegin().
using Mono = std::vector<Exponent>;
using MPoly = std::map<Mono, Integer>;

void mp_add_term(MPoly &p, const Mono &m, const Integer &c) {
  if (c == 0)
    return;
  auto [it, inserted] = p.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      p.erase(it);
  }
}

MPoly mp_sub(const MPoly &a, const MPoly &b) {
  MPoly r = a;
  for (const auto &[m, c] : b)
    mp_add_term(r, m, -c);
  return r;
}

MPoly mp_mul(const MPoly &a, const MPoly &b) {
  MPoly r;
  for (const auto &[ma, ca] : a)
    for (const auto &[mb, cb] : b) {
      Mono m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i)
        m[i] = ma[i] + mb[i];
      mp_add_term(r, m, ca * cb);
    }
  return r;
}

MPoly mp_const(std::size_t nvars, const Integer &c) {
  MPoly r;
  if (c != 0)
    r.emplace(Mono(nvars, 0), c);
  return r;
}

MPoly mp_pow(const MPoly &a, unsigned k, std::size_t nvars) {
  MPoly r = mp_const(nvars, 1);
  for (unsigned i = 0; i < k; ++i)
    r = mp_mul(r, a);
  return r;
}

// Lex division; returns the quotient when b divides a exactly.
std::optional<MPoly> mp_divexact(MPoly a, const MPoly &b) {
  if (b.empty())
    throw Error("division by zero polynomial");
  MPoly q;
  const auto &[lm, lc] = *b.rbegin();
  while (!a.empty()) {
    const auto &[am, ac] = *a.rbegin();
    Mono m(am.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      m[i] = am[i] - lm[i];
      if (m[i] < 0)
        return std::nullopt;
    }
    if (ac % lc != 0)
      return std::nullopt;
    Integer c = ac / lc;
    mp_add_term(q, m, c);
    MPoly t;
    t.emplace(m, c);
    a = mp_sub(a, mp_mul(t, b));
  }
  return q;
}

MPoly mp_divexact_or_throw(const MPoly &a, const MPoly &b) {
  auto q = mp_divexact(a, b);
  if (!q)
    throw Error("internal: inexact division in gcd");
  return *q;
}

Exponent mp_degree(const MPoly &p, std::size_t var) {
  Exponent d = -1;
  for (const auto &[m, c] : p)
    d = std::max(d, m[var]);
  return d;
}

// Coefficients of p as a polynomial in `var`, index = degree.
std::vector<MPoly> mp_coeffs(const MPoly &p, std::size_t var) {
  std::vector<MPoly> out(static_cast<std::size_t>(std::max<Exponent>(mp_degree(p, var) + 1, 0)));
  for (const auto &[m, c] : p) {
    Mono k = m;
    k[var] = 0;
    out[static_cast<std::size_t>(m[var])].emplace(k, c);
  }
  return out;
}

MPoly mp_lc(const MPoly &p, std::size_t var) { return mp_coeffs(p, var).back(); }

MPoly mp_normalize_sign(MPoly p) {
  if (!p.empty() && p.rbegin()->second < 0)
    for (auto &[m, c] : p)
      c = -c;
  return p;
}

// lc(b)^(deg a - deg b + 1) * a mod b in var.
MPoly mp_prem(const MPoly &a, const MPoly &b, std::size_t var) {
  auto bc = mp_coeffs(b, var);
  const Exponent db = static_cast<Exponent>(bc.size()) - 1;
  const MPoly &lb = bc.back();
  MPoly r = a;
  Exponent dr = mp_degree(r, var);
  Exponent steps = dr - db + 1;
  while (!r.empty() && (dr = mp_degree(r, var)) >= db) {
    auto rc = mp_coeffs(r, var);
    MPoly lr = rc.back();
    // r = lb * r - lr * x^(dr-db) * b
    MPoly shift_b;
    for (const auto &[m, c] : b) {
      Mono k = m;
      k[var] += dr - db;
      shift_b.emplace(k, c);
    }
    r = mp_sub(mp_mul(lb, r), mp_mul(lr, shift_b));
    --steps;
  }
  if (steps > 0)
    r = mp_mul(mp_pow(lb, static_cast<unsigned>(steps), a.begin()->first.size()), r);
  return r;
}

MPoly mp_gcd(const MPoly &a, const MPoly &b, std::size_t nvars);

MPoly mp_content(const MPoly &p, std::size_t var, std::size_t nvars) {
  MPoly g;
  for (const auto &c : mp_coeffs(p, var)) {
    if (c.empty())
      continue;
    g = g.empty() ? mp_normalize_sign(c) : mp_gcd(g, c, nvars);
    if (g.size() == 1 && g.begin()->second == 1 &&
        std::all_of(g.begin()->first.begin(), g.begin()->first.end(),
                    [](Exponent e) { return e == 0; }))
      break;
  }
  return g;
}

MPoly mp_subresultant_gcd(MPoly a, MPoly b, std::size_t var, std::size_t nvars) {
  if (mp_degree(a, var) < mp_degree(b, var))
    std::swap(a, b);
  MPoly g = mp_const(nvars, 1);
  MPoly h = mp_const(nvars, 1);
  while (true) {
    Exponent delta = mp_degree(a, var) - mp_degree(b, var);
    MPoly r = mp_prem(a, b, var);
    if (r.empty())
      break;
    if (mp_degree(r, var) == 0)
      return mp_const(nvars, 1);
    a = b;
    b = mp_divexact_or_throw(r, mp_mul(g, mp_pow(h, static_cast<unsigned>(delta), nvars)));
    g = mp_lc(a, var);
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = mp_divexact_or_throw(mp_pow(g, static_cast<unsigned>(delta), nvars),
                               mp_pow(h, static_cast<unsigned>(delta - 1), nvars));
    }
  }
  MPoly c = mp_content(b, var, nvars);
  return mp_normalize_sign(mp_divexact_or_throw(b, c));
}

MPoly mp_gcd(const MPoly &a, const MPoly &b, std::size_t nvars) {
  if (a.empty())
    return mp_normalize_sign(b);
  if (b.empty())
    return mp_normalize_sign(a);

  // Main variable: present in both, smallest maximal degree; else any
  // variable present in one of them.
  std::optional<std::size_t> main;
  Exponent best = 0;
  for (std::size_t v = 0; v < nvars; ++v) {
    Exponent da = mp_degree(a, v), db = mp_degree(b, v);
    if (da > 0 && db > 0 && (!main || std::max(da, db) < best)) {
      main = v;
      best = std::max(da, db);
    }
  }
  if (!main) {
    for (std::size_t v = 0; v < nvars; ++v) {
      Exponent da = mp_degree(a, v), db = mp_degree(b, v);
      if (da > 0) // b free of v: gcd(a, b) = gcd(cont_v(a), b)
        return mp_gcd(mp_content(a, v, nvars), b, nvars);
      if (db > 0)
        return mp_gcd(a, mp_content(b, v, nvars), nvars);
    }
    // Both constants.
    Integer g = gcd(a.begin()->second, b.begin()->second);
    return mp_const(nvars, g);
  }
  const std::size_t v = *main;
  MPoly ca = mp_content(a, v, nvars), cb = mp_content(b, v, nvars);
  MPoly c = mp_gcd(ca, cb, nvars);
  MPoly pa = mp_divexact_or_throw(a, ca), pb = mp_divexact_or_throw(b, cb);
  return mp_normalize_sign(mp_mul(c, mp_subresultant_gcd(pa, pb, v, nvars)));
}

void require_torsion_free_Z(const LaurentPoly &f, const char *what) {
  if (!f.group()->torsion_free())
    throw Error(std::string(what) + " is unsupported on groups with torsion");
  if (f.modulus() != 0)
    throw Error(std::string(what) + " needs integer coefficients");
}

MPoly to_mpoly(const LaurentPoly &f) {
  MPoly r;
  if (f.is_zero())
    return r;
  GroupElement shift = min_free_shift(f);
  for (const auto &[e, c] : f.terms()) {
    Mono m(e.free_part.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      m[i] = e.free_part[i] + shift.free_part[i];
    r.emplace(m, c);
  }
  return r;
}

LaurentPoly from_mpoly(const MPoly &p, const GroupPtr &group) {
  LaurentPoly f(group, 0);
  for (const auto &[m, c] : p) {
    GroupElement e = identity_element(*group);
    e.free_part = m;
    f.add_term(e, c);
  }
  return f;
}

} // namespace

LaurentPoly gcd(const LaurentPoly &f, const LaurentPoly &g) {
  require_torsion_free_Z(f, "gcd");
  require_torsion_free_Z(g, "gcd");
  if (!(*f.group() == *g.group()))
    throw Error("gcd of polynomials on different groups");
  if (f.is_zero() && g.is_zero())
    throw Error("gcd(0, 0) is undefined");
  const std::size_t n = f.group()->rank();
  return normalize_unit(from_mpoly(mp_gcd(to_mpoly(f), to_mpoly(g), n), f.group()));
}

std::optional<LaurentPoly> divide_exact(const LaurentPoly &f, const LaurentPoly &g) {
  require_torsion_free_Z(f, "exact division");
  require_torsion_free_Z(g, "exact division");
  if (g.is_zero())
    throw Error("division by zero polynomial");
  if (f.is_zero())
    return f;
  auto q = mp_divexact(to_mpoly(f), to_mpoly(g));
  if (!q)
    return std::nullopt;
  return from_mpoly(*q, f.group());
}

LaurentPoly reduce_mod_p(const LaurentPoly &f, long p) {
  if (f.modulus() == p)
    return f;
  if (f.modulus() != 0)
    throw Error("cannot reduce an F_p polynomial modulo a different prime");
  LaurentPoly r(f.group(), p);
  for (const auto &[e, c] : f.terms())
    r.add_term(e, c);
  return r;
}

std::vector<Integer> relevant_primes(const LaurentPoly &f) {
  if (f.modulus() != 0)
    return {};
  std::set<Integer> ps;
  for (const auto &[e, c] : f.terms())
    for (auto &p : prime_factors(c))
      ps.insert(p);
  return {ps.begin(), ps.end()};
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum Kind { Number, Name, Op, End } kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string &s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
        ++j;
      out.push_back({Token::Number, s.substr(i, j - i), i});
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::Name, s.substr(i, j - i), i});
      i = j;
    } else if (std::string("+-*^()").find(c) != std::string::npos) {
      out.push_back({Token::Op, std::string(1, c), i});
      ++i;
    } else {
      throw Error("unexpected character '" + std::string(1, c) + "' at position " +
                  std::to_string(i));
    }
  }
  out.push_back({Token::End, "", s.size()});
  return out;
}

class Parser {
public:
  Parser(std::vector<Token> toks, GroupPtr group, long modulus)
      : toks_(std::move(toks)), group_(std::move(group)), modulus_(modulus) {}

  LaurentPoly parse() {
    LaurentPoly r = expr();
    if (peek().kind != Token::End)
      fail("unexpected '" + peek().text + "'");
    return r;
  }

private:
  const Token &peek() const { return toks_[i_]; }
  bool is_op(const char *op) const { return peek().kind == Token::Op && peek().text == op; }
  [[noreturn]] void fail(const std::string &msg) const {
    throw Error("polynomial parse error at position " + std::to_string(peek().pos) + ": " + msg);
  }

  LaurentPoly expr() {
    LaurentPoly acc(group_, modulus_);
    bool neg = false;
    if (is_op("+") || is_op("-")) {
      neg = is_op("-");
      ++i_;
    }
    LaurentPoly t = term();
    acc += neg ? -t : t;
    while (is_op("+") || is_op("-")) {
      neg = is_op("-");
      ++i_;
      t = term();
      acc += neg ? -t : t;
    }
    return acc;
  }

  bool starts_primary() const {
    return peek().kind == Token::Number || peek().kind == Token::Name || is_op("(");
  }

  LaurentPoly term() {
    LaurentPoly acc = power();
    while (true) {
      if (is_op("*")) {
        ++i_;
        acc = acc * power();
      } else if (starts_primary()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  LaurentPoly power() {
    LaurentPoly base = primary();
    if (!is_op("^"))
      return base;
    ++i_;
    bool neg = false;
    if (is_op("-") || is_op("+")) {
      neg = is_op("-");
      ++i_;
    }
    if (peek().kind != Token::Number)
      fail("expected an integer exponent");
    long k = std::stol(peek().text);
    ++i_;
    if (!neg)
      return base.pow(static_cast<unsigned>(k));
    if (!base.is_monomial() || abs(base.terms().begin()->second) != 1)
      fail("negative powers are only defined for monomials");
    const auto &[e, c] = *base.terms().begin();
    return LaurentPoly::monomial(group_, scale(*group_, e, -k), c, modulus_);
  }

  LaurentPoly primary() {
    const Token &t = peek();
    if (t.kind == Token::Number) {
      ++i_;
      return LaurentPoly::constant(group_, Integer(t.text), modulus_);
    }
    if (t.kind == Token::Name) {
      const auto &labels = group_->labels();
      auto it = std::find(labels.begin(), labels.end(), t.text);
      if (it == labels.end())
        fail("unknown variable '" + t.text + "'");
      std::size_t idx = static_cast<std::size_t>(it - labels.begin());
      ++i_;
      GroupElement e = identity_element(*group_);
      if (idx < group_->rank())
        e.free_part[idx] = 1;
      else
        e.torsion_part[idx - group_->rank()] = 1;
      return LaurentPoly::monomial(group_, e, 1, modulus_);
    }
    if (is_op("(")) {
      ++i_;
      LaurentPoly r = expr();
      if (!is_op(")"))
        fail("expected ')'");
      ++i_;
      return r;
    }
    fail("expected a number, variable or '('");
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  GroupPtr group_;
  long modulus_;
};

bool indexed_x(const std::string &n) {
  if (n.size() < 2 || n[0] != 'x')
    return false;
  return std::all_of(n.begin() + 1, n.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
         n[1] != '0';
}

} // namespace

std::vector<std::string> infer_variables(const std::vector<std::string> &texts) {
  std::set<std::string> names;
  for (const auto &t : texts)
    for (const auto &tok : tokenize(t))
      if (tok.kind == Token::Name)
        names.insert(tok.text);
  if (!names.empty() && std::all_of(names.begin(), names.end(), indexed_x)) {
    long top = 0;
    for (const auto &n : names)
      top = std::max(top, std::stol(n.substr(1)));
    std::vector<std::string> out;
    for (long i = 1; i <= top; ++i)
      out.push_back("x" + std::to_string(i));
    return out;
  }
  return {names.begin(), names.end()};
}

LaurentPoly parse_polynomial(const std::string &text, std::vector<std::string> names, long modulus) {
  if (names.empty())
    names = infer_variables({text});
  auto group = make_group(names.size(), {}, names);
  return parse_polynomial(text, group, modulus);
}

LaurentPoly parse_polynomial(const std::string &text, const GroupPtr &group, long modulus) {
  Parser p(tokenize(text), group, modulus);
  return p.parse();
}

} // namespace tropos
