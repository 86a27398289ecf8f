#include "tropos/alexander.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tropos {

PolyMatrix::PolyMatrix(GroupPtr g, std::size_t r, std::size_t c)
    : group(std::move(g)), rows(r), cols(c), data(r * c, LaurentPoly(group)) {}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix t(group, cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data.begin(), data.end(), [](const LaurentPoly &p) { return p.is_zero(); });
}

PolyMatrix operator*(const PolyMatrix &a, const PolyMatrix &b) {
  if (a.cols != b.rows)
    throw Error("matrix shape mismatch in product");
  PolyMatrix c(a.group, a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k).is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        if (!b(k, j).is_zero())
          c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

LaurentPoly determinant(const PolyMatrix &m) {
  if (m.rows != m.cols)
    throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows;
  if (n == 0)
    return LaurentPoly::constant(m.group, 1);
  if (n > 20)
    throw Error("determinant size too large");
  // dp[mask]: signed sum over bijections of the first popcount(mask) rows
  // onto the columns in mask.
  std::vector<LaurentPoly> dp(std::size_t(1) << n, LaurentPoly(m.group));
  std::vector<bool> live(dp.size(), false);
  dp[0] = LaurentPoly::constant(m.group, 1);
  live[0] = true;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (!live[mask] || dp[mask].is_zero())
      continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row == n)
      continue;
    for (std::size_t col = 0; col < n; ++col) {
      if (mask & (std::size_t(1) << col) || m(row, col).is_zero())
        continue;
      // Sign: parity of the chosen columns to the right of col.
      auto above = static_cast<std::size_t>(__builtin_popcountll(mask >> col));
      LaurentPoly term = dp[mask] * m(row, col);
      auto next = mask | (std::size_t(1) << col);
      if (above % 2)
        dp[next] -= term;
      else
        dp[next] += term;
      live[next] = true;
    }
  }
  return dp.back();
}

GroupPtr group_ring(const Abelianization &ab) {
  return std::make_shared<const FGAbelianGroup>(ab.group);
}

LaurentPoly fox_derivative(const Word &w, std::size_t generator, const Abelianization &ab, const GroupPtr &group) {
  if (generator >= ab.generator_images.size())
    throw Error("Fox derivative with respect to an unknown generator");
  LaurentPoly d(group);
  GroupElement prefix = identity_element(*group);
  for (const auto &l : w) {
    if (l.generator >= ab.generator_images.size())
      throw Error("word uses an unknown generator");
    const GroupElement &img = ab.generator_images[l.generator];
    if (l.exponent > 0) {
      if (l.generator == generator)
        d.add_term(prefix, 1);
      prefix = add(*group, prefix, img);
    } else {
      prefix = add(*group, prefix, negate(*group, img));
      if (l.generator == generator)
        d.add_term(prefix, -1);
    }
  }
  return d;
}

FoxMatrix fox_matrix(const Presentation &p) {
  FoxMatrix f;
  f.ab = abelianize(p);
  f.group = group_ring(f.ab);
  f.matrix = PolyMatrix(f.group, p.generators.size(), p.relators.size());
  for (std::size_t j = 0; j < p.relators.size(); ++j)
    for (std::size_t i = 0; i < p.generators.size(); ++i)
      f.matrix(i, j) = fox_derivative(p.relators[j], i, f.ab, f.group);
  return f;
}

PolyMatrix ChainData::boundary(std::size_t i) const {
  if (i < boundaries.size())
    return boundaries[i];
  if (i >= ranks.size())
    throw Error("boundary index out of range");
  return PolyMatrix(group, ranks[i], 0);
}

void ChainData::check() const {
  if (ranks.empty())
    throw Error("chain data without ranks");
  if (boundaries.size() + 1 != ranks.size())
    throw Error("chain data needs one boundary matrix per consecutive pair of ranks");
  for (std::size_t i = 0; i < boundaries.size(); ++i)
    if (boundaries[i].rows != ranks[i] || boundaries[i].cols != ranks[i + 1])
      throw Error("boundary d" + std::to_string(i) + " has the wrong shape");
  for (std::size_t i = 0; i + 1 < boundaries.size(); ++i)
    if (!(boundaries[i] * boundaries[i + 1]).is_zero())
      throw Error("d" + std::to_string(i) + " * d" + std::to_string(i + 1) + " is not zero");
}

ChainData presentation_complex(const Presentation &p) {
  FoxMatrix fox = fox_matrix(p);
  ChainData c;
  c.group = fox.group;
  c.ranks = {1, p.generators.size(), p.relators.size()};
  PolyMatrix d0(c.group, 1, p.generators.size());
  for (std::size_t i = 0; i < p.generators.size(); ++i)
    d0(0, i) = LaurentPoly::monomial(c.group, fox.ab.generator_images[i]) - LaurentPoly::constant(c.group, 1);
  c.boundaries = {d0, fox.matrix};
  c.check();
  return c;
}

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(trim(cur));
  return out;
}

} // namespace

ChainData parse_chain_data(const std::string &text, bool transposed) {
  std::vector<std::size_t> ranks;
  std::vector<std::string> names;
  std::map<std::size_t, std::vector<std::string>> rows; // matrix index -> row lines
  std::optional<std::size_t> current;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    if (line.rfind("ranks:", 0) == 0) {
      std::istringstream r(line.substr(6));
      long v;
      while (r >> v) {
        if (v < 0)
          throw Error("negative rank on line " + std::to_string(lineno));
        ranks.push_back(static_cast<std::size_t>(v));
      }
    } else if (line.rfind("vars:", 0) == 0) {
      std::istringstream r(line.substr(5));
      std::string n;
      while (r >> n)
        names.push_back(n);
    } else if (line.size() > 2 && line[0] == 'd' && line.back() == ':') {
      current = std::stoul(line.substr(1, line.size() - 2));
      rows[*current];
    } else {
      if (!current)
        throw Error("matrix row before any 'dN:' header on line " + std::to_string(lineno));
      rows[*current].push_back(line);
    }
  }
  if (ranks.empty())
    throw Error("chain data is missing a 'ranks:' line");
  if (names.empty()) {
    std::vector<std::string> texts;
    for (const auto &[k, rs] : rows)
      for (const auto &r : rs)
        for (const auto &e : split(r, ','))
          texts.push_back(e);
    names = infer_variables(texts);
  }
  ChainData c;
  c.group = make_group(names.size(), {}, names);
  c.ranks = ranks;
  for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
    std::size_t r = ranks[i], cols = ranks[i + 1];
    PolyMatrix m(c.group, r, cols);
    const auto &lines = rows[i];
    std::size_t want_rows = transposed ? cols : r;
    std::size_t want_cols = transposed ? r : cols;
    if (want_rows == 0 || want_cols == 0) {
      if (!lines.empty())
        throw Error("matrix d" + std::to_string(i) + " should be empty");
      c.boundaries.push_back(m);
      continue;
    }
    if (lines.size() != want_rows)
      throw Error("matrix d" + std::to_string(i) + " needs " + std::to_string(want_rows) + " rows");
    for (std::size_t a = 0; a < want_rows; ++a) {
      auto entries = split(lines[a], ',');
      if (entries.size() != want_cols)
        throw Error("row " + std::to_string(a) + " of d" + std::to_string(i) + " needs " +
                    std::to_string(want_cols) + " entries");
      for (std::size_t b = 0; b < want_cols; ++b) {
        LaurentPoly e = parse_polynomial(entries[b], c.group);
        if (transposed)
          m(b, a) = e;
        else
          m(a, b) = e;
      }
    }
    c.boundaries.push_back(m);
  }
  for (const auto &[k, rs] : rows)
    if (k + 1 >= ranks.size())
      throw Error("matrix d" + std::to_string(k) + " has no matching ranks");
  c.check();
  return c;
}

ChainData load_chain_data(const std::string &path, bool transposed) {
  std::ifstream f(path);
  if (!f)
    throw Error("cannot open chain data file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_chain_data(ss.str(), transposed);
}

PolyMatrix jump_matrix(const ChainData &c, std::size_t i) {
  if (i >= c.ranks.size())
    throw Error("jump ideal degree beyond the chain data");
  PolyMatrix a = c.boundary(i);
  PolyMatrix b = i == 0 ? PolyMatrix(c.group, 0, c.ranks[0]) : c.boundary(i - 1);
  PolyMatrix m(c.group, a.rows + b.rows, a.cols + b.cols);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t s = 0; s < a.cols; ++s)
      m(r, s) = a(r, s);
  for (std::size_t r = 0; r < b.rows; ++r)
    for (std::size_t s = 0; s < b.cols; ++s)
      m(a.rows + r, a.cols + s) = b(r, s);
  return m;
}

std::size_t default_minor_cap() {
  if (const char *env = std::getenv("TROPOS_MINOR_CAP")) {
    char *end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
  }
  return 100000;
}

namespace {

Integer binomial(std::size_t n, std::size_t k) {
  if (k > n)
    return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// All k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n)
    return out;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i)
    s[i] = i;
  while (true) {
    out.push_back(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1)
      --i;
    if (i == 0)
      break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j)
      s[j] = s[j - 1] + 1;
  }
  return out;
}

// Nonzero k-minors of m, normalized; k = 0 gives the unit minor.
std::vector<LaurentPoly> minors(const PolyMatrix &m, std::size_t k) {
  std::vector<LaurentPoly> out;
  if (k == 0) {
    out.push_back(LaurentPoly::constant(m.group, 1));
    return out;
  }
  for (const auto &rs : subsets(m.rows, k))
    for (const auto &cs : subsets(m.cols, k)) {
      PolyMatrix sub(m.group, k, k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
          sub(a, b) = m(rs[a], cs[b]);
      LaurentPoly d = determinant(sub);
      if (!d.is_zero())
        out.push_back(normalize_unit(d));
    }
  return out;
}

void sort_unique(std::vector<LaurentPoly> &v) {
  std::vector<std::pair<std::string, LaurentPoly>> keyed;
  for (auto &p : v)
    keyed.emplace_back(p.str(), p);
  std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
    if (a.first.size() != b.first.size())
      return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  v.clear();
  for (std::size_t i = 0; i < keyed.size(); ++i)
    if (i == 0 || keyed[i].first != keyed[i - 1].first)
      v.push_back(keyed[i].second);
}

bool is_monomial_unit(const LaurentPoly &f) {
  return f.size() == 1 && (f.terms().begin()->second == 1 || f.terms().begin()->second == -1) &&
         f.terms().begin()->first.torsion_part ==
             std::vector<Exponent>(f.terms().begin()->first.torsion_part.size(), 0);
}

} // namespace

JumpIdeal jump_ideal(const ChainData &c, std::size_t i, std::size_t cap) {
  PolyMatrix a = c.boundary(i);
  PolyMatrix b = i == 0 ? PolyMatrix(c.group, 0, c.ranks[0]) : c.boundary(i - 1);
  const std::size_t k = c.ranks[i];
  // Minors of diag(a, b): rows and columns split between the blocks with
  // equal counts, value = minor of a times minor of b.
  Integer count = 0;
  for (std::size_t k1 = 0; k1 <= k; ++k1) {
    std::size_t k2 = k - k1;
    count += binomial(a.rows, k1) * binomial(a.cols, k1) * binomial(b.rows, k2) * binomial(b.cols, k2);
  }
  if (count > Integer(static_cast<unsigned long>(cap)))
    throw Error("jump ideal J^" + std::to_string(i) + " needs " + count.get_str() + " minors, above the cap of " +
                std::to_string(cap));
  JumpIdeal J;
  J.degree = i;
  J.minors_enumerated = count.get_ui();
  for (std::size_t k1 = 0; k1 <= k; ++k1) {
    std::size_t k2 = k - k1;
    if (k1 > std::min(a.rows, a.cols) || k2 > std::min(b.rows, b.cols))
      continue;
    auto ma = minors(a, k1);
    if (ma.empty())
      continue;
    auto mb = minors(b, k2);
    sort_unique(ma);
    sort_unique(mb);
    for (const auto &x : ma)
      for (const auto &y : mb) {
        LaurentPoly xy = x * y; // may vanish when H has torsion
        if (!xy.is_zero())
          J.generators.push_back(normalize_unit(xy));
      }
  }
  sort_unique(J.generators);

  if (J.generators.empty()) {
    J.principal_part = LaurentPoly(c.group);
    return J;
  }
  if (!c.group->torsion_free()) {
    J.principal_part = LaurentPoly::constant(c.group, 1);
    J.residual = J.generators;
    return J;
  }
  LaurentPoly g = J.generators.front();
  for (std::size_t t = 1; t < J.generators.size(); ++t)
    g = gcd(g, J.generators[t]);
  J.principal_part = normalize_unit(g);
  for (const auto &f : J.generators) {
    auto q = divide_exact(f, J.principal_part);
    if (!q)
      throw Error("internal: gcd does not divide a generator");
    J.residual.push_back(normalize_unit(*q));
  }
  sort_unique(J.residual);
  return J;
}

std::string to_string(ResidualKind k) {
  switch (k) {
  case ResidualKind::None:
    return "none";
  case ResidualKind::Unit:
    return "unit";
  case ResidualKind::Augmentation:
    return "augmentation";
  case ResidualKind::Origin:
    return "origin";
  case ResidualKind::General:
    return "general";
  }
  return "?";
}

namespace {

// f = +-(x_i - 1)^e up to a monomial, for a single free coordinate i.
std::optional<std::size_t> augmentation_power_coordinate(const LaurentPoly &f) {
  if (!f.group()->torsion_free() || f.size() < 2)
    return std::nullopt;
  const std::size_t n = f.group()->rank();
  std::optional<std::size_t> coord;
  for (const auto &[e, c] : f.terms())
    for (std::size_t i = 0; i < n; ++i)
      if (e.free_part[i] != 0) {
        if (coord && *coord != i)
          return std::nullopt;
        coord = i;
      }
  if (!coord)
    return std::nullopt;
  Exponent lo = f.terms().begin()->first.free_part[*coord];
  Exponent hi = lo;
  for (const auto &[e, c] : f.terms()) {
    lo = std::min(lo, e.free_part[*coord]);
    hi = std::max(hi, e.free_part[*coord]);
  }
  LaurentPoly base = LaurentPoly::variable(f.group(), *coord) - LaurentPoly::constant(f.group(), 1);
  LaurentPoly target = normalize_unit(base.pow(static_cast<unsigned>(hi - lo)));
  if (normalize_unit(f) == target)
    return coord;
  return std::nullopt;
}

DegreeBound degree_bound(const ChainData &c, std::size_t i, std::size_t cap) {
  DegreeBound d;
  d.ideal = jump_ideal(c, i, cap);
  const std::size_t n = c.group->rank();
  d.principal_region = trop_hypersurface_Z(d.ideal.principal_part);
  SphericalSet principal = sphere_project(d.principal_region);
  const auto &res = d.ideal.residual;
  if (res.empty()) {
    d.residual_kind = ResidualKind::None;
  } else if (std::any_of(res.begin(), res.end(), [](const LaurentPoly &f) { return is_monomial_unit(f); })) {
    d.residual_kind = ResidualKind::Unit;
  } else {
    std::set<std::size_t> coords;
    for (const auto &f : res)
      if (auto k = augmentation_power_coordinate(f))
        coords.insert(*k);
    d.residual_region = prevariety(res, TropRing::Z());
    if (coords.size() == n)
      d.residual_kind = ResidualKind::Augmentation;
    else if (d.residual_region.within_origin())
      d.residual_kind = ResidualKind::Origin;
    else
      d.residual_kind = ResidualKind::General;
  }
  d.sphere = principal;
  d.provenance = Provenance::Exact;
  if (d.residual_kind == ResidualKind::General) {
    SphericalSet r = sphere_project(d.residual_region);
    if (r.is_empty() != Tri::True) {
      d.sphere = principal.unite(r);
      d.provenance = d.residual_region.provenance() == Provenance::Exact ? Provenance::Exact : Provenance::UpperBound;
    }
  }
  return d;
}

} // namespace

BnsrBound bnsr_upper_bound(const ChainData &c, std::size_t k, std::size_t cap) {
  const std::size_t n = c.group->rank();
  if (n == 0)
    throw Error("the character sphere is empty: H has rank 0");
  if (k >= c.ranks.size())
    throw Error("degree beyond the chain data");
  BnsrBound out;
  out.degree = k;
  out.trop_sphere = SphericalSet::empty(n);
  SphericalSet principal_union = SphericalSet::empty(n);
  for (std::size_t i = 0; i <= k; ++i) {
    DegreeBound d = degree_bound(c, i, cap);
    out.trop_sphere = out.trop_sphere.unite(d.sphere);
    principal_union = principal_union.unite(sphere_project(d.principal_region));
    if (d.provenance != Provenance::Exact && out.provenance == Provenance::Exact)
      out.provenance = d.provenance;
    out.degrees.push_back(std::move(d));
  }
  out.complement = out.trop_sphere.complement();
  out.outer_complement = principal_union.complement();
  return out;
}

BnsrBound bnsr_upper_bound(const Presentation &p, std::size_t cap) {
  return bnsr_upper_bound(presentation_complex(p), 1, cap);
}

SphericalSet BnsFixture::sigma_Z() const {
  if (convention == "Z")
    return sigma;
  if (convention != "G")
    throw Error("unknown fixture convention '" + convention + "'");
  const std::size_t n = sigma.ambient_dim();
  if (n == 1)
    return SphericalSet::points(1, [&] {
      std::vector<Vec> d;
      if (sigma.has_plus())
        d.push_back({-1});
      if (sigma.has_minus())
        d.push_back({1});
      return d;
    }());
  if (n == 2) {
    // Rotate by pi: negate every breakpoint.
    SphericalSet out = SphericalSet::empty(2);
    if (sigma.full_circle())
      return sigma;
    for (const auto &a : sigma.arcs()) {
      Vec f{-a.from[0], -a.from[1]}, t{-a.to[0], -a.to[1]};
      out = out.unite(a.is_point() ? SphericalSet::points(2, {f}) : SphericalSet::arc(f, t, a.from_closed, a.to_closed));
    }
    return out;
  }
  std::vector<Polyhedron> pieces;
  for (const auto &p : sigma.pieces()) {
    Polyhedron q(n);
    for (const auto &c : p.constraints()) {
      Vec a = c.a;
      for (auto &x : a)
        x = -x;
      if (c.equality)
        q.add_eq(a, c.b);
      else
        q.add_ge(a, c.b);
    }
    pieces.push_back(q);
  }
  SphericalSet out = SphericalSet::from_polyhedra(n, pieces);
  return sigma.negated() ? out.complement() : out;
}

InclusionReport audit_inclusion(const BnsFixture &fixture, const SphericalSet &bound_complement) {
  SphericalSet s = fixture.sigma_Z();
  if (s.ambient_dim() != bound_complement.ambient_dim())
    throw Error("fixture and bound live on different spheres");
  InclusionReport r;
  r.included = s.subset_of(bound_complement);
  if (r.included == Tri::False) {
    r.strict = Tri::False;
    return r;
  }
  Tri back = bound_complement.subset_of(s);
  r.strict = back == Tri::Unknown ? Tri::Unknown : tri(back == Tri::False);
  if (r.included == Tri::Unknown && r.strict == Tri::True)
    r.strict = Tri::Unknown;
  return r;
}

DwyerFriedResult dwyer_fried_test(const std::vector<LaurentPoly> &ann, const TropRing &ring) {
  if (ann.empty())
    throw Error("Dwyer-Fried test needs at least one annihilator generator");
  DwyerFriedResult r;
  r.region = prevariety(ann, ring);
  if (r.region.within_origin())
    r.finitely_generated = Tri::True;
  else
    r.finitely_generated = r.region.provenance() == Provenance::Exact ? Tri::False : Tri::Unknown;
  return r;
}

Presentation presentation_with_fox_factor(const LaurentPoly &f) {
  if (f.group()->rank() != 2 || !f.group()->torsion_free() || f.modulus() != 0)
    throw Error("the Fox factor must be an integral polynomial in two variables");
  Presentation p;
  p.generators = {"a", "b"};
  Word rel;
  auto power = [](Word &w, std::size_t gen, Exponent e) {
    for (Exponent t = 0; t < (e < 0 ? -e : e); ++t)
      w.push_back({gen, e < 0 ? -1 : 1});
  };
  // Product over terms c * x^u y^v of (a^u b^v [b, a] b^-v a^-u)^c.
  for (const auto &[e, c] : f.terms()) {
    Word conj;
    power(conj, 0, e.free_part[0]);
    power(conj, 1, e.free_part[1]);
    Word inner = conj;
    Word ba = commutator(1, 0);
    inner.insert(inner.end(), ba.begin(), ba.end());
    for (auto it = conj.rbegin(); it != conj.rend(); ++it)
      inner.push_back({it->generator, -it->exponent});
    if (!c.fits_slong_p() || abs(c) > 10000)
      throw Error("coefficient too large for a word");
    long times = c.get_si();
    for (long t = 0; t < (times < 0 ? -times : times); ++t) {
      if (times > 0) {
        rel.insert(rel.end(), inner.begin(), inner.end());
      } else {
        for (auto it = inner.rbegin(); it != inner.rend(); ++it)
          rel.push_back({it->generator, -it->exponent});
      }
    }
  }
  p.relators.push_back(rel);
  p.validate();
  return p;
}

} // namespace tropos
