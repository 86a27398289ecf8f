#include "tropos/tropical.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropos {

std::string to_string(Provenance p) {
  switch (p) {
  case Provenance::Exact:
    return "EXACT";
  case Provenance::UpperBound:
    return "UPPER_BOUND";
  case Provenance::Unknown:
    return "UNKNOWN";
  }
  return "?";
}

std::string TropRing::str() const { return integers ? "Z" : "field:" + valuation.str(); }

void TropicalRegion::add_cell(TropicalCell c) {
  if (c.polyhedron.ambient_dim() != n_)
    throw Error("cell dimension mismatch");
  cells_.push_back(std::move(c));
}

bool TropicalRegion::cells_contain(const Vec &w) const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [&](const TropicalCell &c) { return c.polyhedron.contains(w); });
}

bool TropicalRegion::contains(const Vec &w) const {
  if (w.size() != n_)
    throw Error("point dimension mismatch");
  return oracle_ ? oracle_(w) : cells_contain(w);
}

bool TropicalRegion::within_origin() const {
  for (const auto &c : cells_) {
    auto g = c.polyhedron.generators();
    if (!g.rays.empty() || !g.lineality.empty())
      return false;
    for (const auto &v : g.vertices)
      if (std::any_of(v.begin(), v.end(), [](const Rational &x) { return x != 0; }))
        return false;
  }
  return true;
}

namespace {

// Coefficient domain after applying the valuation: ModP reduces and then
// behaves as the trivial valuation.
std::pair<LaurentPoly, Valuation> effective(const LaurentPoly &f, const Valuation &v) {
  if (v.kind == Valuation::Kind::ModP) {
    if (f.modulus() != 0 && f.modulus() != v.p)
      throw Error("mod-p valuation does not match coefficient field");
    return {reduce_mod_p(f, v.p), Valuation::trivial()};
  }
  if (v.kind == Valuation::Kind::PAdic && f.modulus() != 0)
    throw Error("p-adic valuation needs integer coefficients");
  return {f, v};
}

Vec to_vec(const std::vector<Exponent> &u) {
  Vec out;
  out.reserve(u.size());
  for (auto x : u)
    out.emplace_back(static_cast<long>(x));
  return out;
}

// Cells of the tie locus of min_k (h_k + u_k . w): one per maximal tie set
// found at a relative interior point, minus faces of other cells.
std::vector<std::pair<std::set<std::size_t>, Polyhedron>>
tie_cells(const std::vector<Vec> &u, const std::vector<Rational> &h, std::size_t n) {
  const std::size_t s = u.size();
  auto cell_for = [&](const std::set<std::size_t> &tie) {
    Polyhedron p(n);
    std::size_t first = *tie.begin();
    for (std::size_t k = 0; k < s; ++k) {
      if (k == first)
        continue;
      Vec a(n);
      for (std::size_t j = 0; j < n; ++j)
        a[j] = u[k][j] - u[first][j];
      if (tie.count(k))
        p.add_eq(a, h[first] - h[k]);
      else
        p.add_ge(a, h[first] - h[k]);
    }
    return p;
  };
  std::map<std::set<std::size_t>, Polyhedron> found;
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i + 1; j < s; ++j) {
      Polyhedron p = cell_for({i, j});
      auto pt = p.relative_interior_point();
      if (!pt)
        continue;
      std::optional<Rational> best;
      for (std::size_t k = 0; k < s; ++k) {
        Rational val = h[k] + dot(u[k], *pt);
        if (!best || val < *best)
          best = val;
      }
      std::set<std::size_t> tie;
      for (std::size_t k = 0; k < s; ++k)
        if (h[k] + dot(u[k], *pt) == *best)
          tie.insert(k);
      if (!found.count(tie))
        found.emplace(tie, cell_for(tie).canonical());
    }
  std::vector<std::pair<std::set<std::size_t>, Polyhedron>> out;
  for (const auto &[tie, p] : found) {
    bool face = false;
    for (const auto &[other, q] : found)
      if (other != tie && std::includes(tie.begin(), tie.end(), other.begin(), other.end()))
        face = true;
    if (!face)
      out.emplace_back(tie, p);
  }
  return out;
}

TropicalCell whole_cell(std::size_t n) {
  TropicalCell c;
  c.kind = TropicalCell::Kind::Whole;
  c.polyhedron = Polyhedron(n);
  return c;
}

void require_torsion_free(const LaurentPoly &f, const char *what) {
  if (!f.group()->torsion_free())
    throw Error(std::string(what) + " needs a torsion-free group");
}

} // namespace

Rational trop_eval(const LaurentPoly &f, const Valuation &v, const Character &w) {
  auto [g, eff] = effective(f, v);
  if (g.is_zero())
    throw Error("tropical evaluation of the zero polynomial");
  std::optional<Rational> best;
  for (const auto &[e, c] : g.terms()) {
    Rational val = coefficient_valuation(c, eff).value() + pair(w, e);
    if (!best || val < *best)
      best = val;
  }
  return *best;
}

std::size_t trop_argmin_count(const LaurentPoly &f, const Valuation &v, const Character &w) {
  auto [g, eff] = effective(f, v);
  Rational m = trop_eval(f, v, w);
  std::size_t count = 0;
  for (const auto &[e, c] : g.terms())
    if (coefficient_valuation(c, eff).value() + pair(w, e) == m)
      ++count;
  return count;
}

TropicalRegion trop_hypersurface_field(const LaurentPoly &f, const Valuation &v) {
  require_torsion_free(f, "field tropicalization");
  const std::size_t n = f.group()->rank();
  auto [g, eff] = effective(f, v);
  TropicalRegion region(n, "field:" + v.str());
  region.set_labels(f.group()->labels());
  if (g.is_zero()) {
    region.add_cell(whole_cell(n));
    region.add_diagnostic("polynomial vanishes in the coefficient field; zero ideal gives R^n");
    region.set_oracle([](const Vec &) { return true; });
    return region;
  }
  std::vector<Vec> u;
  std::vector<Rational> h;
  std::vector<GroupElement> exps;
  for (const auto &[e, c] : g.terms()) {
    exps.push_back(e);
    u.push_back(to_vec(e.free_part));
    h.push_back(coefficient_valuation(c, eff).value());
  }
  for (auto &[tie, p] : tie_cells(u, h, n)) {
    TropicalCell cell;
    cell.kind = TropicalCell::Kind::Tie;
    for (auto k : tie)
      cell.tie_set.push_back(exps[k]);
    cell.polyhedron = std::move(p);
    region.add_cell(std::move(cell));
  }
  LaurentPoly gg = g;
  Valuation ee = eff;
  region.set_oracle([gg, ee](const Vec &w) { return trop_argmin_count(gg, ee, Character{w}) >= 2; });
  return region;
}

TropicalRegion trop_hypersurface_Z(const LaurentPoly &f) {
  if (f.modulus() != 0)
    throw Error("integral tropicalization needs integer coefficients");
  const std::size_t n = f.group()->rank();
  TropicalRegion region(n, "Z");
  region.set_labels(f.group()->labels());
  if (f.is_zero()) {
    region.add_cell(whole_cell(n));
    region.add_diagnostic("zero polynomial; zero ideal gives R^n");
    region.set_oracle([](const Vec &) { return true; });
    return region;
  }

  // Terms grouped by free exponent; each group is a Z[T]-coefficient.
  std::map<std::vector<Exponent>, LaurentPoly> parts;
  for (const auto &[e, c] : f.terms()) {
    auto it = parts.try_emplace(e.free_part, f.group()).first;
    it->second.add_term(e, c);
  }
  std::vector<Vec> u;
  std::vector<GroupElement> exps;
  for (const auto &[fp, part] : parts) {
    u.push_back(to_vec(fp));
    GroupElement e = identity_element(*f.group());
    e.free_part = fp;
    exps.push_back(e);
  }
  std::vector<Rational> h(u.size(), 0);
  for (auto &[tie, p] : tie_cells(u, h, n)) {
    TropicalCell cell;
    cell.kind = TropicalCell::Kind::Tie;
    for (auto k : tie)
      cell.tie_set.push_back(exps[k]);
    cell.polyhedron = std::move(p);
    region.add_cell(std::move(cell));
  }
  std::size_t k = 0;
  for (const auto &[fp, part] : parts) {
    auto status = unit_status_over_Z(part);
    if (status == UnitStatus::Undecided)
      throw Error("UNDECIDED-TORSION: torsion subgroup too large to decide units");
    if (status == UnitStatus::NotUnit) {
      // Normal cone of exponent k, kept when u_k is its unique minimizer
      // somewhere (full-dimensional cone).
      Polyhedron p(n);
      for (std::size_t l = 0; l < u.size(); ++l) {
        if (l == k)
          continue;
        Vec a(n);
        for (std::size_t j = 0; j < n; ++j)
          a[j] = u[l][j] - u[k][j];
        p.add_ge(a, 0);
      }
      if (p.dimension() == static_cast<int>(n)) {
        TropicalCell cell;
        cell.kind = TropicalCell::Kind::UnitFailure;
        cell.witness = exps[k];
        cell.polyhedron = p.canonical();
        cell.note = "initial form " + normalize_unit(part).str() + " is not a unit";
        region.add_cell(std::move(cell));
      }
    }
    ++k;
  }
  LaurentPoly ff = f;
  region.set_oracle([ff](const Vec &w) {
    auto in = initial_form_ring(ff, Character{w});
    auto s = unit_status_over_Z(in);
    if (s == UnitStatus::Undecided)
      throw Error("UNDECIDED-TORSION: torsion subgroup too large to decide units");
    return s == UnitStatus::NotUnit;
  });
  return region;
}

std::vector<LabeledRegion> trop_Z_decomposition(const LaurentPoly &f) {
  if (f.modulus() != 0)
    throw Error("decomposition needs integer coefficients");
  std::vector<LabeledRegion> out;
  out.push_back({"Q,trivial", Valuation::trivial(), trop_hypersurface_field(f, Valuation::trivial())});
  for (const auto &p : relevant_primes(f)) {
    long q = p.get_si();
    out.push_back({"Q," + std::to_string(q) + "-adic", Valuation::padic(q),
                   trop_hypersurface_field(f, Valuation::padic(q))});
    out.push_back({"F_" + std::to_string(q) + ",trivial", Valuation::modp(q),
                   trop_hypersurface_field(f, Valuation::modp(q))});
  }
  return out;
}

TropicalRegion trop_hypersurface(const LaurentPoly &f, const TropRing &ring) {
  return ring.integers ? trop_hypersurface_Z(f) : trop_hypersurface_field(f, ring.valuation);
}

TropicalRegion prevariety(const std::vector<LaurentPoly> &generators, const TropRing &ring) {
  if (generators.empty())
    throw Error("prevariety of an empty generator list");
  const std::size_t n = generators[0].group()->rank();
  std::vector<TropicalRegion> parts;
  for (const auto &g : generators)
    if (!g.is_zero())
      parts.push_back(trop_hypersurface(g, ring));

  TropicalRegion region(n, "prevariety:" + ring.str());
  region.set_labels(generators[0].group()->labels());
  if (parts.empty()) {
    region.add_cell(whole_cell(n));
    region.add_diagnostic("all generators are zero; zero ideal gives R^n");
    region.set_oracle([](const Vec &) { return true; });
    return region;
  }
  if (parts.size() == 1)
    return parts[0];

  std::vector<Polyhedron> acc;
  for (const auto &c : parts[0].cells())
    acc.push_back(c.polyhedron);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    std::vector<Polyhedron> next;
    for (const auto &a : acc)
      for (const auto &c : parts[i].cells()) {
        Polyhedron q = a.intersect(c.polyhedron);
        if (!q.is_empty())
          next.push_back(q.canonical());
      }
    // Drop cells contained in another cell.
    std::vector<Polyhedron> kept;
    for (std::size_t a = 0; a < next.size(); ++a) {
      bool covered = false;
      for (std::size_t b = 0; b < next.size() && !covered; ++b) {
        if (a == b || !next[a].subset_of(next[b]))
          continue;
        covered = !next[b].subset_of(next[a]) || b < a;
      }
      if (!covered)
        kept.push_back(next[a]);
    }
    acc = std::move(kept);
  }
  for (auto &p : acc) {
    TropicalCell cell;
    cell.kind = TropicalCell::Kind::Intersection;
    cell.polyhedron = std::move(p);
    region.add_cell(std::move(cell));
  }
  // Trop of the unit ideal is empty, so an empty bound is exact.
  region.set_provenance(region.is_empty() ? Provenance::Exact : Provenance::UpperBound);
  region.set_oracle([parts](const Vec &w) {
    return std::all_of(parts.begin(), parts.end(), [&](const TropicalRegion &r) { return r.contains(w); });
  });
  return region;
}

TropicalRegion pullback(const IntMatrix &psi, const TropicalRegion &region) {
  const std::size_t np = psi.rows, n = psi.cols;
  if (region.ambient_dim() != np)
    throw Error("pullback: region lives over a group of the wrong rank");
  auto snf = smith_normal_form(psi);
  for (std::size_t i = 0; i < np; ++i)
    if (i >= n || snf.D(i, i) != 1)
      throw Error("pullback: psi is not surjective");

  // psi^T : R^{n'} -> R^n is injective; L is a left inverse with L psi^T = I.
  std::vector<Vec> pt(n, Vec(np));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < np; ++j)
      pt[i][j] = Rational(psi(j, i));
  // Solve via normal equations: L = (psi psi^T)^{-1} psi.
  std::vector<Vec> aug(np, Vec(np + n));
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k)
        s += Rational(psi(i, k) * psi(j, k));
      aug[i][j] = s;
    }
    for (std::size_t k = 0; k < n; ++k)
      aug[i][np + k] = Rational(psi(i, k));
  }
  row_reduce(aug);
  std::vector<Vec> L(np, Vec(n));
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t k = 0; k < n; ++k)
      L[i][k] = aug[i][np + k];
  // Image of psi^T is the kernel of these rows.
  std::vector<Vec> image_cols(np, Vec(n));
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t i = 0; i < n; ++i)
      image_cols[j][i] = pt[i][j];
  auto orth = nullspace(image_cols, n);

  auto apply_L = [L, np, n](const Vec &w) {
    Vec out(np, 0);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t k = 0; k < n; ++k)
        out[i] += L[i][k] * w[k];
    return out;
  };

  TropicalRegion out(n, "pullback(" + region.source() + ")");
  out.set_provenance(region.provenance());
  for (const auto &d : region.diagnostics())
    out.add_diagnostic(d);
  for (const auto &c : region.cells()) {
    Polyhedron p(n);
    for (const auto &con : c.polyhedron.constraints()) {
      Vec a(n, 0);
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < np; ++i)
          a[k] += con.a[i] * L[i][k];
      if (con.equality)
        p.add_eq(a, con.b);
      else
        p.add_ge(a, con.b);
    }
    for (const auto &o : orth)
      p.add_eq(o, 0);
    TropicalCell cell = c;
    cell.polyhedron = p.canonical();
    out.add_cell(std::move(cell));
  }
  out.set_oracle([region, orth, apply_L](const Vec &w) {
    for (const auto &o : orth)
      if (dot(o, w) != 0)
        return false;
    return region.contains(apply_L(w));
  });
  return out;
}

} // namespace tropos
