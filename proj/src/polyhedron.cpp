#include "tropos/polyhedron.hpp"

#include <algorithm>
#include <set>

namespace tropos {

std::vector<std::size_t> row_reduce(std::vector<Vec> &rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty())
    return pivots;
  const std::size_t cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto &x : rows[r])
      x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0)
        continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < cols; ++j)
        rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

std::size_t rank(std::vector<Vec> rows) { return row_reduce(rows).size(); }

Vec primitive(const Vec &v) {
  auto ints = primitive_direction(v);
  Vec out;
  out.reserve(ints.size());
  for (auto &x : ints)
    out.emplace_back(x);
  return out;
}

std::vector<Vec> nullspace(std::vector<Vec> rows, std::size_t n) {
  for (const auto &r : rows)
    if (r.size() != n)
      throw Error("nullspace: row length mismatch");
  auto pivots = row_reduce(rows);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots)
    is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f])
      continue;
    Vec v(n, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = -rows[i][f];
    basis.push_back(primitive(v));
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

class Simplex {
public:
  // Rows: A x (+/-slack) = b with b >= 0; one artificial per row.
  Simplex(const std::vector<Constraint> &cons, std::size_t n) : n_(n) {
    std::size_t slacks = 0;
    for (const auto &c : cons)
      if (!c.equality)
        ++slacks;
    m_ = cons.size();
    art_begin_ = 2 * n + slacks;
    cols_ = art_begin_ + m_;
    A_.assign(m_, Vec(cols_, 0));
    b_.assign(m_, 0);
    basis_.assign(m_, 0);
    std::size_t s = 2 * n;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto &c = cons[i];
      if (c.a.size() != n)
        throw Error("constraint dimension mismatch");
      Rational sign = c.b < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n; ++j) {
        A_[i][j] = sign * c.a[j];
        A_[i][n + j] = -sign * c.a[j];
      }
      if (!c.equality)
        A_[i][s++] = -sign; // a.x - s = b
      b_[i] = sign * c.b;
      A_[i][art_begin_ + i] = 1;
      basis_[i] = art_begin_ + i;
    }
  }

  LpResult maximize(const Vec &c) {
    LpResult res;
    Vec phase1(cols_, 0);
    for (std::size_t j = art_begin_; j < cols_; ++j)
      phase1[j] = -1;
    run(phase1, cols_);
    Rational infeas = 0;
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] >= art_begin_)
        infeas += b_[i];
    if (infeas != 0) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    drive_out_artificials();
    Vec obj(cols_, 0);
    for (std::size_t j = 0; j < n_; ++j) {
      obj[j] = c[j];
      obj[n_ + j] = -c[j];
    }
    if (!run(obj, art_begin_)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
    res.status = LpStatus::Optimal;
    res.point.assign(n_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t j = basis_[i];
      if (j < n_)
        res.point[j] += b_[i];
      else if (j < 2 * n_)
        res.point[j - n_] -= b_[i];
    }
    res.value = dot(c, res.point);
    return res;
  }

private:
  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / A_[r][c];
    for (auto &x : A_[r])
      x *= inv;
    b_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || A_[i][c] == 0)
        continue;
      Rational f = A_[i][c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (A_[r][j] != 0)
          A_[i][j] -= f * A_[r][j];
      b_[i] -= f * b_[r];
    }
    basis_[r] = c;
  }

  // Returns false when unbounded. Columns >= limit never enter.
  bool run(const Vec &obj, std::size_t limit) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < limit && !enter; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end())
          continue;
        Rational d = obj[j];
        for (std::size_t i = 0; i < m_; ++i)
          if (A_[i][j] != 0)
            d -= obj[basis_[i]] * A_[i][j];
        if (d > 0)
          enter = j;
      }
      if (!enter)
        return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (A_[i][*enter] <= 0)
          continue;
        Rational ratio = b_[i] / A_[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave)
        return false;
      pivot(*leave, *enter);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_;) {
      if (basis_[i] < art_begin_) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art_begin_ && !col; ++j)
        if (A_[i][j] != 0)
          col = j;
      if (col) {
        pivot(i, *col);
        ++i;
      } else {
        A_.erase(A_.begin() + static_cast<long>(i));
        b_.erase(b_.begin() + static_cast<long>(i));
        basis_.erase(basis_.begin() + static_cast<long>(i));
        --m_;
      }
    }
  }

  std::size_t n_, m_ = 0, cols_ = 0, art_begin_ = 0;
  std::vector<Vec> A_;
  Vec b_;
  std::vector<std::size_t> basis_;
};

} // namespace

LpResult lp_maximize(const Vec &c, const std::vector<Constraint> &cons) {
  Simplex s(cons, c.size());
  return s.maximize(c);
}

// ---------------------------------------------------------------------------
// Polyhedron

namespace {

// Scale a . x (rel) b so that a is a primitive integer vector.
std::pair<Vec, Rational> normalize_constraint(const Vec &a, const Rational &b) {
  Vec p = primitive(a);
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a[j] != 0)
      return {p, b * (p[j] / a[j])};
  return {p, b};
}

} // namespace

Polyhedron Polyhedron::point(const Vec &p) {
  Polyhedron q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    Vec e(p.size(), 0);
    e[i] = 1;
    q.add_eq(e, p[i]);
  }
  return q;
}

void Polyhedron::add_ge(Vec a, Rational b) {
  if (a.size() != n_)
    throw Error("constraint dimension mismatch");
  cons_.push_back({std::move(a), std::move(b), false});
}

void Polyhedron::add_le(Vec a, Rational b) {
  for (auto &x : a)
    x = -x;
  add_ge(std::move(a), -b);
}

void Polyhedron::add_eq(Vec a, Rational b) {
  if (a.size() != n_)
    throw Error("constraint dimension mismatch");
  cons_.push_back({std::move(a), std::move(b), true});
}

bool Polyhedron::contains(const Vec &x) const {
  if (x.size() != n_)
    throw Error("point dimension mismatch");
  for (const auto &c : cons_) {
    Rational v = dot(c.a, x);
    if (c.equality ? v != c.b : v < c.b)
      return false;
  }
  return true;
}

bool Polyhedron::is_empty() const {
  return lp_maximize(Vec(n_, 0), cons_).status == LpStatus::Infeasible;
}

Polyhedron::Hull Polyhedron::hull() const {
  Hull h;
  h.implicit.assign(cons_.size(), false);
  auto base = lp_maximize(Vec(n_, 0), cons_);
  if (base.status == LpStatus::Infeasible)
    return h;
  h.empty = false;
  std::vector<Vec> strict_points;
  for (std::size_t i = 0; i < cons_.size(); ++i) {
    if (cons_[i].equality) {
      h.implicit[i] = true;
      continue;
    }
    auto capped = cons_;
    Vec neg = cons_[i].a;
    for (auto &x : neg)
      x = -x;
    capped.push_back({neg, -(cons_[i].b + 1), false});
    auto r = lp_maximize(cons_[i].a, capped);
    if (r.status == LpStatus::Infeasible)
      strict_points.push_back(base.point);
    else if (r.value == cons_[i].b)
      h.implicit[i] = true;
    else
      strict_points.push_back(r.point);
  }
  if (strict_points.empty()) {
    h.interior = base.point;
  } else {
    h.interior.assign(n_, 0);
    for (const auto &p : strict_points)
      for (std::size_t j = 0; j < n_; ++j)
        h.interior[j] += p[j];
    Rational k(static_cast<long>(strict_points.size()));
    for (auto &x : h.interior)
      x /= k;
  }
  return h;
}

int Polyhedron::dimension() const {
  auto h = hull();
  if (h.empty)
    return -1;
  std::vector<Vec> eqs;
  for (std::size_t i = 0; i < cons_.size(); ++i)
    if (h.implicit[i])
      eqs.push_back(cons_[i].a);
  return static_cast<int>(n_ - rank(eqs));
}

std::optional<Vec> Polyhedron::relative_interior_point() const {
  auto h = hull();
  if (h.empty)
    return std::nullopt;
  return h.interior;
}

Polyhedron Polyhedron::intersect(const Polyhedron &o) const {
  if (o.n_ != n_)
    throw Error("polyhedron dimension mismatch");
  Polyhedron r = *this;
  r.cons_.insert(r.cons_.end(), o.cons_.begin(), o.cons_.end());
  return r;
}

bool Polyhedron::subset_of(const Polyhedron &o) const {
  if (o.n_ != n_)
    throw Error("polyhedron dimension mismatch");
  if (is_empty())
    return true;
  for (const auto &c : o.cons_) {
    Vec neg = c.a;
    for (auto &x : neg)
      x = -x;
    auto lo = lp_maximize(neg, cons_);
    if (lo.status != LpStatus::Optimal || -lo.value < c.b)
      return false;
    if (c.equality) {
      auto hi = lp_maximize(c.a, cons_);
      if (hi.status != LpStatus::Optimal || hi.value > c.b)
        return false;
    }
  }
  return true;
}

bool Polyhedron::ray_meets(const Vec &d) const {
  if (d.size() != n_)
    throw Error("direction dimension mismatch");
  // Feasible lambda form an interval; lambda > 0 is strict.
  Rational lo = 0;
  bool lo_strict = true;
  std::optional<Rational> hi;
  for (const auto &c : cons_) {
    Rational s = dot(c.a, d);
    if (s == 0) {
      if (c.equality ? c.b != 0 : c.b > 0)
        return false;
      continue;
    }
    Rational t = c.b / s;
    bool raise = c.equality || s > 0;
    bool lower = c.equality || s < 0;
    if (raise && t > lo) {
      lo = t;
      lo_strict = false;
    }
    if (lower && (!hi || t < *hi))
      hi = t;
  }
  if (!hi)
    return true;
  if (lo_strict)
    return *hi > lo;
  return *hi >= lo;
}

PolyGenerators Polyhedron::generators() const {
  PolyGenerators g;
  auto h = hull();
  if (h.empty)
    return g;
  std::vector<Vec> eq_rows;
  std::vector<Rational> eq_rhs;
  std::vector<const Constraint *> ineq;
  std::vector<Vec> all_rows;
  for (std::size_t i = 0; i < cons_.size(); ++i) {
    all_rows.push_back(cons_[i].a);
    if (h.implicit[i]) {
      eq_rows.push_back(cons_[i].a);
      eq_rhs.push_back(cons_[i].b);
    } else {
      ineq.push_back(&cons_[i]);
    }
  }
  g.lineality = nullspace(all_rows, n_);
  for (const auto &l : g.lineality) {
    eq_rows.push_back(l);
    eq_rhs.push_back(0);
  }
  // Make the equality block independent.
  {
    std::vector<Vec> aug;
    for (std::size_t i = 0; i < eq_rows.size(); ++i) {
      Vec r = eq_rows[i];
      r.push_back(eq_rhs[i]);
      aug.push_back(r);
    }
    row_reduce(aug);
    eq_rows.clear();
    eq_rhs.clear();
    for (auto &r : aug) {
      eq_rhs.push_back(r.back());
      r.pop_back();
      eq_rows.push_back(r);
    }
  }
  const std::size_t base = eq_rows.size();
  const std::size_t m = ineq.size();

  auto feasible_point = [&](const Vec &x) {
    for (const auto *c : ineq)
      if (dot(c->a, x) < c->b)
        return false;
    return true;
  };
  auto feasible_dir = [&](const Vec &d) {
    for (const auto *c : ineq)
      if (dot(c->a, d) < 0)
        return false;
    return true;
  };

  // Enumerate index subsets of size k.
  auto for_subsets = [&](std::size_t k, auto &&fn) {
    if (k > m)
      return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
      idx[i] = i;
    while (true) {
      fn(idx);
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == m - k + i - 1)
        --i;
      if (i == 0)
        return;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j)
        idx[j] = idx[j - 1] + 1;
    }
  };

  std::set<Vec> vertices;
  if (base <= n_) {
    for_subsets(n_ - base, [&](const std::vector<std::size_t> &idx) {
      std::vector<Vec> aug;
      for (std::size_t i = 0; i < base; ++i) {
        Vec r = eq_rows[i];
        r.push_back(eq_rhs[i]);
        aug.push_back(r);
      }
      for (auto i : idx) {
        Vec r = ineq[i]->a;
        r.push_back(ineq[i]->b);
        aug.push_back(r);
      }
      auto piv = row_reduce(aug);
      if (piv.size() != n_ || (!piv.empty() && piv.back() == n_))
        return;
      Vec x(n_, 0);
      for (std::size_t i = 0; i < n_; ++i)
        x[piv[i]] = aug[i][n_];
      if (feasible_point(x))
        vertices.insert(x);
    });
  }
  std::set<Vec> rays;
  if (base + 1 <= n_) {
    for_subsets(n_ - 1 - base, [&](const std::vector<std::size_t> &idx) {
      std::vector<Vec> rows(eq_rows.begin(), eq_rows.end());
      for (auto i : idx)
        rows.push_back(ineq[i]->a);
      auto ns = nullspace(rows, n_);
      if (ns.size() != 1)
        return;
      Vec d = ns[0];
      for (int sgn = 0; sgn < 2; ++sgn) {
        if (feasible_dir(d))
          rays.insert(d);
        for (auto &x : d)
          x = -x;
      }
    });
  }
  g.vertices.assign(vertices.begin(), vertices.end());
  g.rays.assign(rays.begin(), rays.end());
  return g;
}

Polyhedron Polyhedron::canonical() const {
  auto h = hull();
  Polyhedron out(n_);
  if (h.empty) {
    out.add_eq(Vec(n_, 0), 1);
    return out;
  }
  std::vector<Vec> aug;
  std::vector<Constraint> ineqs;
  for (std::size_t i = 0; i < cons_.size(); ++i) {
    if (h.implicit[i]) {
      Vec r = cons_[i].a;
      r.push_back(cons_[i].b);
      aug.push_back(r);
    } else {
      ineqs.push_back(cons_[i]);
    }
  }
  row_reduce(aug);
  std::vector<Constraint> eqs;
  for (auto &r : aug) {
    Rational b = r.back();
    r.pop_back();
    auto [a, nb] = normalize_constraint(r, b);
    out.add_eq(a, nb);
    eqs.push_back({a, nb, true});
  }
  // Normalize inequalities and drop duplicates and redundant ones.
  std::set<std::pair<Vec, Rational>> seen;
  std::vector<Constraint> kept;
  for (auto &c : ineqs) {
    if (std::all_of(c.a.begin(), c.a.end(), [](const Rational &x) { return x == 0; }))
      continue;
    auto [a, b] = normalize_constraint(c.a, c.b);
    if (seen.insert({a, b}).second)
      kept.push_back({a, b, false});
  }
  for (std::size_t i = 0; i < kept.size();) {
    std::vector<Constraint> rest = eqs;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i)
        rest.push_back(kept[j]);
    Vec neg = kept[i].a;
    for (auto &x : neg)
      x = -x;
    auto r = lp_maximize(neg, rest);
    if (r.status == LpStatus::Optimal && -r.value >= kept[i].b)
      kept.erase(kept.begin() + static_cast<long>(i));
    else
      ++i;
  }
  std::sort(kept.begin(), kept.end(), [](const Constraint &x, const Constraint &y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  for (auto &c : kept)
    out.add_ge(c.a, c.b);
  return out;
}

std::string Polyhedron::str(const std::vector<std::string> &names) const {
  auto name = [&](std::size_t j) {
    return j < names.size() ? names[j] : "w" + std::to_string(j + 1);
  };
  std::string out;
  for (const auto &c : cons_) {
    std::string lhs;
    for (std::size_t j = 0; j < n_; ++j) {
      const Rational &x = c.a[j];
      if (x == 0)
        continue;
      Rational mag = abs(x);
      std::string term = (mag == 1 ? "" : mag.get_str() + "*") + name(j);
      if (lhs.empty())
        lhs = (x < 0 ? "-" : "") + term;
      else
        lhs += (x < 0 ? " - " : " + ") + term;
    }
    if (lhs.empty())
      lhs = "0";
    if (!out.empty())
      out += ", ";
    out += lhs + (c.equality ? " = " : " >= ") + c.b.get_str();
  }
  return out.empty() ? "true" : out;
}

} // namespace tropos
