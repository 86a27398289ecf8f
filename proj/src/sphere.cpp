#include "tropos/sphere.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <sstream>

namespace tropos {

std::string to_string(Tri t) {
  switch (t) {
  case Tri::False:
    return "false";
  case Tri::True:
    return "true";
  case Tri::Unknown:
    return "UNKNOWN";
  }
  return "?";
}

namespace {

std::uint64_t g_witness_seed = 0x5eed5eedULL;

bool is_zero_vec(const Vec &v) {
  return std::all_of(v.begin(), v.end(), [](const Rational &x) { return x == 0; });
}

Vec neg(Vec v) {
  for (auto &x : v)
    x = -x;
  return v;
}

Vec add(const Vec &a, const Vec &b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + b[i];
  return r;
}

Vec axpy(const Vec &a, const Rational &t, const Vec &b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = a[i] + t * b[i];
  return r;
}

Vec cross(const Vec &a, const Vec &b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational cross2(const Vec &a, const Vec &b) { return a[0] * b[1] - a[1] * b[0]; }

int half(const Vec &d) { return (d[1] > 0 || (d[1] == 0 && d[0] > 0)) ? 0 : 1; }

// Sphere directions spanning the closed cone over a polyhedron.
std::vector<Vec> generator_directions(const PolyGenerators &g) {
  std::vector<Vec> out;
  for (const auto &v : g.vertices)
    if (!is_zero_vec(v))
      out.push_back(primitive(v));
  for (const auto &r : g.rays)
    out.push_back(r);
  for (const auto &l : g.lineality) {
    out.push_back(l);
    out.push_back(neg(l));
  }
  return out;
}

std::vector<Vec> generator_directions(const Polyhedron &p) { return generator_directions(p.generators()); }

bool meets_any(const std::vector<Polyhedron> &pieces, const Vec &d) {
  return std::any_of(pieces.begin(), pieces.end(), [&](const Polyhedron &p) { return p.ray_meets(d); });
}

// Point strictly inside the counterclockwise open arc from a to b
// (a == b means the whole circle minus a).
Vec gap_sample(const Vec &a, const Vec &b) {
  if (a == b)
    return neg(a);
  Rational c = cross2(a, b);
  if (c > 0)
    return add(a, b);
  if (c == 0)
    return {-a[1], a[0]};
  return neg(add(a, b));
}

// Normals of planes whose arrangement refines the face structure of the
// closed cone over p.
std::vector<Vec> cone_planes(const std::vector<Vec> &gens) {
  std::vector<Vec> out;
  std::size_t r = rank(gens);
  const std::vector<Vec> basis{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  if (r == 3) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        Vec c = cross(gens[i], gens[j]);
        if (is_zero_vec(c))
          continue;
        bool ge = true, le = true;
        for (const auto &g : gens) {
          Rational s = dot(c, g);
          ge = ge && s >= 0;
          le = le && s <= 0;
        }
        if (ge || le)
          out.push_back(c);
      }
  } else if (r == 2) {
    Vec c;
    for (std::size_t i = 0; i < gens.size() && c.empty(); ++i)
      for (std::size_t j = i + 1; j < gens.size() && c.empty(); ++j) {
        Vec x = cross(gens[i], gens[j]);
        if (!is_zero_vec(x))
          c = x;
      }
    out.push_back(c);
    for (const auto &g : gens)
      out.push_back(cross(g, c));
  } else if (r == 1) {
    for (const auto &e : basis) {
      Vec x = cross(gens[0], e);
      if (!is_zero_vec(x))
        out.push_back(x);
    }
  }
  return out;
}

std::vector<Vec> cone_planes(const Polyhedron &p) { return cone_planes(generator_directions(p)); }

// Representatives of every cell of the great-circle arrangement on S^2
// cut out by the planes (coordinate planes always included).
// Only cells whose closure has a vertex accepted by keep are sampled.
std::vector<Vec> arrangement_samples(std::vector<Vec> planes,
                                     const std::function<bool(const Vec &)> &keep = {}) {
  planes.push_back({1, 0, 0});
  planes.push_back({0, 1, 0});
  planes.push_back({0, 0, 1});
  std::set<Vec> uniq;
  for (auto &p : planes) {
    Vec q = primitive(p);
    for (const auto &x : q) {
      if (x == 0)
        continue;
      if (x < 0)
        q = neg(q);
      break;
    }
    uniq.insert(q);
  }
  planes.assign(uniq.begin(), uniq.end());

  std::set<Vec> vertices;
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      Vec c = cross(planes[i], planes[j]);
      if (is_zero_vec(c))
        continue;
      c = primitive(c);
      vertices.insert(c);
      vertices.insert(neg(c));
    }

  std::vector<Vec> samples;
  for (const auto &v : vertices) {
    if (keep && !keep(v))
      continue;
    samples.push_back(v);
    std::vector<Vec> tangents;
    for (const auto &n : planes)
      if (dot(n, v) == 0) {
        Vec t = primitive(cross(n, v));
        tangents.push_back(t);
        tangents.push_back(neg(t));
      }
    // Order tangent directions around v in the tangent plane.
    const Vec b1 = tangents[0];
    const Vec b2 = cross(v, b1);
    auto coords = [&](const Vec &t) { return Vec{dot(t, b1), dot(t, b2)}; };
    std::sort(tangents.begin(), tangents.end(),
              [&](const Vec &x, const Vec &y) { return angle_less(coords(x), coords(y)); });
    std::vector<Vec> dirs;
    for (const auto &t : tangents) {
      if (!dirs.empty()) {
        Vec a = coords(dirs.back()), b = coords(t);
        if (cross2(a, b) == 0 && dot(a, b) > 0)
          continue;
      }
      dirs.push_back(t);
    }
    if (dirs.size() > 1) {
      Vec a = coords(dirs.front()), b = coords(dirs.back());
      if (cross2(a, b) == 0 && dot(a, b) > 0)
        dirs.pop_back();
    }
    std::vector<Vec> steps = dirs;
    for (std::size_t k = 0; k < dirs.size(); ++k)
      steps.push_back(add(dirs[k], dirs[(k + 1) % dirs.size()]));
    for (const auto &s : steps) {
      // Small enough not to cross any plane missing v.
      std::optional<Rational> eps;
      for (const auto &n : planes) {
        Rational nv = dot(n, v);
        if (nv == 0)
          continue;
        Rational ns = dot(n, s);
        if (ns == 0)
          continue;
        Rational bound = abs(nv) / (2 * abs(ns));
        if (!eps || bound < *eps)
          eps = bound;
      }
      samples.push_back(axpy(v, eps ? *eps : Rational(1), s));
    }
  }
  return samples;
}

// Integer copy of a piece's constraints for exact membership tests on
// integer directions without rational normalization; `ok` is false when the
// entries are too large for the 128-bit path.
struct FastPiece {
  std::vector<std::vector<std::int64_t>> a;
  std::vector<std::int64_t> b;
  std::vector<bool> eq;
  bool ok = true;
  const Polyhedron *source = nullptr;
};

constexpr std::int64_t kCoefLimit = std::int64_t(1) << 20;
constexpr std::int64_t kDirLimit = std::int64_t(1) << 50;

FastPiece make_fast(const Polyhedron &p) {
  FastPiece f;
  f.source = &p;
  for (const auto &c : p.constraints()) {
    Integer den = c.b.get_den();
    for (const auto &x : c.a)
      den = lcm(den, x.get_den());
    std::vector<std::int64_t> row;
    for (const auto &x : c.a) {
      Integer v = x.get_num() * (den / x.get_den());
      if (abs(v) > kCoefLimit) {
        f.ok = false;
        return f;
      }
      row.push_back(v.get_si());
    }
    Integer bv = c.b.get_num() * (den / c.b.get_den());
    if (abs(bv) > kCoefLimit) {
      f.ok = false;
      return f;
    }
    f.a.push_back(row);
    f.b.push_back(bv.get_si());
    f.eq.push_back(c.equality);
  }
  return f;
}

// Same interval test as Polyhedron::ray_meets on an integer direction.
bool fast_meets(const FastPiece &f, const std::vector<std::int64_t> &d) {
  using I = __int128;
  // lambda bounds kept as fractions num/den with den > 0.
  I lo_n = 0, lo_d = 1;
  bool lo_strict = true;
  bool has_hi = false;
  I hi_n = 0, hi_d = 1;
  for (std::size_t i = 0; i < f.a.size(); ++i) {
    I s = 0;
    for (std::size_t j = 0; j < d.size(); ++j)
      s += static_cast<I>(f.a[i][j]) * d[j];
    I b = f.b[i];
    if (s == 0) {
      if (f.eq[i] ? b != 0 : b > 0)
        return false;
      continue;
    }
    I tn = s > 0 ? b : -b, td = s > 0 ? s : -s; // t = b / s
    bool raise = f.eq[i] || s > 0;
    bool lower = f.eq[i] || s < 0;
    if (raise && tn * lo_d > lo_n * td) {
      lo_n = tn;
      lo_d = td;
      lo_strict = false;
    }
    if (lower && (!has_hi || tn * hi_d < hi_n * td)) {
      hi_n = tn;
      hi_d = td;
      has_hi = true;
    }
  }
  if (!has_hi)
    return true;
  I lhs = hi_n * lo_d, rhs = lo_n * hi_d;
  return lo_strict ? lhs > rhs : lhs >= rhs;
}

class FastSet {
public:
  explicit FastSet(const SphericalSet &s) : set_(s) {
    for (const auto &p : s.pieces())
      pieces_.push_back(make_fast(p));
  }

  bool contains(const Vec &x, const std::optional<std::vector<std::int64_t>> &ix) const {
    bool hit = false;
    for (const auto &f : pieces_) {
      if (ix && f.ok ? fast_meets(f, *ix) : f.source->ray_meets(x)) {
        hit = true;
        break;
      }
    }
    return hit != set_.negated();
  }

private:
  const SphericalSet &set_;
  std::vector<FastPiece> pieces_;
};

std::optional<std::vector<std::int64_t>> small_integer_direction(const Vec &x) {
  auto p = primitive_direction(x);
  std::vector<std::int64_t> out;
  for (const auto &v : p) {
    if (abs(v) > kDirLimit)
      return std::nullopt;
    out.push_back(v.get_si());
  }
  return out;
}

using IVec = std::vector<std::int64_t>;
using I128 = __int128;

I128 abs128(I128 x) { return x < 0 ? -x : x; }

I128 gcd128(I128 a, I128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Primitive integer vector, or nullopt if zero or beyond the limit.
std::optional<IVec> primitive_small(const std::array<I128, 3> &v, I128 limit) {
  I128 g = 0;
  for (auto x : v)
    g = gcd128(g, x);
  if (g == 0)
    return std::nullopt;
  IVec out;
  for (auto x : v) {
    I128 y = x / g;
    if (abs128(y) > limit)
      return std::nullopt;
    out.push_back(static_cast<std::int64_t>(y));
  }
  return out;
}

std::array<I128, 3> icross(const IVec &a, const IVec &b) {
  return {I128(a[1]) * b[2] - I128(a[2]) * b[1], I128(a[2]) * b[0] - I128(a[0]) * b[2],
          I128(a[0]) * b[1] - I128(a[1]) * b[0]};
}

I128 idot(const IVec &a, const IVec &b) {
  I128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += I128(a[i]) * b[i];
  return s;
}

Vec to_vec(const IVec &v) {
  Vec out;
  for (auto x : v)
    out.emplace_back(Integer(static_cast<long>(x)));
  return out;
}

// Integer version of arrangement_samples. Tangent directions at a vertex
// are not sorted: every pairwise sum is sampled, which covers each sector.
// nullopt when some intermediate value leaves the machine range.
std::optional<std::vector<IVec>> arrangement_samples_int(const std::vector<Vec> &rational_planes,
                                                        const std::function<bool(const IVec &)> &keep) {
  std::set<IVec> uniq;
  auto add_plane = [&](const Vec &p) {
    Vec q = primitive(p);
    IVec iq;
    for (const auto &x : q) {
      if (abs(x.get_num()) > kCoefLimit)
        return false;
      iq.push_back(x.get_num().get_si());
    }
    for (auto x : iq) {
      if (x == 0)
        continue;
      if (x < 0)
        for (auto &y : iq)
          y = -y;
      break;
    }
    uniq.insert(iq);
    return true;
  };
  for (const auto &p : rational_planes)
    if (!add_plane(p))
      return std::nullopt;
  uniq.insert({1, 0, 0});
  uniq.insert({0, 1, 0});
  uniq.insert({0, 0, 1});
  std::vector<IVec> planes(uniq.begin(), uniq.end());

  std::set<IVec> vertices;
  for (std::size_t i = 0; i < planes.size(); ++i)
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      auto c = primitive_small(icross(planes[i], planes[j]), kCoefLimit * kCoefLimit * 2);
      if (!c)
        continue;
      vertices.insert(*c);
      vertices.insert({-(*c)[0], -(*c)[1], -(*c)[2]});
    }

  std::vector<IVec> samples;
  for (const auto &v : vertices) {
    if (keep && !keep(v))
      continue;
    samples.push_back(v);
    std::set<IVec> tangent_set;
    for (const auto &n : planes)
      if (idot(n, v) == 0) {
        auto t = primitive_small(icross(n, v), kDirLimit >> 4);
        if (!t)
          return std::nullopt;
        tangent_set.insert(*t);
        tangent_set.insert({-(*t)[0], -(*t)[1], -(*t)[2]});
      }
    std::vector<IVec> tangents(tangent_set.begin(), tangent_set.end());
    std::vector<IVec> steps = tangents;
    for (std::size_t a = 0; a < tangents.size(); ++a)
      for (std::size_t b = a + 1; b < tangents.size(); ++b) {
        IVec s{tangents[a][0] + tangents[b][0], tangents[a][1] + tangents[b][1], tangents[a][2] + tangents[b][2]};
        if (s != IVec{0, 0, 0})
          steps.push_back(s);
      }
    for (const auto &s : steps) {
      // K * v + s stays on the side of v for every plane missing v.
      I128 k = 1;
      for (const auto &n : planes) {
        I128 nv = abs128(idot(n, v));
        if (nv == 0)
          continue;
        I128 q = abs128(idot(n, s)) / nv + 1;
        if (q > k)
          k = q;
      }
      std::array<I128, 3> d;
      for (std::size_t i = 0; i < 3; ++i) {
        if (k > (I128(1) << 80))
          return std::nullopt;
        d[i] = k * v[i] + s[i];
      }
      auto pd = primitive_small(d, kDirLimit);
      if (!pd)
        return std::nullopt;
      samples.push_back(*pd);
    }
  }
  return samples;
}

// Per-piece data for the n = 3 containment test.
struct PieceInfo {
  const Polyhedron *poly = nullptr;
  PolyGenerators gens;
  std::vector<Vec> dirs;
  std::optional<Polyhedron> cone;
  std::vector<Vec> planes;
  FastPiece fast;
  FastPiece fast_cone;
};

// Closed cone spanned by directions (n = 3); nullopt when there are none.
std::optional<Polyhedron> closed_cone(const std::vector<Vec> &gens) {
  std::size_t r = rank(gens);
  if (r == 0)
    return std::nullopt;
  Polyhedron c(3);
  auto support = [&](const Vec &n) {
    bool ge = true, le = true;
    for (const auto &g : gens) {
      Rational s = dot(n, g);
      ge = ge && s >= 0;
      le = le && s <= 0;
    }
    if (ge)
      c.add_ge(n, 0);
    else if (le)
      c.add_ge(neg(n), 0);
  };
  if (r == 3) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        Vec x = cross(gens[i], gens[j]);
        if (!is_zero_vec(x))
          support(x);
      }
  } else {
    auto ns = nullspace(gens, 3);
    for (const auto &n : ns)
      c.add_eq(n, 0);
    if (r == 2) {
      for (const auto &g : gens)
        support(cross(g, ns.front()));
    } else {
      c.add_ge(gens[0], 0);
    }
  }
  return c;
}

std::vector<PieceInfo> piece_infos(const std::vector<Polyhedron> &pieces) {
  std::vector<PieceInfo> out;
  for (const auto &p : pieces) {
    PieceInfo info;
    info.poly = &p;
    info.gens = p.generators();
    info.dirs = generator_directions(info.gens);
    info.cone = closed_cone(info.dirs);
    info.planes = cone_planes(info.dirs);
    info.fast = make_fast(p);
    if (info.cone)
      info.fast_cone = make_fast(*info.cone);
    out.push_back(std::move(info));
  }
  return out;
}

bool satisfies(const Polyhedron &q, const Vec &x, bool homogeneous) {
  for (const auto &c : q.constraints()) {
    Rational s = dot(c.a, x);
    Rational b = homogeneous ? Rational(0) : c.b;
    if (c.equality ? s != b : s < b)
      return false;
  }
  return true;
}

// p is contained in q, from the generators of p.
bool generated_subset(const PieceInfo &p, const Polyhedron &q) {
  for (const auto &v : p.gens.vertices)
    if (!satisfies(q, v, false))
      return false;
  for (const auto &r : p.gens.rays)
    if (!satisfies(q, r, true))
      return false;
  for (const auto &l : p.gens.lineality)
    if (!satisfies(q, l, true) || !satisfies(q, neg(l), true))
      return false;
  return true;
}

// Drops pieces contained in another piece.
std::vector<PieceInfo> prune_pieces(std::vector<PieceInfo> ps) {
  std::vector<PieceInfo> keep;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < ps.size() && !dominated; ++j)
      if (i != j && generated_subset(ps[i], *ps[j].poly) &&
          (j < i || !generated_subset(ps[j], *ps[i].poly)))
        dominated = true;
    if (!dominated)
      keep.push_back(ps[i]);
  }
  return keep;
}

bool cone_contains(const PieceInfo &p, const IVec &x) {
  if (!p.fast_cone.ok)
    return p.cone->contains(to_vec(x));
  for (std::size_t i = 0; i < p.fast_cone.a.size(); ++i) {
    I128 s = idot(p.fast_cone.a[i], x);
    if (p.fast_cone.eq[i] ? s != 0 : s < 0)
      return false;
  }
  return true;
}

bool cones_meet(const PieceInfo &a, const PieceInfo &b) {
  auto some_inside = [](const PieceInfo &x, const PieceInfo &y) {
    for (const auto &d : x.dirs) {
      auto id = small_integer_direction(d);
      if (id ? cone_contains(y, *id) : y.cone->contains(d))
        return true;
    }
    return false;
  };
  if (some_inside(a, b) || some_inside(b, a))
    return true;
  Polyhedron c = a.cone->intersect(*b.cone);
  for (std::size_t i = 0; i < 3; ++i)
    for (int s : {1, -1}) {
      Polyhedron f = c;
      Vec e(3, 0);
      e[i] = s;
      f.add_eq(e, 1);
      if (!f.is_empty())
        return true;
    }
  return false;
}

bool meets(const PieceInfo &p, const Vec &x, const std::optional<IVec> &ix) {
  return ix && p.fast.ok ? fast_meets(p.fast, *ix) : p.poly->ray_meets(x);
}

// Union of mine within union of theirs, piece by piece: only planes of
// their pieces whose closed cones meet the closed cone of the piece, and
// only cells inside that cone, are examined.
bool local_subset(const std::vector<PieceInfo> &mine, const std::vector<PieceInfo> &theirs) {
  for (const auto &p : mine) {
    if (!p.cone)
      continue;
    std::vector<Vec> planes = p.planes;
    std::vector<const PieceInfo *> near;
    for (const auto &q : theirs) {
      if (!q.cone || !cones_meet(p, q))
        continue;
      near.push_back(&q);
      planes.insert(planes.end(), q.planes.begin(), q.planes.end());
    }
    auto covered = [&](const Vec &x, const std::optional<IVec> &ix) {
      if (!meets(p, x, ix))
        return true;
      return std::any_of(near.begin(), near.end(), [&](const PieceInfo *q) { return meets(*q, x, ix); });
    };
    auto samples = arrangement_samples_int(planes, [&](const IVec &v) { return cone_contains(p, v); });
    if (samples) {
      for (const auto &ix : *samples)
        if (!covered(to_vec(ix), ix))
          return false;
    } else {
      for (const auto &x : arrangement_samples(planes, [&](const Vec &v) { return p.cone->contains(v); }))
        if (!covered(x, small_integer_direction(x)))
          return false;
    }
  }
  return true;
}

// A piece whose sphere image is a coordinate subspace: the set of its
// coordinates, or nullopt.
std::optional<std::set<std::size_t>> coordinate_subspace(const Polyhedron &p) {
  auto g = p.generators();
  if (!g.rays.empty())
    return std::nullopt;
  for (const auto &v : g.vertices)
    if (!is_zero_vec(v))
      return std::nullopt;
  if (g.vertices.empty() && g.lineality.empty())
    return std::nullopt;
  std::set<std::size_t> coords;
  for (const auto &l : g.lineality) {
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] != 0) {
        ++nz;
        at = i;
      }
    if (nz != 1)
      return std::nullopt;
    coords.insert(at);
  }
  return coords;
}

} // namespace

bool angle_less(const Vec &a, const Vec &b) {
  int ha = half(a), hb = half(b);
  if (ha != hb)
    return ha < hb;
  return cross2(a, b) > 0;
}

void SphericalSet::set_witness_seed(std::uint64_t seed) { g_witness_seed = seed; }

SphericalSet SphericalSet::empty(std::size_t n) {
  SphericalSet s;
  s.n_ = n;
  return s;
}

SphericalSet SphericalSet::full(std::size_t n) {
  SphericalSet s;
  s.n_ = n;
  if (n == 1) {
    s.plus_ = s.minus_ = true;
  } else if (n == 2) {
    s.full_bit_ = true;
  } else if (n >= 3) {
    s.negated_ = true;
  }
  return s;
}

SphericalSet SphericalSet::circle_from_predicate(const std::vector<Vec> &candidates,
                                                 const std::function<bool(const Vec &)> &member) {
  SphericalSet s;
  s.n_ = 2;
  std::vector<Vec> dirs;
  for (const auto &c : candidates)
    if (!is_zero_vec(c))
      dirs.push_back(primitive(c));
  std::sort(dirs.begin(), dirs.end(), angle_less);
  dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());
  if (dirs.empty()) {
    s.full_bit_ = member({1, 0});
    return s;
  }
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    Breakpoint b;
    b.dir = dirs[i];
    b.member = member(dirs[i]);
    b.gap_after = member(gap_sample(dirs[i], dirs[(i + 1) % dirs.size()]));
    s.breaks_.push_back(b);
  }
  s.canonicalize();
  return s;
}

void SphericalSet::canonicalize() {
  if (n_ != 2)
    return;
  bool changed = true;
  while (changed && !breaks_.empty()) {
    changed = false;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      const auto &prev = breaks_[(i + breaks_.size() - 1) % breaks_.size()];
      if (breaks_[i].member == prev.gap_after && breaks_[i].member == breaks_[i].gap_after) {
        if (breaks_.size() == 1)
          full_bit_ = breaks_[0].member;
        breaks_.erase(breaks_.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (!breaks_.empty())
    full_bit_ = false;
}

SphericalSet SphericalSet::from_polyhedra(std::size_t n, const std::vector<Polyhedron> &pieces) {
  for (const auto &p : pieces)
    if (p.ambient_dim() != n)
      throw Error("piece dimension mismatch");
  if (n == 0)
    return empty(0);
  if (n == 1) {
    SphericalSet s = empty(1);
    s.plus_ = meets_any(pieces, {1});
    s.minus_ = meets_any(pieces, {-1});
    return s;
  }
  if (n == 2) {
    std::vector<Vec> cand;
    for (const auto &p : pieces)
      for (auto &d : generator_directions(p))
        cand.push_back(d);
    return circle_from_predicate(cand, [&](const Vec &d) { return meets_any(pieces, d); });
  }
  SphericalSet s = empty(n);
  for (const auto &p : pieces)
    if (!p.is_empty())
      s.pieces_.push_back(p);
  return s;
}

SphericalSet SphericalSet::points(std::size_t n, const std::vector<Vec> &dirs) {
  std::vector<Polyhedron> pieces;
  for (const auto &d : dirs) {
    if (d.size() != n || is_zero_vec(d))
      throw Error("point direction must be a nonzero vector of the ambient dimension");
    pieces.push_back(Polyhedron::point(d));
  }
  return from_polyhedra(n, pieces);
}

SphericalSet SphericalSet::arc(const Vec &a, const Vec &b, bool a_closed, bool b_closed) {
  if (a.size() != 2 || b.size() != 2 || is_zero_vec(a) || is_zero_vec(b))
    throw Error("arc endpoints must be nonzero vectors in R^2");
  Vec pa = primitive(a), pb = primitive(b);
  if (pa == pb)
    throw Error("arc endpoints must differ");
  SphericalSet s;
  s.n_ = 2;
  Breakpoint ba{pa, a_closed, true}, bb{pb, b_closed, false};
  if (angle_less(pa, pb))
    s.breaks_ = {ba, bb};
  else
    s.breaks_ = {bb, ba};
  s.canonicalize();
  return s;
}

bool SphericalSet::contains(const Vec &d) const {
  if (d.size() != n_)
    throw Error("direction dimension mismatch");
  if (is_zero_vec(d))
    throw Error("the zero vector has no direction");
  if (n_ == 1)
    return d[0] > 0 ? plus_ : minus_;
  if (n_ == 2) {
    if (breaks_.empty())
      return full_bit_;
    Vec p = primitive(d);
    std::optional<std::size_t> before;
    for (std::size_t i = 0; i < breaks_.size(); ++i) {
      if (breaks_[i].dir == p)
        return breaks_[i].member;
      if (angle_less(breaks_[i].dir, p))
        before = i;
    }
    return breaks_[before ? *before : breaks_.size() - 1].gap_after;
  }
  return meets_any(pieces_, d) != negated_;
}

std::vector<Vec> SphericalSet::candidate_directions() const {
  std::vector<Vec> out;
  for (const auto &b : breaks_)
    out.push_back(b.dir);
  return out;
}

SphericalSet SphericalSet::unite(const SphericalSet &o) const {
  if (o.n_ != n_)
    throw Error("sphere dimension mismatch");
  if (n_ == 1) {
    SphericalSet s = *this;
    s.plus_ = plus_ || o.plus_;
    s.minus_ = minus_ || o.minus_;
    return s;
  }
  if (n_ == 2) {
    auto cand = candidate_directions();
    for (auto &d : o.candidate_directions())
      cand.push_back(d);
    return circle_from_predicate(cand, [&](const Vec &d) { return contains(d) || o.contains(d); });
  }
  if (n_ == 0)
    return *this;
  if (!negated_ && !o.negated_) {
    SphericalSet s = *this;
    s.pieces_.insert(s.pieces_.end(), o.pieces_.begin(), o.pieces_.end());
    return s;
  }
  if (negated_ && pieces_.empty())
    return *this;
  if (o.negated_ && o.pieces_.empty())
    return o;
  if (!negated_ && pieces_.empty())
    return o;
  if (!o.negated_ && o.pieces_.empty())
    return *this;
  throw Error("union with a complemented set is unsupported in dimension >= 3");
}

SphericalSet SphericalSet::complement() const {
  SphericalSet s = *this;
  if (n_ == 1) {
    s.plus_ = !plus_;
    s.minus_ = !minus_;
  } else if (n_ == 2) {
    s.full_bit_ = !full_bit_;
    for (auto &b : s.breaks_) {
      b.member = !b.member;
      b.gap_after = !b.gap_after;
    }
    if (!s.breaks_.empty())
      s.full_bit_ = false;
  } else {
    s.negated_ = !negated_;
  }
  return s;
}

SphericalSet SphericalSet::intersect(const SphericalSet &o) const {
  if (o.n_ != n_)
    throw Error("sphere dimension mismatch");
  if (n_ == 1) {
    SphericalSet s = *this;
    s.plus_ = plus_ && o.plus_;
    s.minus_ = minus_ && o.minus_;
    return s;
  }
  if (n_ == 2) {
    auto cand = candidate_directions();
    for (auto &d : o.candidate_directions())
      cand.push_back(d);
    return circle_from_predicate(cand, [&](const Vec &d) { return contains(d) && o.contains(d); });
  }
  throw Error("intersection is only supported on S^0 and S^1");
}

Tri SphericalSet::is_empty() const {
  if (n_ == 0)
    return Tri::True;
  if (n_ == 1)
    return tri(!plus_ && !minus_);
  if (n_ == 2)
    return tri(breaks_.empty() && !full_bit_);
  if (!negated_) {
    for (const auto &p : pieces_)
      if (!generator_directions(p).empty())
        return Tri::False;
    return Tri::True;
  }
  return equals(empty(n_));
}

Tri SphericalSet::subset_of(const SphericalSet &o) const {
  if (o.n_ != n_)
    throw Error("sphere dimension mismatch");
  if (n_ <= 2) {
    if (n_ == 0)
      return Tri::True;
    return intersect(o.complement()).is_empty();
  }
  if (n_ == 3 && !negated_ && !o.negated_)
    return tri(local_subset(prune_pieces(piece_infos(pieces_)), prune_pieces(piece_infos(o.pieces_))));
  if (n_ == 3) {
    std::vector<Vec> planes;
    for (const auto *s : {this, &o})
      for (const auto &p : s->pieces_)
        for (auto &c : cone_planes(p))
          planes.push_back(c);
    FastSet mine(*this), theirs(o);
    for (const auto &x : arrangement_samples(planes)) {
      auto ix = small_integer_direction(x);
      if (mine.contains(x, ix) && !theirs.contains(x, ix))
        return Tri::False;
    }
    return Tri::True;
  }
  // n >= 4: exact for unions of coordinate subspaces.
  if (!negated_ && !o.negated_) {
    std::vector<std::set<std::size_t>> mine, theirs;
    bool ok = true;
    for (const auto &p : pieces_) {
      auto c = coordinate_subspace(p);
      if (c)
        mine.push_back(*c);
      else if (!p.is_empty())
        ok = false;
    }
    for (const auto &p : o.pieces_) {
      auto c = coordinate_subspace(p);
      if (c)
        theirs.push_back(*c);
      else if (!p.is_empty())
        ok = false;
    }
    if (ok) {
      for (const auto &a : mine) {
        if (a.empty())
          continue;
        bool inside = std::any_of(theirs.begin(), theirs.end(), [&](const std::set<std::size_t> &b) {
          return std::includes(b.begin(), b.end(), a.begin(), a.end());
        });
        if (!inside)
          return Tri::False;
      }
      return Tri::True;
    }
  }
  // Randomized witness search: generator directions, their pairwise sums,
  // and random integer directions.
  std::vector<Vec> probes;
  for (const auto *s : {this, &o})
    for (const auto &p : s->pieces_) {
      auto g = generator_directions(p);
      for (std::size_t i = 0; i < g.size(); ++i) {
        probes.push_back(g[i]);
        for (std::size_t j = i + 1; j < g.size(); ++j)
          probes.push_back(add(g[i], g[j]));
      }
      if (auto q = p.relative_interior_point(); q && !is_zero_vec(*q))
        probes.push_back(*q);
    }
  std::mt19937_64 rng(g_witness_seed);
  std::uniform_int_distribution<long> dist(-20, 20);
  for (int k = 0; k < 2000; ++k) {
    Vec d(n_);
    for (auto &x : d)
      x = dist(rng);
    if (!is_zero_vec(d))
      probes.push_back(d);
  }
  for (const auto &x : probes)
    if (!is_zero_vec(x) && contains(x) && !o.contains(x))
      return Tri::False;
  return Tri::Unknown;
}

Tri SphericalSet::equals(const SphericalSet &o) const {
  if (o.n_ != n_)
    throw Error("sphere dimension mismatch");
  if (n_ == 0)
    return Tri::True;
  if (n_ == 1)
    return tri(plus_ == o.plus_ && minus_ == o.minus_);
  if (n_ == 2)
    return tri(full_bit_ == o.full_bit_ && breaks_ == o.breaks_);
  if (n_ == 3 && !negated_ && !o.negated_) {
    auto mine = prune_pieces(piece_infos(pieces_));
    auto theirs = prune_pieces(piece_infos(o.pieces_));
    return tri(local_subset(mine, theirs) && local_subset(theirs, mine));
  }
  Tri a = subset_of(o);
  if (a == Tri::False)
    return Tri::False;
  Tri b = o.subset_of(*this);
  if (b == Tri::False)
    return Tri::False;
  return (a == Tri::True && b == Tri::True) ? Tri::True : Tri::Unknown;
}

std::vector<SphericalSet::Arc> SphericalSet::arcs() const {
  if (n_ != 2)
    throw Error("arcs are only defined on S^1");
  std::vector<Arc> out;
  if (breaks_.empty()) {
    if (full_bit_) {
      Arc a;
      a.full = true;
      out.push_back(a);
    }
    return out;
  }
  // Cyclic sequence B0 G0 B1 G1 ...; start right after a false element.
  const std::size_t k = breaks_.size();
  auto bit = [&](std::size_t e) {
    const auto &b = breaks_[(e / 2) % k];
    return e % 2 == 0 ? b.member : b.gap_after;
  };
  std::size_t start = 0;
  while (bit(start))
    ++start;
  ++start;
  std::optional<Arc> cur;
  for (std::size_t step = 0; step < 2 * k; ++step) {
    std::size_t e = start + step;
    const auto &b = breaks_[(e / 2) % k];
    bool on = bit(e);
    if (on && !cur) {
      cur = Arc{};
      cur->from = b.dir;
      cur->from_closed = e % 2 == 0;
    }
    if (on) {
      if (e % 2 == 0) {
        cur->to = b.dir;
        cur->to_closed = true;
      } else {
        cur->to = breaks_[(e / 2 + 1) % k].dir;
        cur->to_closed = false;
      }
    }
    if (!on && cur) {
      out.push_back(*cur);
      cur.reset();
    }
  }
  if (cur)
    out.push_back(*cur);
  std::sort(out.begin(), out.end(), [](const Arc &x, const Arc &y) { return angle_less(x.from, y.from); });
  return out;
}

namespace {

std::string vec_str(const Vec &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

} // namespace

std::string SphericalSet::str() const {
  if (n_ == 0)
    return "{}";
  if (n_ == 1) {
    std::vector<std::string> pts;
    if (plus_)
      pts.push_back("+1");
    if (minus_)
      pts.push_back("-1");
    std::string s = "{";
    for (std::size_t i = 0; i < pts.size(); ++i)
      s += (i ? ", " : "") + pts[i];
    return s + "}";
  }
  if (n_ == 2) {
    if (full_circle())
      return "S^1";
    auto as = arcs();
    if (as.empty())
      return "{}";
    std::string s;
    for (const auto &a : as) {
      if (!s.empty())
        s += " u ";
      if (a.is_point())
        s += "{" + vec_str(a.from) + "}";
      else
        s += std::string(a.from_closed ? "[" : "(") + vec_str(a.from) + " -> " + vec_str(a.to) +
             (a.to_closed ? "]" : ")");
    }
    return s;
  }
  std::ostringstream os;
  os << (negated_ ? "complement of " : "") << "union of " << pieces_.size() << " cone image(s) in S^"
     << n_ - 1;
  return os.str();
}

SphericalSet sphere_project(const TropicalRegion &region) {
  std::vector<Polyhedron> pieces;
  for (const auto &c : region.cells())
    pieces.push_back(c.polyhedron);
  return SphericalSet::from_polyhedra(region.ambient_dim(), pieces);
}

} // namespace tropos
