#include "tropos/abelian.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace tropos {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
  rows = init.size();
  cols = rows ? init.begin()->size() : 0;
  for (const auto &row : init) {
    if (row.size() != cols)
      throw Error("ragged matrix literal");
    for (long v : row)
      data.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (i != j && (*this)(i, j) != 0)
        return false;
  return true;
}

IntMatrix operator*(const IntMatrix &a, const IntMatrix &b) {
  if (a.cols != b.rows)
    throw Error("matrix shape mismatch");
  IntMatrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      if (a(i, k) == 0)
        continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

Integer determinant(const IntMatrix &m) {
  if (m.rows != m.cols)
    throw Error("determinant of non-square matrix");
  std::size_t n = m.rows;
  if (n == 0)
    return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0)
        ++swap;
      if (swap == n)
        return 0;
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a(k, j), a(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j));
        mpz_divexact(a(i, j).get_mpz_t(), a(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

namespace {

void swap_rows(IntMatrix &m, std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t j = 0; j < m.cols; ++j)
    std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix &m, std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t i = 0; i < m.rows; ++i)
    std::swap(m(i, a), m(i, b));
}

// row[dst] += q * row[src]
void add_row(IntMatrix &m, std::size_t dst, std::size_t src, const Integer &q) {
  for (std::size_t j = 0; j < m.cols; ++j)
    m(dst, j) += q * m(src, j);
}

void add_col(IntMatrix &m, std::size_t dst, std::size_t src, const Integer &q) {
  for (std::size_t i = 0; i < m.rows; ++i)
    m(i, dst) += q * m(i, src);
}

} // namespace

SmithForm smith_normal_form(const IntMatrix &m) {
  SmithForm s{IntMatrix::identity(m.rows), m, IntMatrix::identity(m.cols)};
  IntMatrix &D = s.D;
  const std::size_t diag = std::min(m.rows, m.cols);

  for (std::size_t t = 0; t < diag; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = t, pj = t;
      bool found = false;
      for (std::size_t i = t; i < D.rows; ++i)
        for (std::size_t j = t; j < D.cols; ++j)
          if (D(i, j) != 0 && (!found || abs(D(i, j)) < abs(D(pi, pj)))) {
            pi = i;
            pj = j;
            found = true;
          }
      if (!found)
        return s;
      swap_rows(D, t, pi);
      swap_rows(s.U, t, pi);
      swap_cols(D, t, pj);
      swap_cols(s.V, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < D.rows; ++i) {
        if (D(i, t) == 0)
          continue;
        Integer q = D(i, t) / D(t, t);
        add_row(D, i, t, -q);
        add_row(s.U, i, t, -q);
        if (D(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < D.cols; ++j) {
        if (D(t, j) == 0)
          continue;
        Integer q = D(t, j) / D(t, t);
        add_col(D, j, t, -q);
        add_col(s.V, j, t, -q);
        if (D(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // Enforce divisibility against the rest of the block.
      bool divides = true;
      for (std::size_t i = t + 1; i < D.rows && divides; ++i)
        for (std::size_t j = t + 1; j < D.cols; ++j)
          if (D(i, j) % D(t, t) != 0) {
            add_row(D, t, i, 1);
            add_row(s.U, t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < D.cols; ++j)
        D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < s.U.cols; ++j)
        s.U(t, j) = -s.U(t, j);
    }
  }
  return s;
}

std::pair<IntMatrix, IntMatrix> hermite_normal_form(const IntMatrix &m) {
  IntMatrix h = m;
  IntMatrix l = IntMatrix::identity(m.rows);
  std::size_t row = 0;
  for (std::size_t col = 0; col < h.cols && row < h.rows; ++col) {
    // Euclid down the column until a single nonzero entry remains at `row`.
    while (true) {
      std::size_t best = h.rows;
      for (std::size_t i = row; i < h.rows; ++i)
        if (h(i, col) != 0 && (best == h.rows || abs(h(i, col)) < abs(h(best, col))))
          best = i;
      if (best == h.rows)
        break;
      swap_rows(h, row, best);
      swap_rows(l, row, best);
      bool done = true;
      for (std::size_t i = row + 1; i < h.rows; ++i) {
        if (h(i, col) == 0)
          continue;
        Integer q = h(i, col) / h(row, col);
        add_row(h, i, row, -q);
        add_row(l, i, row, -q);
        if (h(i, col) != 0)
          done = false;
      }
      if (done)
        break;
    }
    if (h(row, col) == 0)
      continue;
    if (h(row, col) < 0) {
      for (std::size_t j = 0; j < h.cols; ++j)
        h(row, j) = -h(row, j);
      for (std::size_t j = 0; j < l.cols; ++j)
        l(row, j) = -l(row, j);
    }
    for (std::size_t i = 0; i < row; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, col).get_mpz_t(), h(row, col).get_mpz_t());
      if (q != 0) {
        add_row(h, i, row, -q);
        add_row(l, i, row, -q);
      }
    }
    ++row;
  }
  return {h, l};
}

FGAbelianGroup::FGAbelianGroup(std::size_t rank, std::vector<Exponent> torsion,
                               std::vector<std::string> labels)
    : rank_(rank), torsion_(std::move(torsion)), labels_(std::move(labels)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2)
      throw Error("torsion order must be at least 2");
    if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
      throw Error("torsion orders must form a divisibility chain");
  }
  if (labels_.empty()) {
    if (rank_ == 1)
      labels_.push_back("x");
    else
      for (std::size_t i = 0; i < rank_; ++i)
        labels_.push_back("x" + std::to_string(i + 1));
    if (torsion_.size() == 1)
      labels_.push_back("y");
    else
      for (std::size_t i = 0; i < torsion_.size(); ++i)
        labels_.push_back("y" + std::to_string(i + 1));
  }
  if (labels_.size() != rank_ + torsion_.size())
    throw Error("label count does not match group coordinates");
}

Integer FGAbelianGroup::torsion_size() const {
  Integer n = 1;
  for (auto d : torsion_)
    n *= static_cast<long>(d);
  return n;
}

bool GroupElement::is_identity() const {
  return std::all_of(free_part.begin(), free_part.end(), [](Exponent e) { return e == 0; }) &&
         std::all_of(torsion_part.begin(), torsion_part.end(), [](Exponent e) { return e == 0; });
}

GroupElement identity_element(const FGAbelianGroup &h) {
  return {std::vector<Exponent>(h.rank(), 0), std::vector<Exponent>(h.torsion_orders().size(), 0)};
}

void reduce(const FGAbelianGroup &h, GroupElement &a) {
  const auto &d = h.torsion_orders();
  for (std::size_t i = 0; i < d.size(); ++i) {
    a.torsion_part[i] %= d[i];
    if (a.torsion_part[i] < 0)
      a.torsion_part[i] += d[i];
  }
}

GroupElement add(const FGAbelianGroup &h, const GroupElement &a, const GroupElement &b) {
  GroupElement c = a;
  for (std::size_t i = 0; i < c.free_part.size(); ++i)
    c.free_part[i] += b.free_part[i];
  for (std::size_t i = 0; i < c.torsion_part.size(); ++i)
    c.torsion_part[i] += b.torsion_part[i];
  reduce(h, c);
  return c;
}

GroupElement negate(const FGAbelianGroup &h, const GroupElement &a) { return scale(h, a, -1); }

GroupElement scale(const FGAbelianGroup &h, const GroupElement &a, Exponent k) {
  GroupElement c = a;
  for (auto &e : c.free_part)
    e *= k;
  for (auto &e : c.torsion_part)
    e *= k;
  reduce(h, c);
  return c;
}

bool Character::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational &r) { return r == 0; });
}

Rational pair(const Character &chi, const std::vector<Exponent> &free_part) {
  return dot(chi.coords, free_part);
}

Rational pair(const Character &chi, const GroupElement &h) { return pair(chi, h.free_part); }

std::vector<Integer> sphere_normalize(const Character &chi) {
  if (chi.is_zero())
    throw Error("the zero character has no direction on the sphere");
  return primitive_direction(chi.coords);
}

std::size_t Presentation::generator_index(const std::string &name) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == name)
      return i;
  throw Error("unknown generator '" + name + "'");
}

void Presentation::validate() const {
  for (const auto &w : relators)
    for (const auto &l : w) {
      if (l.generator >= generators.size())
        throw Error("relator refers to a generator index out of range");
      if (l.exponent != 1 && l.exponent != -1)
        throw Error("letters must have exponent +1 or -1");
    }
}

Word commutator(std::size_t a, std::size_t b) {
  return {{a, 1}, {b, 1}, {a, -1}, {b, -1}};
}

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

long parse_int(const std::string &s, const std::string &ctx) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size())
      throw Error("");
    return v;
  } catch (...) {
    throw Error("bad integer '" + s + "' in " + ctx);
  }
}

void append_power(Word &out, const Word &base, long k) {
  if (k >= 0) {
    for (long i = 0; i < k; ++i)
      out.insert(out.end(), base.begin(), base.end());
    return;
  }
  Word inv;
  for (auto it = base.rbegin(); it != base.rend(); ++it)
    inv.push_back({it->generator, -it->exponent});
  append_power(out, inv, -k);
}

Word parse_word(const Presentation &p, const std::string &text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "1")
      continue;
    if (tok.front() == '[') {
      auto close = tok.find(']');
      auto comma = tok.find(',');
      if (close == std::string::npos || comma == std::string::npos || comma > close)
        throw Error("bad commutator token '" + tok + "'");
      std::size_t a = p.generator_index(trim(tok.substr(1, comma - 1)));
      std::size_t b = p.generator_index(trim(tok.substr(comma + 1, close - comma - 1)));
      long k = 1;
      if (close + 1 < tok.size()) {
        if (tok[close + 1] != '^')
          throw Error("bad commutator token '" + tok + "'");
        k = parse_int(tok.substr(close + 2), "commutator power");
      }
      append_power(w, commutator(a, b), k);
      continue;
    }
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    long k = caret == std::string::npos ? 1 : parse_int(tok.substr(caret + 1), "exponent");
    append_power(w, Word{{p.generator_index(name), 1}}, k);
  }
  return w;
}

} // namespace

Presentation parse_presentation(const std::string &text) {
  Presentation p;
  std::vector<std::string> rel_lines;
  bool saw_gens = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    if (line.rfind("gens:", 0) == 0) {
      std::istringstream names(line.substr(5));
      std::string n;
      while (names >> n) {
        if (std::find(p.generators.begin(), p.generators.end(), n) != p.generators.end())
          throw Error("duplicate generator '" + n + "'");
        p.generators.push_back(n);
      }
      saw_gens = true;
    } else if (line.rfind("rel:", 0) == 0) {
      rel_lines.push_back(line.substr(4));
    } else {
      throw Error("unrecognized presentation line: " + line);
    }
  }
  if (!saw_gens)
    throw Error("presentation is missing a 'gens:' line");
  // Commutator tokens may contain spaces after the comma; rejoin them.
  for (auto rel : rel_lines) {
    std::string compact;
    int depth = 0;
    for (char c : rel) {
      if (c == '[')
        ++depth;
      if (c == ']')
        --depth;
      if (depth > 0 && (c == ' ' || c == '\t'))
        continue;
      compact.push_back(c);
    }
    p.relators.push_back(parse_word(p, compact));
  }
  p.validate();
  return p;
}

Presentation load_presentation(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw Error("cannot open presentation file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

std::string format_word(const Presentation &p, const Word &w) {
  if (w.empty())
    return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += p.generators[w[i].generator];
    if (w[i].exponent < 0)
      out += "^-1";
  }
  return out;
}

GroupElement Abelianization::letter_image(const Letter &l) const {
  const auto &g = generator_images.at(l.generator);
  return l.exponent > 0 ? g : negate(group, g);
}

GroupElement Abelianization::word_image(const Word &w) const {
  GroupElement acc = identity_element(group);
  for (const auto &l : w)
    acc = add(group, acc, letter_image(l));
  return acc;
}

Abelianization abelianize(const Presentation &p) {
  p.validate();
  const std::size_t g = p.generators.size();
  const std::size_t r = p.relators.size();
  IntMatrix a(g, r);
  for (std::size_t j = 0; j < r; ++j)
    for (const auto &l : p.relators[j])
      a(l.generator, j) += l.exponent;

  SmithForm s = smith_normal_form(a);
  std::vector<std::size_t> free_rows, torsion_rows;
  std::vector<Exponent> orders;
  for (std::size_t i = 0; i < g; ++i) {
    Integer d = i < std::min(g, r) ? s.D(i, i) : Integer(0);
    if (d == 0) {
      free_rows.push_back(i);
    } else if (d > 1) {
      if (!d.fits_slong_p())
        throw Error("torsion order too large");
      torsion_rows.push_back(i);
      orders.push_back(d.get_si());
    }
  }

  // Canonical basis for the free quotient: Hermite form of the projection.
  IntMatrix proj(free_rows.size(), g);
  for (std::size_t k = 0; k < free_rows.size(); ++k)
    for (std::size_t j = 0; j < g; ++j)
      proj(k, j) = s.U(free_rows[k], j);
  IntMatrix canon = hermite_normal_form(proj).first;

  Abelianization ab;
  ab.group = FGAbelianGroup(free_rows.size(), orders);
  for (std::size_t j = 0; j < g; ++j) {
    GroupElement e = identity_element(ab.group);
    for (std::size_t k = 0; k < free_rows.size(); ++k) {
      if (!canon(k, j).fits_slong_p())
        throw Error("exponent overflow in abelianization");
      e.free_part[k] = canon(k, j).get_si();
    }
    for (std::size_t k = 0; k < torsion_rows.size(); ++k) {
      Integer v = s.U(torsion_rows[k], j) % orders[k];
      e.torsion_part[k] = v.get_si();
    }
    reduce(ab.group, e);
    ab.generator_images.push_back(e);
  }
  return ab;
}

std::ostream &operator<<(std::ostream &os, const IntMatrix &m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols; ++j)
      os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

} // namespace tropos
