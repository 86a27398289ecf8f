#pragma once

#include "tropos/laurent.hpp"

#include <cstdint>
#include <random>

namespace testsupport {

extern std::uint64_t g_seed;

inline std::mt19937_64 rng(std::uint64_t salt) { return std::mt19937_64(g_seed ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline long uniform(std::mt19937_64 &r, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(r);
}

/// Random polynomial over Z on a torsion-free group of the given rank.
inline tropos::LaurentPoly random_poly(std::mt19937_64 &r, const tropos::GroupPtr &g, int max_terms,
                                       long coef, long expo) {
  tropos::LaurentPoly f(g);
  int terms = static_cast<int>(uniform(r, 1, max_terms));
  for (int t = 0; t < terms; ++t) {
    tropos::GroupElement e = tropos::identity_element(*g);
    for (auto &x : e.free_part)
      x = uniform(r, -expo, expo);
    for (std::size_t i = 0; i < e.torsion_part.size(); ++i)
      e.torsion_part[i] = uniform(r, 0, g->torsion_orders()[i] - 1);
    f.add_term(e, uniform(r, -coef, coef));
  }
  return f;
}

inline tropos::Character random_character(std::mt19937_64 &r, std::size_t n, long range, long den) {
  tropos::Character c;
  for (std::size_t i = 0; i < n; ++i)
    c.coords.push_back(tropos::make_rational(uniform(r, -range, range), uniform(r, 1, den)));
  return c;
}

} // namespace testsupport
