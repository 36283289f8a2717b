#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "aspec/group.hpp"
#include "aspec/permutation.hpp"

namespace testing_support {

using aspec::Permutation;
using aspec::Point;
using Images = std::vector<Point>;

inline Permutation P(const std::string& cycles, std::size_t n) { return Permutation::parse(cycles, n); }

inline std::vector<Permutation> symmetric_gens(std::size_t n) {
  std::string cycle = "(";
  for (std::size_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
  return {P("(1 2)", n), P(cycle, n)};
}

inline std::vector<Permutation> alternating_gens(std::size_t n) {
  std::vector<Permutation> g;
  for (std::size_t k = 3; k <= n; ++k) g.push_back(P("(1 2 " + std::to_string(k) + ")", n));
  return g;
}

// Quaternion units 1, i, j, k with signs, indexed 2 * unit + (negative ? 1 : 0).
struct Quat {
  int unit;
  bool neg;
};

inline Quat quat_mul(Quat a, Quat b) {
  // unit table: row a, column b -> (unit, sign flip)
  static const int u[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const bool s[4][4] = {
      {false, false, false, false}, {false, true, false, true}, {false, true, true, false}, {false, false, true, true}};
  return Quat{u[a.unit][b.unit], (a.neg != b.neg) != s[a.unit][b.unit]};
}

inline std::size_t quat_index(Quat q) { return 2 * static_cast<std::size_t>(q.unit) + (q.neg ? 1 : 0); }

/// Right regular representation of a quaternion unit on 8 points.
inline Permutation q8_element(int unit, bool neg = false) {
  Images im(8);
  for (int v = 0; v < 4; ++v)
    for (int sgn = 0; sgn < 2; ++sgn) {
      Quat x{v, sgn == 1};
      im[quat_index(x)] = static_cast<Point>(quat_index(quat_mul(x, Quat{unit, neg})));
    }
  return Permutation::from_images(im);
}

inline std::vector<Permutation> q8_gens() { return {q8_element(1), q8_element(2)}; }

using Matrix = std::vector<std::vector<long>>;

/// v -> M v + w on F_p^n, points numbered sum v_i p^i.
inline Permutation affine(const Matrix& M, const std::vector<long>& w, long p) {
  const std::size_t n = M.size();
  std::size_t N = 1;
  for (std::size_t i = 0; i < n; ++i) N *= static_cast<std::size_t>(p);
  Images im(N);
  for (std::size_t x = 0; x < N; ++x) {
    std::vector<long> v(n);
    std::size_t t = x;
    for (std::size_t i = 0; i < n; ++i, t /= static_cast<std::size_t>(p)) v[i] = static_cast<long>(t % p);
    std::size_t y = 0, scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
      long acc = w.empty() ? 0 : w[i];
      for (std::size_t j = 0; j < n; ++j) acc += M[i][j] * v[j];
      y += static_cast<std::size_t>(((acc % p) + p) % p) * scale;
      scale *= static_cast<std::size_t>(p);
    }
    im[x] = static_cast<Point>(y);
  }
  return Permutation::from_images(im);
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Matrix diag(std::vector<long> d) {
  Matrix m = identity(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

inline std::vector<long> unit(std::size_t n, std::size_t k) {
  std::vector<long> e(n, 0);
  e[k] = 1;
  return e;
}

/// Translations of F_p^n.
inline std::vector<Permutation> translation_gens(std::size_t n, long p) {
  std::vector<Permutation> g;
  for (std::size_t k = 0; k < n; ++k) g.push_back(affine(identity(n), unit(n, k), p));
  return g;
}

/// UT(n,p) acting linearly on F_p^n.
inline std::vector<Permutation> unitriangular_gens(std::size_t n, long p) {
  std::vector<Permutation> g;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Matrix M = identity(n);
    M[i][i + 1] = 1;
    g.push_back(affine(M, {}, p));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Naive oracles working on raw image vectors, independent of the group engine.

inline Images compose(const Images& a, const Images& b) {
  Images c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[x] = b[a[x]];
  return c;
}

inline Images invert(const Images& a) {
  Images c(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) c[a[x]] = static_cast<Point>(x);
  return c;
}

inline Images ident(std::size_t n) {
  Images c(n);
  for (std::size_t x = 0; x < n; ++x) c[x] = static_cast<Point>(x);
  return c;
}

/// Closure of a generating set by repeated multiplication until nothing new appears.
inline std::set<Images> closure(const std::vector<Images>& gens, std::size_t n) {
  std::set<Images> s{ident(n)};
  bool grown = true;
  while (grown) {
    grown = false;
    std::vector<Images> cur(s.begin(), s.end());
    for (const auto& x : cur)
      for (const auto& g : gens)
        if (s.insert(compose(x, g)).second) grown = true;
  }
  return s;
}

inline std::set<Images> closure(const std::vector<Permutation>& gens, std::size_t n) {
  std::vector<Images> g;
  for (const auto& p : gens) g.push_back(p.images());
  return closure(g, n);
}

inline Images comm(const Images& x, const Images& y) {
  return compose(compose(invert(x), invert(y)), compose(x, y));
}

/// Subgroup generated by every commutator [x, y], x in H, y in K.
inline std::set<Images> brute_commutator(const std::set<Images>& H, const std::set<Images>& K, std::size_t n) {
  std::set<Images> c;
  for (const auto& x : H)
    for (const auto& y : K) c.insert(comm(x, y));
  return closure(std::vector<Images>(c.begin(), c.end()), n);
}

inline std::set<Images> elements_of(const aspec::Subgroup& H) {
  std::set<Images> s;
  for (auto id : H.elements()) s.insert(H.group().element(id).images());
  return s;
}

inline std::uint64_t brute_order(const Images& x) {
  Images y = x;
  std::uint64_t k = 1;
  const Images e = ident(x.size());
  while (y != e) {
    y = compose(y, x);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Random instances for property tests.

inline Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  Images im = ident(n);
  std::shuffle(im.begin(), im.end(), rng);
  return Permutation::from_images(im);
}

/// A random subgroup of S_n (n <= 6) or of a small fixed family, generated by 1-3 random elements.
inline std::vector<Permutation> random_group_gens(std::mt19937_64& rng, std::size_t& degree) {
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0: {
      degree = std::uniform_int_distribution<std::size_t>(3, 6)(rng);
      std::vector<Permutation> g;
      std::size_t count = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
      for (std::size_t i = 0; i < count; ++i) g.push_back(random_perm(degree, rng));
      return g;
    }
    case 1:
      degree = 8;
      return q8_gens();
    case 2:
      degree = 27;
      return unitriangular_gens(3, 3);
    default: {
      degree = 6;
      return {P("(1 2 3)", 6), P("(1 2)", 6), P("(4 5 6)", 6), P("(4 5)", 6)};
    }
  }
}

}  // namespace testing_support
