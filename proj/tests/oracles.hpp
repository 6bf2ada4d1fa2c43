#pragma once

// Independent brute-force reference implementations. They share no code with
// the library beyond plain data types.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Int = std::int64_t;
using Matrix = std::vector<std::vector<Int>>;
using Vec = std::vector<Int>;

inline Int bilinear(const Matrix& g, const Vec& u, const Vec& v) {
  Int s = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      s += u[i] * g[i][j] * v[j];
  return s;
}

/// Every vector of [-bound, bound]^dim, zero included, in odometer order.
inline void for_each_in_box(std::size_t dim, Int bound, const std::function<void(const Vec&)>& f) {
  Vec v(dim, -bound);
  while (true) {
    f(v);
    std::size_t i = 0;
    while (i < dim && v[i] == bound)
      v[i++] = -bound;
    if (i == dim)
      return;
    ++v[i];
  }
}

/// Cofactor-expansion determinant; fine for rank <= 6.
inline Int det(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0)
    return 1;
  if (n == 1)
    return m[0][0];
  Int s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    Matrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      Vec row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c)
          row.push_back(m[r][k]);
      minor.push_back(row);
    }
    s += (c % 2 ? -1 : 1) * m[0][c] * det(minor);
  }
  return s;
}

/// Rank over Q by plain fraction elimination.
inline std::size_t rank(std::vector<std::vector<mpq_class>> rows) {
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t q = 0; q < rows.size(); ++q) {
      if (q == r || rows[q][c] == 0)
        continue;
      mpq_class f = rows[q][c] / rows[r][c];
      for (std::size_t k = c; k < cols; ++k)
        rows[q][k] -= f * rows[r][k];
    }
    ++r;
  }
  return r;
}

/// Rational coordinates of v in terms of `basis`, if v lies in its Q-span.
inline std::optional<std::vector<mpq_class>> coordinates(const std::vector<Vec>& basis, const Vec& v) {
  const std::size_t k = basis.size(), n = v.size();
  // Augmented system: columns are basis vectors.
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(k + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j)
      a[i][j] = basis[j][i];
    a[i][k] = v[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c] == 0)
      ++p;
    if (p == n)
      continue;
    std::swap(a[p], a[r]);
    for (std::size_t q = 0; q < n; ++q) {
      if (q == r || a[q][c] == 0)
        continue;
      mpq_class f = a[q][c] / a[r][c];
      for (std::size_t t = c; t <= k; ++t)
        a[q][t] -= f * a[r][t];
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t q = r; q < n; ++q)
    if (a[q][k] != 0)
      return std::nullopt;
  std::vector<mpq_class> x(k, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = a[i][k] / a[i][pivots[i]];
  return x;
}

inline bool in_integer_span(const std::vector<Vec>& basis, const Vec& v) {
  auto x = coordinates(basis, v);
  if (!x)
    return false;
  for (auto& c : *x)
    if (c.get_den() != 1)
      return false;
  return true;
}

/// Series as a plain map from exponent vectors to rationals.
using Poly = std::map<std::vector<std::uint32_t>, mpq_class>;

inline std::uint32_t degree_of(const std::vector<std::uint32_t>& e) {
  std::uint32_t d = 0;
  for (auto x : e)
    d += x;
  return d;
}

inline Poly multiply(const Poly& a, const Poly& b, std::uint32_t cap) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      auto e = ea;
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += eb[i];
      if (degree_of(e) >= cap)
        continue;
      out[e] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

/// exp(c h_j h_k) (or exp(c h_j^2) when j == k) truncated below `cap`.
inline Poly exp_monomial(std::size_t n, std::size_t j, std::size_t k, const mpq_class& c, std::uint32_t cap) {
  Poly out;
  mpq_class coeff = 1;
  for (std::uint32_t p = 0; 2 * p < cap; ++p) {
    std::vector<std::uint32_t> e(n, 0);
    e[j] += p;
    e[k] += p;
    if (coeff != 0)
      out[e] = coeff;
    coeff = coeff * c / (p + 1);
  }
  return out;
}

/// exp(Q/2) below `cap`, as a product of one-monomial exponentials
/// exp(g_jj/2 h_j^2) and exp(g_jk h_j h_k).
inline Poly exp_half_quadratic(const Matrix& g, std::uint32_t cap) {
  const std::size_t n = g.size();
  Poly acc;
  if (cap == 0)
    return acc;
  acc[std::vector<std::uint32_t>(n, 0)] = 1;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k) {
      if (g[j][k] == 0)
        continue;
      mpq_class c = j == k ? mpq_class(g[j][k], 2) : mpq_class(g[j][k]);
      c.canonicalize();
      acc = multiply(acc, exp_monomial(n, j, k, c, cap), cap);
    }
  return acc;
}

/// exp(sum_j kappa_j h_j) below `cap`: coefficient kappa^alpha / alpha!.
inline Poly exp_linear(const Vec& kappa, std::uint32_t cap) {
  const std::size_t n = kappa.size();
  Poly acc;
  if (cap == 0)
    return acc;
  acc[std::vector<std::uint32_t>(n, 0)] = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (kappa[j] == 0)
      continue;
    Poly f;
    mpq_class coeff = 1;
    for (std::uint32_t p = 0; p < cap; ++p) {
      std::vector<std::uint32_t> e(n, 0);
      e[j] = p;
      f[e] = coeff;
      coeff = coeff * kappa[j] / (p + 1);
    }
    acc = multiply(acc, f, cap);
  }
  return acc;
}

/// Random symmetric matrices with entries in [-range, range] and |det| = 1.
inline Matrix random_unimodular(std::mt19937_64& rng, std::size_t n, Int range) {
  std::uniform_int_distribution<Int> d(-range, range);
  while (true) {
    Matrix g(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        g[i][j] = g[j][i] = d(rng);
    Int dt = det(g);
    if (dt == 1 || dt == -1)
      return g;
  }
}

/// Every symmetric matrix of size n with entries in [-range, range] and |det| = 1.
inline std::vector<Matrix> all_unimodular(std::size_t n, Int range) {
  std::vector<Matrix> out;
  const std::size_t slots = n * (n + 1) / 2;
  for_each_in_box(slots, range, [&](const Vec& v) {
    Matrix g(n, Vec(n));
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        g[i][j] = g[j][i] = v[s++];
    Int dt = det(g);
    if (dt == 1 || dt == -1)
      out.push_back(g);
  });
  return out;
}

inline bool characteristic(const Matrix& g, const Vec& k) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    Int kx = 0;
    for (std::size_t j = 0; j < g.size(); ++j)
      kx += k[j] * g[j][i];
    if (((kx - g[i][i]) % 2 + 2) % 2 != 0)
      return false;
  }
  return true;
}

} // namespace oracle
