#pragma once

// Dense linear algebra over a prime field F_p with p < 2^31.

#include <cstdint>
#include <optional>
#include <vector>

#include "chillag/arith.hpp"

namespace chillag::modular {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>; // row-major

inline std::int64_t reduce(std::int64_t a, std::int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

inline Mat identity(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    m[i][i] = 1;
  return m;
}

inline Vec apply(const Mat &a, const Vec &x, std::int64_t p) {
  Vec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < x.size(); ++j)
      s = (s + a[i][j] * x[j]) % p;
    y[i] = s;
  }
  return y;
}

/// Row-reduces in place; returns pivot columns.
inline std::vector<std::size_t> row_reduce(Mat &m, std::int64_t p) {
  std::vector<std::size_t> pivots;
  if (m.empty())
    return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0)
      ++sel;
    if (sel == rows)
      continue;
    std::swap(m[r], m[sel]);
    const std::int64_t inv = mod_inv(m[r][c], p);
    for (auto &v : m[r])
      v = v * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0)
        continue;
      const std::int64_t f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        m[i][j] = reduce(m[i][j] - f * m[r][j], p);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Basis of {x : a x = 0}.
inline std::vector<Vec> kernel(Mat a, std::int64_t p) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  const auto pivots = row_reduce(a, p);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots)
    is_pivot[c] = 1;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free])
      continue;
    Vec x(cols, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      x[pivots[r]] = reduce(-a[r][free], p);
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Characteristic polynomial det(xI - a), coefficients low to high degree,
/// via reduction to upper Hessenberg form.
inline Vec charpoly(Mat h, std::int64_t p) {
  const std::size_t n = h.size();
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::size_t sel = k;
    while (sel < n && h[sel][k - 1] == 0)
      ++sel;
    if (sel == n)
      continue;
    if (sel != k) {
      std::swap(h[sel], h[k]);
      for (auto &row : h)
        std::swap(row[sel], row[k]);
    }
    const std::int64_t inv = mod_inv(h[k][k - 1], p);
    for (std::size_t i = k + 1; i < n; ++i) {
      const std::int64_t f = h[i][k - 1] * inv % p;
      if (f == 0)
        continue;
      for (std::size_t j = 0; j < n; ++j)
        h[i][j] = reduce(h[i][j] - f * h[k][j], p);
      for (std::size_t j = 0; j < n; ++j)
        h[j][k] = (h[j][k] + f * h[j][i]) % p;
    }
  }
  // polys[m] = charpoly of the leading m x m block
  std::vector<Vec> polys(n + 1);
  polys[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Vec next(m + 1, 0);
    const Vec &prev = polys[m - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = (next[d + 1] + prev[d]) % p;
      next[d] = reduce(next[d] - h[m - 1][m - 1] * prev[d], p);
    }
    std::int64_t prod = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      prod = prod * h[i + 1][i] % p;
      const std::int64_t coeff = h[i][m - 1] * prod % p;
      if (coeff == 0)
        continue;
      for (std::size_t d = 0; d < polys[i].size(); ++d)
        next[d] = reduce(next[d] - coeff * polys[i][d], p);
    }
    polys[m] = std::move(next);
  }
  return polys[n];
}

inline std::int64_t evaluate(const Vec &poly, std::int64_t x, std::int64_t p) {
  std::int64_t v = 0;
  for (std::size_t d = poly.size(); d-- > 0;)
    v = (v * x + poly[d]) % p;
  return v;
}

/// Distinct roots in F_p by exhaustive evaluation, ascending.
inline std::vector<std::int64_t> roots(const Vec &poly, std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 0; x < p; ++x)
    if (evaluate(poly, x, p) == 0)
      out.push_back(x);
  return out;
}

/// Smallest primitive root modulo a prime.
inline std::int64_t primitive_root(std::int64_t p) {
  if (p == 2)
    return 1;
  const auto factors = prime_divisors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (int q : factors)
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok)
      return g;
  }
  return 1;
}

} // namespace chillag::modular
