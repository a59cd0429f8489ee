#ifndef BKM_LINALG_HPP
#define BKM_LINALG_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "rational.hpp"

namespace bkm {

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;

inline Matrix identity_matrix(std::size_t n) {
  Matrix m(n, Vec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Vec mat_vec(const Matrix& m, const Vec& x) {
  Vec out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) out[i] += m[i][j] * x[j];
  }
  return out;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k ? b[0].size() : 0;
  Matrix out(n, Vec(m, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

/// x^T G y
inline Rational bilinear(const Matrix& g, const Vec& x, const Vec& y) {
  Rational s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * g[i][j] * y[j];
  }
  return s;
}

/// Row echelon data of an augmented system.
struct Elimination {
  Matrix rows;                  // reduced row echelon form of [A | b]
  std::vector<std::size_t> pivots;
  bool consistent = true;
};

inline Elimination reduce(Matrix a, const Vec& b) {
  const std::size_t n = a.size();
  const std::size_t m = n ? a[0].size() : 0;
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(i < b.size() ? b[i] : Rational(0));
  Elimination e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(a[p], a[r]);
    const Rational inv = 1 / a[r][c];
    for (auto& v : a[r]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j <= m; ++j) a[i][j] -= f * a[r][j];
    }
    e.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < n; ++i) {
    if (a[i][m] != 0) e.consistent = false;
  }
  e.rows = std::move(a);
  return e;
}

/// A particular solution of A x = b (free variables set to 0), if one exists.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
  const std::size_t m = a.empty() ? 0 : a[0].size();
  const Elimination e = reduce(a, b);
  if (!e.consistent) return std::nullopt;
  Vec x(m, Rational(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.rows[r][m];
  return x;
}

inline std::size_t matrix_rank(const Matrix& a) { return reduce(a, {}).pivots.size(); }

inline Rational determinant(Matrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

}  // namespace bkm

#endif  // BKM_LINALG_HPP
