// Exact linear algebra over Z and Q (GMP-backed).
#pragma once

#include <gmpxx.h>

#include <cassert>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cim {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Fields are public on purpose; this is a workhorse container, not an ADT.
template <class T>
struct Mat {
  std::size_t n = 0, m = 0;  // rows, cols
  std::vector<std::vector<T>> a;

  Mat() = default;
  Mat(std::size_t n_, std::size_t m_) : n(n_), m(m_), a(n_, std::vector<T>(m_, T(0))) {}

  std::vector<T>& operator[](std::size_t i) { return a[i]; }
  const std::vector<T>& operator[](std::size_t i) const { return a[i]; }

  static Mat identity(std::size_t n_) {
    Mat r(n_, n_);
    for (std::size_t i = 0; i < n_; ++i) r[i][i] = T(1);
    return r;
  }

  bool operator==(const Mat& o) const { return n == o.n && m == o.m && a == o.a; }
};

using IMat = Mat<Int>;
using QMat = Mat<Rat>;

inline QMat to_rational(const IMat& m) {
  QMat r(m.n, m.m);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.m; ++j) r[i][j] = Rat(m[i][j]);
  return r;
}

template <class T>
Mat<T> mul(const Mat<T>& x, const Mat<T>& y) {
  assert(x.m == y.n);
  Mat<T> r(x.n, y.m);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.m; ++k) {
      if (x[i][k] == 0) continue;
      for (std::size_t j = 0; j < y.m; ++j) r[i][j] += x[i][k] * y[k][j];
    }
  return r;
}

template <class T>
Mat<T> transpose(const Mat<T>& x) {
  Mat<T> r(x.m, x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.m; ++j) r[j][i] = x[i][j];
  return r;
}

// Fraction-free Bareiss determinant.
inline Int det(const IMat& min) {
  assert(min.n == min.m);
  std::size_t n = min.n;
  if (n == 0) return Int(1);
  IMat m = min;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return Int(0);
      std::swap(m.a[k], m.a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

inline Rat det(const QMat& min) {
  assert(min.n == min.m);
  std::size_t n = min.n;
  QMat m = min;
  Rat d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return Rat(0);
    if (p != k) {
      std::swap(m.a[k], m.a[p]);
      d = -d;
    }
    d *= m[k][k];
    Rat inv = 1 / m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rat f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return d;
}

inline std::optional<QMat> inverse(const QMat& min) {
  assert(min.n == min.m);
  std::size_t n = min.n;
  QMat m = min, r = QMat::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m.a[k], m.a[p]);
    std::swap(r.a[k], r.a[p]);
    Rat inv = 1 / m[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      m[k][j] *= inv;
      r[k][j] *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m[i][k] == 0) continue;
      Rat f = m[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[k][j];
        r[i][j] -= f * r[k][j];
      }
    }
  }
  return r;
}

inline std::optional<QMat> inverse(const IMat& m) { return inverse(to_rational(m)); }

// Integer matrix t with t/delta equal to the inverse; delta is the lcm of the
// denominators appearing in the inverse, shared by all rows.  The gcd of each
// row of t is reported but deliberately not divided out, so that t's columns
// can be combined across rows without per-row bookkeeping.
struct ScaledInverse {
  Int delta;
  IMat t;
  std::vector<Int> row_content;
};

inline std::optional<ScaledInverse> scaled_inverse(const IMat& m) {
  auto inv = inverse(m);
  if (!inv) return std::nullopt;
  Int delta = 1;
  for (auto& row : inv->a)
    for (auto& x : row) delta = lcm(delta, x.get_den());
  ScaledInverse r;
  r.delta = delta;
  r.t = IMat(m.n, m.m);
  r.row_content.assign(m.n, Int(0));
  for (std::size_t i = 0; i < m.n; ++i) {
    for (std::size_t j = 0; j < m.m; ++j) {
      Rat v = (*inv)[i][j] * Rat(delta);
      assert(v.get_den() == 1);
      r.t[i][j] = v.get_num();
      r.row_content[i] = gcd(r.row_content[i], r.t[i][j]);
    }
    if (r.row_content[i] < 0) r.row_content[i] = -r.row_content[i];
  }
  return r;
}

// Row-style Hermite reduction of a set of integer vectors (spanning a lattice):
// canonical basis with positive pivots and entries above a pivot reduced into
// [0, pivot).  Returns the nonzero rows.
inline std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return rows;
  std::size_t m = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < rows.size(); ++c) {
    // gcd-eliminate column c below row r
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || cmp(abs(rows[i][c]), abs(rows[best][c])) < 0) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q = rows[i][c] / rows[r][c];  // truncated is fine, loop repeats
        if (q != 0)
          for (std::size_t j = 0; j < m; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (std::size_t j = 0; j < m; ++j) rows[r][j] = -rows[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = 0; j < m; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

// Basis of { v in Z^m : M v = 0 }, saturated (any integer solution is an
// integer combination of the basis).  Unimodular column elimination: reduce M
// by column operations mirrored on an identity matrix; columns of the mirror
// matching zeroed columns of M span the kernel.
inline std::vector<std::vector<Int>> integer_kernel(const IMat& min) {
  IMat m = min;
  IMat u = IMat::identity(m.m);
  std::size_t pivot_col = 0;
  for (std::size_t r = 0; r < m.n && pivot_col < m.m; ++r) {
    while (true) {
      std::size_t best = m.m;
      for (std::size_t j = pivot_col; j < m.m; ++j) {
        if (m[r][j] == 0) continue;
        if (best == m.m || cmp(abs(m[r][j]), abs(m[r][best])) < 0) best = j;
      }
      if (best == m.m) break;
      for (std::size_t i = 0; i < m.n; ++i) std::swap(m[i][pivot_col], m[i][best]);
      for (std::size_t i = 0; i < m.m; ++i) std::swap(u[i][pivot_col], u[i][best]);
      bool clean = true;
      for (std::size_t j = pivot_col + 1; j < m.m; ++j) {
        if (m[r][j] == 0) continue;
        Int q = m[r][j] / m[r][pivot_col];
        if (q != 0) {
          for (std::size_t i = 0; i < m.n; ++i) m[i][j] -= q * m[i][pivot_col];
          for (std::size_t i = 0; i < m.m; ++i) u[i][j] -= q * u[i][pivot_col];
        }
        if (m[r][j] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][pivot_col] != 0) ++pivot_col;
  }
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = pivot_col; j < m.m; ++j) {
    bool zero = true;
    for (std::size_t i = 0; i < m.n; ++i)
      if (m[i][j] != 0) {
        zero = false;
        break;
      }
    if (!zero) continue;
    std::vector<Int> v(m.m);
    for (std::size_t i = 0; i < m.m; ++i) v[i] = u[i][j];
    basis.push_back(std::move(v));
  }
  basis = hnf_rows(std::move(basis));
  for (auto& v : basis) {  // sign normalization: first nonzero entry positive
    for (auto& x : v) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : v) y = -y;
      break;
    }
  }
  return basis;
}

// Solution of A x = b over Q: a particular solution plus a nullspace basis,
// or nothing if inconsistent.
struct AffineSolution {
  std::vector<Rat> point;
  std::vector<std::vector<Rat>> directions;
};

inline std::optional<AffineSolution> solve_affine(const QMat& ain, const std::vector<Rat>& bin) {
  assert(ain.n == bin.size());
  QMat m(ain.n, ain.m + 1);
  for (std::size_t i = 0; i < ain.n; ++i) {
    for (std::size_t j = 0; j < ain.m; ++j) m[i][j] = ain[i][j];
    m[i][ain.m] = bin[i];
  }
  std::vector<std::size_t> pivot_of_row;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ain.m && r < m.n; ++c) {
    std::size_t p = r;
    while (p < m.n && m[p][c] == 0) ++p;
    if (p == m.n) continue;
    std::swap(m.a[r], m.a[p]);
    Rat inv = 1 / m[r][c];
    for (std::size_t j = c; j <= ain.m; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.n; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j <= ain.m; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_of_row.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.n; ++i)
    if (m[i][ain.m] != 0) return std::nullopt;
  AffineSolution s;
  s.point.assign(ain.m, Rat(0));
  std::vector<bool> is_pivot(ain.m, false);
  for (std::size_t i = 0; i < pivot_of_row.size(); ++i) {
    s.point[pivot_of_row[i]] = m[i][ain.m];
    is_pivot[pivot_of_row[i]] = true;
  }
  for (std::size_t c = 0; c < ain.m; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> d(ain.m, Rat(0));
    d[c] = 1;
    for (std::size_t i = 0; i < pivot_of_row.size(); ++i) d[pivot_of_row[i]] = -m[i][c];
    s.directions.push_back(std::move(d));
  }
  return s;
}

inline std::string to_string(const Int& x) { return x.get_str(); }

inline std::string to_string(const Rat& x) {
  Rat c = x;
  c.canonicalize();
  return c.get_str();
}

}  // namespace cim
