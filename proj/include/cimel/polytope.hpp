// Lattice polytopes from point sets: facets, volumes, Ehrhart counts.
// Everything is exact; enumeration is brute force, which is fine at the
// sizes that occur here (tens of points, dimension <= ~13).
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cimel/matrix.hpp"

namespace cim {

inline std::size_t rank(QMat m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.m && r < m.n; ++c) {
    std::size_t p = r;
    while (p < m.n && m[p][c] == 0) ++p;
    if (p == m.n) continue;
    std::swap(m.a[r], m.a[p]);
    for (std::size_t i = r + 1; i < m.n; ++i) {
      if (m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < m.m; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

inline Int binom(std::size_t n, std::size_t k) {
  if (k > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

struct Facet {
  std::vector<Int> normal;  // primitive, inward: normal . x >= offset
  Int offset;
  bool operator<(const Facet& o) const {
    if (normal != o.normal) return normal < o.normal;
    return offset < o.offset;
  }
};

struct Polytope {
  std::vector<std::vector<Int>> pts;      // ambient input points, deduped
  std::size_t ambient = 0;
  std::size_t dim = 0;
  std::vector<Int> origin;                // first point; coords are relative
  std::vector<std::vector<Int>> basis;    // lattice basis of the span, dim rows
  std::vector<std::vector<Int>> coords;   // points in basis coordinates
  std::vector<Facet> facets;              // in basis coordinates
  std::vector<std::vector<Int>> vertices; // in basis coordinates
};

namespace detail {

inline std::vector<Int> primitive(std::vector<Int> v) {
  Int g = 0;
  for (auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return v;
}

// all k-subsets of {0..n-1}
template <class F>
void for_subsets(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (idx[i] + (k - i) < n) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
}

}  // namespace detail

inline Polytope make_polytope(std::vector<std::vector<Int>> points) {
  if (points.empty()) throw std::runtime_error("empty point set");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Polytope p;
  p.pts = points;
  p.ambient = points[0].size();
  p.origin = points[0];

  IMat diffs(points.size() - 1, p.ambient);
  for (std::size_t i = 1; i < points.size(); ++i)
    for (std::size_t j = 0; j < p.ambient; ++j) diffs[i - 1][j] = points[i][j] - p.origin[j];
  auto normals = integer_kernel(diffs);  // vectors orthogonal to all diffs
  if (normals.empty()) {
    p.basis.clear();
    for (std::size_t i = 0; i < p.ambient; ++i) {
      std::vector<Int> e(p.ambient, Int(0));
      e[i] = 1;
      p.basis.push_back(e);
    }
  } else {
    IMat nm(normals.size(), p.ambient);
    for (std::size_t i = 0; i < normals.size(); ++i) nm.a[i] = normals[i];
    p.basis = integer_kernel(nm);  // saturated lattice basis of the span
  }
  p.dim = p.basis.size();

  // coordinates of each point in the span lattice
  QMat bmat(p.ambient, p.dim);
  for (std::size_t j = 0; j < p.dim; ++j)
    for (std::size_t i = 0; i < p.ambient; ++i) bmat[i][j] = Rat(p.basis[j][i]);
  for (auto& pt : points) {
    std::vector<Rat> rhs(p.ambient);
    for (std::size_t i = 0; i < p.ambient; ++i) rhs[i] = Rat(pt[i] - p.origin[i]);
    auto sol = solve_affine(bmat, rhs);
    if (!sol) throw std::runtime_error("point outside span");
    std::vector<Int> c;
    for (auto& v : sol->point) {
      Rat w = v;
      w.canonicalize();
      if (w.get_den() != 1) throw std::runtime_error("non-lattice coordinate");
      c.push_back(w.get_num());
    }
    p.coords.push_back(std::move(c));
  }

  std::size_t d = p.dim;
  if (d == 0) {
    p.vertices = p.coords;
    return p;
  }
  std::set<Facet> fset;
  detail::for_subsets(p.coords.size(), d, [&](const std::vector<std::size_t>& idx) {
    IMat dm(d - 1, d);
    for (std::size_t i = 1; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        dm[i - 1][j] = p.coords[idx[i]][j] - p.coords[idx[0]][j];
    auto ker = integer_kernel(dm);
    if (ker.size() != 1) return;  // subset not spanning a hyperplane
    std::vector<Int> n = detail::primitive(ker[0]);
    Int c = 0;
    for (std::size_t j = 0; j < d; ++j) c += n[j] * p.coords[idx[0]][j];
    bool lo = true, hi = true;
    for (auto& pt : p.coords) {
      Int v = 0;
      for (std::size_t j = 0; j < d; ++j) v += n[j] * pt[j];
      if (v < c) lo = false;
      if (v > c) hi = false;
    }
    if (lo)
      fset.insert(Facet{n, c});
    else if (hi) {
      for (auto& x : n) x = -x;
      fset.insert(Facet{n, -c});
    }
  });
  p.facets.assign(fset.begin(), fset.end());

  for (auto& pt : p.coords) {
    QMat tight(0, d);
    for (auto& f : p.facets) {
      Int v = 0;
      for (std::size_t j = 0; j < d; ++j) v += f.normal[j] * pt[j];
      if (v == f.offset) {
        tight.a.emplace_back(d);
        for (std::size_t j = 0; j < d; ++j) tight.a.back()[j] = Rat(f.normal[j]);
        ++tight.n;
      }
    }
    tight.m = d;
    if (rank(tight) == d) p.vertices.push_back(pt);
  }
  return p;
}

// dim! times the Euclidean volume in the polytope's own span lattice; a
// unimodular simplex has value 1, a point has value 1 by convention.
inline Int normalized_volume(const Polytope& p) {
  std::size_t d = p.dim;
  if (d == 0) return Int(1);
  if (d == 1) {
    Int lo = p.coords[0][0], hi = p.coords[0][0];
    for (auto& c : p.coords) {
      lo = std::min(lo, c[0]);
      hi = std::max(hi, c[0]);
    }
    return hi - lo;
  }
  const std::vector<Int>& v0 = p.vertices.at(0);
  Int total = 0;
  for (auto& f : p.facets) {
    Int h = 0;
    for (std::size_t j = 0; j < d; ++j) h += f.normal[j] * v0[j];
    h -= f.offset;
    if (h == 0) continue;  // apex on the facet
    std::vector<std::vector<Int>> fpts;
    for (auto& pt : p.coords) {
      Int v = 0;
      for (std::size_t j = 0; j < d; ++j) v += f.normal[j] * pt[j];
      if (v == f.offset) fpts.push_back(pt);
    }
    total += h * normalized_volume(make_polytope(fpts));
  }
  return total;
}

// n! times the n-dimensional volume in the full ambient space (0 if the hull
// is lower-dimensional).
inline Int normalized_volume_ambient(const std::vector<std::vector<Int>>& points) {
  Polytope p = make_polytope(points);
  if (p.dim < p.ambient) return Int(0);
  return normalized_volume(p);
}

inline std::vector<std::vector<Int>> minkowski_sum(const std::vector<std::vector<Int>>& a,
                                                   const std::vector<std::vector<Int>>& b) {
  std::set<std::vector<Int>> s;
  for (auto& x : a)
    for (auto& y : b) {
      std::vector<Int> z(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
      s.insert(std::move(z));
    }
  return {s.begin(), s.end()};
}

// n! times the mixed volume of n polytopes in R^n (inclusion-exclusion over
// Minkowski sums); with all arguments equal this is the normalized volume.
inline Int mixed_volume(const std::vector<std::vector<std::vector<Int>>>& bodies) {
  std::size_t n = bodies.size();
  if (n == 0) throw std::runtime_error("mixed volume of nothing");
  if (bodies[0].empty() || bodies[0][0].size() != n)
    throw std::runtime_error("mixed volume needs n bodies in dimension n");
  Rat acc(0);
  Int nfact = 1;
  for (std::size_t i = 2; i <= n; ++i) nfact *= Int(i);
  for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
    std::vector<std::vector<Int>> sum{std::vector<Int>(n, Int(0))};
    std::size_t bits = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t(1) << i)) {
        sum = minkowski_sum(sum, bodies[i]);
        ++bits;
      }
    Int nv = normalized_volume_ambient(sum);
    if ((n - bits) % 2 == 0)
      acc += Rat(nv, nfact);
    else
      acc -= Rat(nv, nfact);
  }
  acc.canonicalize();
  if (acc.get_den() != 1) throw std::runtime_error("mixed volume not integral");
  return acc.get_num();
}

// |kP ∩ lattice| by box scan over the span coordinates; interior = relative
// interior (every facet strict).
inline Int lattice_point_count(const Polytope& p, const Int& k, bool interior = false) {
  std::size_t d = p.dim;
  if (k == 0) return Int(1);
  if (d == 0) return Int(1);
  std::vector<Int> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = hi[j] = p.coords[0][j];
    for (auto& c : p.coords) {
      lo[j] = std::min(lo[j], c[j]);
      hi[j] = std::max(hi[j], c[j]);
    }
    lo[j] *= k;
    hi[j] *= k;
  }
  Int count = 0;
  std::vector<Int> x = lo;
  while (true) {
    bool ok = true;
    for (auto& f : p.facets) {
      Int v = 0;
      for (std::size_t j = 0; j < d; ++j) v += f.normal[j] * x[j];
      if (interior ? !(v > f.offset * k) : !(v >= f.offset * k)) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    std::size_t j = 0;
    while (j < d) {
      ++x[j];
      if (x[j] <= hi[j]) break;
      x[j] = lo[j];
      ++j;
    }
    if (j == d) break;
  }
  return count;
}

// Dilation counts, their (1-t)^{d+1}-transformed coefficients, and the
// interior-count reciprocity check.
struct EhrhartData {
  std::vector<Int> counts;    // l(kP), k = 0..d+1
  std::vector<Int> interior;  // l*(kP), k = 0..d+1
  std::vector<Int> psi;       // psi_j, j = 0..d
  std::vector<Int> phi;       // phi_j, j = 0..d+1 (phi_0 = 0)
  Int nvol;                   // sum of psi = d! vol
  bool reciprocity = false;   // phi_{d+1-j} == psi_j
};

inline EhrhartData ehrhart(const Polytope& p) {
  std::size_t d = p.dim;
  EhrhartData e;
  for (std::size_t k = 0; k <= d + 1; ++k) {
    e.counts.push_back(lattice_point_count(p, Int(long(k))));
    e.interior.push_back(k == 0 ? Int(0) : lattice_point_count(p, Int(long(k)), true));
  }
  auto transform = [&](const std::vector<Int>& c, std::size_t jmax) {
    std::vector<Int> out;
    for (std::size_t j = 0; j <= jmax; ++j) {
      Int v = 0;
      for (std::size_t i = 0; i <= j; ++i) {
        Int term = binom(d + 1, i) * c[j - i];
        if (i % 2 == 0)
          v += term;
        else
          v -= term;
      }
      out.push_back(v);
    }
    return out;
  };
  std::vector<Int> cts = e.counts;
  cts[0] = 1;  // l(0P) = 1
  e.psi = transform(cts, d);
  e.phi = transform(e.interior, d + 1);
  e.nvol = 0;
  for (auto& v : e.psi) e.nvol += v;
  e.reciprocity = true;
  for (std::size_t j = 0; j <= d; ++j)
    if (e.phi[d + 1 - j] != e.psi[j]) e.reciprocity = false;
  if (e.phi[0] != 0) e.reciprocity = false;
  return e;
}

inline std::vector<Int> hodge_dims(const Polytope& p) { return ehrhart(p).psi; }

// Lattice points of kP classified by the dimension of the minimal face of P
// whose dilation contains them.
inline std::map<std::size_t, Int> weight_strata(const Polytope& p, long k) {
  std::size_t d = p.dim;
  std::map<std::size_t, Int> strata;
  if (d == 0) {
    strata[0] = 1;
    return strata;
  }
  std::vector<Int> lo(d), hi(d);
  for (std::size_t j = 0; j < d; ++j) {
    lo[j] = hi[j] = p.coords[0][j] * k;
    for (auto& c : p.coords) {
      lo[j] = std::min(lo[j], Int(c[j] * k));
      hi[j] = std::max(hi[j], Int(c[j] * k));
    }
  }
  std::vector<Int> x = lo;
  while (true) {
    bool inside = true;
    QMat tight(0, d);
    for (auto& f : p.facets) {
      Int v = 0;
      for (std::size_t j = 0; j < d; ++j) v += f.normal[j] * x[j];
      if (v < f.offset * k) {
        inside = false;
        break;
      }
      if (v == f.offset * k) {
        tight.a.emplace_back(d);
        for (std::size_t j = 0; j < d; ++j) tight.a.back()[j] = Rat(f.normal[j]);
        ++tight.n;
      }
    }
    if (inside) {
      tight.m = d;
      strata[d - rank(tight)] += 1;
    }
    std::size_t j = 0;
    while (j < d) {
      ++x[j];
      if (x[j] <= hi[j]) break;
      x[j] = lo[j];
      ++j;
    }
    if (j == d) break;
  }
  return strata;
}

// Minimal dilation k >= 0 with the given ambient point in kP.  Requires a
// full-dimensional polytope.
inline std::optional<Int> point_degree(const Polytope& p, const std::vector<Int>& e) {
  if (p.dim != p.ambient) throw std::runtime_error("point_degree needs a full-dim polytope");
  // x in kP <=> for each facet: normal.(x - k*origin) >= k*offset
  Int kmin = 0;
  std::optional<Int> kmax;
  for (auto& f : p.facets) {
    Int ne = 0, g = f.offset;
    for (std::size_t j = 0; j < p.dim; ++j) {
      ne += f.normal[j] * e[j];
      g += f.normal[j] * p.origin[j];
    }
    if (g == 0) {
      if (ne < 0) return std::nullopt;
    } else if (g > 0) {
      Int q;  // k <= ne/g
      mpz_fdiv_q(q.get_mpz_t(), ne.get_mpz_t(), g.get_mpz_t());
      if (!kmax || q < *kmax) kmax = q;
    } else {
      Int q;  // k >= ne/g (dividing by negative flips)
      mpz_cdiv_q(q.get_mpz_t(), ne.get_mpz_t(), g.get_mpz_t());
      if (q > kmin) kmin = q;
    }
  }
  if (kmax && *kmax < kmin) return std::nullopt;
  return kmin;
}

}  // namespace cim
