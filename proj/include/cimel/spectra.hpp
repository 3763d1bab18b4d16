// Pole region geometry, column weight classification, filtration levels.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "cimel/mellin.hpp"
#include "cimel/polytope.hpp"
#include "cimel/system.hpp"

namespace cim {

// Weight classification of the columns of the inverse combined matrix.  The
// deciding part of each column is its deformation-row segment p: a column is
// "plain" (trivial) when p has exactly one nonzero entry and that entry is
// positive -- exactly the columns dual to the deformation parameters.  Among
// the remaining monomial columns, one affine relation per block (the block's
// exponents sum to its zeta shift) makes k-1 of them redundant, so the
// reported independent count is (#monomial terms) - (k-1).
struct WeightReport {
  std::vector<std::vector<Rat>> p;     // per column, deformation-row part
  std::vector<bool> trivial;           // per column
  std::size_t n_trivial = 0;
  std::size_t n_nontrivial_plain = 0;     // columns failing the criterion
  std::size_t n_nontrivial_reported = 0;  // monomial columns minus (k-1)
};

inline WeightReport weight_vectors(const CayleyMatrix& cm, const FormData& fd) {
  WeightReport w;
  std::size_t L = cm.rows();
  std::size_t monomials = 0;
  for (std::size_t a = 0; a < L; ++a) {
    std::vector<Rat> p;
    for (std::size_t i = 0; i < fd.d; ++i) p.push_back(fd.forms[a].zc[i]);
    int units = 0, other = 0;
    for (auto& v : p) {
      if (v == 1) ++units;
      else if (v != 0) ++other;
    }
    bool triv = (units == 1 && other == 0);
    w.p.push_back(std::move(p));
    w.trivial.push_back(triv);
    if (triv)
      ++w.n_trivial;
    else
      ++w.n_nontrivial_plain;
    if (cm.term_kind[a] == TermKind::monomial) ++monomials;
  }
  std::size_t k = cm.n_y;
  w.n_nontrivial_reported = monomials - (k - 1);
  return w;
}

// Region in z-space cut out by the nonpositivity of the positive-side
// exponents of block q together with z_i >= 0 for the other deformation
// directions; its vertex set is the discrete output.
struct SpectraRegion {
  struct Ineq {
    std::vector<Rat> a;  // a.z <= b
    Rat b;
  };
  std::vector<Ineq> ineqs;
  std::vector<std::vector<Rat>> vertices;
};

inline SpectraRegion spectra(const FormData& fd, std::size_t q, const std::vector<Rat>& J,
                             const std::vector<Rat>& zeta) {
  SpectraRegion r;
  std::size_t d = fd.d;
  auto is = index_sets(fd, q);
  for (auto a1 : is.plus) {
    ZForm f = instantiate(fd.forms[a1 - 1], J, zeta);
    SpectraRegion::Ineq iq;
    iq.a = f.zc;
    iq.b = -f.cst;
    r.ineqs.push_back(iq);  // L_a(z) <= 0
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (i == q) continue;
    SpectraRegion::Ineq iq;
    iq.a.assign(d, Rat(0));
    iq.a[i] = -1;  // -z_i <= 0
    iq.b = 0;
    r.ineqs.push_back(iq);
  }
  // vertex enumeration: intersections of d-thight subsets, kept if feasible
  std::size_t m = r.ineqs.size();
  if (m < d) return r;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    QMat A(d, d);
    std::vector<Rat> b(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) A[i][j] = r.ineqs[idx[i]].a[j];
      b[i] = r.ineqs[idx[i]].b;
    }
    if (det(A) != 0) {
      auto sol = solve_affine(A, b);
      bool feas = true;
      for (auto& iq : r.ineqs) {
        Rat v(0);
        for (std::size_t j = 0; j < d; ++j) v += iq.a[j] * sol->point[j];
        if (v > iq.b) {
          feas = false;
          break;
        }
      }
      if (feas && std::find(r.vertices.begin(), r.vertices.end(), sol->point) ==
                      r.vertices.end())
        r.vertices.push_back(sol->point);
    }
    std::size_t i = d;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (idx[i] + (d - i) < m) {
        ++idx[i];
        for (std::size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  std::sort(r.vertices.begin(), r.vertices.end());
  return r;
}

// Change of frame between two combined matrices describing the same
// underlying blocks with different bookkeeping: the variable-side matrix
// inv(L1) * L2 and the term-side matrix L2 * inv(L1).
struct Transition {
  QMat var_side;
  QMat term_side;
  Rat det_var;
};

inline Transition spectra_transition(const CayleyMatrix& c1, const CayleyMatrix& c2) {
  auto i1 = inverse(c1.l);
  if (!i1) throw std::runtime_error("first matrix singular");
  Transition t;
  t.var_side = mul(*i1, to_rational(c2.l));
  t.term_side = mul(to_rational(c2.l), *i1);
  t.det_var = det(t.var_side);
  return t;
}

// The full-dimensional polytope attached to the undeformed Cayley phase:
// every term row projected to the (x, x', y) coordinates (trailing terms
// land on the unit y-vertices), plus the origin.
inline Polytope phase_polytope(const CayleyMatrix& cm) {
  std::size_t amb = cm.n_x + cm.n_aux + cm.n_y;
  std::vector<std::vector<Int>> pts;
  pts.push_back(std::vector<Int>(amb, Int(0)));
  for (std::size_t a = 0; a < cm.rows(); ++a) {
    std::vector<Int> v(amb, Int(0));
    for (std::size_t j = 0; j < cm.n_x + cm.n_aux; ++j) v[j] = cm.l[a][j];
    for (std::size_t j = 0; j < cm.n_y; ++j) v[cm.n_x + cm.n_aux + j] = cm.l[a][cm.y_col(j)];
    if (std::find(pts.begin(), pts.end(), v) == pts.end()) pts.push_back(std::move(v));
  }
  return make_polytope(pts);
}

// Filtration level of the (J, zeta) twist.  The level r is read off the
// bracket position of the largest form value at z = 0 over the non-plain
// columns: dim - r < max <= dim - r + 1 with dim the number of (x, x', y)
// coordinates.  The minimal dilation of the phase polytope containing the
// shifted exponent point is reported as an independent cross-check when the
// point lies in one.
struct HodgeLevel {
  Int level;
  Int degree;       // ceil of the largest form value (the bracket dilation)
  bool cross_check; // the phase-polytope dilation of the point agrees
};

inline HodgeLevel hodge_level(const CayleyMatrix& cm, const FormData& fd,
                              const std::vector<Rat>& J, const std::vector<Rat>& zeta) {
  std::size_t amb = cm.n_x + cm.n_aux + cm.n_y;
  Rat mx;
  bool first = true;
  for (std::size_t a = 0; a < fd.forms.size(); ++a) {
    int units = 0, other = 0;
    for (std::size_t i = 0; i < fd.d; ++i) {
      if (fd.forms[a].zc[i] == 1) ++units;
      else if (fd.forms[a].zc[i] != 0) ++other;
    }
    if (units == 1 && other == 0) continue;  // plain column
    ZForm f = instantiate(fd.forms[a], J, zeta);
    if (first || f.cst > mx) mx = f.cst;
    first = false;
  }
  if (first) throw std::runtime_error("no non-plain columns");
  if (mx <= 0) throw std::runtime_error("twist above the top filtration level");
  HodgeLevel h;
  Int c;
  mx.canonicalize();
  mpz_cdiv_q(c.get_mpz_t(), mx.get_num().get_mpz_t(), mx.get_den().get_mpz_t());
  h.degree = c;
  h.level = Int(long(amb)) + 1 - c;
  // cross-check against the polytope picture where the point is visible in it
  h.cross_check = false;
  std::vector<Int> e(amb, Int(0));
  bool integral = true;
  for (std::size_t j = 0; j < amb && integral; ++j) {
    Rat v = j < cm.n_x + cm.n_aux
                ? (J.size() > j ? J[j] + 1 : Rat(1))
                : (zeta.size() > j - (cm.n_x + cm.n_aux)
                       ? zeta[j - (cm.n_x + cm.n_aux)] + 1
                       : Rat(1));
    v.canonicalize();
    if (v.get_den() != 1) integral = false;
    else e[j] = v.get_num();
  }
  if (integral) {
    auto deg = point_degree(phase_polytope(cm), e);
    if (deg && *deg == c) h.cross_check = true;
  }
  return h;
}

// Largest number of positive-side exponents of block l with a common zero.
inline std::size_t weight_level(const FormData& fd, std::size_t l, const std::vector<Rat>& J,
                                const std::vector<Rat>& zeta) {
  auto is = index_sets(fd, l);
  std::size_t n = is.plus.size();
  std::vector<ZForm> forms;
  for (auto a1 : is.plus) forms.push_back(instantiate(fd.forms[a1 - 1], J, zeta));
  for (std::size_t size = n; size >= 1; --size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      QMat A(size, fd.d);
      std::vector<Rat> b(size);
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < fd.d; ++j) A[i][j] = forms[idx[i]].zc[j];
        b[i] = -forms[idx[i]].cst;
      }
      if (solve_affine(A, b)) return size;
      std::size_t i = size;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (idx[i] + (size - i) < n) {
          ++idx[i];
          for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return 0;
}

// Size bound for nilpotent blocks of the local monodromy: one plus the
// largest number of exponents simultaneously hitting nonpositive integers at
// one z-point.  The integer shifts are searched in a finite box, so the bound
// is semi-decided and flagged heuristic.
struct JordanReport {
  std::size_t bound = 1;
  bool heuristic = true;
  Int box;
};

inline JordanReport jordan_bound(const FormData& fd, const std::vector<Rat>& J,
                                 const std::vector<Rat>& zeta) {
  JordanReport rep;
  rep.box = 3 * fd.inv.delta;
  std::size_t L = fd.forms.size(), d = fd.d;
  std::vector<ZForm> forms;
  for (auto& f : fd.forms) forms.push_back(instantiate(f, J, zeta));
  std::size_t best = 0;
  // candidate base points: common zeros of d-subsets at shifted levels
  std::vector<std::size_t> idx(d);
  if (L < d) return rep;
  long box = rep.box.get_si();
  detail::for_subsets(L, d, [&](const std::vector<std::size_t>& sub) {
    QMat A(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) A[i][j] = forms[sub[i]].zc[j];
    if (det(A) == 0) return;
    std::vector<long> n(d, 0);
    while (true) {
      std::vector<Rat> b(d);
      for (std::size_t i = 0; i < d; ++i) b[i] = -forms[sub[i]].cst - Rat(n[i]);
      auto sol = solve_affine(A, b);
      std::size_t hits = 0;
      for (auto& f : forms) {
        Rat v = f.cst;
        for (std::size_t j = 0; j < d; ++j) v += f.zc[j] * sol->point[j];
        v.canonicalize();
        if (v.get_den() == 1 && v.get_num() <= 0 && v.get_num() >= -rep.box) ++hits;
      }
      if (hits > best) best = hits;
      std::size_t j = 0;
      while (j < d) {
        ++n[j];
        if (n[j] <= box) break;
        n[j] = 0;
        ++j;
      }
      if (j == d) break;
    }
  });
  std::size_t k = fd.k;
  rep.bound = best > k ? best - k + 1 : 1;
  return rep;
}

}  // namespace cim
