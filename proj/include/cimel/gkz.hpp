// Toric (A-side) companion system: the configuration matrix, its torus-count
// rank, Euler and box operators, and the bordered change of frame tying the
// configuration back to the combined matrix.
#pragma once

#include <sstream>
#include <vector>

#include "cimel/matrix.hpp"
#include "cimel/mellin.hpp"
#include "cimel/poly.hpp"
#include "cimel/polytope.hpp"
#include "cimel/system.hpp"

namespace cim {

// (k + nx) x L configuration: one indicator row per block over all of the
// block's terms (the trailing term playing the constant column), then one row
// per base/bookkeeping variable with the term's exponent.
inline IMat a_matrix(const CayleyMatrix& cm) {
  std::size_t k = cm.n_y, nx = cm.n_x + cm.n_aux, L = cm.rows();
  IMat a(k + nx, L);
  for (std::size_t t = 0; t < L; ++t) {
    a[cm.term_block[t]][t] = 1;
    for (std::size_t j = 0; j < nx; ++j) a[k + j][t] = cm.l[t][j];
  }
  return a;
}

// The hypergeometric data attached to the configuration: the Euler operators
// (one per row, with parameter rhs), and the box operators (one per kernel
// basis vector, split into positive and negative parts).
struct GkzSystem {
  IMat a;
  std::vector<Rat> rhs;                    // per row: -(zeta_q+1) then (J_i+1)
  std::vector<std::vector<Int>> lattice;   // kernel basis, rows
  std::size_t rank_a = 0;
};

inline GkzSystem gkz_system(const CayleyMatrix& cm, const std::vector<Rat>& J,
                            const std::vector<Rat>& zeta) {
  GkzSystem g;
  g.a = a_matrix(cm);
  std::size_t k = cm.n_y, nx = cm.n_x + cm.n_aux;
  for (std::size_t q = 0; q < k; ++q) {
    Rat z = zeta.size() > q ? zeta[q] : Rat(0);
    g.rhs.push_back(-(z + 1));
  }
  for (std::size_t i = 0; i < nx; ++i) {
    Rat j = J.size() > i ? J[i] : Rat(0);
    g.rhs.push_back(j + 1);
  }
  g.lattice = integer_kernel(g.a);
  g.rank_a = rank(to_rational(g.a));
  return g;
}

// Points of the undeformed total polytope in the (x, x', y) space: all terms
// with deformation parameters set to 1, plus the origin for the "+1".
inline std::vector<std::vector<Int>> total_points(const CayleyMatrix& cm, bool with_origin) {
  std::size_t nx = cm.n_x + cm.n_aux, k = cm.n_y;
  std::vector<std::vector<Int>> pts;
  if (with_origin) pts.push_back(std::vector<Int>(nx + k, Int(0)));
  for (std::size_t t = 0; t < cm.rows(); ++t) {
    std::vector<Int> v(nx + k, Int(0));
    for (std::size_t j = 0; j < nx; ++j) v[j] = cm.l[t][j];
    for (std::size_t q = 0; q < k; ++q) v[nx + q] = cm.l[t][cm.y_col(q)];
    pts.push_back(std::move(v));
  }
  return pts;
}

// Holonomic rank by volume: (nx+k)! vol of the origin-cone polytope, equal to
// (nx+k-1)! vol of the slice at height one (the terms alone).
struct GkzRank {
  Int cone_volume;   // full-dimensional normalized volume with the origin
  Int slice_volume;  // normalized volume of the term polytope in its span
  bool equal;
};

inline GkzRank gkz_rank(const CayleyMatrix& cm) {
  GkzRank r;
  r.cone_volume = normalized_volume_ambient(total_points(cm, true));
  Polytope slice = make_polytope(total_points(cm, false));
  r.slice_volume = normalized_volume(slice);
  r.equal = (r.cone_volume == r.slice_volume);
  return r;
}

// Bordered change of frame: inv(L) applied to the block matrix
// [exponents | identity | block indicators].  The outer blocks collapse to
// unit columns (they are columns of L), leaving inv(L) itself as the middle,
// which carries the monomial exponents of the coefficient change.
struct SigmaChange {
  QMat full;          // nx + L + k columns
  bool shape_ok;      // unit-column borders as expected
  QMat sigma;         // the middle L columns
};

inline SigmaChange sigma_change(const CayleyMatrix& cm) {
  std::size_t nx = cm.n_x + cm.n_aux, k = cm.n_y, L = cm.rows();
  IMat la(L, nx + L + k);
  for (std::size_t t = 0; t < L; ++t) {
    for (std::size_t j = 0; j < nx; ++j) la[t][j] = cm.l[t][j];
    la[t][nx + t] = 1;
    la[t][nx + L + cm.term_block[t]] = 1;
  }
  auto inv = inverse(cm.l);
  if (!inv) throw std::runtime_error("combined matrix singular");
  SigmaChange s;
  s.full = mul(*inv, to_rational(la));
  s.shape_ok = true;
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < nx; ++j)
      if (s.full[i][j] != (i == j ? 1 : 0)) s.shape_ok = false;
    for (std::size_t q = 0; q < k; ++q)
      if (s.full[i][nx + L + q] != (i == cm.y_col(q) ? 1 : 0)) s.shape_ok = false;
  }
  s.sigma = QMat(L, L);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j) s.sigma[i][j] = s.full[i][nx + j];
  return s;
}

// Exponent branch attached to a column simplex K: the unique lambda supported
// on K with A lambda = rhs.  Two simplices are compatible (non-resonant) when
// their branches do not differ by a lattice vector.
inline std::optional<std::vector<Rat>> simplex_branch(const GkzSystem& g,
                                                      const std::vector<std::size_t>& K) {
  std::size_t r = g.a.n;
  if (K.size() != r) return std::nullopt;
  QMat A(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) A[i][j] = Rat(g.a[i][K[j]]);
  if (det(A) == 0) return std::nullopt;
  auto sol = solve_affine(A, g.rhs);
  std::vector<Rat> lambda(g.a.m, Rat(0));
  for (std::size_t j = 0; j < r; ++j) lambda[K[j]] = sol->point[j];
  return lambda;
}

inline bool t_nonresonance(const GkzSystem& g, const std::vector<std::size_t>& K1,
                           const std::vector<std::size_t>& K2) {
  if (K1 == K2) return true;
  auto l1 = simplex_branch(g, K1);
  auto l2 = simplex_branch(g, K2);
  if (!l1 || !l2) return true;  // no branch, nothing to collide
  std::vector<Int> diff(g.a.m);
  for (std::size_t i = 0; i < g.a.m; ++i) {
    Rat v = (*l1)[i] - (*l2)[i];
    v.canonicalize();
    if (v.get_den() != 1) return true;  // non-integral gap: distinct branches
    diff[i] = v.get_num();
  }
  // integral gap: resonant iff it lies in the kernel lattice
  if (g.lattice.empty()) {
    for (auto& v : diff)
      if (v != 0) return true;
    return false;
  }
  IMat basis(g.lattice.size(), g.a.m);
  for (std::size_t i = 0; i < g.lattice.size(); ++i) basis.a[i] = g.lattice[i];
  // solve x * basis = diff over Q, then require integrality
  auto sol = solve_affine(to_rational(transpose(basis)),
                          [&] {
                            std::vector<Rat> b;
                            for (auto& v : diff) b.push_back(Rat(v));
                            return b;
                          }());
  if (!sol) return true;  // not even in the rational span
  for (auto& v : sol->point) {
    Rat w = v;
    w.canonicalize();
    if (w.get_den() != 1) return true;
  }
  return false;  // congruent branches: resonant pair
}

// Box operator check data: applying the kernel vector to a formal monomial
// exponent must keep the A-image fixed; returned for display purposes.
inline std::string box_operator_string(const std::vector<Int>& v) {
  std::ostringstream pos, neg;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] > 0) {
      pos << " d" << (i + 1);
      if (v[i] != 1) pos << "^" << to_string(v[i]);
    } else if (v[i] < 0) {
      neg << " d" << (i + 1);
      if (v[i] != -1) neg << "^" << to_string(Int(-v[i]));
    }
  }
  std::string p = pos.str(), n = neg.str();
  if (p.empty()) p = " 1";
  if (n.empty()) n = " 1";
  return "prod[" + p + " ] - prod[" + n + " ]";
}

}  // namespace cim
