// Linear exponents attached to the columns of the inverse combined matrix,
// and products of Gamma values of those exponents modulo periodic units.
#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cimel/matrix.hpp"
#include "cimel/system.hpp"

namespace cim {

// Affine form in the deformation variables z_1..z_d, with free parameters
// J_1..J_{N+m} (monomial exponent shifts) and zeta_1..zeta_k entering only
// through the constant once instantiated.
struct LinearForm {
  Rat cst;                 // contribution of the +1 shifts
  std::vector<Rat> jc;     // coefficient of each J_i (base + bookkeeping vars)
  std::vector<Rat> zc;     // coefficient of each z_q
  std::vector<Rat> zetac;  // coefficient of each zeta_q
};

struct FormData {
  ScaledInverse inv;               // delta, integer matrix t, row contents
  std::vector<LinearForm> forms;   // one per term (column of the inverse)
  std::size_t n_j, d, k;
};

inline FormData linear_forms(const CayleyMatrix& cm) {
  auto si = scaled_inverse(cm.l);
  if (!si) throw std::runtime_error("combined matrix is singular");
  FormData fd;
  fd.inv = *si;
  fd.n_j = cm.n_x + cm.n_aux;
  fd.d = cm.n_s;
  fd.k = cm.n_y;
  std::size_t L = cm.rows();
  for (std::size_t a = 0; a < L; ++a) {
    LinearForm f;
    f.jc.resize(fd.n_j);
    f.zc.resize(fd.d);
    f.zetac.resize(fd.k);
    f.cst = 0;
    for (std::size_t i = 0; i < fd.n_j; ++i) {
      f.jc[i] = Rat(fd.inv.t[i][a], fd.inv.delta);
      f.jc[i].canonicalize();
      f.cst += f.jc[i];
    }
    for (std::size_t i = 0; i < fd.d; ++i) {
      f.zc[i] = Rat(fd.inv.t[cm.s_col(i)][a], fd.inv.delta);
      f.zc[i].canonicalize();
    }
    for (std::size_t i = 0; i < fd.k; ++i) {
      f.zetac[i] = Rat(fd.inv.t[cm.y_col(i)][a], fd.inv.delta);
      f.zetac[i].canonicalize();
      f.cst += f.zetac[i];
    }
    f.cst.canonicalize();
    fd.forms.push_back(std::move(f));
  }
  return fd;
}

// Sum identities over all terms: the J and z coefficients cancel, the zeta
// coefficients add to one each, the constants add to the block count.
inline bool verify_sum_rules(const FormData& fd) {
  std::vector<Rat> js(fd.n_j, Rat(0)), zs(fd.d, Rat(0)), zetas(fd.k, Rat(0));
  Rat cs(0);
  for (auto& f : fd.forms) {
    for (std::size_t i = 0; i < fd.n_j; ++i) js[i] += f.jc[i];
    for (std::size_t i = 0; i < fd.d; ++i) zs[i] += f.zc[i];
    for (std::size_t i = 0; i < fd.k; ++i) zetas[i] += f.zetac[i];
    cs += f.cst;
  }
  for (auto& v : js)
    if (v != 0) return false;
  for (auto& v : zs)
    if (v != 0) return false;
  for (auto& v : zetas)
    if (v != 1) return false;
  return cs == Rat(fd.k);
}

// Sign classes of the integer z_q-coefficients (entries of the s-row of the
// scaled inverse).  1-based term indices, matching the written convention.
struct IndexSets {
  std::vector<std::size_t> plus, minus, zero;
};

inline IndexSets index_sets(const FormData& fd, std::size_t q) {
  IndexSets s;
  for (std::size_t a = 0; a < fd.forms.size(); ++a) {
    int c = sgn(fd.forms[a].zc[q]);
    if (c > 0)
      s.plus.push_back(a + 1);
    else if (c < 0)
      s.minus.push_back(a + 1);
    else
      s.zero.push_back(a + 1);
  }
  return s;
}

// Integer z-column of the scaled inverse for term a (global scale delta).
inline Int scaled_zcoef(const FormData& fd, std::size_t q, std::size_t a) {
  Rat v = fd.forms[a].zc[q] * Rat(fd.inv.delta);
  v.canonicalize();
  return v.get_num();
}

// Affine form in z only, after substituting numeric J and zeta.
struct ZForm {
  Rat cst;
  std::vector<Rat> zc;

  bool operator<(const ZForm& o) const {
    if (zc != o.zc) return zc < o.zc;
    return cst < o.cst;
  }
  bool operator==(const ZForm& o) const { return cst == o.cst && zc == o.zc; }
};

inline ZForm instantiate(const LinearForm& f, const std::vector<Rat>& J,
                         const std::vector<Rat>& zeta) {
  ZForm z;
  z.cst = f.cst;
  for (std::size_t i = 0; i < f.jc.size() && i < J.size(); ++i) z.cst += f.jc[i] * J[i];
  for (std::size_t i = 0; i < f.zetac.size() && i < zeta.size(); ++i)
    z.cst += f.zetac[i] * zeta[i];
  z.cst.canonicalize();
  z.zc = f.zc;
  return z;
}

inline std::string to_string(const ZForm& f) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < f.zc.size(); ++i) {
    if (f.zc[i] == 0) continue;
    if (!first && f.zc[i] > 0) os << "+";
    if (f.zc[i] == -1)
      os << "-";
    else if (f.zc[i] != 1)
      os << to_string(f.zc[i]) << "*";
    os << "z" << (i + 1);
    first = false;
  }
  if (first) return to_string(f.cst);
  if (f.cst > 0) os << "+" << to_string(f.cst);
  if (f.cst < 0) os << to_string(f.cst);
  return os.str();
}

// Product of Gamma(form)^multiplicity, canonicalized modulo the periodic
// units: a factor with constant argument is a unit and is dropped; the
// reflection Gamma(f) <-> 1/Gamma(1-f) picks, of the pair {f, 1-f}, the one
// whose z-coefficient vector is lexicographically positive.
struct GammaProduct {
  std::map<ZForm, long> factors;

  void push(ZForm f, long mult) {
    if (mult == 0) return;
    bool allzero = true;
    for (auto& c : f.zc)
      if (c != 0) allzero = false;
    if (allzero) return;
    std::vector<Rat> neg;
    for (auto& c : f.zc) neg.push_back(-c);
    if (f.zc < neg) {  // reflect
      for (auto& c : f.zc) c = -c;
      f.cst = 1 - f.cst;
      f.cst.canonicalize();
      mult = -mult;
    }
    auto it = factors.find(f);
    if (it == factors.end())
      factors.emplace(std::move(f), mult);
    else {
      it->second += mult;
      if (it->second == 0) factors.erase(it);
    }
  }
};

inline GammaProduct gamma_product(const FormData& fd, const std::vector<Rat>& J,
                                  const std::vector<Rat>& zeta) {
  GammaProduct g;
  for (auto& f : fd.forms) g.push(instantiate(f, J, zeta), 1);
  return g;
}

inline bool gamma_equivalent(const GammaProduct& a, const GammaProduct& b) {
  return a.factors == b.factors;
}

inline std::string to_string(const GammaProduct& g) {
  std::ostringstream os;
  bool first = true;
  for (auto& [f, m] : g.factors) {
    if (!first) os << " * ";
    os << "Gamma(" << to_string(f) << ")";
    if (m != 1) os << "^" << m;
    first = false;
  }
  if (first) return "1";
  return os.str();
}

// Families of pole hyperplane intersections of the z_q-positive factors: for
// every d-subset of positive terms whose z-coefficient matrix is invertible,
// the base point solving all forms = 0 and the lattice directions the poles
// step along (solutions of form_b = -delta_{ab}).
struct PoleFamily {
  std::vector<std::size_t> terms;           // 1-based
  std::vector<Rat> base;                    // in z-space
  std::vector<std::vector<Rat>> directions; // one per term in the family
};

inline std::vector<PoleFamily> support_q(const FormData& fd, std::size_t q,
                                         const std::vector<Rat>& J,
                                         const std::vector<Rat>& zeta) {
  auto is = index_sets(fd, q);
  std::size_t d = fd.d;
  std::vector<PoleFamily> out;
  std::vector<std::size_t> idx(d);
  if (is.plus.size() < d) return out;
  // iterate d-subsets of the positive set
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    QMat A(d, d);
    std::vector<Rat> b(d);
    for (std::size_t r = 0; r < d; ++r) {
      const ZForm zf = instantiate(fd.forms[is.plus[idx[r]] - 1], J, zeta);
      for (std::size_t c = 0; c < d; ++c) A[r][c] = zf.zc[c];
      b[r] = -zf.cst;
    }
    if (det(A) != 0) {
      PoleFamily pf;
      for (std::size_t r = 0; r < d; ++r) pf.terms.push_back(is.plus[idx[r]]);
      auto sol = solve_affine(A, b);
      pf.base = sol->point;
      for (std::size_t r = 0; r < d; ++r) {
        std::vector<Rat> rhs(d, Rat(0));
        rhs[r] = -1;
        auto ds = solve_affine(A, rhs);
        pf.directions.push_back(ds->point);
      }
      out.push_back(std::move(pf));
    }
    std::size_t i = d;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (idx[i] + (d - i) < is.plus.size()) {
        ++idx[i];
        for (std::size_t j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace cim
