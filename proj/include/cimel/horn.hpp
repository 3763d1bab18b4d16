// Ordinary-difference side of the story: shift operators, their principal
// symbols, the shift ratio and its pairwise compatibility, resonance and
// growth diagnostics.
#pragma once

#include <random>
#include <sstream>
#include <vector>

#include "cimel/mellin.hpp"
#include "cimel/poly.hpp"
#include "cimel/polytope.hpp"
#include "cimel/system.hpp"

namespace cim {

// The two halves of the shift operator for block q: products of degree-one
// factors, each affine in the log-derivations theta_1..theta_d.  Factors are
// stored as ZForms in theta (the z slot reused with the opposite sign).
struct HornOperator {
  std::vector<ZForm> p_factors;  // multiplies 1
  std::vector<ZForm> q_factors;  // multiplies the Delta-th power of s_q
  Int delta;                     // shift order
};

// factor list of prod_{a in S} prod_{j=0}^{|B|-1} (sign * L_a(J,-theta,zeta) + sign*... )
inline HornOperator horn_operators(const FormData& fd, std::size_t q,
                                   const std::vector<Rat>& J, const std::vector<Rat>& zeta) {
  HornOperator op;
  op.delta = fd.inv.delta;
  auto is = index_sets(fd, q);
  for (auto a1 : is.plus) {
    ZForm f = instantiate(fd.forms[a1 - 1], J, zeta);
    for (auto& c : f.zc) c = -c;  // z -> -theta
    Int b;
    {
      Rat v = fd.forms[a1 - 1].zc[q] * Rat(fd.inv.delta);
      v.canonicalize();
      b = v.get_num();
    }
    for (Int j = 0; j < b; ++j) {
      ZForm g = f;
      g.cst += Rat(j);
      g.cst.canonicalize();
      op.p_factors.push_back(g);
    }
  }
  for (auto a1 : is.minus) {
    ZForm f = instantiate(fd.forms[a1 - 1], J, zeta);
    // -L_a(J,-theta,zeta) - j  for j = 0..(-B)-1
    f.cst = -f.cst;
    // zc stays: minus of the (z -> -theta) flip
    Int b;
    {
      Rat v = fd.forms[a1 - 1].zc[q] * Rat(fd.inv.delta);
      v.canonicalize();
      b = -v.get_num();
    }
    for (Int j = 0; j < b; ++j) {
      ZForm g = f;
      g.cst -= Rat(j);
      g.cst.canonicalize();
      op.q_factors.push_back(g);
    }
  }
  return op;
}

inline bool horn_degree_check(const HornOperator& op) {
  return op.p_factors.size() == op.q_factors.size();
}

// Ratio R_q governing the Delta-step recursion in z_q, evaluated exactly.
// numerator: positive terms' ascending factorials; denominator: negative
// terms'.  Returns nothing when a denominator factor vanishes.
inline std::optional<Rat> shift_ratio(const FormData& fd, std::size_t q,
                                      const std::vector<Rat>& z, const std::vector<Rat>& J,
                                      const std::vector<Rat>& zeta) {
  Rat num(1), den(1);
  for (std::size_t a = 0; a < fd.forms.size(); ++a) {
    Rat bc = fd.forms[a].zc[q] * Rat(fd.inv.delta);
    bc.canonicalize();
    Int b = bc.get_num();
    if (b == 0) continue;
    ZForm f = instantiate(fd.forms[a], J, zeta);
    Rat v = f.cst;
    for (std::size_t i = 0; i < z.size(); ++i) v += f.zc[i] * z[i];
    if (b > 0) {
      for (Int j = 0; j < b; ++j) num *= v + Rat(j);
    } else {
      for (Int j = 1; j <= -b; ++j) {
        Rat w = v - Rat(j);
        if (w == 0) return std::nullopt;
        den *= w;
      }
    }
  }
  Rat r = num / den;
  r.canonicalize();
  return r;
}

// R_q(z + Delta e_r) R_r(z) == R_r(z + Delta e_q) R_q(z) at seeded rational
// sample points.  A cocycle condition: it certifies the ratios assemble into
// one well-defined multivalued product.
struct CompatibilityReport {
  std::size_t requested = 0, checked = 0;
  bool ok = true;
};

inline CompatibilityReport compatibility_check(const FormData& fd, std::size_t q,
                                               std::size_t r, const std::vector<Rat>& J,
                                               const std::vector<Rat>& zeta,
                                               unsigned seed, std::size_t npoints = 20) {
  CompatibilityReport rep;
  rep.requested = npoints;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> numd(-97, 97);
  std::uniform_int_distribution<int> dend(1, 97);
  std::size_t attempts = 0;
  while (rep.checked < npoints && attempts < npoints * 200) {
    ++attempts;
    std::vector<Rat> z(fd.d);
    for (auto& v : z) {
      v = Rat(numd(rng), dend(rng));
      v.canonicalize();
    }
    std::vector<Rat> zq = z, zr = z;
    zq[q] += Rat(fd.inv.delta);
    zr[r] += Rat(fd.inv.delta);
    auto a1 = shift_ratio(fd, q, zr, J, zeta);
    auto a2 = shift_ratio(fd, r, z, J, zeta);
    auto b1 = shift_ratio(fd, r, zq, J, zeta);
    auto b2 = shift_ratio(fd, q, z, J, zeta);
    if (!a1 || !a2 || !b1 || !b2) continue;
    if (*a1 * *a2 != *b1 * *b2) rep.ok = false;
    ++rep.checked;
  }
  return rep;
}

// Resonance: some shifted positive-side factor coincides, as an affine
// function, with a shifted negative-side one.  The negative-side factors are
// stored negated, so the comparison negates them back.  Resonant parameters
// break the clean splitting of solution bases.
inline bool non_resonance(const HornOperator& op) {
  for (auto& p : op.p_factors)
    for (auto& qf : op.q_factors) {
      if (p.zc.size() != qf.zc.size()) continue;
      bool same = p.cst == -qf.cst;
      for (std::size_t i = 0; same && i < p.zc.size(); ++i) same = p.zc[i] == -qf.zc[i];
      if (same) return false;
    }
  return true;
}

inline bool non_resonance(const FormData& fd, std::size_t q, const std::vector<Rat>& J,
                          const std::vector<Rat>& zeta) {
  return non_resonance(horn_operators(fd, q, J, zeta));
}

// Principal symbol of the block-q operator: a polynomial in s_1..s_d and
// xi_1..xi_d, built from the top-degree parts of the two factor products
// (only the theta coefficients survive; u_l = s_l xi_l).
inline MPoly char_symbol(const FormData& fd, std::size_t q) {
  std::size_t d = fd.d;
  auto is = index_sets(fd, q);
  // variables: s_1..s_d, xi_1..xi_d
  auto uform = [&](const std::vector<Rat>& zc, bool negate) {
    MPoly u = MPoly::constant(2 * d, Rat(0));
    for (std::size_t l = 0; l < d; ++l) {
      if (zc[l] == 0) continue;
      std::vector<int> e(2 * d, 0);
      e[l] = 1;
      e[d + l] = 1;
      MPoly t;
      t.nvars = 2 * d;
      t.terms[e] = negate ? -zc[l] : zc[l];
      u += t;
    }
    return u;
  };
  MPoly pos = MPoly::constant(2 * d, Rat(1));
  for (auto a1 : is.plus) {
    Rat bc = fd.forms[a1 - 1].zc[q] * Rat(fd.inv.delta);
    bc.canonicalize();
    MPoly u = uform(fd.forms[a1 - 1].zc, false);
    pos = pos * u.pow(bc.get_num().get_si());
  }
  MPoly neg = MPoly::constant(2 * d, Rat(1));
  for (auto a1 : is.minus) {
    Rat bc = fd.forms[a1 - 1].zc[q] * Rat(fd.inv.delta);
    bc.canonicalize();
    MPoly u = uform(fd.forms[a1 - 1].zc, true);
    neg = neg * u.pow(Int(-bc.get_num()).get_si());
  }
  // multiply the negative side by s_q^Delta
  std::vector<int> sq(2 * d, 0);
  sq[q] = int(fd.inv.delta.get_si());
  MPoly shift;
  shift.nvars = 2 * d;
  shift.terms[sq] = Rat(1);
  return pos - shift * neg;
}

// Growth diagnostics for a quotient of Gamma-factor products, given by two
// 1-based index sets into the forms.  column_balance: for every z-index, the
// summed z-coefficients of numerator and denominator agree (exact).
// alpha_min: minimum over sampled directions of the absolute-value gap of the
// linear parts; nonnegative values indicate moderate growth on vertical
// lines.  The sampling makes that part heuristic, and it is flagged as such.
struct GrowthReport {
  bool column_balance = true;
  Rat alpha_min;
  bool alpha_nonneg = true;
  bool heuristic = true;
};

inline GrowthReport growth_check(const FormData& fd, const std::vector<std::size_t>& numer,
                                 const std::vector<std::size_t>& denom, unsigned seed,
                                 std::size_t samples = 64) {
  GrowthReport rep;
  std::size_t d = fd.d;
  for (std::size_t l = 0; l < d; ++l) {
    Rat lhs(0), rhs(0);
    for (auto a1 : numer) lhs += fd.forms[a1 - 1].zc[l];
    for (auto b1 : denom) rhs += fd.forms[b1 - 1].zc[l];
    if (lhs != rhs) rep.column_balance = false;
  }
  auto alpha_at = [&](const std::vector<Rat>& xi) {
    Rat v(0);
    for (auto a1 : numer) {
      Rat dot(0);
      for (std::size_t l = 0; l < d; ++l) dot += fd.forms[a1 - 1].zc[l] * xi[l];
      v += abs(dot);
    }
    for (auto b1 : denom) {
      Rat dot(0);
      for (std::size_t l = 0; l < d; ++l) dot += fd.forms[b1 - 1].zc[l] * xi[l];
      v -= abs(dot);
    }
    return v;
  };
  bool first = true;
  for (std::size_t l = 0; l < d; ++l) {
    for (int s = -1; s <= 1; s += 2) {
      std::vector<Rat> xi(d, Rat(0));
      xi[l] = s;
      Rat v = alpha_at(xi);
      if (first || v < rep.alpha_min) rep.alpha_min = v;
      first = false;
    }
  }
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-19, 19);
  for (std::size_t i = 0; i < samples; ++i) {
    std::vector<Rat> xi(d, Rat(0));
    bool nz = false;
    for (auto& c : xi) {
      c = Rat(coef(rng));
      if (c != 0) nz = true;
    }
    if (!nz) continue;
    Rat v = alpha_at(xi);
    if (first || v < rep.alpha_min) rep.alpha_min = v;
    first = false;
  }
  rep.alpha_nonneg = rep.alpha_min >= 0;
  return rep;
}

// The two Newton-polytope style degree counts that the factor products must
// realize: sum of positive z-coefficients of block q against the alternating
// mixed volumes of the deformed block polytopes in the (x, other s) space.
inline Int euler_degree(const LaurentSystem& sys, const CayleyMatrix& cm, std::size_t q) {
  std::size_t k = sys.blocks.size();
  std::size_t nx = cm.n_x + cm.n_aux;
  std::size_t ambient = nx + k - 1;  // x vars plus s_i, i != q
  // polytope of block i: its monomials, plus e_{s_i} (i != q) or the origin (i == q)
  std::vector<std::vector<std::vector<Int>>> blocks;
  auto br = block_rows(sys);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::vector<Int>> pts;
    for (std::size_t t = br[i].first; t < br[i].second; ++t) {
      std::vector<Int> v(ambient, Int(0));
      for (std::size_t j = 0; j < nx; ++j) v[j] = cm.l[t][j];
      pts.push_back(v);
    }
    std::vector<Int> tail(ambient, Int(0));
    if (i != q) {
      std::size_t si = i < q ? i : i - 1;
      tail[nx + si] = 1;
    }
    pts.push_back(tail);
    blocks.push_back(pts);
  }
  // sum over compositions a_1+..+a_k = ambient, a_i >= 1, of the mixed volume
  // with block i repeated a_i times
  Int total = 0;
  std::vector<std::size_t> a(k, 1);
  std::size_t rest = ambient - k;
  std::vector<std::size_t> extra(k, 0);
  // enumerate compositions of `rest` into k nonneg parts
  std::vector<std::size_t> comp(k, 0);
  while (true) {
    std::size_t s = 0;
    for (auto v : comp) s += v;
    if (s == rest) {
      std::vector<std::vector<std::vector<Int>>> arg;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = 0; c < 1 + comp[i]; ++c) arg.push_back(blocks[i]);
      total += mixed_volume(arg);
    }
    std::size_t j = 0;
    while (j < k) {
      ++comp[j];
      if (comp[j] <= rest) break;
      comp[j] = 0;
      ++j;
    }
    if (j == k) break;
  }
  return total;
}

}  // namespace cim
