// Paired families: weighted chains, transposition of the exponent data,
// factored Gamma-value identities and the generating-function comparisons
// between a family and its transpose.
#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cimel/mellin.hpp"
#include "cimel/poly.hpp"
#include "cimel/system.hpp"

namespace cim {

// A system in paired-block form: pairs (monomial block with deformation,
// product-of-variables block with constant), the square exponent matrix of
// all monomial rows, and the variable partition attached to the products.
struct MirrorInput {
  LaurentSystem sys;
  std::size_t n = 0, k = 0;
  IMat l_lambda;                                // n x n monomial exponents
  std::vector<std::size_t> tau;                 // monomial rows per pair
  std::vector<std::vector<std::size_t>> iset;   // product variable sets, 0-based
  std::vector<std::vector<std::size_t>> jset;   // monomial row positions, 0-based
};

inline MirrorInput mirror_input(const LaurentSystem& sys) {
  MirrorInput mi;
  mi.sys = sys;
  mi.n = sys.variables.size();
  if (sys.blocks.size() % 2 != 0) throw std::runtime_error("paired form needs 2k blocks");
  mi.k = sys.blocks.size() / 2;
  if (sys.mirror_partition.size() != mi.k)
    throw std::runtime_error("partition size must match pair count");
  mi.l_lambda = IMat(0, mi.n);
  std::size_t row = 0;
  for (std::size_t v = 0; v < mi.k; ++v) {
    const Block& mono = sys.blocks[2 * v];
    const Block& prod = sys.blocks[2 * v + 1];
    if (!mono.deformed || prod.deformed)
      throw std::runtime_error("pair must be (deformed, plain)");
    if (prod.monomials.size() != 1)
      throw std::runtime_error("product block must have a single monomial");
    std::vector<std::size_t> is;
    for (std::size_t j = 0; j < mi.n; ++j) {
      const Int& e = prod.monomials[0][j];
      if (e == 1)
        is.push_back(j);
      else if (e != 0)
        throw std::runtime_error("product block must be multilinear");
    }
    std::vector<std::size_t> declared;
    for (auto v1 : sys.mirror_partition[v]) declared.push_back(v1 - 1);
    std::sort(declared.begin(), declared.end());
    if (is != declared) throw std::runtime_error("partition does not match product block");
    mi.iset.push_back(is);
    mi.tau.push_back(mono.monomials.size());
    std::vector<std::size_t> js;
    for (auto& m : mono.monomials) {
      mi.l_lambda.a.push_back(m);
      ++mi.l_lambda.n;
      js.push_back(row++);
    }
    mi.jset.push_back(js);
  }
  if (row != mi.n) throw std::runtime_error("monomial rows must total the variable count");
  // the partition must cover every variable exactly once
  std::vector<int> cover(mi.n, 0);
  for (auto& is : mi.iset)
    for (auto j : is) ++cover[j];
  for (auto c : cover)
    if (c != 1) throw std::runtime_error("partition must cover variables exactly once");
  return mi;
}

// Chain weights: integer vectors g^{(q)} spanning the extreme rays of the
// nonnegative solutions of the per-pair constancy constraints (each pair's
// monomial rows and its product indicator pair the same against g).
struct WeightData {
  std::vector<std::vector<Int>> g;  // k vectors of length n
  IMat qhat;                        // qhat[q][v] = <indicator of pair v, g^{(q)}>
  bool rank_ok = false;             // qhat invertible
  bool cy = false;                  // row sums of qhat equal entry sums of g
};

inline WeightData weights(const MirrorInput& mi) {
  std::size_t n = mi.n, k = mi.k;
  IMat cons(0, n);
  auto push_row = [&](const std::vector<Int>& r) {
    cons.a.push_back(r);
    ++cons.n;
  };
  for (std::size_t v = 0; v < k; ++v) {
    std::vector<Int> ind(n, Int(0));
    for (auto j : mi.iset[v]) ind[j] = 1;
    const auto& rows = mi.jset[v];
    for (std::size_t t = 0; t < rows.size(); ++t) {
      std::vector<Int> r(n);
      for (std::size_t j = 0; j < n; ++j) r[j] = mi.l_lambda[rows[t]][j] - ind[j];
      push_row(r);
    }
  }
  auto basis = integer_kernel(cons);
  if (basis.size() != k) throw std::runtime_error("weight space has unexpected dimension");
  // extreme rays of { c : sum_i c_i basis_i >= 0 entrywise }
  std::vector<std::vector<Rat>> rays;
  auto value = [&](const std::vector<Rat>& c, std::size_t j) {
    Rat v(0);
    for (std::size_t i = 0; i < k; ++i) v += c[i] * Rat(basis[i][j]);
    return v;
  };
  auto feasible = [&](const std::vector<Rat>& c) {
    for (std::size_t j = 0; j < n; ++j)
      if (value(c, j) < 0) return false;
    return true;
  };
  if (k == 1) {
    std::vector<Rat> c{Rat(1)};
    if (!feasible(c)) c[0] = -1;
    if (!feasible(c)) throw std::runtime_error("no nonnegative weight ray");
    rays.push_back(c);
  } else {
    std::vector<std::size_t> idx(k - 1);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      QMat A(k - 1, k);
      for (std::size_t i = 0; i < k - 1; ++i)
        for (std::size_t c = 0; c < k; ++c) A[i][c] = Rat(basis[c][idx[i]]);
      auto ker = solve_affine(A, std::vector<Rat>(k - 1, Rat(0)));
      if (ker && ker->directions.size() == 1) {
        for (int s = 1; s >= -1; s -= 2) {
          std::vector<Rat> c = ker->directions[0];
          for (auto& x : c) x *= s;
          if (feasible(c)) {
            // normalize: first nonzero positive scale to primitive later
            if (std::find(rays.begin(), rays.end(), c) == rays.end()) {
              bool dup = false;
              for (auto& r : rays) {
                // proportional?
                Rat ratio;
                bool set = false, prop = true;
                for (std::size_t i = 0; i < k; ++i) {
                  if (r[i] == 0 && c[i] == 0) continue;
                  if (r[i] == 0 || c[i] == 0) { prop = false; break; }
                  Rat q = c[i] / r[i];
                  if (!set) { ratio = q; set = true; }
                  else if (q != ratio) { prop = false; break; }
                }
                if (prop && set && ratio > 0) { dup = true; break; }
              }
              if (!dup) rays.push_back(c);
            }
            break;
          }
        }
      }
      std::size_t i = k - 1;
      bool advanced = false;
      while (i > 0) {
        --i;
        if (idx[i] + (k - 1 - i) < n) {
          ++idx[i];
          for (std::size_t j = i + 1; j < k - 1; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  if (rays.size() != k) throw std::runtime_error("weight cone is not simplicial");
  // integral primitive weight vectors
  std::vector<std::vector<Int>> gs;
  for (auto& c : rays) {
    Int den = 1;
    std::vector<Rat> gv(n);
    for (std::size_t j = 0; j < n; ++j) {
      gv[j] = value(c, j);
      gv[j].canonicalize();
      den = lcm(den, gv[j].get_den());
    }
    std::vector<Int> g(n);
    Int content = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Rat w = gv[j] * Rat(den);
      w.canonicalize();
      g[j] = w.get_num();
      content = gcd(content, g[j]);
    }
    if (content > 1)
      for (auto& x : g) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    gs.push_back(g);
  }
  // assign each ray to the pair where its chain value is largest
  auto chain = [&](const std::vector<Int>& g, std::size_t v) {
    Int q = 0;
    for (auto j : mi.iset[v]) q += g[j];
    return q;
  };
  std::vector<int> owner(k, -1);
  for (std::size_t r = 0; r < k; ++r) {
    std::size_t best = 0;
    for (std::size_t v = 1; v < k; ++v)
      if (chain(gs[r], v) > chain(gs[r], best)) best = v;
    if (owner[best] != -1) throw std::runtime_error("ambiguous weight assignment");
    owner[best] = int(r);
  }
  WeightData w;
  w.g.resize(k);
  for (std::size_t v = 0; v < k; ++v) w.g[v] = gs[std::size_t(owner[v])];
  w.qhat = IMat(k, k);
  for (std::size_t q = 0; q < k; ++q)
    for (std::size_t v = 0; v < k; ++v) w.qhat[q][v] = chain(w.g[q], v);
  w.rank_ok = det(w.qhat) != 0;
  w.cy = true;
  for (std::size_t q = 0; q < k; ++q) {
    Int rs = 0, gsum = 0;
    for (std::size_t v = 0; v < k; ++v) rs += w.qhat[q][v];
    for (auto& x : w.g[q]) gsum += x;
    if (rs != gsum) w.cy = false;
  }
  return w;
}

// The transposed family: pair v of the transpose takes the columns of the
// exponent matrix indexed by the v-th product set as its monomial rows, and
// the original pair's row positions as its product set.
inline MirrorInput transpose_input(const MirrorInput& mi) {
  LaurentSystem t;
  t.name = mi.sys.name + "-transposed";
  t.variables = mi.sys.variables;
  for (std::size_t v = 0; v < mi.k; ++v) {
    Block mono;
    mono.deformed = true;
    for (auto j : mi.iset[v]) {
      std::vector<Int> row(mi.n);
      for (std::size_t i = 0; i < mi.n; ++i) row[i] = mi.l_lambda[i][j];
      mono.monomials.push_back(row);
    }
    t.blocks.push_back(mono);
    Block prod;
    prod.deformed = false;
    std::vector<Int> p(mi.n, Int(0));
    for (auto r : mi.jset[v]) p[r] = 1;
    prod.monomials.push_back(p);
    t.blocks.push_back(prod);
    std::vector<std::size_t> part;
    for (auto r : mi.jset[v]) part.push_back(r + 1);
    t.mirror_partition.push_back(part);
  }
  return mirror_input(t);
}

struct MirrorPair {
  MirrorInput x, y;   // y is the transpose of x
  WeightData gx, gy;  // weights on each side
  bool sizes_match;   // product set sizes of one side = row counts of the other
};

inline MirrorPair transpose_pair(const MirrorInput& mi) {
  MirrorPair p;
  p.x = mi;
  p.y = transpose_input(mi);
  p.gx = weights(p.x);
  p.gy = weights(p.y);
  p.sizes_match = true;
  for (std::size_t v = 0; v < mi.k; ++v) {
    if (p.y.tau[v] != mi.iset[v].size()) p.sizes_match = false;
    if (p.y.iset[v].size() != mi.tau[v]) p.sizes_match = false;
  }
  return p;
}

// Per-term exponent coordinate at zero twist: an affine form in the
// deformation variables.
inline std::vector<ZForm> xi_forms(const FormData& fd) {
  std::vector<ZForm> out;
  for (auto& f : fd.forms) out.push_back(instantiate(f, {}, {}));
  return out;
}

// Distinguished term positions of pair v in the combined matrix layout
// (0-based): the deformation term, the product term, the constant term.
inline std::array<std::size_t, 3> pair_terms(const MirrorInput& mi, std::size_t v) {
  std::size_t base = 0;
  for (std::size_t u = 0; u < v; ++u) base += mi.tau[u] + 3;
  return {base + mi.tau[v], base + mi.tau[v] + 1, base + mi.tau[v] + 2};
}

// 0-based positions of the monomial terms, in order; the b-th entry pairs
// with variable b in the factoring conditions.
inline std::vector<std::size_t> monomial_terms(const MirrorInput& mi) {
  std::vector<std::size_t> out;
  std::size_t base = 0;
  for (std::size_t v = 0; v < mi.k; ++v) {
    for (std::size_t t = 0; t < mi.tau[v]; ++t) out.push_back(base + t);
    base += mi.tau[v] + 3;
  }
  return out;
}

// Lemma-style distinguished coordinates: the deformation and product terms of
// pair v carry z_v, the constant term carries 1 - z_v.
inline bool check_distinguished_xi(const MirrorInput& mi, const std::vector<ZForm>& xi) {
  for (std::size_t v = 0; v < mi.k; ++v) {
    auto [ts, tp, tc] = pair_terms(mi, v);
    ZForm zv;
    zv.cst = 0;
    zv.zc.assign(xi[0].zc.size(), Rat(0));
    zv.zc[v] = 1;
    ZForm onemz = zv;
    onemz.cst = 1;
    onemz.zc[v] = -1;
    if (!(xi[ts] == zv) || !(xi[tp] == zv) || !(xi[tc] == onemz)) return false;
  }
  return true;
}

// Solve the factoring condition: the coordinate of the b-th monomial term
// equals (other side's weight of variable b) times a per-pair form, grouped
// by this side's partition.  Returns the per-pair forms if consistent.
struct FactorForms {
  bool ok = false;
  std::vector<ZForm> block_form;  // one per pair
};

inline FactorForms factor_forms(const MirrorInput& mi, const std::vector<ZForm>& xi,
                                const WeightData& other) {
  FactorForms ff;
  auto terms = monomial_terms(mi);
  std::vector<Rat> wv(mi.n, Rat(0));  // other side's weight of each variable
  for (auto& g : other.g)
    for (std::size_t j = 0; j < mi.n; ++j) wv[j] += Rat(g[j]);
  std::vector<int> block_of(mi.n, -1);
  for (std::size_t v = 0; v < mi.k; ++v)
    for (auto j : mi.iset[v]) block_of[j] = int(v);
  std::vector<std::optional<ZForm>> found(mi.k);
  for (std::size_t b = 0; b < mi.n; ++b) {
    ZForm x = xi[terms[b]];
    std::size_t v = std::size_t(block_of[b]);
    if (wv[b] == 0) {
      // zero weight: the coordinate itself must vanish identically
      bool zero = (x.cst == 0);
      for (auto& c : x.zc) zero = zero && (c == 0);
      if (!zero) return ff;
      continue;
    }
    ZForm cand;
    cand.cst = x.cst / wv[b];
    cand.cst.canonicalize();
    for (auto& c : x.zc) {
      Rat r = c / wv[b];
      r.canonicalize();
      cand.zc.push_back(r);
    }
    if (found[v] && !(*found[v] == cand)) return ff;
    found[v] = cand;
  }
  for (auto& f : found)
    if (!f) return ff;
  ff.ok = true;
  for (auto& f : found) ff.block_form.push_back(*f);
  return ff;
}

// Closed Gamma-value form of one side, written through the other side's
// weights: numerator over the nonzero weight entries, denominator one factor
// per pair from the columns of the other side's chain matrix.
inline GammaProduct mellin_closed_form(const MirrorInput& mi, const WeightData& other,
                                       const FactorForms& ff) {
  GammaProduct g;
  for (std::size_t v = 0; v < mi.k; ++v) {
    for (std::size_t j = 0; j < mi.n; ++j) {
      const Int& w = other.g[v][j];
      if (w == 0) continue;
      ZForm f = ff.block_form[v];
      f.cst *= Rat(w);
      f.cst.canonicalize();
      for (auto& c : f.zc) {
        c *= Rat(w);
        c.canonicalize();
      }
      g.push(f, 1);
    }
  }
  for (std::size_t v = 0; v < mi.k; ++v) {
    ZForm f;
    f.cst = 0;
    f.zc.assign(ff.block_form[0].zc.size(), Rat(0));
    for (std::size_t q = 0; q < mi.k; ++q) {
      const Int& c = other.qhat[q][v];
      if (c == 0) continue;
      f.cst += Rat(c) * ff.block_form[q].cst;
      for (std::size_t i = 0; i < f.zc.size(); ++i) f.zc[i] += Rat(c) * ff.block_form[q].zc[i];
    }
    f.cst.canonicalize();
    for (auto& c : f.zc) c.canonicalize();
    g.push(f, -1);
  }
  return g;
}

// Generating products, all factors 1 - x^e.  Zero exponents are skipped:
// a zero weight contributes an empty orbit, not a vanishing factor.

// Character series of the graded ring attached to a weight system: factors
// grouped per weight vector q, numerator over the pair chains, denominator
// over the weight entries; the diagonal specialization is returned.
inline CycloFraction character_series_diag(const WeightData& w) {
  CycloFraction f;
  std::size_t k = w.g.size();
  for (std::size_t q = 0; q < k; ++q) {
    for (std::size_t v = 0; v < k; ++v) {
      long e = w.qhat[v][q].get_si();
      if (e > 0) f.num.push_back(e);
    }
    for (auto& x : w.g[q]) {
      long e = x.get_si();
      if (e > 0) f.den.push_back(e);
    }
  }
  std::sort(f.num.begin(), f.num.end());
  std::sort(f.den.begin(), f.den.end());
  return f;
}

// Structure-sheaf series of the quotient family: grouped per pair v, the
// chains against every weight over the entries of the v-th weight.
inline CycloFraction structure_series_diag(const WeightData& w) {
  CycloFraction f;
  std::size_t k = w.g.size();
  for (std::size_t v = 0; v < k; ++v) {
    for (std::size_t q = 0; q < k; ++q) {
      long e = w.qhat[q][v].get_si();
      if (e > 0) f.num.push_back(e);
    }
    for (auto& x : w.g[v]) {
      long e = x.get_si();
      if (e > 0) f.den.push_back(e);
    }
  }
  std::sort(f.num.begin(), f.num.end());
  std::sort(f.den.begin(), f.den.end());
  return f;
}

// Orbifold (age-graded) series of a weight system: all chain values over all
// weight entries, in one flat product.
inline CycloFraction orbifold_series_diag(const WeightData& w) {
  CycloFraction f;
  std::size_t k = w.g.size();
  for (std::size_t q = 0; q < k; ++q)
    for (std::size_t v = 0; v < k; ++v) {
      long e = w.qhat[q][v].get_si();
      if (e > 0) f.num.push_back(e);
    }
  for (auto& g : w.g)
    for (auto& x : g) {
      long e = x.get_si();
      if (e > 0) f.den.push_back(e);
    }
  std::sort(f.num.begin(), f.num.end());
  std::sort(f.den.begin(), f.den.end());
  return f;
}

// The duality statement on the diagonal: the quantum character series of one
// side, the structure series of its transpose, and the orbifold series of
// the transpose agree as rational functions.  Each member is built from its
// own definition; equality is by cross-multiplied expansion.
struct DualityReport {
  CycloFraction m_x, p_oy, p_ay;  // written with the Y-side weights
  CycloFraction m_y, p_ox, p_ax;  // written with the X-side weights
  bool x_chain = false, y_chain = false;
};

inline DualityReport verify_bck(const MirrorPair& p) {
  DualityReport r;
  r.m_x = character_series_diag(p.gy);
  r.p_oy = structure_series_diag(p.gy);
  r.p_ay = orbifold_series_diag(p.gy);
  r.m_y = character_series_diag(p.gx);
  r.p_ox = structure_series_diag(p.gx);
  r.p_ax = orbifold_series_diag(p.gx);
  r.x_chain = cyclo_equal(r.m_x, r.p_oy) && cyclo_equal(r.p_oy, r.p_ay);
  r.y_chain = cyclo_equal(r.m_y, r.p_ox) && cyclo_equal(r.p_ox, r.p_ax);
  return r;
}

// Monodromy factorizations around infinity and zero for the loop of pair q.
struct MonodromyFactors {
  std::vector<long> at_infinity;  // exponents e in prod (1 - lambda^e)
  std::vector<long> at_zero;
};

inline MonodromyFactors monodromy_product(const WeightData& other, std::size_t q) {
  MonodromyFactors m;
  for (std::size_t v = 0; v < other.g.size(); ++v) {
    long e = other.qhat[v][q].get_si();
    if (e > 0) m.at_infinity.push_back(e);
  }
  for (auto& x : other.g[q]) {
    long e = x.get_si();
    if (e > 0) m.at_zero.push_back(e);
  }
  std::sort(m.at_infinity.begin(), m.at_infinity.end());
  std::sort(m.at_zero.begin(), m.at_zero.end());
  return m;
}

// The two factor lists of the regulator operator of pair v: the theta part
// and the part multiplying t_v.  Factors are affine forms in theta_1..theta_k.
struct QuantumOperator {
  std::vector<ZForm> theta_part;
  std::vector<ZForm> t_part;
  bool degree_match = false;
};

inline QuantumOperator quantum_operator(const MirrorPair& p, std::size_t v) {
  const WeightData& tg = p.gy;
  std::size_t k = p.x.k;
  QuantumOperator op;
  for (std::size_t j = 0; j < p.x.n; ++j) {
    long w = tg.g[v][j].get_si();
    for (long r = 0; r < w; ++r) {
      ZForm f;
      f.zc.assign(k, Rat(0));
      f.zc[v] = -w;
      f.cst = r;
      op.theta_part.push_back(f);
    }
  }
  for (std::size_t u = 0; u < k; ++u) {
    long reps = tg.qhat[v][u].get_si();
    for (long r = 0; r < reps; ++r) {
      ZForm f;
      f.zc.assign(k, Rat(0));
      for (std::size_t q = 0; q < k; ++q) f.zc[q] = Rat(tg.qhat[q][u]);
      f.cst = -r;
      op.t_part.push_back(f);
    }
  }
  op.degree_match = op.theta_part.size() == op.t_part.size();
  return op;
}

// Value-multiset pairing between the deformation-row weights of the monomial
// columns and the variable rows of some constant column: for each pair index
// q there must be a distinct target pair nu whose constant column realizes
// the same value multiset.
struct MagicSquare {
  bool ok = false;
  std::vector<std::size_t> pairing;  // q -> nu
};

inline MagicSquare magic_square(const MirrorInput& mi, const CayleyMatrix& cm,
                                const FormData& fd) {
  MagicSquare ms;
  std::size_t k = mi.k;
  auto terms = monomial_terms(mi);
  auto inv = inverse(cm.l);
  if (!inv) return ms;
  // value multiset of p_q over the monomial columns
  std::vector<std::vector<Rat>> pmul(k);
  for (std::size_t q = 0; q < k; ++q) {
    for (auto t : terms) pmul[q].push_back(fd.forms[t].zc[q]);
    std::sort(pmul[q].begin(), pmul[q].end());
  }
  // value multiset of the variable rows of each constant column
  std::vector<std::vector<Rat>> wmul(k);
  for (std::size_t v = 0; v < k; ++v) {
    auto [ts, tp, tc] = pair_terms(mi, v);
    for (std::size_t j = 0; j < mi.n; ++j) wmul[v].push_back((*inv)[j][tc]);
    std::sort(wmul[v].begin(), wmul[v].end());
  }
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool all = true;
    for (std::size_t q = 0; q < k; ++q)
      if (pmul[q] != wmul[perm[q]]) all = false;
    if (all) {
      ms.ok = true;
      ms.pairing = perm;
      return ms;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return ms;
}

// Product-type family on projective space: one deformed block holding the
// top monomial, then one plain block per degree chunk, made of single
// variables.  Chunk sizes must sum to the variable count.
inline LaurentSystem build_projective(std::size_t nvars, const std::vector<std::size_t>& ells) {
  std::size_t total = 0;
  for (auto l : ells) total += l;
  if (total != nvars) throw std::runtime_error("chunk sizes must sum to the variable count");
  LaurentSystem s;
  s.name = "projective";
  for (std::size_t i = 0; i < nvars; ++i) s.variables.push_back("x" + std::to_string(i + 1));
  Block top;
  top.deformed = true;
  top.monomials.push_back(std::vector<Int>(nvars, Int(1)));
  s.blocks.push_back(top);
  std::size_t at = 0;
  for (auto l : ells) {
    Block b;
    b.deformed = false;
    for (std::size_t i = 0; i < l; ++i) {
      std::vector<Int> m(nvars, Int(0));
      m[at + i] = 1;
      b.monomials.push_back(m);
    }
    s.blocks.push_back(b);
    at += l;
  }
  return s;
}

// Expected Gamma-value product of the projective family: Gamma(z)^{nvars}
// over the product of Gamma(l_v z).
inline GammaProduct projective_expected(std::size_t nvars, const std::vector<std::size_t>& ells) {
  GammaProduct g;
  ZForm z;
  z.cst = 0;
  z.zc = {Rat(1)};
  g.push(z, long(nvars));
  for (auto l : ells) {
    ZForm f;
    f.cst = 0;
    f.zc = {Rat(long(l))};
    g.push(f, -1);
  }
  return g;
}

}  // namespace cim
