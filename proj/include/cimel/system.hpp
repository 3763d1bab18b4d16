// Polynomial systems and their combined exponent matrix.
//
// A system is a list of blocks; each block is a set of exponent vectors over
// the base variables plus an implicit trailing term: a fresh deformation
// parameter s_q for deformed blocks, the constant 1 otherwise.  Every block
// gets its own auxiliary factor y_q on all of its terms.  When the term count
// exceeds the variable budget, extra bookkeeping variables are attached to
// individual monomials ("placement") until the combined matrix is square.
#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cimel/matrix.hpp"

namespace cim {

struct Block {
  std::vector<std::vector<Int>> monomials;  // exponent vectors over base vars
  bool deformed = true;
};

struct LaurentSystem {
  std::string name;
  std::vector<std::string> variables;
  std::vector<Block> blocks;
  std::vector<std::size_t> aux_placement;                 // 1-based global term indices
  std::vector<std::vector<std::size_t>> mirror_partition; // 1-based variable sets
};

enum class TermKind { monomial, deform, constant };

// The combined square matrix: rows are terms (block by block, trailing term
// last), columns are variables in the order (base x, bookkeeping x', one s per
// deformed block, one y per block).
struct CayleyMatrix {
  IMat l;
  std::size_t n_x = 0, n_aux = 0, n_s = 0, n_y = 0;
  std::vector<std::size_t> term_block;        // per row, 0-based block
  std::vector<TermKind> term_kind;            // per row
  std::vector<std::size_t> deformed_blocks;   // 0-based, one per s column
  std::vector<std::size_t> aux_terms;         // 0-based rows carrying an x'

  std::size_t rows() const { return l.n; }
  std::size_t x_col(std::size_t i) const { return i; }
  std::size_t aux_col(std::size_t i) const { return n_x + i; }
  std::size_t s_col(std::size_t i) const { return n_x + n_aux + i; }
  std::size_t y_col(std::size_t i) const { return n_x + n_aux + n_s + i; }
  // s column index of a block, if deformed
  std::optional<std::size_t> s_of_block(std::size_t b) const {
    for (std::size_t i = 0; i < deformed_blocks.size(); ++i)
      if (deformed_blocks[i] == b) return i;
    return std::nullopt;
  }
};

inline std::size_t term_count(const LaurentSystem& sys) {
  std::size_t L = 0;
  for (auto& b : sys.blocks) L += b.monomials.size() + 1;
  return L;
}

inline std::size_t deformed_count(const LaurentSystem& sys) {
  std::size_t d = 0;
  for (auto& b : sys.blocks)
    if (b.deformed) ++d;
  return d;
}

// Number of bookkeeping variables needed to make the combined matrix square.
inline std::size_t aux_count(const LaurentSystem& sys) {
  std::size_t L = term_count(sys);
  std::size_t need = sys.variables.size() + deformed_count(sys) + sys.blocks.size();
  if (L < need) throw std::runtime_error("system is over-determined: too few terms");
  return L - need;
}

// 0-based row index ranges of monomial terms, block by block.
inline std::vector<std::pair<std::size_t, std::size_t>> block_rows(const LaurentSystem& sys) {
  std::vector<std::pair<std::size_t, std::size_t>> r;
  std::size_t at = 0;
  for (auto& b : sys.blocks) {
    r.push_back({at, at + b.monomials.size()});
    at += b.monomials.size() + 1;
  }
  return r;
}

// Placement admissibility: each bookkeeping variable decorates a distinct
// monomial term; every base variable keeps at least one undecorated monomial
// among the monomials where it appears; every block keeps at least one
// undecorated monomial.
inline bool placement_admissible(const LaurentSystem& sys,
                                 const std::vector<std::size_t>& placement) {
  std::size_t L = term_count(sys);
  std::vector<bool> decorated(L, false);
  auto br = block_rows(sys);
  for (auto t1 : placement) {
    if (t1 < 1 || t1 > L) return false;
    std::size_t t = t1 - 1;
    if (decorated[t]) return false;
    bool is_monomial = false;
    for (auto& [lo, hi] : br)
      if (t >= lo && t < hi) is_monomial = true;
    if (!is_monomial) return false;
    decorated[t] = true;
  }
  for (std::size_t q = 0; q < sys.blocks.size(); ++q) {
    bool keeps = false;
    for (std::size_t t = br[q].first; t < br[q].second; ++t)
      if (!decorated[t]) keeps = true;
    if (!keeps && !sys.blocks[q].monomials.empty()) return false;
  }
  for (std::size_t j = 0; j < sys.variables.size(); ++j) {
    bool appears = false, keeps = false;
    for (std::size_t q = 0; q < sys.blocks.size(); ++q)
      for (std::size_t i = 0; i < sys.blocks[q].monomials.size(); ++i)
        if (sys.blocks[q].monomials[i][j] != 0) {
          appears = true;
          if (!decorated[br[q].first + i]) keeps = true;
        }
    if (appears && !keeps) return false;
  }
  return true;
}

inline CayleyMatrix build_with_placement(const LaurentSystem& sys,
                                         const std::vector<std::size_t>& placement) {
  std::size_t N = sys.variables.size();
  std::size_t m = aux_count(sys);
  std::size_t d = deformed_count(sys);
  std::size_t k = sys.blocks.size();
  std::size_t L = term_count(sys);
  if (placement.size() != m) throw std::runtime_error("placement size != bookkeeping count");
  if (!placement_admissible(sys, placement)) throw std::runtime_error("inadmissible placement");

  CayleyMatrix cm;
  cm.n_x = N;
  cm.n_aux = m;
  cm.n_s = d;
  cm.n_y = k;
  cm.l = IMat(L, N + m + d + k);
  std::size_t row = 0, s_idx = 0;
  for (std::size_t q = 0; q < k; ++q) {
    for (auto& mono : sys.blocks[q].monomials) {
      for (std::size_t j = 0; j < N; ++j) cm.l[row][cm.x_col(j)] = mono[j];
      cm.l[row][cm.y_col(q)] = 1;
      cm.term_block.push_back(q);
      cm.term_kind.push_back(TermKind::monomial);
      ++row;
    }
    cm.l[row][cm.y_col(q)] = 1;
    if (sys.blocks[q].deformed) {
      cm.l[row][cm.s_col(s_idx)] = 1;
      cm.deformed_blocks.push_back(q);
      ++s_idx;
      cm.term_kind.push_back(TermKind::deform);
    } else {
      cm.term_kind.push_back(TermKind::constant);
    }
    cm.term_block.push_back(q);
    ++row;
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t t = placement[i] - 1;
    cm.l[t][cm.aux_col(i)] = 1;
    cm.aux_terms.push_back(t);
  }
  return cm;
}

// Earliest admissible placement (lexicographically first m-subset of monomial
// rows, in term order) that also yields an invertible combined matrix.
inline std::vector<std::size_t> auto_placement(const LaurentSystem& sys) {
  std::size_t m = aux_count(sys);
  std::vector<std::size_t> mono_terms;
  auto br = block_rows(sys);
  for (auto& [lo, hi] : br)
    for (std::size_t t = lo; t < hi; ++t) mono_terms.push_back(t + 1);
  if (m == 0) return {};
  if (mono_terms.size() < m) throw std::runtime_error("not enough monomials for placement");

  std::vector<std::size_t> pick(m);
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  while (true) {
    for (std::size_t i = 0; i < m; ++i) pick[i] = mono_terms[idx[i]];
    if (placement_admissible(sys, pick)) {
      auto cm = build_with_placement(sys, pick);
      if (det(cm.l) != 0) return pick;
    }
    // next combination
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (idx[i] + (m - i) < mono_terms.size()) {
        ++idx[i];
        for (std::size_t j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) throw std::runtime_error("no admissible placement found");
    }
  }
}

enum class Placement { automatic, explicit_list };

inline CayleyMatrix build_phase(const LaurentSystem& sys,
                                Placement mode = Placement::automatic) {
  if (mode == Placement::explicit_list || !sys.aux_placement.empty()) {
    if (sys.aux_placement.empty() && aux_count(sys) > 0)
      throw std::runtime_error("explicit placement requested but none given");
    return build_with_placement(sys, sys.aux_placement);
  }
  return build_with_placement(sys, auto_placement(sys));
}

// Invertibility of the combined matrix certifies that the deformed system
// stays nondegenerate; the determinant itself is the certificate.
inline std::pair<bool, Int> check_nondegenerate(const CayleyMatrix& cm) {
  Int dd = det(cm.l);
  return {dd != 0, dd};
}

}  // namespace cim
