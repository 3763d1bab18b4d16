#include <catch2/catch_amalgamated.hpp>

#include "cimel/io.hpp"
#include "cimel/spectra.hpp"

using namespace cim;

namespace {

std::string fx(const char* name) {
  return std::string(CIMEL_FIXTURE_DIR) + "/" + name + ".json";
}

std::vector<Rat> zeros(std::size_t n) { return std::vector<Rat>(n, Rat(0)); }

}  // namespace

TEST_CASE("column weight classification") {
  struct Case {
    const char* name;
    std::size_t monomials;
    bool fully_deformed;
  };
  for (auto c : {Case{"acampo", 4, true}, Case{"sys16", 6, true},
                 Case{"schimmrigk", 9, false}, Case{"cusp1d", 2, true},
                 Case{"ex432", 6, false}}) {
    INFO(c.name);
    auto sys = load_system(fx(c.name));
    auto cm = build_phase(sys, Placement::automatic);
    auto fd = linear_forms(cm);
    auto w = weight_vectors(cm, fd);
    if (c.fully_deformed) {
      // exactly the deformation-dual columns are plain
      REQUIRE(w.n_trivial == fd.d);
      for (std::size_t a = 0; a < cm.rows(); ++a)
        REQUIRE(w.trivial[a] == (cm.term_kind[a] == TermKind::deform));
    } else {
      // plain-product terms can also carry one-variable weights
      REQUIRE(w.n_trivial >= fd.d);
      for (std::size_t a = 0; a < cm.rows(); ++a)
        if (cm.term_kind[a] == TermKind::deform) REQUIRE(w.trivial[a]);
    }
    // the independent non-plain count: monomial columns minus one block
    // relation per extra block
    REQUIRE(w.n_nontrivial_reported == c.monomials - (cm.n_y - 1));
  }
}

TEST_CASE("pole region of the plane cusp pair, first block") {
  auto sys = load_system(fx("acampo"));
  auto cm = build_phase(sys, Placement::automatic);
  auto fd = linear_forms(cm);
  auto r = spectra(fd, 0, zeros(fd.n_j), zeros(fd.k));
  // z1 <= 0, z2 >= 0, 4 z1 + 6 z2 <= 5, 6 z1 + 4 z2 <= 5:
  // the corner at the origin and the corner on the first slanted wall
  REQUIRE(r.ineqs.size() == 4);
  std::vector<std::vector<Rat>> want{{Rat(0), Rat(0)}, {Rat(0), Rat(5, 6)}};
  REQUIRE(r.vertices == want);
  // second block mirrors the picture
  auto r2 = spectra(fd, 1, zeros(fd.n_j), zeros(fd.k));
  std::vector<std::vector<Rat>> want2{{Rat(0), Rat(0)}, {Rat(5, 6), Rat(0)}};
  REQUIRE(r2.vertices == want2);
}

TEST_CASE("frame change between the two bookkeeping placements") {
  auto s1 = load_system(fx("sys16"));
  auto s2 = load_system(fx("sys16_alt"));
  auto c1 = build_phase(s1, Placement::explicit_list);
  auto c2 = build_phase(s2, Placement::explicit_list);
  auto t = spectra_transition(c1, c2);
  // the bookkeeping column flips sign on the diagonal and the determinant
  // ratio is -1
  std::size_t aux = c1.aux_col(0);
  REQUIRE(t.var_side[aux][aux] == Rat(-1));
  REQUIRE(t.det_var == Rat(-1));
  REQUIRE(det(t.term_side) == Rat(-1));
  // identity frame change
  auto ti = spectra_transition(c1, c1);
  REQUIRE(t.var_side.n == 9);
  REQUIRE(ti.var_side == QMat::identity(9));
  REQUIRE(ti.term_side == QMat::identity(9));
}

TEST_CASE("filtration level of the untwisted cusp pair") {
  auto sys = load_system(fx("acampo"));
  auto cm = build_phase(sys, Placement::automatic);
  auto fd = linear_forms(cm);
  // the untwisted point (1,1,1,1) needs one point from each deformation
  // block, so it sits in the second dilation; the bracket of the largest
  // exponent constant (2) agrees
  auto h = hodge_level(cm, fd, zeros(fd.n_j), zeros(fd.k));
  REQUIRE(h.degree == 2);
  REQUIRE(h.level == 3);
  REQUIRE(h.cross_check);
}

TEST_CASE("filtration level bracket agrees with the point degree elsewhere") {
  {
    auto sys = load_system(fx("cusp1d"));
    auto cm = build_phase(sys, Placement::automatic);
    auto fd = linear_forms(cm);
    auto h = hodge_level(cm, fd, zeros(fd.n_j), zeros(fd.k));
    REQUIRE(h.degree == 1);
    REQUIRE(h.level == 2);
    REQUIRE(h.cross_check);
  }
  {
    auto sys = load_system(fx("sys16"));
    auto cm = build_phase(sys, Placement::automatic);
    auto fd = linear_forms(cm);
    auto h = hodge_level(cm, fd, zeros(fd.n_j), zeros(fd.k));
    REQUIRE(h.level + h.degree == Int(long(cm.n_x + cm.n_aux + cm.n_y)) + 1);
    REQUIRE(h.degree >= 1);
  }
}

TEST_CASE("deep twists move the bracket dilation up") {
  auto sys = load_system(fx("acampo"));
  auto cm = build_phase(sys, Placement::automatic);
  auto fd = linear_forms(cm);
  auto h0 = hodge_level(cm, fd, zeros(fd.n_j), zeros(fd.k));
  std::vector<Rat> J{Rat(4), Rat(4)};
  auto h1 = hodge_level(cm, fd, J, zeros(fd.k));
  REQUIRE(h1.degree > h0.degree);
  REQUIRE(h1.level + h1.degree == h0.level + h0.degree);
}

TEST_CASE("common-zero depth of the positive-side exponents") {
  auto sys = load_system(fx("acampo"));
  auto cm = build_phase(sys, Placement::automatic);
  auto fd = linear_forms(cm);
  // the three walls of block 1 have no triple point, but pairs do meet
  REQUIRE(weight_level(fd, 0, zeros(fd.n_j), zeros(fd.k)) == 2);
  REQUIRE(weight_level(fd, 1, zeros(fd.n_j), zeros(fd.k)) == 2);
}

TEST_CASE("nilpotent block bound is deterministic and flagged heuristic") {
  auto sys = load_system(fx("acampo"));
  auto cm = build_phase(sys, Placement::automatic);
  auto fd = linear_forms(cm);
  auto r1 = jordan_bound(fd, zeros(fd.n_j), zeros(fd.k));
  auto r2 = jordan_bound(fd, zeros(fd.n_j), zeros(fd.k));
  REQUIRE(r1.heuristic);
  REQUIRE(r1.box == 15);
  REQUIRE(r1.bound >= 1);
  REQUIRE(r1.bound <= cm.rows());
  REQUIRE(r1.bound == r2.bound);
}
