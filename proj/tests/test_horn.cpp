#include <catch2/catch_amalgamated.hpp>

#include "cimel/horn.hpp"
#include "cimel/io.hpp"

using namespace cim;

namespace {

std::string fx(const char* name) {
  return std::string(CIMEL_FIXTURE_DIR) + "/" + name + ".json";
}

FormData forms_of(const LaurentSystem& sys) {
  auto cm = build_phase(sys, Placement::automatic);
  return linear_forms(cm);
}

std::vector<Rat> zeros(std::size_t n) { return std::vector<Rat>(n, Rat(0)); }

// frozen coefficient table for the plane cusp pair, one row per term:
// (constant; z1-coefficient, z2-coefficient), common denominator 5
struct FrozenForm {
  long cst, z1, z2;
};
const FrozenForm kCusp[6] = {{-5, 4, 6}, {10, -9, -6}, {0, 5, 0},
                             {10, -6, -9}, {-5, 6, 4}, {0, 0, 5}};

}  // namespace

TEST_CASE("plane cusp pair: factor products have the mixed-volume degree") {
  auto sys = load_system(fx("acampo"));
  auto cm = build_phase(sys, Placement::automatic);
  auto fd = linear_forms(cm);
  for (std::size_t q = 0; q < 2; ++q) {
    auto op = horn_operators(fd, q, zeros(fd.n_j), zeros(fd.k));
    REQUIRE(op.p_factors.size() == 15);
    REQUIRE(op.q_factors.size() == 15);
    REQUIRE(horn_degree_check(op));
    REQUIRE(op.delta == 5);
    REQUIRE(euler_degree(sys, cm, q) == 15);
  }
}

TEST_CASE("factor counts equal the summed positive shift orders") {
  for (auto name : {"acampo", "sys16", "schimmrigk", "cusp1d", "ex432"}) {
    INFO(name);
    auto sys = load_system(fx(name));
    auto cm = build_phase(sys, Placement::automatic);
    auto fd = linear_forms(cm);
    for (std::size_t q = 0; q < fd.d; ++q) {
      auto is = index_sets(fd, q);
      Int total = 0;
      for (auto a1 : is.plus) total += scaled_zcoef(fd, q, a1 - 1);
      auto op = horn_operators(fd, q, zeros(fd.n_j), zeros(fd.k));
      REQUIRE(Int(long(op.p_factors.size())) == total);
      REQUIRE(op.p_factors.size() == op.q_factors.size());
    }
  }
}

TEST_CASE("shift ratio matches a direct evaluation from the frozen table") {
  auto fd = forms_of(load_system(fx("acampo")));
  std::vector<Rat> z{Rat(1, 3), Rat(1, 7)};
  auto got = shift_ratio(fd, 0, z, zeros(fd.n_j), zeros(fd.k));
  REQUIRE(got.has_value());
  Rat num(1), den(1);
  for (auto& f : kCusp) {
    Rat v = Rat(f.cst, 5) + Rat(f.z1, 5) * z[0] + Rat(f.z2, 5) * z[1];
    if (f.z1 > 0)
      for (long j = 0; j < f.z1; ++j) num *= v + Rat(j);
    else
      for (long j = 1; j <= -f.z1; ++j) den *= v - Rat(j);
  }
  Rat want = num / den;
  want.canonicalize();
  REQUIRE(*got == want);
}

TEST_CASE("shift ratios satisfy the two-index compatibility identity") {
  struct Case {
    const char* name;
    std::size_t q, r;
  };
  for (auto c : {Case{"acampo", 0, 1}, Case{"sys16", 0, 1}, Case{"sys16", 0, 2},
                 Case{"sys16", 1, 2}, Case{"schimmrigk", 0, 1}}) {
    INFO(c.name << " (" << c.q << "," << c.r << ")");
    auto fd = forms_of(load_system(fx(c.name)));
    auto rep = compatibility_check(fd, c.q, c.r, zeros(fd.n_j), zeros(fd.k), 20260826u);
    REQUIRE(rep.checked == 20);
    REQUIRE(rep.ok);
  }
}

TEST_CASE("resonance detection") {
  auto fd = forms_of(load_system(fx("acampo")));
  REQUIRE(non_resonance(fd, 0, zeros(fd.n_j), zeros(fd.k)));
  REQUIRE(non_resonance(fd, 1, zeros(fd.n_j), zeros(fd.k)));

  // an operator whose negative half duplicates a positive factor is resonant
  HornOperator op;
  op.delta = 1;
  ZForm f;
  f.cst = Rat(1, 2);
  f.zc = {Rat(2), Rat(-1)};
  op.p_factors.push_back(f);
  ZForm g;
  g.cst = -f.cst;
  g.zc = {-f.zc[0], -f.zc[1]};
  op.q_factors.push_back(g);
  REQUIRE(!non_resonance(op));

  // no negative factors at all: vacuously non-resonant
  op.q_factors.clear();
  REQUIRE(non_resonance(op));
}

TEST_CASE("principal symbol of the first cusp-pair operator") {
  auto fd = forms_of(load_system(fx("acampo")));
  MPoly sym = char_symbol(fd, 0);
  // expected: built from the frozen table, in variables s1, s2, xi1, xi2
  auto uform = [](long c1, long c2) {
    MPoly u = MPoly::constant(4, Rat(0));
    if (c1 != 0) {
      MPoly t;
      t.nvars = 4;
      t.terms[{1, 0, 1, 0}] = Rat(c1, 5);
      u += t;
    }
    if (c2 != 0) {
      MPoly t;
      t.nvars = 4;
      t.terms[{0, 1, 0, 1}] = Rat(c2, 5);
      u += t;
    }
    return u;
  };
  MPoly pos = MPoly::constant(4, Rat(1));
  MPoly neg = MPoly::constant(4, Rat(1));
  for (auto& f : kCusp) {
    if (f.z1 > 0)
      pos = pos * uform(f.z1, f.z2).pow(f.z1);
    else if (f.z1 < 0)
      neg = neg * uform(-f.z1, -f.z2).pow(-f.z1);
  }
  MPoly shift;
  shift.nvars = 4;
  shift.terms[{5, 0, 0, 0}] = Rat(1);
  MPoly want = pos - shift * neg;
  REQUIRE(sym == want);
  REQUIRE(!sym.is_zero());
}

TEST_CASE("growth diagnostics: exact column balance, flagged sampling bound") {
  for (auto name : {"acampo", "sys16", "schimmrigk", "cusp1d", "ex432", "fermat",
                    "givental_2_3", "givental_4_2_3", "givental_5_2_2_2"}) {
    INFO(name);
    auto fd = forms_of(load_system(fx(name)));
    // the complete Gamma product: every form in the numerator, none below
    std::vector<std::size_t> all;
    for (std::size_t a = 1; a <= fd.forms.size(); ++a) all.push_back(a);
    auto rep = growth_check(fd, all, {}, 7u);
    REQUIRE(rep.column_balance);
    REQUIRE(rep.alpha_nonneg);
    REQUIRE(rep.heuristic);
  }
  // a lopsided quotient has unbalanced columns
  auto fd = forms_of(load_system(fx("acampo")));
  auto is = index_sets(fd, 0);
  auto rep = growth_check(fd, is.plus, {}, 7u);
  REQUIRE(!rep.column_balance);
}

TEST_CASE("one-variable family: shift operator of a single block") {
  auto fd = forms_of(load_system(fx("cusp1d")));
  REQUIRE(fd.d == 1);
  auto op = horn_operators(fd, 0, zeros(fd.n_j), zeros(fd.k));
  REQUIRE(horn_degree_check(op));
  REQUIRE(op.p_factors.size() > 0);
}
