#include <catch2/catch_amalgamated.hpp>

#include "cimel/io.hpp"
#include "cimel/mirror.hpp"
#include "cimel/system.hpp"

using namespace cim;

static LaurentSystem load(const std::string& name) {
  return load_system(std::string(CIMEL_FIXTURE_DIR) + "/" + name + ".json");
}

TEST_CASE("every fixture builds a square invertible combined matrix") {
  for (const char* name : {"acampo", "acampo_n3", "sys16", "sys16_alt", "schimmrigk",
                           "ex432", "fermat", "cusp1d", "givental_2_3", "givental_4_2_3",
                           "givental_5_2_2_2"}) {
    auto sys = load(name);
    auto cm = build_phase(sys);
    INFO(name);
    REQUIRE(cm.l.n == cm.l.m);
    REQUIRE(cm.rows() == term_count(sys));
    REQUIRE(check_nondegenerate(cm).first);
    // square condition: terms = base vars + bookkeeping + deformations + blocks
    REQUIRE(cm.rows() == cm.n_x + cm.n_aux + cm.n_s + cm.n_y);
  }
}

TEST_CASE("term and column bookkeeping is consistent") {
  auto cm = build_phase(load("schimmrigk"));
  REQUIRE(cm.n_x == 7);
  REQUIRE(cm.n_aux == 0);
  REQUIRE(cm.n_s == 2);
  REQUIRE(cm.n_y == 4);
  REQUIRE(cm.rows() == 13);
  // each term carries exactly one y marker, the right one
  for (std::size_t t = 0; t < cm.rows(); ++t) {
    for (std::size_t q = 0; q < cm.n_y; ++q)
      REQUIRE(cm.l[t][cm.y_col(q)] == (q == cm.term_block[t] ? 1 : 0));
  }
  // deformation terms are unit rows in their s column
  REQUIRE(cm.deformed_blocks == std::vector<std::size_t>{0, 2});
  for (std::size_t i = 0; i < cm.n_s; ++i) {
    std::size_t found = cm.rows();
    for (std::size_t t = 0; t < cm.rows(); ++t)
      if (cm.l[t][cm.s_col(i)] == 1) {
        REQUIRE(found == cm.rows());
        found = t;
      }
    REQUIRE(found < cm.rows());
    REQUIRE(cm.term_kind[found] == TermKind::deform);
  }
}

TEST_CASE("frozen 13x13 exponent matrix of the two-pair family") {
  auto cm = build_phase(load("schimmrigk"));
  // written column order: x1..x7, y1..y4, s1, s2; ours is x1..x7, s1, s2, y1..y4
  std::vector<std::size_t> colmap(13);
  for (std::size_t j = 0; j < 7; ++j) colmap[j] = j;
  for (std::size_t j = 0; j < 4; ++j) colmap[7 + j] = cm.y_col(j);
  colmap[11] = cm.s_col(0);
  colmap[12] = cm.s_col(1);
  long expect[13][13] = {
      {3, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0}, {0, 3, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 3, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0}, {0, 0, 0, 3, 0, 0, 0, 1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0}, {0, 1, 1, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0}, {0, 1, 0, 0, 3, 0, 0, 0, 0, 1, 0, 0, 0},
      {0, 0, 1, 0, 0, 3, 0, 0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 3, 0, 0, 1, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1}, {1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 0, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0}};
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t j = 0; j < 13; ++j) REQUIRE(cm.l[i][colmap[j]] == expect[i][j]);
  REQUIRE(det(cm.l) == -2187);
}

TEST_CASE("frozen 8x8 exponent matrix of the one-pair family") {
  auto cm = build_phase(load("ex432"));
  // written column order: x1..x5, y1, y2, s1
  std::vector<std::size_t> colmap(8);
  for (std::size_t j = 0; j < 5; ++j) colmap[j] = j;
  colmap[5] = cm.y_col(0);
  colmap[6] = cm.y_col(1);
  colmap[7] = cm.s_col(0);
  long expect[8][8] = {{7, 0, 0, 0, 0, 1, 0, 0}, {0, 7, 0, 1, 0, 1, 0, 0},
                       {0, 0, 7, 0, 1, 1, 0, 0}, {0, 0, 0, 3, 0, 1, 0, 0},
                       {0, 0, 0, 0, 3, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 0, 1},
                       {1, 1, 1, 1, 1, 0, 1, 0}, {0, 0, 0, 0, 0, 0, 1, 0}};
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) REQUIRE(cm.l[i][colmap[j]] == expect[i][j]);
  REQUIRE(det(cm.l) == -3087);
}

TEST_CASE("projective-family builder matches its fixtures") {
  auto fix = load("givental_2_3");
  auto gen = build_projective(5, {2, 3});
  REQUIRE(fix.blocks.size() == gen.blocks.size());
  for (std::size_t b = 0; b < fix.blocks.size(); ++b) {
    REQUIRE(fix.blocks[b].deformed == gen.blocks[b].deformed);
    REQUIRE(fix.blocks[b].monomials == gen.blocks[b].monomials);
  }
  auto cm = build_phase(gen);
  REQUIRE(cm.rows() == 9);  // n + r + 3 with n = 4, r = 2
  REQUIRE(cm.n_s == 1);
  REQUIRE(check_nondegenerate(cm).first);
}

TEST_CASE("under-determined chunk sizes are rejected") {
  REQUIRE_THROWS(build_projective(5, {2, 2}));
}

TEST_CASE("deficiency count and auto placement on the deficient pair") {
  auto sys = load("acampo_n3");
  REQUIRE(aux_count(sys) == 1);
  auto p = auto_placement(sys);
  REQUIRE(p.size() == 1);
  auto cm = build_with_placement(sys, p);
  REQUIRE(cm.n_aux == 1);
  REQUIRE(det(cm.l) != 0);
  // the bookkeeping column has a single unit entry on a monomial row
  std::size_t hits = 0;
  for (std::size_t t = 0; t < cm.rows(); ++t)
    if (cm.l[t][cm.aux_col(0)] != 0) {
      REQUIRE(cm.l[t][cm.aux_col(0)] == 1);
      REQUIRE(cm.term_kind[t] == TermKind::monomial);
      ++hits;
    }
  REQUIRE(hits == 1);
}

TEST_CASE("auto placement is deterministic") {
  auto sys = load("acampo_n3");
  REQUIRE(auto_placement(sys) == auto_placement(sys));
}
