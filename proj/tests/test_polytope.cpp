#include <catch2/catch_amalgamated.hpp>

#include "cimel/polytope.hpp"

using namespace cim;

namespace {

std::vector<std::vector<Int>> pts(std::initializer_list<std::vector<long>> l) {
  std::vector<std::vector<Int>> out;
  for (auto& v : l) {
    std::vector<Int> w;
    for (auto x : v) w.push_back(x);
    out.push_back(w);
  }
  return out;
}

struct Fixture {
  const char* name;
  std::vector<std::vector<Int>> points;
  long nvol;                     // dim! * volume in the span lattice
  std::vector<long> counts;      // l(kP) for k = 0..3, from the closed form
};

// closed-form dilation counts (binomials, products, Pick, known coefficients)
std::vector<Fixture> fixtures() {
  auto C = [](long n, long k) {
    long r = 1;
    for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
  };
  std::vector<Fixture> f;
  f.push_back({"unit segment", pts({{0}, {1}}), 1, {1, 2, 3, 4}});
  f.push_back({"long segment", pts({{0}, {3}}), 3, {1, 4, 7, 10}});
  f.push_back({"unit square", pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), 2, {1, 4, 9, 16}});
  f.push_back({"unit cube",
               pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1},
                    {0, 1, 1}, {1, 1, 1}}),
               6,
               {1, 8, 27, 64}});
  f.push_back({"standard 3-simplex", pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1,
               {1, C(4, 3), C(5, 3), C(6, 3)}});
  f.push_back({"doubled triangle", pts({{0, 0}, {2, 0}, {0, 2}}), 4,
               {1, C(4, 2), C(6, 2), C(8, 2)}});
  {
    // octahedron: l(k) = (2k+1)(2k^2+2k+3)/3
    auto oct = [](long k) { return (2 * k + 1) * (2 * k * k + 2 * k + 3) / 3; };
    f.push_back({"octahedron",
                 pts({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}),
                 8,
                 {1, oct(1), oct(2), oct(3)}});
  }
  {
    // Reeve tetrahedron with parameter 2: l(k) = k^3/3 + k^2 + 5k/3 + 1
    auto reeve = [](long k) { return (k * k * k + 3 * k * k + 5 * k + 3) / 3; };
    f.push_back({"Reeve tetrahedron", pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}}), 2,
                 {1, reeve(1), reeve(2), reeve(3)}});
  }
  f.push_back({"embedded triangle", pts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1,
               {1, C(3, 2), C(4, 2), C(5, 2)}});
  {
    // parallelogram spanned by (1,2) and (3,1): area 5, boundary 4;
    // l(k) = 5k^2 + 2k + 1 by Pick's theorem
    auto par = [](long k) { return 5 * k * k + 2 * k + 1; };
    f.push_back({"skew parallelogram", pts({{0, 0}, {1, 2}, {3, 1}, {4, 3}}), 10,
                 {1, par(1), par(2), par(3)}});
  }
  f.push_back({"point", pts({{2, 5}}), 1, {1, 1, 1, 1}});
  f.push_back({"square pyramid",
               pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}}), 2,
               // l(k) = (k+1)(k+2)(2k+3)/6, sum of squares up to k+1
               {1, 5, 14, 30}});
  return f;
}

}  // namespace

TEST_CASE("volumes and dilation counts match their closed forms") {
  for (auto& fx : fixtures()) {
    INFO(fx.name);
    Polytope p = make_polytope(fx.points);
    REQUIRE(normalized_volume(p) == fx.nvol);
    for (long k = 0; k <= 3; ++k)
      REQUIRE(lattice_point_count(p, Int(k)) == fx.counts[std::size_t(k)]);
  }
}

TEST_CASE("transformed coefficients: nonnegative, sum to the volume, reciprocal") {
  for (auto& fx : fixtures()) {
    INFO(fx.name);
    Polytope p = make_polytope(fx.points);
    auto e = ehrhart(p);
    REQUIRE(e.nvol == fx.nvol);
    for (auto& v : e.psi) REQUIRE(v >= 0);
    REQUIRE(e.psi[0] == 1);
    REQUIRE(e.reciprocity);
  }
}

TEST_CASE("vertex and facet structure of simple bodies") {
  Polytope cube = make_polytope(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},
                                     {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}));
  REQUIRE(cube.dim == 3);
  REQUIRE(cube.facets.size() == 6);
  REQUIRE(cube.vertices.size() == 8);
  Polytope oct = make_polytope(
      pts({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}}));
  REQUIRE(oct.facets.size() == 8);
  REQUIRE(oct.vertices.size() == 6);
  // interior points are not vertices
  Polytope seg = make_polytope(pts({{0}, {1}, {2}}));
  REQUIRE(seg.vertices.size() == 2);
}

TEST_CASE("lower-dimensional bodies use their own lattice") {
  // triangle in the plane x+y+z = 1: unimodular there
  Polytope t = make_polytope(pts({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  REQUIRE(t.ambient == 3);
  REQUIRE(t.dim == 2);
  REQUIRE(normalized_volume(t) == 1);
  // long diagonal segment: 3 lattice points at dilation 1
  Polytope d = make_polytope(pts({{0, 0}, {2, 2}}));
  REQUIRE(d.dim == 1);
  REQUIRE(normalized_volume(d) == 2);
  REQUIRE(lattice_point_count(d, 1) == 3);
}

TEST_CASE("mixed volume: diagonal, symmetry, scaling, degenerate directions") {
  auto sq = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto seg1 = pts({{0, 0}, {1, 0}});
  auto seg2 = pts({{0, 0}, {0, 1}});
  REQUIRE(mixed_volume({sq, sq}) == 2);       // diagonal = normalized volume
  REQUIRE(mixed_volume({seg1, seg2}) == 1);   // unit box from two segments
  REQUIRE(mixed_volume({seg2, seg1}) == 1);   // symmetric
  REQUIRE(mixed_volume({seg1, seg1}) == 0);   // parallel segments are flat
  auto seg1x2 = pts({{0, 0}, {2, 0}});
  REQUIRE(mixed_volume({seg1x2, seg2}) == 2);  // linear in each slot
  auto tri = pts({{0, 0}, {1, 0}, {0, 1}});
  REQUIRE(mixed_volume({tri, tri}) == 1);
  REQUIRE(mixed_volume({tri, sq}) == mixed_volume({sq, tri}));
}

TEST_CASE("mixed volume: translation invariance") {
  auto tri = pts({{0, 0}, {1, 0}, {0, 1}});
  auto tri_shift = pts({{5, -2}, {6, -2}, {5, -1}});
  auto sq = pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  REQUIRE(mixed_volume({tri, sq}) == mixed_volume({tri_shift, sq}));
}

TEST_CASE("alternating-sum degree of the cusp pair block polytopes") {
  // blocks of the plane cusp pair in (x1, x2, s2)-space, first block distinguished
  auto p1 = pts({{3, 0, 0}, {0, 2, 0}, {0, 0, 0}});
  auto p2 = pts({{2, 0, 0}, {0, 3, 0}, {0, 0, 1}});
  Int total = mixed_volume({p1, p1, p2}) + mixed_volume({p1, p2, p2});
  REQUIRE(total == 15);
}

TEST_CASE("strata of dilation points by minimal containing face") {
  Polytope sq = make_polytope(pts({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  auto s1 = weight_strata(sq, 1);
  REQUIRE(s1[0] == 4);
  REQUIRE(s1.count(1) == 0);
  REQUIRE(s1.count(2) == 0);
  auto s2 = weight_strata(sq, 2);
  REQUIRE(s2[0] == 4);
  REQUIRE(s2[1] == 4);
  REQUIRE(s2[2] == 1);
}

TEST_CASE("minimal containing dilation of a point") {
  Polytope cube = make_polytope(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},
                                     {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}));
  auto deg = [&](std::vector<long> v) {
    std::vector<Int> e;
    for (auto x : v) e.push_back(x);
    return point_degree(cube, e);
  };
  REQUIRE(*deg({0, 0, 0}) == 0);
  REQUIRE(*deg({1, 1, 1}) == 1);
  REQUIRE(*deg({2, 1, 0}) == 2);
  REQUIRE(!deg({-1, 0, 0}).has_value());
  Polytope simp = make_polytope(pts({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  std::vector<Int> e{Int(1), Int(1), Int(1)};
  REQUIRE(*point_degree(simp, e) == 3);
}
