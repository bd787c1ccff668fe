#include <doctest.h>

#include "nvb/coloring.hpp"
#include "nvb/fixtures.hpp"
#include "oracles.hpp"

using namespace nvb;

TEST_CASE("single simplex gets colors 0..n") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::vector<double>> pts(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(n), 0));
    std::vector<std::size_t> cell{0};
    for (int i = 1; i <= n; ++i) {
      pts[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] = 1;
      cell.push_back(static_cast<std::size_t>(i));
    }
    const Triangulation t = build_triangulation(n, pts, {cell});
    const ColorMap cm = greedy_color(t);
    CHECK(cm.ncolors_minus_one == n);
    for (int i = 0; i <= n; ++i) CHECK(cm.colors[static_cast<std::size_t>(i)] == i);
  }
}

TEST_CASE("square coloring") {
  const Triangulation t = fixtures::square();
  const ColorMap cm = greedy_color(t);
  CHECK(cm.colors == std::vector<int>{0, 1, 2, 1});
  CHECK(cm.ncolors_minus_one == 2);
  CHECK(max_valency(t) == 3);

  ColorMap bad = cm;
  bad.colors[3] = 0;
  const ColoringCheck r = verify_coloring(t, bad);
  CHECK_FALSE(r.ok);
  REQUIRE(r.violation);
  CHECK(*r.violation == EdgeKey{vertex_id(0), vertex_id(3)});

  bad.colors[3] = -1;
  CHECK_THROWS_AS(verify_coloring(t, bad), Error);
}

TEST_CASE("pentagon fan needs four colors") {
  const Triangulation t = fixtures::pentagon_fan();
  const ColorMap cm = greedy_color(t);
  CHECK(cm.ncolors_minus_one == 3);
  CHECK(verify_coloring(t, cm).ok);
  CHECK(max_valency(t) == 5);
  const auto nb = vertex_neighbors(t);
  CHECK_FALSE(oracle::colorable(nb, 3));
  CHECK(oracle::colorable(nb, 4));
}

TEST_CASE("greedy colors are valid, deterministic and bounded by the valency") {
  Lcg rng(21);
  for (int k = 0; k < 120; ++k) {
    const Triangulation t = k % 3 == 0 ? fixtures::random_fan(rng) : fixtures::random_grid_mesh(2 + k % 2, rng);
    for (VertexOrder order : {VertexOrder::Ascending, VertexOrder::MaxValencyFirst}) {
      const ColorMap cm = greedy_color(t, order);
      CHECK(verify_coloring(t, cm).ok);
      CHECK(cm.ncolors_minus_one <= max_valency(t));
      CHECK(cm.ncolors_minus_one >= t.dim());
      CHECK(greedy_color(t, order).colors == cm.colors);
    }
  }
}

TEST_CASE("manual colorings of the bundled meshes are valid") {
  for (const char* name : {"fichera_manual", "strip"}) {
    const Triangulation t = fixtures::bundled(name);
    std::vector<int> colors;
    for (std::size_t i = 0; i < t.num_vertices(); ++i) colors.push_back(t.vertex(vertex_id(i)).attr.color);
    CHECK(verify_coloring(t, color_map_from(colors)).ok);
  }
}
