#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "nvb/closure.hpp"
#include "nvb/coloring.hpp"
#include "nvb/fixtures.hpp"
#include "nvb/geometry.hpp"
#include "oracles.hpp"

using namespace nvb;

namespace {

ConformityReport check_cells(int dim, const std::vector<std::vector<double>>& pts,
                             const std::vector<std::vector<std::size_t>>& cells) {
  return check_conformity(build_triangulation(dim, pts, cells));
}

double total_volume(const Triangulation& t) {
  double v = 0;
  for (SimplexId s : t.live_simplices()) v += volume(simplex_coords(t, s));
  return v;
}

}  // namespace

TEST_CASE("square mesh edges and patches") {
  const Triangulation t = fixtures::square();
  CHECK(t.num_edges() == 5);
  CHECK(edge_patch(t, {vertex_id(0), vertex_id(2)}).size() == 2);
  CHECK(edge_patch(t, {vertex_id(0), vertex_id(1)}).size() == 1);
  CHECK_THROWS_AS(edge_patch(t, {vertex_id(1), vertex_id(3)}), Error);
  CHECK(t.edge_index_consistent());
}

TEST_CASE("kuhn cube main diagonal is shared by all tetrahedra") {
  const Triangulation t = fixtures::kuhn_cube(3);
  CHECK(t.num_live() == 6);
  CHECK(edge_patch(t, {vertex_id(0), vertex_id(7)}).size() == 6);
  CHECK(check_conformity(t).ok);
}

TEST_CASE("construction errors") {
  const std::vector<std::vector<double>> pts{{0, 0}, {1, 0}, {0, 1}, {2, 0}};
  auto kind = [&](const std::vector<std::vector<std::size_t>>& cells) {
    try {
      build_triangulation(2, pts, cells);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  CHECK(kind({{0, 1, 1}}) == ErrorKind::DuplicateVertexInCell);
  CHECK(kind({{0, 1, 9}}) == ErrorKind::IndexOutOfRange);
  CHECK(kind({{0, 1, 2}, {2, 1, 0}}) == ErrorKind::DuplicateCell);
  CHECK(kind({{0, 1, 3}}) == ErrorKind::DegenerateCell);
  CHECK_THROWS_AS(Triangulation(2).add_vertex({0, std::nan("")}), Error);
}

TEST_CASE("conformity checker") {
  SUBCASE("shared edge") { CHECK(check_cells(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}, {1, 3, 2}}).ok); }
  SUBCASE("single simplex") { CHECK(check_cells(2, {{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}).ok); }
  SUBCASE("hanging node") {
    const ConformityReport r = check_conformity(fixtures::hanging_node());
    REQUIRE_FALSE(r.ok);
    bool found = false;
    for (const auto& v : r.violations)
      found = found || (v.kind == ViolationKind::HangingVertex && v.witness == vertex_id(4));
    CHECK(found);
  }
  SUBCASE("overlap across a shared edge") {
    const ConformityReport r = check_cells(2, {{0, 0}, {1, 0}, {0.3, 1}, {0.6, 0.5}}, {{0, 1, 2}, {0, 1, 3}});
    CHECK_FALSE(r.ok);
  }
  SUBCASE("edge shared by three triangles") {
    const ConformityReport r =
        check_cells(2, {{0, 0}, {1, 0}, {0, 1}, {0, -1}, {1, 2}}, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
    CHECK_FALSE(r.ok);
  }
  SUBCASE("duplicate simplex added directly") {
    Triangulation t = fixtures::square();
    t.add_simplex({vertex_id(2), vertex_id(1), vertex_id(0)}, 0, std::nullopt);
    const ConformityReport r = check_conformity(t);
    REQUIRE_FALSE(r.ok);
    CHECK(r.violations.front().kind == ViolationKind::DuplicateSimplex);
  }
}

TEST_CASE("conformity checker in three and four dimensions") {
  for (int n : {3, 4}) {
    CAPTURE(n);
    const Triangulation cube = fixtures::kuhn_cube(n);
    std::vector<std::vector<double>> pts;
    for (std::size_t v = 0; v < cube.num_vertices(); ++v) pts.push_back(cube.vertex(vertex_id(v)).coords);
    std::vector<std::vector<std::size_t>> cells;
    for (SimplexId s : cube.live_simplices()) {
      std::vector<std::size_t> c;
      for (VertexId v : cube.simplex(s).vertices) c.push_back(index(v));
      cells.push_back(c);
    }
    CHECK(check_cells(n, pts, cells).ok);

    // Split one simplex at the midpoint of the shared main diagonal only.
    const std::size_t far = pts.size() - 1;
    pts.push_back(std::vector<double>(static_cast<std::size_t>(n), 0.5));
    const std::size_t mid = pts.size() - 1;
    std::vector<std::size_t> a = cells[0], b = cells[0];
    std::replace(a.begin(), a.end(), far, mid);
    std::replace(b.begin(), b.end(), std::size_t{0}, mid);
    std::vector<std::vector<std::size_t>> split = cells;
    split[0] = a;
    split.push_back(b);
    const ConformityReport r = check_cells(n, pts, split);
    REQUIRE_FALSE(r.ok);
    std::size_t hanging = 0;
    for (const auto& v : r.violations)
      if (v.kind == ViolationKind::HangingVertex) {
        CHECK(v.witness == vertex_id(mid));
        ++hanging;
      }
    CHECK(hanging == cells.size() - 1);

    // Two simplices on the same side of a shared face.
    std::vector<std::vector<double>> fold(static_cast<std::size_t>(n) + 1, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) fold[i + 1][i] = 1;
    fold.push_back(std::vector<double>(static_cast<std::size_t>(n), 0.2));
    std::vector<std::size_t> first(static_cast<std::size_t>(n) + 1), second;
    std::iota(first.begin(), first.end(), 0);
    second = first;
    second.back() = static_cast<std::size_t>(n) + 1;
    CHECK_FALSE(check_cells(n, fold, {first, second}).ok);
  }
}

TEST_CASE("midpoints are deduplicated by edge") {
  Triangulation t = fixtures::square();
  bool created = false;
  const VertexId m = t.midpoint({vertex_id(0), vertex_id(2)}, &created);
  CHECK(created);
  CHECK(t.midpoint({vertex_id(2), vertex_id(0)}, &created) == m);
  CHECK_FALSE(created);
  CHECK(t.vertex(m).coords == std::vector<double>{0.5, 0.5});
  CHECK(t.num_vertices() == 5);
}

TEST_CASE("refinement keeps the edge index exact and conserves volume") {
  Lcg rng(7);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 5; ++rep) {
      Triangulation t = fixtures::random_grid_mesh(n, rng);
      initialize(t, greedy_color(t), BisectionRule::Tagged);
      const double v0 = total_volume(t);
      for (int k = 0; k < 20; ++k) {
        const auto live = t.live_simplices();
        refine(t, live[random_index(rng, live.size())]);
      }
      CHECK(t.edge_index_consistent());
      CHECK(std::abs(total_volume(t) - v0) <= 1e-10 * v0);
      for (std::size_t i = 0; i < t.num_simplices(); ++i) {
        const Simplex& s = t.simplex(simplex_id(i));
        if (s.parent) CHECK(s.gen_count == t.simplex(*s.parent).gen_count + 1);
      }
    }
  }
}

TEST_CASE("vertex neighbors follow the edges") {
  const auto nb = vertex_neighbors(fixtures::pentagon_fan());
  CHECK(nb[0].size() == 5);
  CHECK(nb[1] == std::vector<VertexId>{vertex_id(0), vertex_id(2), vertex_id(5)});
}
