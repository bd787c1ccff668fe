#include <doctest.h>

#include <numeric>
#include <set>

#include "nvb/analysis.hpp"
#include "nvb/coloring.hpp"
#include "nvb/fixtures.hpp"
#include "oracles.hpp"

using namespace nvb;

namespace {

std::size_t descendant_classes(const SimplexCoords& t, int tag, int generations) {
  std::set<std::string> keys;
  for_each_descendant(t, tag, generations, [&](const SimplexCoords& c, int) { keys.insert(similarity_key(c)); });
  return keys.size();
}

SimplexCoords kuhn(int n) {
  std::vector<int> pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 1);
  return kuhn_simplex(n, pi);
}

}  // namespace

TEST_CASE("constants") {
  CHECK(shape_constant(2) == doctest::Approx(9.6569).epsilon(1e-4));
  CHECK(shape_constant(3) == doctest::Approx(20.4853).epsilon(1e-4));
  CHECK(similarity_class_bound(2) == 4);
  CHECK(similarity_class_bound(3) == 36);
}

TEST_CASE("similarity keys") {
  Lcg rng(51);
  for (int k = 0; k < 20; ++k) {
    const SimplexCoords t = oracle::random_simplex(3, rng);
    const Eigen::MatrixXd q = oracle::random_matrix(3, rng).householderQr().householderQ();
    const SimplexCoords moved = ((2.5 * q * t).colwise() + Eigen::Vector3d(1, -2, 0.5)).eval();
    CHECK(similarity_key(moved) == similarity_key(t));
  }
  // Right isosceles triangles reproduce themselves under bisection.
  CHECK(descendant_classes(kuhn(2), 2, 6) == 1);
  SimplexCoords scalene(2, 3);
  scalene << 0, 1, 0.3, 0, 0, 0.7;
  CHECK(descendant_classes(scalene, 2, 8) <= 4);
  CHECK(descendant_classes(kuhn(3), 3, 9) <= 36);
}

TEST_CASE("level and diameter constants") {
  // Colors put the hypotenuse first in line for bisection.
  Triangulation t = build_triangulation(2, {{0, 0}, {1, 0}, {1, 1}}, {{0, 1, 2}});
  initialize(t, color_map_from({1, 0, 2}), BisectionRule::Tagged);
  LevelDiameter ld = level_diameter_constants(t);
  CHECK(ld.d == doctest::Approx(std::sqrt(2.0)));
  CHECK(ld.D == doctest::Approx(std::sqrt(2.0)));
  refine(t, simplex_id(0));
  ld = level_diameter_constants(t);
  CHECK(ld.D == doctest::Approx(2.0));
  CHECK(ld.d == doctest::Approx(2.0));

  Triangulation a = fixtures::kuhn_cube(3);
  initialize(a, greedy_color(a), BisectionRule::Tagged);
  Triangulation b = a;
  uniform_refine(a, 2);
  uniform_refine(b, 4);
  const LevelDiameter la = level_diameter_constants(a), lb = level_diameter_constants(b);
  CHECK(la.D / la.d == doctest::Approx(lb.D / lb.d).epsilon(1e-9));
}

TEST_CASE("quasi uniformity") {
  CHECK(quasi_uniformity(fixtures::kuhn_cube(3)) == doctest::Approx(1.0));
  CHECK(quasi_uniformity(fixtures::square()) == doctest::Approx(1.0));
  const Triangulation t = build_triangulation(2, {{0, 0}, {1, 0}, {0, 2}, {3, 0}, {0, -4}}, {{0, 1, 2}, {0, 3, 4}});
  CHECK(quasi_uniformity(t) == doctest::Approx(6.0));
}

TEST_CASE("closure ratio") {
  CHECK_THROWS_AS(bdv_ratio(MarkHistory{}, 2), Error);
  Triangulation t = fixtures::kuhn_cube(2);
  initialize(t, greedy_color(t), BisectionRule::Tagged);
  MarkHistory h{t.num_live(), {}};
  for (int l = 0; l < 4; ++l) {
    const auto all = t.live_simplices();
    refine_set(t, all);
    h.steps.push_back({all.size(), t.num_live()});
  }
  CHECK(bdv_ratio(h, h.initial_size) == 1.0);
}

TEST_CASE("transformation inequalities") {
  Lcg rng(52);
  const SimplexCoords k2 = kuhn(2);
  const TransformationReport id = transformation_check(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero(), k2);
  CHECK(id.holds(1e-12));
  CHECK(id.inradius.middle == doctest::Approx(inradius_diameter(k2)));

  const TransformationReport twice = transformation_check(2 * Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 1), k2);
  CHECK(twice.norm_a == doctest::Approx(2.0));
  CHECK(twice.inradius.middle == doctest::Approx(inradius_diameter(k2)));
  CHECK(twice.holds(1e-12));

  Eigen::Matrix2d sing;
  sing << 1, 2, 2, 4;
  CHECK_THROWS_AS(transformation_check(sing, Eigen::Vector2d::Zero(), k2), Error);

  for (int n : {2, 3})
    for (int k = 0; k < 30; ++k) {
      const Eigen::MatrixXd a = oracle::random_matrix(n, rng);
      const Eigen::VectorXd b = Eigen::VectorXd::Random(n);
      CHECK(transformation_check(a, b, oracle::random_simplex(n, rng)).holds(1e-9));
      CHECK(spectral_norm(a) == doctest::Approx(std::sqrt((a.transpose() * a).eigenvalues().real().maxCoeff())));
    }
}

TEST_CASE("kuhn descendants stay within twice the initial shape") {
  for (int n : {2, 3}) {
    const SimplexCoords t = kuhn(n);
    const double g0 = shape_regularity(t);
    double prev_r = 1e300, prev_R = 1e300;
    int last_gen = -1;
    for_each_descendant(t, n, 4 * n, [&](const SimplexCoords& c, int g) {
      CHECK(shape_regularity(c) <= 2 * g0 * (1 + 1e-9));
      // Depth-first: the first branch visited is a single chain.
      if (g == last_gen + 1) {
        CHECK(inradius_diameter(c) <= prev_r * (1 + 1e-12));
        CHECK(enclosing_ball_diameter(c) <= prev_R * (1 + 1e-12));
        prev_r = inradius_diameter(c);
        prev_R = enclosing_ball_diameter(c);
        last_gen = g;
      }
    });
  }
}

TEST_CASE("analysis report") {
  // Colors that give both cells the ordering [0, e_i, e_1 + e_2].
  Triangulation t0 = fixtures::kuhn_cube(2);
  initialize(t0, color_map_from({2, 0, 0, 1}), BisectionRule::Tagged);
  Triangulation t = t0;
  uniform_refine(t, 2);
  const AnalysisReport rep = analyze(t, &t0, nullptr);
  CHECK(rep.cells == 32);
  REQUIRE(rep.gamma_ratio);
  CHECK(*rep.gamma_ratio == doctest::Approx(1.0));
  CHECK(rep.similarity_class_count.size() == 2);
  CHECK_FALSE(rep.C_BDV_lb);
  REQUIRE(rep.D_over_d);
}
