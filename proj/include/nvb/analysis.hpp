#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nvb/closure.hpp"
#include "nvb/geometry.hpp"
#include "nvb/mesh.hpp"

namespace nvb {

struct ShapeReport {
  double r = 0;      // inscribed ball diameter
  double R = 0;      // smallest enclosing ball diameter
  double w = 0;      // minimal height
  double diam = 0;
  double volume = 0;
  double gamma = 0;  // R / r
  std::vector<double> heights;
  std::string similarity_key;
};

ShapeReport shape_report(const SimplexCoords& t);

/// Sorted squared pairwise distances divided by the smallest, rounded to
/// 9 decimals. Invariant under rigid motions and uniform scaling.
std::string similarity_key(const SimplexCoords& t);

struct SimilarityPartition {
  std::size_t count = 0;
  std::map<std::string, std::vector<std::size_t>> classes;
};
SimilarityPartition similarity_classes(const std::vector<SimplexCoords>& simplices);

/// Number of similarity classes among live simplices, per initial ancestor.
std::map<std::size_t, std::size_t> similarity_classes_per_ancestor(const Triangulation& tria);

/// Shape regularity constant 2n(n + sqrt(2) - 1).
double shape_constant(int n);
/// Bound n! * n * 2^(n-2) on the number of similarity classes.
double similarity_class_bound(int n);

/// Visits the tagged simplex and all descendants up to `generations`
/// bisections (Maubach rule), depth first.
void for_each_descendant(const SimplexCoords& t, int tag, int generations,
                         const std::function<void(const SimplexCoords&, int)>& fn);

struct LevelDiameter {
  double d = 0;  // min diam(T) 2^level(T)
  double D = 0;  // max diam(T) 2^level(T)
};

/// Over live simplices. Requires vertex generations.
LevelDiameter level_diameter_constants(const Triangulation& tria);
/// Same, over every simplex ever created (live and retired).
LevelDiameter level_diameter_constants_all(const Triangulation& tria);

/// max |T| / |T'| over live simplices.
double quasi_uniformity(const Triangulation& tria);

/// (#T_L - #T_0) / sum_l #M_l. Throws EmptyHistory without marks.
double bdv_ratio(const MarkHistory& hist, std::size_t initial_count);

double spectral_norm(const Eigen::MatrixXd& a);

/// lower <= middle <= upper for one inequality chain.
struct InequalityChain {
  double lower = 0, middle = 0, upper = 0;
  bool holds(double rel_tol) const {
    return lower <= middle * (1 + rel_tol) && middle <= upper * (1 + rel_tol);
  }
};

struct TransformationReport {
  double norm_a = 0, norm_a_inv = 0;
  InequalityChain inradius;   // r(T) <= |A^-1| r(F T) <= diam(T)
  InequalityChain enclosing;  // w(T) <= R(F T) / |A| <= R(T)
  InequalityChain gamma;      // w(T)/diam(T) <= gamma(F T)/(|A||A^-1|) <= gamma(T)
  bool holds(double rel_tol) const {
    return inradius.holds(rel_tol) && enclosing.holds(rel_tol) && gamma.holds(rel_tol);
  }
};

/// Evaluates the three inequality chains for F(x) = A x + b. Throws
/// SingularMatrix when cond(A) >= 1e8.
TransformationReport transformation_check(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                          const SimplexCoords& t);

struct AnalysisReport {
  int dim = 0;
  int ncolors_minus_one = 0;
  std::size_t cells = 0;
  std::optional<double> gamma_max_initial;
  double gamma_max_current = 0;
  std::optional<double> gamma_ratio;
  std::map<std::size_t, std::size_t> similarity_class_count;
  std::optional<double> d, D, D_over_d;
  double C_qu = 0;  // of the initial mesh if given, else of the current one
  std::optional<double> C_BDV_lb;
};

AnalysisReport analyze(const Triangulation& current, const Triangulation* initial,
                       const MarkHistory* history);

}  // namespace nvb
