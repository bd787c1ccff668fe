#include "nvb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>

#include "nvb/bisection.hpp"

namespace nvb {

ShapeReport shape_report(const SimplexCoords& t) {
  ShapeReport s;
  s.heights = heights(t);
  s.R = enclosing_ball_diameter(t);
  double inv = 0;
  for (double h : s.heights) inv += 1 / h;
  s.r = 2 / inv;
  s.w = *std::min_element(s.heights.begin(), s.heights.end());
  s.diam = diameter(t);
  s.volume = volume(t);
  s.gamma = s.R / s.r;
  s.similarity_key = similarity_key(t);
  return s;
}

std::string similarity_key(const SimplexCoords& t) {
  std::vector<double> d2;
  for (Eigen::Index i = 0; i < t.cols(); ++i)
    for (Eigen::Index j = i + 1; j < t.cols(); ++j) d2.push_back((t.col(i) - t.col(j)).squaredNorm());
  std::sort(d2.begin(), d2.end());
  std::string key;
  char buf[64];
  for (double x : d2) {
    std::snprintf(buf, sizeof buf, "%.9f,", x / d2.front());
    key += buf;
  }
  return key;
}

SimilarityPartition similarity_classes(const std::vector<SimplexCoords>& simplices) {
  SimilarityPartition p;
  for (std::size_t i = 0; i < simplices.size(); ++i) p.classes[similarity_key(simplices[i])].push_back(i);
  p.count = p.classes.size();
  return p;
}

std::map<std::size_t, std::size_t> similarity_classes_per_ancestor(const Triangulation& tria) {
  std::map<std::size_t, std::set<std::string>> keys;
  for (SimplexId s : tria.live_simplices())
    keys[index(tria.simplex(s).ancestor)].insert(similarity_key(simplex_coords(tria, s)));
  std::map<std::size_t, std::size_t> out;
  for (const auto& [a, k] : keys) out[a] = k.size();
  return out;
}

double shape_constant(int n) { return 2.0 * n * (n + std::sqrt(2.0) - 1); }

double similarity_class_bound(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f * n * std::pow(2.0, n - 2);
}

void for_each_descendant(const SimplexCoords& t, int tag, int generations,
                         const std::function<void(const SimplexCoords&, int)>& fn) {
  std::vector<Eigen::VectorXd> pool;
  TaggedSimplex root;
  root.tag = tag;
  for (Eigen::Index j = 0; j < t.cols(); ++j) {
    pool.emplace_back(t.col(j));
    root.verts.push_back(vertex_id(static_cast<std::size_t>(j)));
  }
  auto coords = [&](const TaggedSimplex& s) {
    SimplexCoords c(t.rows(), t.cols());
    for (std::size_t j = 0; j < s.verts.size(); ++j) c.col(static_cast<Eigen::Index>(j)) = pool[index(s.verts[j])];
    return c;
  };
  std::vector<std::pair<TaggedSimplex, int>> stack{{root, 0}};
  while (!stack.empty()) {
    auto [s, g] = std::move(stack.back());
    stack.pop_back();
    fn(coords(s), g);
    if (g == generations) continue;
    const EdgeKey e = s.bisection_edge();
    pool.push_back((pool[index(e.lo)] + pool[index(e.hi)]) / 2);
    auto [a, b] = bisect_tagged(s, vertex_id(pool.size() - 1));
    stack.emplace_back(std::move(b), g + 1);
    stack.emplace_back(std::move(a), g + 1);
  }
}

namespace {

LevelDiameter level_diameter_over(const Triangulation& tria, bool include_retired) {
  LevelDiameter ld{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < tria.num_simplices(); ++i) {
    const SimplexId s = simplex_id(i);
    if (!include_retired && !tria.simplex(s).live) continue;
    for (VertexId v : tria.simplex(s).vertices)
      if (!tria.vertex(v).attr.has_gen)
        throw Error(ErrorKind::InvalidArgument, "level constants need vertex generations");
    const double scaled = diameter(simplex_coords(tria, s)) * std::ldexp(1.0, static_cast<int>(simplex_level(tria, s)));
    ld.d = std::min(ld.d, scaled);
    ld.D = std::max(ld.D, scaled);
  }
  return ld;
}

}  // namespace

LevelDiameter level_diameter_constants(const Triangulation& tria) { return level_diameter_over(tria, false); }

LevelDiameter level_diameter_constants_all(const Triangulation& tria) { return level_diameter_over(tria, true); }

double quasi_uniformity(const Triangulation& tria) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  for (SimplexId s : tria.live_simplices()) {
    const double v = volume(simplex_coords(tria, s));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi / lo;
}

double bdv_ratio(const MarkHistory& hist, std::size_t initial_count) {
  std::size_t marked = 0;
  for (const MarkStep& step : hist.steps) marked += step.marked;
  if (hist.steps.empty() || marked == 0) throw Error(ErrorKind::EmptyHistory, "no marked simplices");
  const double created = static_cast<double>(hist.steps.back().mesh_size) - static_cast<double>(initial_count);
  return created / static_cast<double>(marked);
}

double spectral_norm(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

TransformationReport transformation_check(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                          const SimplexCoords& t) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  if (smin <= 0 || sv(0) / smin >= 1e8) throw Error(ErrorKind::SingularMatrix, "matrix is singular or ill-conditioned");

  TransformationReport r;
  r.norm_a = sv(0);
  r.norm_a_inv = 1 / smin;
  const SimplexCoords ft = (a * t).colwise() + b;
  const ShapeReport s = shape_report(t);
  const ShapeReport fs = shape_report(ft);
  r.inradius = {s.r, r.norm_a_inv * fs.r, s.diam};
  r.enclosing = {s.w, fs.R / r.norm_a, s.R};
  r.gamma = {s.w / s.diam, fs.gamma / (r.norm_a * r.norm_a_inv), s.gamma};
  return r;
}

AnalysisReport analyze(const Triangulation& current, const Triangulation* initial, const MarkHistory* history) {
  AnalysisReport rep;
  rep.dim = current.dim();
  rep.ncolors_minus_one = current.ncolors_minus_one();
  rep.cells = current.num_live();
  for (SimplexId s : current.live_simplices())
    rep.gamma_max_current = std::max(rep.gamma_max_current, shape_regularity(simplex_coords(current, s)));
  if (initial) {
    double g0 = 0;
    for (SimplexId s : initial->live_simplices())
      g0 = std::max(g0, shape_regularity(simplex_coords(*initial, s)));
    rep.gamma_max_initial = g0;
    rep.gamma_ratio = rep.gamma_max_current / g0;
    rep.C_qu = quasi_uniformity(*initial);
  } else {
    rep.C_qu = quasi_uniformity(current);
  }
  rep.similarity_class_count = similarity_classes_per_ancestor(current);

  bool has_gens = true;
  for (std::size_t i = 0; i < current.num_vertices(); ++i) has_gens = has_gens && current.vertex(vertex_id(i)).attr.has_gen;
  if (has_gens && current.num_live() > 0) {
    const LevelDiameter ld = level_diameter_constants(current);
    rep.d = ld.d;
    rep.D = ld.D;
    rep.D_over_d = ld.D / ld.d;
  }
  if (history && !history->steps.empty()) rep.C_BDV_lb = bdv_ratio(*history, history->initial_size);
  return rep;
}

}  // namespace nvb
