#include "nvb/closure.hpp"

#include <algorithm>

#include "nvb/geometry.hpp"

namespace nvb {

VertexId bisection_vertex(Triangulation& tria, EdgeKey e, SimplexId owner, BisectionRule rule,
                          bool* created) {
  bool fresh = false;
  const VertexId mid = tria.midpoint(e, &fresh);
  if (fresh) {
    const int N = tria.ncolors_minus_one();
    long gen;
    if (rule == BisectionRule::Tagged) {
      gen = edge_gensharp(tria, e.lo, e.hi);
    } else {
      const auto& verts = tria.simplex(owner).vertices;
      gen = bisect_generalized(tria, GenSortedSimplex{verts}, N).new_vertex_gen;
    }
    assign_generation(tria.vertex(mid), gen, N);
  }
  if (created) *created = fresh;
  return mid;
}

std::array<SimplexId, 2> bisect_simplex(Triangulation& tria, SimplexId s, BisectionRule rule, VertexId mid) {
  if (!tria.simplex(s).live) throw Error(ErrorKind::NotLive, "cannot bisect a retired simplex");
  std::vector<VertexId> first, second;
  int tag = 0;
  const EdgeKey e = bisection_edge(tria, s, rule);
  if (rule == BisectionRule::Tagged) {
    const Simplex& sx = tria.simplex(s);
    auto [a, b] = bisect_tagged(TaggedSimplex{sx.vertices, sx.tag}, mid);
    first = std::move(a.verts);
    second = std::move(b.verts);
    tag = a.tag;
  } else {
    auto r = bisect_generalized(tria, GenSortedSimplex{tria.simplex(s).vertices}, tria.ncolors_minus_one(), mid);
    first = std::move(r.children[0]);
    second = std::move(r.children[1]);
  }
  // Child order is rule independent: the first child keeps the smaller id.
  if (std::find(first.begin(), first.end(), e.lo) == first.end()) std::swap(first, second);
  tria.retire(s);
  const SimplexId c0 = tria.add_simplex(std::move(first), tag, s);
  const SimplexId c1 = tria.add_simplex(std::move(second), tag, s);
  tria.set_children(s, c0, c1);
  return {c0, c1};
}

RefineLog refine(Triangulation& tria, SimplexId marked, const RefineOptions& opts) {
  if (index(marked) >= tria.num_simplices() || !tria.simplex(marked).live)
    throw Error(ErrorKind::NotLive, "marked simplex is not live");

  RefineLog log;
  log.marked = marked;
  log.max_depth = 1;
  std::vector<SimplexId> stack{marked};
  std::uint64_t steps = 0;
  while (!stack.empty()) {
    if (++steps > opts.bisection_budget)
      throw Error(ErrorKind::NonTermination, "closure exceeded its step budget");
    const SimplexId top = stack.back();
    if (!tria.simplex(top).live) {
      stack.pop_back();
      continue;
    }
    const EdgeKey e = bisection_edge(tria, top, opts.rule);
    const auto span = tria.patch(e);
    const std::vector<SimplexId> patch(span.begin(), span.end());

    auto other = std::find_if(patch.begin(), patch.end(),
                              [&](SimplexId t) { return bisection_edge(tria, t, opts.rule) != e; });
    if (other != patch.end()) {
      if (std::find(stack.begin(), stack.end(), *other) != stack.end())
        throw Error(ErrorKind::NonTermination, "closure chain revisits a simplex");
      stack.push_back(*other);
      log.max_depth = std::max(log.max_depth, stack.size());
      continue;
    }

    bool created = false;
    const VertexId mid = bisection_vertex(tria, e, top, opts.rule, &created);
    if (opts.keep_log) {
      log.bisections.push_back({e, mid, created, patch, stack});
      if (created) log.created_vertices.push_back(mid);
    }
    for (SimplexId t : patch) {
      const auto children = bisect_simplex(tria, t, opts.rule, mid);
      if (opts.keep_log) log.created_simplices.insert(log.created_simplices.end(), children.begin(), children.end());
    }
    log.bisection_count += patch.size();
    if (log.bisection_count > opts.bisection_budget)
      throw Error(ErrorKind::NonTermination, "closure exceeded its bisection budget");
    stack.pop_back();
  }
  return log;
}

std::vector<RefineLog> refine_set(Triangulation& tria, std::span<const SimplexId> marked,
                                  const RefineOptions& opts) {
  for (SimplexId s : marked)
    if (index(s) >= tria.num_simplices() || !tria.simplex(s).live)
      throw Error(ErrorKind::NotLive, "marked simplex is not live");
  std::vector<RefineLog> logs;
  for (SimplexId s : marked)
    if (tria.simplex(s).live) logs.push_back(refine(tria, s, opts));
  return logs;
}

void uniform_refine(Triangulation& tria, int rounds, BisectionRule rule) {
  if (rounds < 0) throw Error(ErrorKind::InvalidArgument, "rounds must be non-negative");
  for (int sweep = 0; sweep < rounds * tria.dim(); ++sweep) {
    for (SimplexId s : tria.live_simplices()) {
      const EdgeKey e = bisection_edge(tria, s, rule);
      bisect_simplex(tria, s, rule, bisection_vertex(tria, e, s, rule));
    }
  }
}

std::vector<SimplexId> point_mark(const Triangulation& tria, std::span<const double> p) {
  if (static_cast<int>(p.size()) != tria.dim())
    throw Error(ErrorKind::InvalidArgument, "point dimension differs from mesh dimension");
  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
  std::vector<SimplexId> out;
  for (SimplexId s : tria.live_simplices())
    if (barycentric(simplex_coords(tria, s), x).minCoeff() >= -1e-12) out.push_back(s);
  if (out.empty()) throw Error(ErrorKind::PointOutside, "point lies outside the mesh");
  return out;
}

}  // namespace nvb
