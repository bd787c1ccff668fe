#include "nvb/bisection.hpp"

#include <algorithm>

namespace nvb {

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

LevelType decompose_generation(long gen, int N) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  const long q = floor_div(gen - 1, N);
  return {q + 1, static_cast<int>(gen - N * q)};
}

void assign_generation(Vertex& v, long gen, int N) {
  const LevelType lt = decompose_generation(gen, N);
  v.attr.gen = gen;
  v.attr.level = lt.level;
  v.attr.vtype = lt.vtype;
  v.attr.has_gen = true;
}

void init_vertex_attrs(Triangulation& tria, const ColorMap& cm) {
  ColoringCheck check;
  try {
    check = verify_coloring(tria, cm);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidColoring, e.what());
  }
  if (!check.ok)
    throw Error(ErrorKind::InvalidColoring, "edge " + std::to_string(index(check.violation->lo)) + "-" +
                                               std::to_string(index(check.violation->hi)) +
                                               " has equally colored endpoints");
  const int N = cm.ncolors_minus_one;
  if (N < tria.dim()) throw Error(ErrorKind::InvalidColoring, "coloring uses fewer than n+1 colors");
  for (std::size_t i = 0; i < tria.num_vertices() && i < cm.colors.size(); ++i) {
    const int c = cm.colors[i];
    if (c < 0) continue;
    if (c > N) throw Error(ErrorKind::InvalidColoring, "color exceeds N");
    Vertex& v = tria.vertex(vertex_id(i));
    v.attr.color = c;
    assign_generation(v, -c, N);
  }
  tria.set_ncolors_minus_one(N);
}

std::vector<TaggedSimplex> init_tagged(const Triangulation& tria, const ColorMap& cm) {
  const int N = cm.ncolors_minus_one;
  const int n = tria.dim();
  std::vector<TaggedSimplex> out;
  for (SimplexId s : tria.live_simplices()) {
    std::vector<VertexId> v = tria.simplex(s).vertices;
    for (VertexId x : v)
      if (index(x) >= cm.colors.size() || cm.colors[index(x)] < 0)
        throw Error(ErrorKind::InvalidColoring, "uncolored vertex in initial simplex");
    std::sort(v.begin(), v.end(),
              [&](VertexId a, VertexId b) { return cm.colors[index(a)] < cm.colors[index(b)]; });
    for (std::size_t i = 1; i < v.size(); ++i)
      if (cm.colors[index(v[i - 1])] == cm.colors[index(v[i])])
        throw Error(ErrorKind::InvalidColoring, "simplex with repeated color");
    if (cm.colors[index(v.back())] == N) std::rotate(v.begin(), v.end() - 1, v.end());
    out.push_back({std::move(v), n});
  }
  return out;
}

std::pair<TaggedSimplex, TaggedSimplex> bisect_tagged(const TaggedSimplex& t, VertexId mid) {
  const int n = static_cast<int>(t.verts.size()) - 1;
  const int g = t.tag;
  const int next = g >= 2 ? g - 1 : n;
  TaggedSimplex first, second;
  first.tag = second.tag = next;
  // [v_0, ..., v_{g-1}, mid, v_{g+1}, ..., v_n]
  for (int i = 0; i < g; ++i) first.verts.push_back(t.verts[i]);
  // [v_1, ..., v_g, mid, v_{g+1}, ..., v_n]
  for (int i = 1; i <= g; ++i) second.verts.push_back(t.verts[i]);
  first.verts.push_back(mid);
  second.verts.push_back(mid);
  for (int i = g + 1; i <= n; ++i) {
    first.verts.push_back(t.verts[i]);
    second.verts.push_back(t.verts[i]);
  }
  return {std::move(first), std::move(second)};
}

GenSortedSimplex GenSortedSimplex::from(const Triangulation& tria, std::span<const VertexId> verts) {
  GenSortedSimplex s{{verts.begin(), verts.end()}};
  for (VertexId v : s.verts)
    if (!tria.vertex(v).attr.has_gen)
      throw Error(ErrorKind::NonDistinctGenerations, "vertex without generation");
  std::sort(s.verts.begin(), s.verts.end(), [&](VertexId a, VertexId b) {
    return tria.vertex(a).attr.gen > tria.vertex(b).attr.gen;
  });
  for (std::size_t i = 1; i < s.verts.size(); ++i)
    if (tria.vertex(s.verts[i - 1]).attr.gen == tria.vertex(s.verts[i]).attr.gen)
      throw Error(ErrorKind::NonDistinctGenerations, "simplex with repeated generation");
  return s;
}

GenerationStep generation_rule(std::span<const long> gens, int N) {
  const std::size_t m = gens.size() - 1;
  if (gens.size() < 2) throw Error(ErrorKind::InvalidArgument, "need at least two vertices");
  for (std::size_t i = 1; i <= m; ++i)
    if (gens[i - 1] <= gens[i])
      throw Error(ErrorKind::NonDistinctGenerations, "generations not strictly decreasing");
  const LevelType oldest = decompose_generation(gens[m], N);
  const LevelType second = decompose_generation(gens[m - 1], N);
  if (oldest.level != second.level) return {m - 1, m, gens[m - 1] + N};
  // Youngest and oldest vertex of the old level.
  std::size_t j = 0;
  while (decompose_generation(gens[j], N).level != oldest.level) ++j;
  const int type_j = decompose_generation(gens[j], N).vtype;
  return {j, m, gens[m] + 2L * N + 1 - type_j};
}

BisectionResult bisect_generalized(const Triangulation& tria, const GenSortedSimplex& s, int N,
                                   std::optional<VertexId> mid) {
  std::vector<long> gens;
  for (VertexId v : s.verts) gens.push_back(tria.vertex(v).attr.gen);
  const GenerationStep step = generation_rule(gens, N);
  BisectionResult r;
  r.edge = EdgeKey(s.verts[step.first], s.verts[step.second]);
  r.new_vertex_gen = step.new_gen;
  if (mid) {
    auto by_gen = [&](VertexId a, VertexId b) {
      const long ga = a == *mid ? step.new_gen : tria.vertex(a).attr.gen;
      const long gb = b == *mid ? step.new_gen : tria.vertex(b).attr.gen;
      return ga > gb;
    };
    for (std::size_t replaced : {step.second, step.first}) {
      std::vector<VertexId> child = s.verts;
      child[replaced] = *mid;
      std::sort(child.begin(), child.end(), by_gen);
      r.children.push_back(std::move(child));
    }
  }
  return r;
}

long edge_gensharp(long gen_a, long gen_b, int N) {
  if (gen_a == gen_b) throw Error(ErrorKind::EqualGenerations, "edge endpoints share a generation");
  const long gens[2] = {std::max(gen_a, gen_b), std::min(gen_a, gen_b)};
  return generation_rule(gens, N).new_gen;
}

long edge_gensharp(const Triangulation& tria, VertexId a, VertexId b) {
  return edge_gensharp(tria.vertex(a).attr.gen, tria.vertex(b).attr.gen, tria.ncolors_minus_one());
}

void initialize(Triangulation& tria, const ColorMap& cm, BisectionRule rule) {
  init_vertex_attrs(tria, cm);
  const auto live = tria.live_simplices();
  if (rule == BisectionRule::Tagged) {
    auto tagged = init_tagged(tria, cm);
    for (std::size_t i = 0; i < live.size(); ++i)
      tria.reorder(live[i], std::move(tagged[i].verts), tagged[i].tag);
  } else {
    for (SimplexId s : live)
      tria.reorder(s, GenSortedSimplex::from(tria, tria.simplex(s).vertices).verts, 0);
  }
}

EdgeKey bisection_edge(const Triangulation& tria, SimplexId s, BisectionRule rule) {
  const Simplex& sx = tria.simplex(s);
  if (rule == BisectionRule::Tagged) {
    if (sx.tag < 1) throw Error(ErrorKind::InvalidArgument, "simplex is not tagged");
    return {sx.vertices.front(), sx.vertices[static_cast<std::size_t>(sx.tag)]};
  }
  std::vector<long> gens;
  for (VertexId v : sx.vertices) gens.push_back(tria.vertex(v).attr.gen);
  const GenerationStep step = generation_rule(gens, tria.ncolors_minus_one());
  return {sx.vertices[step.first], sx.vertices[step.second]};
}

long simplex_level(const Triangulation& tria, std::span<const VertexId> verts) {
  long level = tria.vertex(verts.front()).attr.level;
  for (VertexId v : verts) level = std::max(level, tria.vertex(v).attr.level);
  return level;
}

long simplex_level(const Triangulation& tria, SimplexId s) {
  return simplex_level(tria, tria.simplex(s).vertices);
}

}  // namespace nvb
