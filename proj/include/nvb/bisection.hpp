#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nvb/coloring.hpp"
#include "nvb/mesh.hpp"

namespace nvb {

struct LevelType {
  long level = 0;
  int vtype = 0;  // in {1, ..., N}
  friend bool operator==(const LevelType&, const LevelType&) = default;
};

/// Unique (level, type) with gen = N * (level - 1) + type and 1 <= type <= N.
LevelType decompose_generation(long gen, int N);

/// Sets color, gen = -color, level and type on every initial vertex and
/// records N on the triangulation. Throws InvalidColoring.
void init_vertex_attrs(Triangulation& tria, const ColorMap& cm);

/// Maubach representation [v_0, ..., v_n]_tag; the bisection edge is
/// [v_0, v_tag].
struct TaggedSimplex {
  std::vector<VertexId> verts;
  int tag = 0;

  EdgeKey bisection_edge() const { return {verts.front(), verts.at(static_cast<std::size_t>(tag))}; }
  friend bool operator==(const TaggedSimplex&, const TaggedSimplex&) = default;
};

/// Initial tagged simplices: vertices sorted by ascending color, the
/// color-N vertex (if present) rotated to the front, tag n.
std::vector<TaggedSimplex> init_tagged(const Triangulation& tria, const ColorMap& cm);

/// One Maubach bisection step; `mid` is the midpoint of the bisection edge.
std::pair<TaggedSimplex, TaggedSimplex> bisect_tagged(const TaggedSimplex& t, VertexId mid);

/// Vertices ordered by strictly decreasing generation.
struct GenSortedSimplex {
  std::vector<VertexId> verts;

  /// Sorts `verts` by decreasing gen; throws NonDistinctGenerations on ties.
  static GenSortedSimplex from(const Triangulation& tria, std::span<const VertexId> verts);
};

/// Generation rule on plain generations sorted decreasingly. Returns the
/// local indices of the bisection edge (older one second) and the new
/// vertex generation.
struct GenerationStep {
  std::size_t first = 0;
  std::size_t second = 0;
  long new_gen = 0;
};
GenerationStep generation_rule(std::span<const long> gens_desc, int N);

struct BisectionResult {
  EdgeKey edge;
  long new_vertex_gen = 0;
  /// Filled when a midpoint id is supplied; each child sorted by gen.
  std::vector<std::vector<VertexId>> children;
};

/// Generation-based bisection. If `mid` is given it must already carry the
/// returned generation (or none yet); children are then re-sorted.
BisectionResult bisect_generalized(const Triangulation& tria, const GenSortedSimplex& s, int N,
                                   std::optional<VertexId> mid = std::nullopt);

/// Generation of the midpoint an edge would receive (edge variant of the
/// generation rule). Throws EqualGenerations.
long edge_gensharp(long gen_a, long gen_b, int N);
long edge_gensharp(const Triangulation& tria, VertexId a, VertexId b);

/// Stores gen, level and type on a vertex.
void assign_generation(Vertex& v, long gen, int N);

enum class BisectionRule {
  Tagged,      // Maubach rule on tagged simplices
  Generation,  // generation rule on gen-sorted simplices
};

/// Colors the vertices and brings every live simplex into the storage
/// order required by `rule`.
void initialize(Triangulation& tria, const ColorMap& cm, BisectionRule rule);

/// Bisection edge of a stored simplex under `rule`.
EdgeKey bisection_edge(const Triangulation& tria, SimplexId s, BisectionRule rule);

/// Level of a simplex: max level of its vertices.
long simplex_level(const Triangulation& tria, SimplexId s);
long simplex_level(const Triangulation& tria, std::span<const VertexId> verts);

}  // namespace nvb
