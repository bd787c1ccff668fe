#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nvb/mesh.hpp"

namespace nvb {

/// Generalized (N+1)-coloring of the initial vertices: adjacent vertices
/// carry distinct colors in {0, ..., N}.
struct ColorMap {
  std::vector<int> colors;  // indexed by VertexId
  int ncolors_minus_one = 0;
};

enum class VertexOrder {
  Ascending,         // by vertex id
  MaxValencyFirst,   // by decreasing valency, ties by id
};

/// Greedy coloring: each vertex, in the given order, takes the smallest
/// color not used by an already colored neighbor.
ColorMap greedy_color(const Triangulation& tria, VertexOrder order = VertexOrder::Ascending);

struct ColoringCheck {
  bool ok = true;
  std::optional<EdgeKey> violation;
};

/// Throws UncoloredVertex if a vertex of a live simplex has no color.
ColoringCheck verify_coloring(const Triangulation& tria, const ColorMap& cm);

/// Largest number of edges meeting at one vertex.
int max_valency(const Triangulation& tria);

/// Builds a ColorMap from a user-supplied color array, taking N as its max.
ColorMap color_map_from(std::vector<int> colors);

}  // namespace nvb
