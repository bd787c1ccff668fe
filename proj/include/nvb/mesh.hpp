#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "nvb/types.hpp"

namespace nvb {

/// Generation bookkeeping of a vertex. For initial vertices gen = -color;
/// bisection vertices carry the generation assigned by the bisection rule.
/// gen = N * (level - 1) + vtype with vtype in {1, ..., N}.
struct VertexAttr {
  int color = -1;  // -1: not an initial vertex or not yet colored
  long gen = 0;
  long level = 0;
  int vtype = 0;
  bool has_gen = false;
};

struct Vertex {
  std::vector<double> coords;
  VertexAttr attr;
};

/// A simplex slot in the append-only simplex table. Bisected simplices stay
/// in the table as tombstones so logs keep valid references.
struct Simplex {
  /// Stored order depends on the representation: tagged order for the
  /// Maubach rule, decreasing generation for the generation rule.
  std::vector<VertexId> vertices;
  int tag = 0;  // 0 when not tagged
  std::optional<SimplexId> parent;
  int gen_count = 0;
  SimplexId ancestor{};
  bool live = true;
  std::optional<SimplexId> children[2];
};

class Triangulation {
 public:
  explicit Triangulation(int dim);

  int dim() const { return dim_; }

  std::size_t num_vertices() const { return vertices_.size(); }
  /// Total simplex slots including tombstones.
  std::size_t num_simplices() const { return simplices_.size(); }
  std::size_t num_live() const { return live_count_; }
  std::size_t num_edges() const { return edge_index_.size(); }

  const Vertex& vertex(VertexId v) const { return vertices_.at(index(v)); }
  Vertex& vertex(VertexId v) { return vertices_.at(index(v)); }
  const Simplex& simplex(SimplexId s) const { return simplices_.at(index(s)); }

  /// Live simplex ids in ascending order.
  std::vector<SimplexId> live_simplices() const;

  VertexId add_vertex(std::vector<double> coords);
  SimplexId add_simplex(std::vector<VertexId> verts, int tag,
                        std::optional<SimplexId> parent);

  /// Tombstones a simplex and drops it from the edge index.
  void retire(SimplexId s);
  void set_children(SimplexId s, SimplexId first, SimplexId second);

  /// Replaces the stored vertex order (same vertex set) and tag.
  void reorder(SimplexId s, std::vector<VertexId> verts, int tag);

  /// Overrides bisection count and ancestor label, used when loading files.
  void set_lineage(SimplexId s, int gen_count, SimplexId ancestor);

  /// Returns the midpoint vertex of `e`, creating it on first request.
  /// Identity is topological: the same key always yields the same id.
  VertexId midpoint(EdgeKey e, bool* created = nullptr);
  std::optional<VertexId> find_midpoint(EdgeKey e) const;

  bool has_edge(EdgeKey e) const { return edge_index_.count(e) != 0; }
  /// Live simplices containing both endpoints of `e`, ascending.
  std::span<const SimplexId> patch(EdgeKey e) const;
  std::vector<EdgeKey> edges() const;

  /// N: the largest color of the initial coloring, 0 when uncolored.
  int ncolors_minus_one() const { return ncolors_minus_one_; }
  void set_ncolors_minus_one(int n) { ncolors_minus_one_ = n; }

  /// Rebuilds the edge index from the live simplices and compares.
  bool edge_index_consistent() const;

 private:
  void index_edges(SimplexId s);
  void unindex_edges(SimplexId s);

  int dim_;
  int ncolors_minus_one_ = 0;
  std::size_t live_count_ = 0;
  std::vector<Vertex> vertices_;
  std::vector<Simplex> simplices_;
  std::unordered_map<EdgeKey, std::vector<SimplexId>, EdgeKeyHash> edge_index_;
  std::unordered_map<EdgeKey, VertexId, EdgeKeyHash> midpoint_index_;
};

/// Builds a triangulation from raw arrays. Ambient dimension equals the
/// simplex dimension. Throws Error on bad indices, repeated vertices in a
/// cell, duplicate cells, or degenerate cells (volume < 1e-12 * diam^n).
Triangulation build_triangulation(int dim,
                                  const std::vector<std::vector<double>>& coords,
                                  const std::vector<std::vector<std::size_t>>& cells);

/// Throws UnknownEdge when `e` is not an edge of a live simplex.
std::vector<SimplexId> edge_patch(const Triangulation& tria, EdgeKey e);

/// All n(n+1)/2 edges of a vertex list.
std::vector<EdgeKey> simplex_edges(std::span<const VertexId> verts);

/// Vertices adjacent to each vertex through an edge of a live simplex.
std::vector<std::vector<VertexId>> vertex_neighbors(const Triangulation& tria);

enum class ViolationKind {
  HangingVertex,     // a vertex lies in a simplex without being its vertex
  OverlappingFaces,  // two simplices on the same side of a shared hyperface
  OversharedFace,    // a hyperface belongs to more than two simplices
  DuplicateSimplex,  // two simplices with the same vertex set
};

const char* to_string(ViolationKind kind);

struct ConformityViolation {
  ViolationKind kind;
  SimplexId first{};
  SimplexId second{};
  std::optional<VertexId> witness;
};

struct ConformityReport {
  bool ok = true;
  std::vector<ConformityViolation> violations;
};

ConformityReport check_conformity(const Triangulation& tria);

}  // namespace nvb
