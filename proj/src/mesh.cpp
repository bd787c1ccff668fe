#include "nvb/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "nvb/geometry.hpp"

namespace nvb {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateCell: return "DegenerateCell";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DuplicateCell: return "DuplicateCell";
    case ErrorKind::DuplicateVertexInCell: return "DuplicateVertexInCell";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::InvalidColoring: return "InvalidColoring";
    case ErrorKind::UncoloredVertex: return "UncoloredVertex";
    case ErrorKind::NonDistinctGenerations: return "NonDistinctGenerations";
    case ErrorKind::EqualGenerations: return "EqualGenerations";
    case ErrorKind::NotLive: return "NotLive";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::PointOutside: return "PointOutside";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::InvalidPermutation: return "InvalidPermutation";
    case ErrorKind::EmptyHistory: return "EmptyHistory";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Triangulation::Triangulation(int dim) : dim_(dim) {
  if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dimension must be at least 1");
}

std::vector<SimplexId> Triangulation::live_simplices() const {
  std::vector<SimplexId> out;
  out.reserve(live_count_);
  for (std::size_t i = 0; i < simplices_.size(); ++i)
    if (simplices_[i].live) out.push_back(simplex_id(i));
  return out;
}

VertexId Triangulation::add_vertex(std::vector<double> coords) {
  if (static_cast<int>(coords.size()) != dim_)
    throw Error(ErrorKind::InvalidArgument, "vertex coordinate count differs from dimension");
  for (double x : coords)
    if (!std::isfinite(x)) throw Error(ErrorKind::InvalidArgument, "non-finite vertex coordinate");
  vertices_.push_back(Vertex{std::move(coords), {}});
  return vertex_id(vertices_.size() - 1);
}

SimplexId Triangulation::add_simplex(std::vector<VertexId> verts, int tag,
                                     std::optional<SimplexId> parent) {
  if (static_cast<int>(verts.size()) != dim_ + 1)
    throw Error(ErrorKind::InvalidArgument, "simplex needs n+1 vertices");
  Simplex s;
  s.vertices = std::move(verts);
  s.tag = tag;
  s.parent = parent;
  const SimplexId id = simplex_id(simplices_.size());
  if (parent) {
    const Simplex& p = simplex(*parent);
    s.gen_count = p.gen_count + 1;
    s.ancestor = p.ancestor;
  } else {
    s.ancestor = id;
  }
  simplices_.push_back(std::move(s));
  ++live_count_;
  index_edges(id);
  return id;
}

void Triangulation::set_lineage(SimplexId s, int gen_count, SimplexId ancestor) {
  Simplex& sx = simplices_.at(index(s));
  sx.gen_count = gen_count;
  sx.ancestor = ancestor;
}

void Triangulation::retire(SimplexId s) {
  Simplex& sx = simplices_.at(index(s));
  if (!sx.live) throw Error(ErrorKind::NotLive, "simplex already retired");
  unindex_edges(s);
  sx.live = false;
  --live_count_;
}

void Triangulation::set_children(SimplexId s, SimplexId first, SimplexId second) {
  Simplex& sx = simplices_.at(index(s));
  sx.children[0] = first;
  sx.children[1] = second;
}

void Triangulation::reorder(SimplexId s, std::vector<VertexId> verts, int tag) {
  Simplex& sx = simplices_.at(index(s));
  std::vector<VertexId> a = sx.vertices, b = verts;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw Error(ErrorKind::InvalidArgument, "reorder must keep the vertex set");
  sx.vertices = std::move(verts);
  sx.tag = tag;
}

VertexId Triangulation::midpoint(EdgeKey e, bool* created) {
  if (auto it = midpoint_index_.find(e); it != midpoint_index_.end()) {
    if (created) *created = false;
    return it->second;
  }
  const auto& a = vertex(e.lo).coords;
  const auto& b = vertex(e.hi).coords;
  std::vector<double> m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = (a[i] + b[i]) / 2;
  const VertexId v = add_vertex(std::move(m));
  midpoint_index_.emplace(e, v);
  if (created) *created = true;
  return v;
}

std::optional<VertexId> Triangulation::find_midpoint(EdgeKey e) const {
  if (auto it = midpoint_index_.find(e); it != midpoint_index_.end()) return it->second;
  return std::nullopt;
}

std::span<const SimplexId> Triangulation::patch(EdgeKey e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) return {};
  return it->second;
}

std::vector<EdgeKey> Triangulation::edges() const {
  std::vector<EdgeKey> out;
  out.reserve(edge_index_.size());
  for (const auto& [e, _] : edge_index_) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

void Triangulation::index_edges(SimplexId s) {
  for (const EdgeKey& e : simplex_edges(simplex(s).vertices)) {
    auto& list = edge_index_[e];
    list.insert(std::upper_bound(list.begin(), list.end(), s), s);
  }
}

void Triangulation::unindex_edges(SimplexId s) {
  for (const EdgeKey& e : simplex_edges(simplex(s).vertices)) {
    auto it = edge_index_.find(e);
    auto& list = it->second;
    list.erase(std::lower_bound(list.begin(), list.end(), s));
    if (list.empty()) edge_index_.erase(it);
  }
}

bool Triangulation::edge_index_consistent() const {
  std::map<EdgeKey, std::vector<SimplexId>> rebuilt;
  for (SimplexId s : live_simplices())
    for (const EdgeKey& e : simplex_edges(simplex(s).vertices)) rebuilt[e].push_back(s);
  if (rebuilt.size() != edge_index_.size()) return false;
  for (const auto& [e, list] : rebuilt) {
    auto it = edge_index_.find(e);
    if (it == edge_index_.end() || it->second != list) return false;
  }
  return true;
}

std::vector<EdgeKey> simplex_edges(std::span<const VertexId> verts) {
  std::vector<EdgeKey> out;
  out.reserve(verts.size() * (verts.size() - 1) / 2);
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) out.emplace_back(verts[i], verts[j]);
  return out;
}

Triangulation build_triangulation(int dim, const std::vector<std::vector<double>>& coords,
                                  const std::vector<std::vector<std::size_t>>& cells) {
  Triangulation tria(dim);
  for (const auto& x : coords) tria.add_vertex(x);

  std::set<std::vector<std::size_t>> seen;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& cell = cells[c];
    std::ostringstream where;
    where << "cell " << c;
    if (static_cast<int>(cell.size()) != dim + 1)
      throw Error(ErrorKind::InvalidArgument, where.str() + " does not have n+1 vertices");
    for (std::size_t i : cell)
      if (i >= coords.size())
        throw Error(ErrorKind::IndexOutOfRange, where.str() + " references a missing vertex");
    std::vector<std::size_t> sorted = cell;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorKind::DuplicateVertexInCell, where.str() + " repeats a vertex");
    if (!seen.insert(sorted).second)
      throw Error(ErrorKind::DuplicateCell, where.str() + " duplicates an earlier cell");

    std::vector<VertexId> verts;
    for (std::size_t i : cell) verts.push_back(vertex_id(i));
    const SimplexCoords t = vertex_coords(tria, verts);
    if (volume(t) < 1e-12 * std::pow(diameter(t), dim))
      throw Error(ErrorKind::DegenerateCell, where.str() + " is degenerate");
    tria.add_simplex(std::move(verts), 0, std::nullopt);
  }
  return tria;
}

std::vector<SimplexId> edge_patch(const Triangulation& tria, EdgeKey e) {
  auto p = tria.patch(e);
  if (p.empty()) throw Error(ErrorKind::UnknownEdge, "edge is not in the triangulation");
  return {p.begin(), p.end()};
}

std::vector<std::vector<VertexId>> vertex_neighbors(const Triangulation& tria) {
  std::vector<std::vector<VertexId>> nbrs(tria.num_vertices());
  for (const EdgeKey& e : tria.edges()) {
    nbrs[index(e.lo)].push_back(e.hi);
    nbrs[index(e.hi)].push_back(e.lo);
  }
  for (auto& list : nbrs) std::sort(list.begin(), list.end());
  return nbrs;
}

}  // namespace nvb
