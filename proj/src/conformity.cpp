#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>

#include "nvb/mesh.hpp"

namespace nvb {

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::HangingVertex: return "HangingVertex";
    case ViolationKind::OverlappingFaces: return "OverlappingFaces";
    case ViolationKind::OversharedFace: return "OversharedFace";
    case ViolationKind::DuplicateSimplex: return "DuplicateSimplex";
  }
  return "Unknown";
}

namespace {

constexpr double kBaryTol = 1e-12;

// Kd-tree over points stored flat: point k is coords[k*n .. k*n + n).
class PointTree {
 public:
  PointTree(std::vector<double> coords, std::vector<std::uint32_t> ids, std::size_t n)
      : n_(n), coords_(std::move(coords)), ids_(std::move(ids)) {
    if (!ids_.empty()) build(0, ids_.size());
  }

  /// Point ids in leaf order; neighbouring entries are spatially close.
  const std::vector<std::uint32_t>& ids() const { return ids_; }

  // Calls fn(id) for every point inside the closed box [lo - eps, hi + eps].
  template <typename Fn>
  void query(const double* lo, const double* hi, double eps, Fn&& fn) {
    if (nodes_.empty()) return;
    stack_.assign(1, 0);
    while (!stack_.empty()) {
      const Node& node = nodes_[stack_.back()];
      const double* box = node_box_.data() + (stack_.back()) * 2 * n_;
      stack_.pop_back();
      if (!overlaps(box, lo, hi, eps)) continue;
      if (node.left == kNone) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
          const double* p = coords_.data() + i * n_;
          bool in = true;
          for (std::size_t d = 0; d < n_ && in; ++d) in = p[d] >= lo[d] - eps && p[d] <= hi[d] + eps;
          if (in) fn(ids_[i]);
        }
        continue;
      }
      stack_.push_back(node.left);
      stack_.push_back(node.right);
    }
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  static constexpr std::size_t kLeafSize = 8;
  struct Node {
    std::size_t begin, end;
    std::size_t left = kNone, right = kNone;
  };

  bool overlaps(const double* box, const double* lo, const double* hi, double eps) const {
    for (std::size_t d = 0; d < n_; ++d)
      if (hi[d] + eps < box[d] || lo[d] - eps > box[n_ + d]) return false;
    return true;
  }

  std::size_t build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{begin, end});
    node_box_.resize(node_box_.size() + 2 * n_);
    double* box = node_box_.data() + id * 2 * n_;
    for (std::size_t d = 0; d < n_; ++d) {
      box[d] = box[n_ + d] = coords_[begin * n_ + d];
      for (std::size_t k = begin + 1; k < end; ++k) {
        box[d] = std::min(box[d], coords_[k * n_ + d]);
        box[n_ + d] = std::max(box[n_ + d], coords_[k * n_ + d]);
      }
    }
    if (end - begin <= kLeafSize) return id;
    std::size_t axis = 0;
    for (std::size_t d = 1; d < n_; ++d)
      if (box[n_ + d] - box[d] > box[n_ + axis] - box[axis]) axis = d;
    const std::size_t mid = begin + (end - begin) / 2;
    // Median split on a permutation, then apply it to the flat arrays.
    std::vector<std::size_t> perm(end - begin);
    std::iota(perm.begin(), perm.end(), begin);
    std::nth_element(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(mid - begin), perm.end(),
                     [&](std::size_t a, std::size_t b) { return coords_[a * n_ + axis] < coords_[b * n_ + axis]; });
    std::vector<double> c(perm.size() * n_);
    std::vector<std::uint32_t> ids(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      std::copy_n(coords_.data() + perm[i] * n_, n_, c.data() + i * n_);
      ids[i] = ids_[perm[i]];
    }
    std::copy(c.begin(), c.end(), coords_.begin() + static_cast<std::ptrdiff_t>(begin * n_));
    std::copy(ids.begin(), ids.end(), ids_.begin() + static_cast<std::ptrdiff_t>(begin));
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  std::size_t n_;
  std::vector<double> coords_, node_box_;
  std::vector<std::uint32_t> ids_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> stack_;
};

// Gaussian elimination with partial pivoting on a row-major n x n matrix,
// applied to the optional right-hand side. Returns the determinant.
double eliminate(double* m, double* rhs, std::size_t n) {
  if (n == 2) {
    const double det = m[0] * m[3] - m[1] * m[2];
    if (rhs && det != 0) {
      const double x = (rhs[0] * m[3] - m[1] * rhs[1]) / det;
      rhs[1] = (m[0] * rhs[1] - rhs[0] * m[2]) / det;
      rhs[0] = x;
    }
    return det;
  }
  if (n == 3) {
    const double c0 = m[4] * m[8] - m[5] * m[7];
    const double c1 = m[5] * m[6] - m[3] * m[8];
    const double c2 = m[3] * m[7] - m[4] * m[6];
    const double det = m[0] * c0 + m[1] * c1 + m[2] * c2;
    if (rhs && det != 0) {
      const double b0 = rhs[0], b1 = rhs[1], b2 = rhs[2];
      rhs[0] = (b0 * c0 + m[1] * (m[5] * b2 - b1 * m[8]) + m[2] * (b1 * m[7] - m[4] * b2)) / det;
      rhs[1] = (m[0] * (b1 * m[8] - m[5] * b2) + b0 * c1 + m[2] * (m[3] * b2 - b1 * m[6])) / det;
      rhs[2] = (m[0] * (m[4] * b2 - b1 * m[7]) + m[1] * (b1 * m[6] - m[3] * b2) + b0 * c2) / det;
    }
    return det;
  }
  double det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (m[piv * n + c] == 0) return 0;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
      if (rhs) std::swap(rhs[c], rhs[piv]);
      det = -det;
    }
    det *= m[c * n + c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
      if (rhs) rhs[r] -= f * rhs[c];
    }
  }
  if (rhs)
    for (std::size_t c = n; c-- > 0;) {
      for (std::size_t k = c + 1; k < n; ++k) rhs[c] -= m[c * n + k] * rhs[k];
      rhs[c] /= m[c * n + c];
    }
  return det;
}

// Vertex coordinates copied into one flat array.
struct Points {
  std::size_t n;
  std::vector<double> xyz;

  explicit Points(const Triangulation& tria) : n(static_cast<std::size_t>(tria.dim())) {
    xyz.reserve(tria.num_vertices() * n);
    for (std::size_t v = 0; v < tria.num_vertices(); ++v) {
      const auto& c = tria.vertex(vertex_id(v)).coords;
      xyz.insert(xyz.end(), c.begin(), c.end());
    }
  }

  const double* operator[](VertexId v) const { return xyz.data() + index(v) * n; }
};

// Stores the inverse edge matrix of `verts` row-major in work[n*n, 2*n*n).
void invert_edges(const Points& pts, std::span<const VertexId> verts, std::vector<double>& work,
                  std::vector<double>& rhs) {
  const std::size_t n = verts.size() - 1;
  work.resize(2 * n * n);
  const double* base = pts[verts[0]];
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t j = 0; j < n; ++j) {
      const double* q = pts[verts[j + 1]];
      for (std::size_t i = 0; i < n; ++i) work[i * n + j] = q[i] - base[i];
    }
    std::fill(rhs.begin(), rhs.end(), 0.0);
    rhs[col] = 1;
    if (eliminate(work.data(), rhs.data(), n) == 0) throw Error(ErrorKind::Degenerate, "degenerate simplex");
    for (std::size_t i = 0; i < n; ++i) work[n * n + i * n + col] = rhs[i];
  }
}

// Orientation of `p` relative to the hyperplane through `face`.
double side(const Points& pts, std::span<const VertexId> face, VertexId p, std::vector<double>& work) {
  const std::size_t n = pts.n;
  work.resize(n * n);
  const double* base = pts[face[0]];
  for (std::size_t j = 0; j < n; ++j) {
    const double* q = pts[j + 1 < n ? face[j + 1] : p];
    for (std::size_t i = 0; i < n; ++i) work[i * n + j] = q[i] - base[i];
  }
  return eliminate(work.data(), nullptr, n);
}

// True when `p` and `q` lie strictly on opposite sides of the face hyperplane.
bool opposite_sides(const Points& pts, std::span<const VertexId> face, VertexId p, VertexId q,
                    std::vector<double>& work) {
  const double* b = pts[face[0]];
  const double* x = pts[p];
  const double* y = pts[q];
  if (pts.n == 2) {
    const double* e = pts[face[1]];
    const double ex = e[0] - b[0], ey = e[1] - b[1];
    const double sp = ex * (x[1] - b[1]) - ey * (x[0] - b[0]);
    const double sq = ex * (y[1] - b[1]) - ey * (y[0] - b[0]);
    return sp * sq < 0;
  }
  if (pts.n == 3) {
    const double* e = pts[face[1]];
    const double* f = pts[face[2]];
    const double u[3] = {e[0] - b[0], e[1] - b[1], e[2] - b[2]};
    const double v[3] = {f[0] - b[0], f[1] - b[1], f[2] - b[2]};
    const double nrm[3] = {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
    const double sp = nrm[0] * (x[0] - b[0]) + nrm[1] * (x[1] - b[1]) + nrm[2] * (x[2] - b[2]);
    const double sq = nrm[0] * (y[0] - b[0]) + nrm[1] * (y[1] - b[1]) + nrm[2] * (y[2] - b[2]);
    return sp * sq < 0;
  }
  return side(pts, face, p, work) * side(pts, face, q, work) < 0;
}

// Fixed-width id tuples stored flat, grouped by sorting on a hash key.
struct TupleTable {
  std::size_t width;
  std::vector<VertexId> data;
  std::vector<std::uint32_t> owner;  // payload index per tuple

  std::span<const VertexId> at(std::size_t k) const { return {data.data() + k * width, width}; }

  std::uint64_t hash(std::size_t k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (VertexId v : at(k)) h = (h ^ static_cast<std::uint32_t>(v)) * 1099511628211ull;
    return h;
  }

  // Calls fn(members) for every group of identical tuples, members ascending.
  template <typename Fn>
  void for_each_group(Fn&& fn) const {
    std::vector<std::pair<std::uint64_t, std::uint32_t>> keys(owner.size());
    for (std::size_t k = 0; k < keys.size(); ++k) keys[k] = {hash(k), static_cast<std::uint32_t>(k)};
    std::sort(keys.begin(), keys.end());
    std::vector<std::uint32_t> run, group, rest;
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i + 1;
      while (j < keys.size() && keys[j].first == keys[i].first) ++j;
      run.clear();
      for (std::size_t k = i; k < j; ++k) run.push_back(keys[k].second);
      while (!run.empty()) {
        group.clear();
        rest.clear();
        for (std::uint32_t k : run) (std::ranges::equal(at(k), at(run[0])) ? group : rest).push_back(k);
        fn(std::span<const std::uint32_t>(group));
        run.swap(rest);
      }
      i = j;
    }
  }
};

}  // namespace

ConformityReport check_conformity(const Triangulation& tria) {
  ConformityReport report;
  const auto live = tria.live_simplices();
  const std::size_t n = static_cast<std::size_t>(tria.dim());
  auto flag = [&](ViolationKind kind, SimplexId a, SimplexId b, std::optional<VertexId> w) {
    report.ok = false;
    report.violations.push_back({kind, a, b, w});
  };

  // Combinatorial pass: duplicate cells and hyperface multiplicity.
  TupleTable cells{n + 1, {}, {}}, faces{n, {}, {}};
  cells.data.reserve(live.size() * (n + 1));
  faces.data.reserve(live.size() * (n + 1) * n);
  std::vector<VertexId> opposite, sorted;
  for (std::size_t k = 0; k < live.size(); ++k) {
    const auto& verts = tria.simplex(live[k]).vertices;
    sorted.assign(verts.begin(), verts.end());
    std::sort(sorted.begin(), sorted.end());
    cells.data.insert(cells.data.end(), sorted.begin(), sorted.end());
    cells.owner.push_back(static_cast<std::uint32_t>(k));
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j)
        if (j != i) faces.data.push_back(sorted[j]);
      faces.owner.push_back(static_cast<std::uint32_t>(k));
      opposite.push_back(sorted[i]);
    }
  }
  const Points pts(tria);
  std::vector<double> work;
  cells.for_each_group([&](std::span<const std::uint32_t> g) {
    for (std::size_t i = 1; i < g.size(); ++i)
      flag(ViolationKind::DuplicateSimplex, live[cells.owner[g[i - 1]]], live[cells.owner[g[i]]], std::nullopt);
  });
  faces.for_each_group([&](std::span<const std::uint32_t> g) {
    if (g.size() > 2) {
      flag(ViolationKind::OversharedFace, live[faces.owner[g[0]]], live[faces.owner[g[2]]], std::nullopt);
    } else if (g.size() == 2) {
      if (!opposite_sides(pts, faces.at(g[0]), opposite[g[0]], opposite[g[1]], work))
        flag(ViolationKind::OverlappingFaces, live[faces.owner[g[0]]], live[faces.owner[g[1]]], std::nullopt);
    }
  });

  // Geometric pass: no vertex may lie in a closed simplex it does not span.
  // Owner simplex for each vertex, used as the second member of the pair.
  std::vector<std::optional<SimplexId>> owner(tria.num_vertices());
  for (SimplexId s : live)
    for (VertexId v : tria.simplex(s).vertices)
      if (!owner[index(v)]) owner[index(v)] = s;
  std::vector<double> coords;
  std::vector<std::uint32_t> ids;
  double scale = 1;
  for (std::size_t vi = 0; vi < tria.num_vertices(); ++vi) {
    if (!owner[vi]) continue;
    const double* x = pts[vertex_id(vi)];
    coords.insert(coords.end(), x, x + n);
    ids.push_back(static_cast<std::uint32_t>(vi));
    for (double c : std::span(x, n)) scale = std::max(scale, 1 + std::abs(c));
  }
  PointTree tree(std::move(coords), std::move(ids), n);

  std::vector<ConformityViolation> hanging;
  // Visit simplices in the spatial order of their first vertex.
  std::vector<std::uint32_t> rank(tria.num_vertices());
  for (std::size_t i = 0; i < tree.ids().size(); ++i) rank[tree.ids()[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::pair<std::uint32_t, SimplexId>> sweep;
  sweep.reserve(live.size());
  for (SimplexId s : live) sweep.emplace_back(rank[index(tria.simplex(s).vertices[0])], s);
  std::sort(sweep.begin(), sweep.end());

  std::vector<double> lo(n), hi(n), rhs(n);
  for (const auto& [_, s] : sweep) {
    const auto& verts = tria.simplex(s).vertices;
    const double* base = pts[verts[0]];
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = hi[i] = base[i];
      for (VertexId v : verts) {
        lo[i] = std::min(lo[i], pts[v][i]);
        hi[i] = std::max(hi[i], pts[v][i]);
      }
    }
    bool factored = false;
    tree.query(lo.data(), hi.data(), 1e-12 * scale, [&](std::uint32_t vi) {
      const VertexId v = vertex_id(vi);
      if (std::find(verts.begin(), verts.end(), v) != verts.end()) return;
      if (!factored) {
        invert_edges(pts, verts, work, rhs);
        factored = true;
      }
      // Barycentric coordinates relative to the first vertex.
      const double* x = pts[v];
      for (std::size_t i = 0; i < n; ++i) rhs[i] = x[i] - base[i];
      double rest = 1;
      for (std::size_t i = 0; i < n; ++i) {
        double c = 0;
        for (std::size_t j = 0; j < n; ++j) c += work[n * n + i * n + j] * rhs[j];
        if (c < -kBaryTol) return;
        rest -= c;
      }
      if (rest >= -kBaryTol) hanging.push_back({ViolationKind::HangingVertex, s, *owner[vi], v});
    });
  }
  std::sort(hanging.begin(), hanging.end(), [](const ConformityViolation& a, const ConformityViolation& b) {
    return std::pair(*a.witness, a.first) < std::pair(*b.witness, b.first);
  });
  for (const auto& h : hanging) flag(h.kind, h.first, h.second, h.witness);
  return report;
}

}  // namespace nvb
