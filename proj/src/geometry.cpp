#include "nvb/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>

namespace nvb {

namespace {

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Edge vectors v_i - v_0 as columns.
Eigen::MatrixXd edge_matrix(const SimplexCoords& t) {
  const Eigen::Index n = t.cols() - 1;
  Eigen::MatrixXd e(t.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) e.col(i) = t.col(i + 1) - t.col(0);
  return e;
}

struct Ball {
  Eigen::VectorXd center;
  double radius_sq = -1;  // negative: empty ball
};

// Smallest ball with all support points on its boundary, centered in their
// affine hull.
Ball circumball(const std::vector<Eigen::VectorXd>& support, Eigen::Index dim) {
  Ball b;
  if (support.empty()) {
    b.center = Eigen::VectorXd::Zero(dim);
    return b;
  }
  const Eigen::VectorXd& p0 = support.front();
  const std::size_t k = support.size() - 1;
  if (k == 0) {
    b.center = p0;
    b.radius_sq = 0;
    return b;
  }
  Eigen::MatrixXd q(dim, static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < k; ++i) q.col(static_cast<Eigen::Index>(i)) = support[i + 1] - p0;
  const Eigen::MatrixXd gram = q.transpose() * q;
  const Eigen::VectorXd rhs = 0.5 * gram.diagonal();
  const Eigen::VectorXd alpha = gram.completeOrthogonalDecomposition().solve(rhs);
  const Eigen::VectorXd offset = q * alpha;
  b.center = p0 + offset;
  b.radius_sq = offset.squaredNorm();
  return b;
}

bool inside(const Ball& b, const Eigen::VectorXd& p) {
  if (b.radius_sq < 0) return false;
  const double d = (p - b.center).squaredNorm();
  return d <= b.radius_sq * (1 + 1e-12) + 1e-300;
}

using PointList = std::list<Eigen::VectorXd>;

// Move-to-front miniball over the prefix [begin, end) with a fixed support.
Ball mtf_miniball(PointList& pts, PointList::iterator end, std::vector<Eigen::VectorXd>& support,
                  Eigen::Index dim) {
  Ball ball = circumball(support, dim);
  if (static_cast<Eigen::Index>(support.size()) == dim + 1) return ball;
  for (auto it = pts.begin(); it != end;) {
    auto next = std::next(it);
    if (!inside(ball, *it)) {
      support.push_back(*it);
      ball = mtf_miniball(pts, it, support, dim);
      support.pop_back();
      pts.splice(pts.begin(), pts, it);
    }
    it = next;
  }
  return ball;
}

// Closest point to the origin of the convex hull of `pts`, by enumerating
// subsets and keeping those whose affine projection is interior.
struct HullPoint {
  Eigen::VectorXd point;
  std::vector<Eigen::VectorXd> support;
};

HullPoint closest_in_hull(const std::vector<Eigen::VectorXd>& pts) {
  const std::size_t m = pts.size();
  HullPoint best;
  double best_norm = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<const Eigen::VectorXd*> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(&pts[i]);
    const Eigen::Index k = static_cast<Eigen::Index>(sub.size());
    if (k > pts.front().size() + 1) continue;
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) kkt(i, j) = sub[i]->dot(*sub[j]);
      kkt(i, k) = 1;
      kkt(k, i) = 1;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs(k) = 1;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd sol = lu.solve(rhs);
    if ((sol.head(k).array() < -1e-14).any()) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(pts.front().size());
    for (Eigen::Index i = 0; i < k; ++i) v += sol(i) * *sub[i];
    const double norm = v.squaredNorm();
    if (norm < best_norm) {
      best_norm = norm;
      best.point = v;
      best.support.clear();
      for (Eigen::Index i = 0; i < k; ++i)
        if (sol(i) > 1e-14) best.support.push_back(*sub[i]);
      if (best.support.empty()) best.support.push_back(*sub[0]);
    }
  }
  return best;
}

}  // namespace

SimplexCoords simplex_coords(const Triangulation& tria, SimplexId s) {
  return vertex_coords(tria, tria.simplex(s).vertices);
}

SimplexCoords vertex_coords(const Triangulation& tria, std::span<const VertexId> verts) {
  SimplexCoords t(tria.dim(), static_cast<Eigen::Index>(verts.size()));
  for (std::size_t j = 0; j < verts.size(); ++j) {
    const auto& x = tria.vertex(verts[j]).coords;
    for (int i = 0; i < tria.dim(); ++i) t(i, static_cast<Eigen::Index>(j)) = x[i];
  }
  return t;
}

double volume(const SimplexCoords& t) {
  const int n = static_cast<int>(t.cols()) - 1;
  return std::abs(edge_matrix(t).determinant()) / factorial(n);
}

double diameter(const SimplexCoords& t) {
  double d = 0;
  for (Eigen::Index i = 0; i < t.cols(); ++i)
    for (Eigen::Index j = i + 1; j < t.cols(); ++j) d = std::max(d, (t.col(i) - t.col(j)).norm());
  return d;
}

double face_volume(const SimplexCoords& t, int i) {
  const Eigen::Index n = t.cols() - 1;
  std::vector<Eigen::Index> rest;
  for (Eigen::Index j = 0; j <= n; ++j)
    if (j != i) rest.push_back(j);
  Eigen::MatrixXd e(t.rows(), n - 1);
  for (Eigen::Index j = 1; j < n; ++j) e.col(j - 1) = t.col(rest[j]) - t.col(rest[0]);
  const double gram = (e.transpose() * e).determinant();
  return std::sqrt(std::max(gram, 0.0)) / factorial(static_cast<int>(n) - 1);
}

void require_nondegenerate(const SimplexCoords& t) {
  const int n = static_cast<int>(t.cols()) - 1;
  if (n < 1 || t.rows() != n || volume(t) < 1e-12 * std::pow(diameter(t), n))
    throw Error(ErrorKind::Degenerate, "degenerate simplex");
}

Eigen::VectorXd barycentric(const SimplexCoords& t, const Eigen::VectorXd& p) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(edge_matrix(t));
  if (lu.determinant() == 0) throw Error(ErrorKind::Degenerate, "degenerate simplex");
  const Eigen::VectorXd x = lu.solve(p - t.col(0));
  Eigen::VectorXd lambda(t.cols());
  lambda(0) = 1 - x.sum();
  lambda.tail(x.size()) = x;
  return lambda;
}

double enclosing_ball_diameter(const SimplexCoords& t) {
  require_nondegenerate(t);
  PointList pts;
  for (Eigen::Index j = 0; j < t.cols(); ++j) pts.emplace_back(t.col(j));
  std::vector<Eigen::VectorXd> support;
  const Ball b = mtf_miniball(pts, pts.end(), support, t.rows());
  return 2 * std::sqrt(b.radius_sq);
}

std::vector<double> heights(const SimplexCoords& t) {
  require_nondegenerate(t);
  const int n = static_cast<int>(t.cols()) - 1;
  const double vol = volume(t);
  std::vector<double> h(n + 1);
  for (int i = 0; i <= n; ++i) h[i] = n * vol / face_volume(t, i);
  return h;
}

double inradius_diameter(const SimplexCoords& t) {
  double inv = 0;
  for (double h : heights(t)) inv += 1 / h;
  return 2 / inv;
}

double min_height(const SimplexCoords& t) {
  const auto h = heights(t);
  return *std::min_element(h.begin(), h.end());
}

double shape_regularity(const SimplexCoords& t) {
  return enclosing_ball_diameter(t) / inradius_diameter(t);
}

SimplexCoords kuhn_simplex(int n, std::span<const int> pi) {
  if (n < 1 || static_cast<int>(pi.size()) != n)
    throw Error(ErrorKind::InvalidPermutation, "permutation length differs from n");
  std::vector<bool> used(n + 1, false);
  for (int k : pi) {
    if (k < 1 || k > n || used[k]) throw Error(ErrorKind::InvalidPermutation, "not a permutation of 1..n");
    used[k] = true;
  }
  SimplexCoords t = SimplexCoords::Zero(n, n + 1);
  for (int j = 1; j <= n; ++j) {
    t.col(j) = t.col(j - 1);
    t(pi[j - 1] - 1, j) += 1;
  }
  return t;
}

double simplex_distance(const SimplexCoords& a, const SimplexCoords& b) {
  // Gilbert-Johnson-Keerthi on the Minkowski difference a - b.
  std::vector<Eigen::VectorXd> diff;
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) diff.emplace_back(a.col(i) - b.col(j));

  std::vector<Eigen::VectorXd> support{diff.front()};
  Eigen::VectorXd v = diff.front();
  for (int iter = 0; iter < 256; ++iter) {
    const double vv = v.squaredNorm();
    if (vv < 1e-30) return 0;
    const Eigen::VectorXd* w = &diff.front();
    double best = w->dot(v);
    for (const auto& d : diff) {
      const double s = d.dot(v);
      if (s < best) {
        best = s;
        w = &d;
      }
    }
    if (vv - best <= 1e-14 * vv) break;
    support.push_back(*w);
    HullPoint hp = closest_in_hull(support);
    if (hp.point.squaredNorm() >= vv) break;
    v = hp.point;
    support = std::move(hp.support);
  }
  return v.norm();
}

}  // namespace nvb
