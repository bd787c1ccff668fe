#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "nvb/mesh.hpp"

namespace nvb {

/// Simplex vertex coordinates, one column per vertex (n x (n+1)).
using SimplexCoords = Eigen::MatrixXd;

SimplexCoords simplex_coords(const Triangulation& tria, SimplexId s);
SimplexCoords vertex_coords(const Triangulation& tria, std::span<const VertexId> verts);

/// n-dimensional volume |T|.
double volume(const SimplexCoords& t);
/// Longest edge length.
double diameter(const SimplexCoords& t);
/// (n-1)-volume of the hyperface opposite to local vertex `i`.
double face_volume(const SimplexCoords& t, int i);

/// Barycentric coordinates of p; throws Degenerate for flat simplices.
Eigen::VectorXd barycentric(const SimplexCoords& t, const Eigen::VectorXd& p);

/// Throws Degenerate unless volume >= 1e-12 * diam^n.
void require_nondegenerate(const SimplexCoords& t);

/// Diameter R of the smallest ball containing the simplex.
double enclosing_ball_diameter(const SimplexCoords& t);

/// Heights h_f = n |T| / |f|, indexed by the opposite vertex.
std::vector<double> heights(const SimplexCoords& t);

/// Diameter r of the inscribed ball, from 1/r = 1/2 * sum_f 1/h_f.
double inradius_diameter(const SimplexCoords& t);

/// w(T) = min_f h_f.
double min_height(const SimplexCoords& t);

/// gamma = R / r.
double shape_regularity(const SimplexCoords& t);

/// The Kuhn simplex [0, e_pi(1), e_pi(1)+e_pi(2), ...]; `pi` holds a
/// permutation of 1..n.
SimplexCoords kuhn_simplex(int n, std::span<const int> pi);

/// Euclidean distance between two simplices (closed convex hulls).
double simplex_distance(const SimplexCoords& a, const SimplexCoords& b);

}  // namespace nvb
