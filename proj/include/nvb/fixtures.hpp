#pragma once

#include <string>
#include <vector>

#include "nvb/mesh.hpp"
#include "nvb/random.hpp"

namespace nvb::fixtures {

/// The n! Kuhn simplices of the unit cube; vertex i is the corner whose
/// k-th coordinate is bit k of i.
Triangulation kuhn_cube(int n);

/// Unit square split along the diagonal a-c, vertices a, b, c, d counter-
/// clockwise from the origin.
Triangulation square();

/// Five triangles around a hub (vertex 0) on the unit circle.
Triangulation pentagon_fan();

/// [-1,1]^3 without the positive octant: seven reflected Kuhn cubes, 42
/// tetrahedra. With `manual_colors` each vertex is colored |x|+|y|+|z|.
Triangulation fichera(bool manual_colors);

/// Ten triangles over [0,5]x[0,1], colored x+y.
Triangulation strip();

/// A triangle with a neighbor pair sharing a vertex inside its edge.
Triangulation hanging_node();

/// Names accepted by `bundled`.
std::vector<std::string> bundled_names();
Triangulation bundled(const std::string& name);

/// Jittered Freudenthal grid with random extents, a random subset of cells
/// and randomly relabeled vertices. Conforming, not necessarily connected.
Triangulation random_grid_mesh(int n, Lcg& rng);

/// Fan of 3 to 8 triangles around a hub with random angles and radii.
Triangulation random_fan(Lcg& rng);

}  // namespace nvb::fixtures
