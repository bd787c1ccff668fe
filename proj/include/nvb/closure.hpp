#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "nvb/bisection.hpp"
#include "nvb/mesh.hpp"

namespace nvb {

struct RefineOptions {
  BisectionRule rule = BisectionRule::Tagged;
  /// Keep chains, patches and created ids in the log. Counters are always kept.
  bool keep_log = false;
  std::uint64_t bisection_budget = std::uint64_t{1} << 40;
};

/// One patch bisection: every simplex of `patch` was split at `midpoint`.
/// `chain` is the pending stack at that moment; consecutive entries satisfy
/// bse(chain[j]) in edges(chain[j+1]).
struct PatchBisection {
  EdgeKey edge;
  VertexId midpoint{};
  bool midpoint_created = false;
  std::vector<SimplexId> patch;
  std::vector<SimplexId> chain;
};

struct RefineLog {
  SimplexId marked{};
  std::vector<PatchBisection> bisections;
  std::vector<SimplexId> created_simplices;
  std::vector<VertexId> created_vertices;
  std::size_t max_depth = 0;  // longest chain
  std::size_t bisection_count = 0;
};

/// Bisects `marked` and closes the mesh conformingly. The recursion of the
/// closure runs on an explicit stack; patch members with a different
/// bisection edge are handled in ascending id order.
RefineLog refine(Triangulation& tria, SimplexId marked, const RefineOptions& opts = {});

/// Sequential refine over `marked`. Entries bisected by an earlier closure
/// in the same call are skipped. One log per refined entry.
std::vector<RefineLog> refine_set(Triangulation& tria, std::span<const SimplexId> marked,
                                  const RefineOptions& opts = {});

/// `rounds` full rounds of n sweeps; each sweep bisects every live simplex
/// once without closure. Starting from an initial triangulation each full
/// round is conforming and multiplies the cell count by 2^n.
void uniform_refine(Triangulation& tria, int rounds, BisectionRule rule = BisectionRule::Tagged);

/// Live simplices whose closure contains `p` (barycentric tolerance 1e-12).
/// Throws PointOutside when there is none.
std::vector<SimplexId> point_mark(const Triangulation& tria, std::span<const double> p);

/// Splits a single simplex at `mid` under `rule` without closure. The
/// midpoint must already carry its generation. The first child contains
/// the bisection edge endpoint with the smaller id.
std::array<SimplexId, 2> bisect_simplex(Triangulation& tria, SimplexId s, BisectionRule rule, VertexId mid);

/// Returns the midpoint of `e`, assigning its generation when it is new.
VertexId bisection_vertex(Triangulation& tria, EdgeKey e, SimplexId owner, BisectionRule rule,
                          bool* created = nullptr);

struct MarkStep {
  std::size_t marked = 0;
  std::size_t mesh_size = 0;  // live cells after the step
};

struct MarkHistory {
  std::size_t initial_size = 0;
  std::vector<MarkStep> steps;
};

}  // namespace nvb
