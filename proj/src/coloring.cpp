#include "nvb/coloring.hpp"

#include <algorithm>
#include <numeric>

namespace nvb {

ColorMap greedy_color(const Triangulation& tria, VertexOrder order) {
  const auto nbrs = vertex_neighbors(tria);
  std::vector<std::size_t> seq(tria.num_vertices());
  std::iota(seq.begin(), seq.end(), 0);
  if (order == VertexOrder::MaxValencyFirst)
    std::stable_sort(seq.begin(), seq.end(),
                     [&](std::size_t a, std::size_t b) { return nbrs[a].size() > nbrs[b].size(); });

  ColorMap cm;
  cm.colors.assign(tria.num_vertices(), -1);
  std::vector<char> taken;
  for (std::size_t v : seq) {
    if (nbrs[v].empty()) continue;  // not part of any simplex
    taken.assign(nbrs[v].size() + 1, 0);
    for (VertexId w : nbrs[v]) {
      const int c = cm.colors[index(w)];
      if (c >= 0 && c < static_cast<int>(taken.size())) taken[c] = 1;
    }
    const int c = static_cast<int>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
    cm.colors[v] = c;
    cm.ncolors_minus_one = std::max(cm.ncolors_minus_one, c);
  }
  return cm;
}

ColoringCheck verify_coloring(const Triangulation& tria, const ColorMap& cm) {
  for (SimplexId s : tria.live_simplices())
    for (VertexId v : tria.simplex(s).vertices)
      if (index(v) >= cm.colors.size() || cm.colors[index(v)] < 0)
        throw Error(ErrorKind::UncoloredVertex, "vertex " + std::to_string(index(v)) + " has no color");
  for (const EdgeKey& e : tria.edges())
    if (cm.colors[index(e.lo)] == cm.colors[index(e.hi)]) return {false, e};
  return {};
}

int max_valency(const Triangulation& tria) {
  std::size_t best = 0;
  for (const auto& list : vertex_neighbors(tria)) best = std::max(best, list.size());
  return static_cast<int>(best);
}

ColorMap color_map_from(std::vector<int> colors) {
  ColorMap cm;
  cm.ncolors_minus_one = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end());
  cm.colors = std::move(colors);
  return cm;
}

}  // namespace nvb
