#include "nvb/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace nvb::fixtures {

namespace {

using Cells = std::vector<std::vector<std::size_t>>;
using Points = std::vector<std::vector<double>>;

// Kuhn simplices of one cube: start at `corner`, step along `sign[k] e_k`
// in the order of each permutation.
void kuhn_cells(const std::vector<long>& corner, const std::vector<int>& sign,
                std::map<std::vector<long>, std::size_t>& ids, Points& pts, Cells& cells) {
  const std::size_t n = corner.size();
  auto id_of = [&](const std::vector<long>& p) {
    auto [it, fresh] = ids.try_emplace(p, pts.size());
    if (fresh) pts.emplace_back(p.begin(), p.end());
    return it->second;
  };
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<long> p = corner;
    std::vector<std::size_t> cell{id_of(p)};
    for (std::size_t k : perm) {
      p[k] += sign[k];
      cell.push_back(id_of(p));
    }
    cells.push_back(std::move(cell));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

Triangulation with_colors(Triangulation t, const std::vector<int>& colors) {
  int top = 0;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    t.vertex(vertex_id(i)).attr.color = colors[i];
    top = std::max(top, colors[i]);
  }
  t.set_ncolors_minus_one(top);
  return t;
}

}  // namespace

Triangulation kuhn_cube(int n) {
  Points pts;
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = static_cast<double>((i >> k) & 1);
    pts.push_back(std::move(x));
  }
  Cells cells;
  std::vector<std::size_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::size_t v = 0;
    std::vector<std::size_t> cell{v};
    for (std::size_t k : perm) cell.push_back(v |= std::size_t{1} << k);
    cells.push_back(std::move(cell));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return build_triangulation(n, pts, cells);
}

Triangulation square() {
  return build_triangulation(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
}

Triangulation pentagon_fan() {
  Points pts{{0, 0}};
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 5; ++k) pts.push_back({std::cos(2 * pi * k / 5), std::sin(2 * pi * k / 5)});
  Cells cells;
  for (std::size_t k = 0; k < 5; ++k) cells.push_back({0, 1 + k, 1 + (k + 1) % 5});
  return build_triangulation(2, pts, cells);
}

Triangulation fichera(bool manual_colors) {
  std::map<std::vector<long>, std::size_t> ids;
  Points pts;
  Cells cells;
  for (int oct = 0; oct < 8; ++oct) {
    std::vector<int> sign(3);
    for (int k = 0; k < 3; ++k) sign[static_cast<std::size_t>(k)] = (oct >> k) & 1 ? -1 : 1;
    if (oct == 0) continue;  // the removed positive octant
    kuhn_cells({0, 0, 0}, sign, ids, pts, cells);
  }
  Triangulation t = build_triangulation(3, pts, cells);
  if (!manual_colors) return t;
  std::vector<int> colors;
  for (const auto& p : pts) colors.push_back(static_cast<int>(std::abs(p[0]) + std::abs(p[1]) + std::abs(p[2])));
  return with_colors(std::move(t), colors);
}

Triangulation strip() {
  Points pts;
  for (int i = 0; i <= 5; ++i) pts.push_back({double(i), 0});
  for (int i = 0; i <= 5; ++i) pts.push_back({double(i), 1});
  Cells cells;
  for (std::size_t i = 0; i < 5; ++i) {
    cells.push_back({i, i + 1, 6 + i + 1});
    cells.push_back({i, 6 + i + 1, 6 + i});
  }
  std::vector<int> colors;
  for (const auto& p : pts) colors.push_back(static_cast<int>(p[0] + p[1]));
  return with_colors(build_triangulation(2, pts, cells), colors);
}

Triangulation hanging_node() {
  return build_triangulation(2, {{0, 0}, {1, 0}, {0.5, -1}, {0.5, 1}, {0.5, 0}},
                             {{0, 1, 2}, {0, 4, 3}, {4, 1, 3}});
}

std::vector<std::string> bundled_names() {
  return {"kuhn2d", "kuhn3d", "kuhn4d", "square", "pentagon_fan", "fichera", "fichera_manual", "strip", "hanging"};
}

Triangulation bundled(const std::string& name) {
  if (name == "kuhn2d") return kuhn_cube(2);
  if (name == "kuhn3d") return kuhn_cube(3);
  if (name == "kuhn4d") return kuhn_cube(4);
  if (name == "square") return square();
  if (name == "pentagon_fan") return pentagon_fan();
  if (name == "fichera") return fichera(false);
  if (name == "fichera_manual") return fichera(true);
  if (name == "strip") return strip();
  if (name == "hanging") return hanging_node();
  throw Error(ErrorKind::InvalidArgument, "unknown fixture '" + name + "'");
}

Triangulation random_grid_mesh(int n, Lcg& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto dn = static_cast<std::size_t>(n);
  std::vector<long> extent(dn);
  for (auto& e : extent) e = 1 + static_cast<long>(random_index(rng, n == 2 ? 4 : 2));

  std::map<std::vector<long>, std::size_t> ids;
  Points lattice;
  Cells all;
  std::vector<long> cube(dn, 0);
  while (true) {
    std::vector<int> sign(dn, 1);
    std::vector<long> start = cube;
    if (n == 2 && random_index(rng, 2)) {  // other diagonal
      sign[0] = -1;
      start[0] += 1;
    }
    kuhn_cells(start, sign, ids, lattice, all);
    std::size_t k = 0;
    while (k < dn && ++cube[k] == extent[k]) cube[k++] = 0;
    if (k == dn) break;
  }

  Cells kept;
  for (auto& c : all)
    if (unit(rng) < 0.85) kept.push_back(c);
  if (kept.empty()) kept.push_back(all[random_index(rng, all.size())]);

  std::vector<std::size_t> used;
  for (const auto& c : kept) used.insert(used.end(), c.begin(), c.end());
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<std::size_t> label(used.size());
  std::iota(label.begin(), label.end(), 0);
  std::shuffle(label.begin(), label.end(), rng);
  std::map<std::size_t, std::size_t> relabel;
  for (std::size_t i = 0; i < used.size(); ++i) relabel[used[i]] = label[i];

  std::vector<double> scale(dn);
  for (auto& s : scale) s = 0.5 + 1.5 * unit(rng);
  Points pts(used.size());
  for (std::size_t i = 0; i < used.size(); ++i) {
    std::vector<double> x = lattice[used[i]];
    for (std::size_t k = 0; k < dn; ++k) x[k] = (x[k] + 0.24 * (unit(rng) - 0.5)) * scale[k];
    pts[relabel[used[i]]] = std::move(x);
  }
  for (auto& c : kept)
    for (auto& v : c) v = relabel[v];
  return build_triangulation(n, pts, kept);
}

Triangulation random_fan(Lcg& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = 3 + random_index(rng, 6);
  const double pi = std::acos(-1.0);
  Points pts{{0, 0}};
  const double step = 2 * pi / static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double a = step * (static_cast<double>(i) + 0.35 * (unit(rng) - 0.5));
    const double r = 0.5 + unit(rng);
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  Cells cells;
  for (std::size_t i = 0; i < k; ++i) cells.push_back({0, 1 + i, 1 + (i + 1) % k});
  return build_triangulation(2, pts, cells);
}

}  // namespace nvb::fixtures
