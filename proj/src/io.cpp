#include "nvb/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace nvb {

namespace {

void dump_compact(const Json& j, std::string& out);

void dump_number(const Json& j, std::string& out) {
  char buf[64];
  if (j.is_number_integer() && !j.is_number_unsigned()) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(j.get<std::int64_t>()));
  } else if (j.is_number_unsigned()) {
    std::snprintf(buf, sizeof buf, "%llu", static_cast<unsigned long long>(j.get<std::uint64_t>()));
  } else {
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
      out += "null";
      return;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
  }
  out += buf;
}

void dump_compact(const Json& j, std::string& out) {
  if (j.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [k, v] : j.items()) {  // std::map backing: sorted
      if (!first) out += ',';
      first = false;
      out += Json(k).dump();
      out += ':';
      dump_compact(v, out);
    }
    out += '}';
  } else if (j.is_array()) {
    out += '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ',';
      dump_compact(j[i], out);
    }
    out += ']';
  } else if (j.is_number()) {
    dump_number(j, out);
  } else {
    out += j.dump();
  }
}

void dump_value(const Json& v, std::string& out) {
  bool rows = v.is_array() && !v.empty();
  for (const auto& x : v) rows = rows && x.is_array();
  if (!rows) {
    dump_compact(v, out);
    return;
  }
  out += "[\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += "    ";
    dump_compact(v[i], out);
    out += i + 1 < v.size() ? ",\n" : "\n";
  }
  out += "  ]";
}

Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, what + ": " + e.what());
  }
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad value for '") + key + "': " + e.what());
  }
}

template <class T>
std::optional<T> optional_field(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key);
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  if (!j.is_object() || j.empty()) {
    dump_compact(j, out);
    return out + '\n';
  }
  out += "{\n";
  std::size_t i = 0;
  for (const auto& [k, v] : j.items()) {
    out += "  " + Json(k).dump() + ": ";
    dump_value(v, out);
    out += ++i < j.size() ? ",\n" : "\n";
  }
  return out + "}\n";
}

std::string compact_dump(const Json& j) {
  std::string out;
  dump_compact(j, out);
  return out + '\n';
}

const char* to_string(BisectionRule rule) {
  return rule == BisectionRule::Tagged ? "tagged" : "generation";
}

BisectionRule rule_from_string(const std::string& s) {
  if (s == "tagged") return BisectionRule::Tagged;
  if (s == "generation") return BisectionRule::Generation;
  throw Error(ErrorKind::InvalidArgument, "unknown bisection rule '" + s + "'");
}

Json mesh_to_json(const Triangulation& tria, std::optional<BisectionRule> rule) {
  Json j;
  j["dim"] = tria.dim();
  Json verts = Json::array();
  Json colors = Json::array();
  Json gens = Json::array();
  bool any_color = false, all_gens = tria.num_vertices() > 0;
  for (std::size_t i = 0; i < tria.num_vertices(); ++i) {
    const Vertex& v = tria.vertex(vertex_id(i));
    verts.push_back(v.coords);
    colors.push_back(v.attr.color);
    gens.push_back(v.attr.gen);
    any_color = any_color || v.attr.color >= 0;
    all_gens = all_gens && v.attr.has_gen;
  }
  j["vertices"] = std::move(verts);
  if (any_color) j["colors"] = std::move(colors);
  if (all_gens) j["gens"] = std::move(gens);
  if (tria.ncolors_minus_one() > 0) j["N"] = tria.ncolors_minus_one();

  Json cells = Json::array(), tags = Json::array(), counts = Json::array(), ancestors = Json::array();
  bool any_tag = false, any_lineage = false;
  for (SimplexId s : tria.live_simplices()) {
    const Simplex& sx = tria.simplex(s);
    Json cell = Json::array();
    for (VertexId v : sx.vertices) cell.push_back(index(v));
    cells.push_back(std::move(cell));
    tags.push_back(sx.tag);
    counts.push_back(sx.gen_count);
    ancestors.push_back(index(sx.ancestor));
    any_tag = any_tag || sx.tag != 0;
    any_lineage = any_lineage || sx.gen_count != 0;
  }
  j["cells"] = std::move(cells);
  if (any_tag) j["tags"] = std::move(tags);
  if (any_lineage) {
    j["gen_counts"] = std::move(counts);
    j["ancestors"] = std::move(ancestors);
  }
  if (rule) j["rule"] = to_string(*rule);
  return j;
}

MeshFile mesh_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "mesh must be a JSON object");
  const int dim = field<int>(j, "dim");
  const auto coords = field<std::vector<std::vector<double>>>(j, "vertices");
  const auto cells = field<std::vector<std::vector<std::size_t>>>(j, "cells");
  MeshFile mf{build_triangulation(dim, coords, cells), std::nullopt};
  Triangulation& tria = mf.tria;

  const auto n_colors = optional_field<int>(j, "N");
  if (const auto colors = optional_field<std::vector<int>>(j, "colors")) {
    if (colors->size() != coords.size()) throw Error(ErrorKind::ParseError, "colors length differs from vertices");
    for (std::size_t i = 0; i < colors->size(); ++i) tria.vertex(vertex_id(i)).attr.color = (*colors)[i];
  }
  if (n_colors) tria.set_ncolors_minus_one(*n_colors);
  if (const auto gens = optional_field<std::vector<long>>(j, "gens")) {
    if (gens->size() != coords.size()) throw Error(ErrorKind::ParseError, "gens length differs from vertices");
    if (!n_colors || *n_colors < 1) throw Error(ErrorKind::ParseError, "gens require N");
    for (std::size_t i = 0; i < gens->size(); ++i) assign_generation(tria.vertex(vertex_id(i)), (*gens)[i], *n_colors);
  }
  const auto tags = optional_field<std::vector<int>>(j, "tags");
  const auto counts = optional_field<std::vector<int>>(j, "gen_counts");
  const auto ancestors = optional_field<std::vector<std::size_t>>(j, "ancestors");
  for (const auto* arr : {tags ? &*tags : nullptr, counts ? &*counts : nullptr})
    if (arr && arr->size() != cells.size()) throw Error(ErrorKind::ParseError, "per-cell array length differs from cells");
  if (ancestors && ancestors->size() != cells.size())
    throw Error(ErrorKind::ParseError, "per-cell array length differs from cells");
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const SimplexId s = simplex_id(c);
    if (tags) {
      if ((*tags)[c] < 0 || (*tags)[c] > dim) throw Error(ErrorKind::ParseError, "tag out of range");
      tria.reorder(s, tria.simplex(s).vertices, (*tags)[c]);
    }
    if (counts || ancestors)
      tria.set_lineage(s, counts ? (*counts)[c] : 0, ancestors ? simplex_id((*ancestors)[c]) : s);
  }
  if (const auto rule = optional_field<std::string>(j, "rule")) {
    try {
      mf.rule = rule_from_string(*rule);
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  }
  return mf;
}

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

MeshFile load_mesh(const std::string& path) { return mesh_from_json(load_json(path)); }

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "write failed for '" + path + "'");
}

void save_mesh(const std::string& path, const Triangulation& tria, std::optional<BisectionRule> rule) {
  save_text(path, canonical_dump(mesh_to_json(tria, rule)));
}

ColorMap color_map_of(const Triangulation& tria) {
  std::vector<int> colors(tria.num_vertices());
  for (std::size_t i = 0; i < colors.size(); ++i) colors[i] = tria.vertex(vertex_id(i)).attr.color;
  return color_map_from(std::move(colors));
}

bool write_vtk(std::ostream& os, const Triangulation& tria) {
  const int n = tria.dim();
  os << "# vtk DataFile Version 3.0\nbisection mesh\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << tria.num_vertices() << " double\n";
  char buf[64];
  for (std::size_t i = 0; i < tria.num_vertices(); ++i) {
    const auto& x = tria.vertex(vertex_id(i)).coords;
    for (int k = 0; k < 3; ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", k < n ? x[static_cast<std::size_t>(k)] : 0.0);
      os << (k ? " " : "") << buf;
    }
    os << '\n';
  }
  std::vector<std::vector<VertexId>> cells;
  int type = 0;
  const bool full = n >= 1 && n <= 3;
  if (full) {
    for (SimplexId s : tria.live_simplices()) cells.push_back(tria.simplex(s).vertices);
    type = n == 1 ? 3 : n == 2 ? 5 : 10;
  } else {
    for (const EdgeKey& e : tria.edges()) cells.push_back({e.lo, e.hi});
    type = 3;
  }
  std::size_t total = 0;
  for (const auto& c : cells) total += c.size() + 1;
  os << "CELLS " << cells.size() << ' ' << total << '\n';
  for (const auto& c : cells) {
    os << c.size();
    for (VertexId v : c) os << ' ' << index(v);
    os << '\n';
  }
  os << "CELL_TYPES " << cells.size() << '\n';
  for (std::size_t i = 0; i < cells.size(); ++i) os << type << '\n';
  return full;
}

Json to_json(const RefineLog& log) {
  Json j;
  j["marked"] = index(log.marked);
  j["bisection_count"] = log.bisection_count;
  j["max_depth"] = log.max_depth;
  Json created = Json::array();
  for (SimplexId s : log.created_simplices) created.push_back(index(s));
  j["created_simplices"] = std::move(created);
  Json cverts = Json::array();
  for (VertexId v : log.created_vertices) cverts.push_back(index(v));
  j["created_vertices"] = std::move(cverts);
  Json bis = Json::array();
  for (const PatchBisection& b : log.bisections) {
    Json r;
    r["edge"] = {index(b.edge.lo), index(b.edge.hi)};
    r["midpoint"] = index(b.midpoint);
    r["midpoint_created"] = b.midpoint_created;
    Json patch = Json::array(), chain = Json::array();
    for (SimplexId s : b.patch) patch.push_back(index(s));
    for (SimplexId s : b.chain) chain.push_back(index(s));
    r["patch"] = std::move(patch);
    r["chain"] = std::move(chain);
    bis.push_back(std::move(r));
  }
  j["bisections"] = std::move(bis);
  return j;
}

Json to_json(const MarkHistory& hist) {
  Json steps = Json::array();
  for (const MarkStep& s : hist.steps) steps.push_back({{"marked", s.marked}, {"mesh_size", s.mesh_size}});
  return {{"initial_size", hist.initial_size}, {"steps", std::move(steps)}};
}

MarkHistory history_from_json(const Json& j) {
  MarkHistory h;
  h.initial_size = field<std::size_t>(j, "initial_size");
  if (!j.contains("steps") || !j.at("steps").is_array()) throw Error(ErrorKind::ParseError, "missing key 'steps'");
  for (const Json& s : j.at("steps"))
    h.steps.push_back({field<std::size_t>(s, "marked"), field<std::size_t>(s, "mesh_size")});
  return h;
}

Json to_json(const AnalysisReport& rep) {
  Json j;
  j["dim"] = rep.dim;
  j["N"] = rep.ncolors_minus_one;
  j["cells"] = rep.cells;
  j["gamma_max_initial"] = optional_number(rep.gamma_max_initial);
  j["gamma_max_current"] = rep.gamma_max_current;
  j["gamma_ratio"] = optional_number(rep.gamma_ratio);
  Json classes = Json::object();
  for (const auto& [a, c] : rep.similarity_class_count) classes[std::to_string(a)] = c;
  j["similarity_class_count"] = std::move(classes);
  j["d"] = optional_number(rep.d);
  j["D"] = optional_number(rep.D);
  j["D_over_d"] = optional_number(rep.D_over_d);
  j["C_qu"] = rep.C_qu;
  j["C_BDV_lb"] = optional_number(rep.C_BDV_lb);
  return j;
}

Json to_json(const ConformityReport& rep) {
  Json v = Json::array();
  for (const ConformityViolation& x : rep.violations) {
    Json r;
    r["kind"] = to_string(x.kind);
    r["first"] = index(x.first);
    r["second"] = index(x.second);
    r["witness"] = x.witness ? Json(index(*x.witness)) : Json(nullptr);
    v.push_back(std::move(r));
  }
  return {{"ok", rep.ok}, {"violations", std::move(v)}};
}

Json error_json(ErrorKind kind, const std::string& message) {
  return {{"error", to_string(kind)}, {"message", message}};
}

}  // namespace nvb
