#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "nvb/analysis.hpp"
#include "nvb/bisection.hpp"
#include "nvb/closure.hpp"
#include "nvb/coloring.hpp"
#include "nvb/mesh.hpp"

namespace nvb {

using Json = nlohmann::json;

/// A mesh as stored on disk. `rule` records the storage order of the cells
/// once the mesh has been initialized.
struct MeshFile {
  Triangulation tria;
  std::optional<BisectionRule> rule;
};

/// Compact JSON with sorted keys and floats printed with %.17g. Top-level
/// members and rows of nested arrays go on separate lines.
std::string canonical_dump(const Json& j);
/// Same formatting rules on a single line, newline terminated.
std::string compact_dump(const Json& j);

/// Keys: dim, vertices, cells (live simplices, stored order), and when
/// present colors, N, gens, tags, gen_counts, ancestors, rule.
Json mesh_to_json(const Triangulation& tria, std::optional<BisectionRule> rule);
MeshFile mesh_from_json(const Json& j);

/// Throws IoError when the file cannot be read or written and ParseError
/// on malformed content.
MeshFile load_mesh(const std::string& path);
void save_mesh(const std::string& path, const Triangulation& tria, std::optional<BisectionRule> rule);
Json load_json(const std::string& path);
void save_text(const std::string& path, const std::string& text);

/// Colors of the initial vertices as stored on the triangulation.
ColorMap color_map_of(const Triangulation& tria);

const char* to_string(BisectionRule rule);
BisectionRule rule_from_string(const std::string& s);

/// Legacy ASCII VTK. Meshes with n > 3 are written as their edge skeleton;
/// returns false in that case.
bool write_vtk(std::ostream& os, const Triangulation& tria);

Json to_json(const RefineLog& log);
Json to_json(const MarkHistory& hist);
MarkHistory history_from_json(const Json& j);
Json to_json(const AnalysisReport& rep);
Json to_json(const ConformityReport& rep);
Json error_json(ErrorKind kind, const std::string& message);

}  // namespace nvb
