#include "nvb/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "nvb/analysis.hpp"
#include "nvb/closure.hpp"
#include "nvb/coloring.hpp"
#include "nvb/io.hpp"
#include "nvb/random.hpp"

namespace nvb::cli {

namespace {

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string order = "id";
  std::string rule = "tagged";
  std::string marks_file;
  std::string point;
  std::size_t random_count = 0;
  std::uint64_t seed = 0;
  int iters = 0;
  int rounds = 0;
  std::string log_path;
  std::string history_path;
  std::string vtk_path;
  std::string initial_path;
};

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> p;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::InvalidArgument, "bad point coordinate '" + item + "'");
    }
  }
  return p;
}

// One line per iteration; ids separated by blanks or commas.
std::vector<std::vector<SimplexId>> read_marks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path + "'");
  std::vector<std::vector<SimplexId>> rounds;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<SimplexId> ids;
    std::string tok;
    while (ls >> tok) {
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw Error(ErrorKind::ParseError, "bad simplex id '" + tok + "' in '" + path + "'");
      ids.push_back(simplex_id(std::stoull(tok)));
    }
    rounds.push_back(std::move(ids));
  }
  return rounds;
}

void write_mesh(const RunConfig& cfg, const Triangulation& tria, std::optional<BisectionRule> rule,
                std::ostream& out) {
  const std::string text = canonical_dump(mesh_to_json(tria, rule));
  if (cfg.output.empty() || cfg.output == "-")
    out << text;
  else
    save_text(cfg.output, text);
}

void write_vtk_file(const std::string& path, const Triangulation& tria, std::ostream& err) {
  std::ostringstream ss;
  if (!write_vtk(ss, tria))
    err << compact_dump({{"warning", "dimension above 3: exported the edge skeleton only"}});
  save_text(path, ss.str());
}

BisectionRule require_rule(const MeshFile& mf) {
  if (!mf.rule) throw Error(ErrorKind::InvalidArgument, "mesh is not initialized; run 'init' first");
  return *mf.rule;
}

int cmd_color(const RunConfig& cfg, std::ostream& out) {
  MeshFile mf = load_mesh(cfg.input);
  const VertexOrder order = cfg.order == "valency" ? VertexOrder::MaxValencyFirst : VertexOrder::Ascending;
  const ColorMap cm = greedy_color(mf.tria, order);
  for (std::size_t i = 0; i < cm.colors.size(); ++i) mf.tria.vertex(vertex_id(i)).attr.color = cm.colors[i];
  mf.tria.set_ncolors_minus_one(cm.ncolors_minus_one);
  write_mesh(cfg, mf.tria, std::nullopt, out);
  return 0;
}

int cmd_init(const RunConfig& cfg, std::ostream& out) {
  MeshFile mf = load_mesh(cfg.input);
  const BisectionRule rule = rule_from_string(cfg.rule);
  initialize(mf.tria, color_map_of(mf.tria), rule);
  write_mesh(cfg, mf.tria, rule, out);
  return 0;
}

int cmd_refine(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  MeshFile mf = load_mesh(cfg.input);
  const BisectionRule rule = require_rule(mf);
  Triangulation& tria = mf.tria;

  const int sources = !cfg.marks_file.empty() + !cfg.point.empty() + (cfg.random_count > 0);
  if (sources != 1) throw Error(ErrorKind::InvalidArgument, "give exactly one of --marks, --point, --random");

  std::vector<std::vector<SimplexId>> mark_rounds;
  int iters = cfg.iters;
  if (!cfg.marks_file.empty()) {
    mark_rounds = read_marks(cfg.marks_file);
    if (iters == 0) iters = static_cast<int>(mark_rounds.size());
    if (static_cast<std::size_t>(iters) > mark_rounds.size())
      throw Error(ErrorKind::InvalidArgument, "--iters exceeds the number of lines in the marks file");
  } else if (iters == 0) {
    iters = 1;
  }
  std::vector<double> point;
  if (!cfg.point.empty()) {
    point = parse_point(cfg.point);
    if (static_cast<int>(point.size()) != tria.dim())
      throw Error(ErrorKind::InvalidArgument, "point dimension differs from the mesh");
  }

  RefineOptions opts;
  opts.rule = rule;
  opts.keep_log = !cfg.log_path.empty();
  Lcg rng(cfg.seed);
  MarkHistory hist;
  hist.initial_size = tria.num_live();
  std::string log_text;

  for (int it = 0; it < iters; ++it) {
    std::vector<SimplexId> marks;
    if (!cfg.marks_file.empty()) {
      marks = mark_rounds[static_cast<std::size_t>(it)];
    } else if (!point.empty()) {
      marks = point_mark(tria, point);
    } else {
      const auto live = tria.live_simplices();
      for (std::size_t k = 0; k < cfg.random_count; ++k) marks.push_back(live[random_index(rng, live.size())]);
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
    const auto logs = refine_set(tria, marks, opts);
    hist.steps.push_back({marks.size(), tria.num_live()});
    if (opts.keep_log)
      for (const RefineLog& log : logs) {
        Json j = to_json(log);
        j["iteration"] = it;
        log_text += compact_dump(j);
      }
  }

  if (opts.keep_log) save_text(cfg.log_path, log_text);
  if (!cfg.history_path.empty()) save_text(cfg.history_path, canonical_dump(to_json(hist)));
  if (!cfg.vtk_path.empty()) write_vtk_file(cfg.vtk_path, tria, err);
  write_mesh(cfg, tria, rule, out);
  return 0;
}

int cmd_uniform(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  MeshFile mf = load_mesh(cfg.input);
  const BisectionRule rule = require_rule(mf);
  uniform_refine(mf.tria, cfg.rounds, rule);
  if (!cfg.vtk_path.empty()) write_vtk_file(cfg.vtk_path, mf.tria, err);
  write_mesh(cfg, mf.tria, rule, out);
  return 0;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
  const MeshFile mf = load_mesh(cfg.input);
  const ConformityReport rep = check_conformity(mf.tria);
  out << compact_dump(to_json(rep));
  return rep.ok ? 0 : 1;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const MeshFile mf = load_mesh(cfg.input);
  std::optional<MeshFile> initial;
  if (!cfg.initial_path.empty()) initial = load_mesh(cfg.initial_path);
  std::optional<MarkHistory> hist;
  if (!cfg.history_path.empty()) hist = history_from_json(load_json(cfg.history_path));
  const AnalysisReport rep = analyze(mf.tria, initial ? &initial->tria : nullptr, hist ? &*hist : nullptr);
  const std::string text = canonical_dump(to_json(rep));
  if (cfg.output.empty() || cfg.output == "-")
    out << text;
  else
    save_text(cfg.output, text);
  return 0;
}

int cmd_export(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const MeshFile mf = load_mesh(cfg.input);
  if (cfg.output.empty() || cfg.output == "-") {
    if (!write_vtk(out, mf.tria))
      err << compact_dump({{"warning", "dimension above 3: exported the edge skeleton only"}});
  } else {
    write_vtk_file(cfg.output, mf.tria, err);
  }
  return 0;
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::ParseError || kind == ErrorKind::IoError ? 2 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Newest vertex bisection with generalized colorings"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* sub) { sub->add_option("mesh", cfg.input, "Input mesh JSON")->required(); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", cfg.output, "Output path ('-' for stdout)"); };

  auto* color = app.add_subcommand("color", "Greedy coloring of the vertices");
  input(color);
  output(color);
  color->add_option("--order", cfg.order, "Vertex order")->check(CLI::IsMember({"id", "valency"}));

  auto* init = app.add_subcommand("init", "Initial generations and tags from the coloring");
  input(init);
  output(init);
  init->add_option("--rule", cfg.rule, "Bisection rule")->check(CLI::IsMember({"tagged", "generation"}));

  auto* refine_cmd = app.add_subcommand("refine", "Adaptive refinement with conforming closure");
  input(refine_cmd);
  output(refine_cmd);
  refine_cmd->add_option("--marks", cfg.marks_file, "Marks file, one iteration per line");
  refine_cmd->add_option("--point", cfg.point, "Mark the simplices containing a point, e.g. \"0.5,0.5\"");
  refine_cmd->add_option("--random", cfg.random_count, "Mark this many random live simplices per iteration");
  refine_cmd->add_option("--seed", cfg.seed, "Seed for --random");
  refine_cmd->add_option("--iters", cfg.iters, "Number of iterations")->check(CLI::NonNegativeNumber);
  refine_cmd->add_option("--log", cfg.log_path, "Refinement log (JSON lines)");
  refine_cmd->add_option("--history", cfg.history_path, "Mark history JSON");
  refine_cmd->add_option("--vtk", cfg.vtk_path, "Also write a VTK file");

  auto* uniform = app.add_subcommand("uniform", "Uniform full refinement rounds");
  input(uniform);
  output(uniform);
  uniform->add_option("--rounds", cfg.rounds, "Number of rounds")->required()->check(CLI::NonNegativeNumber);
  uniform->add_option("--vtk", cfg.vtk_path, "Also write a VTK file");

  auto* check = app.add_subcommand("check", "Conformity check");
  input(check);

  auto* stats = app.add_subcommand("stats", "Shape and closure statistics");
  input(stats);
  output(stats);
  stats->add_option("--initial", cfg.initial_path, "Initial mesh");
  stats->add_option("--history", cfg.history_path, "Mark history JSON");

  auto* exp = app.add_subcommand("export", "Legacy VTK export");
  input(exp);
  output(exp);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << compact_dump(error_json(ErrorKind::InvalidArgument, e.what()));
    return 1;
  }

  try {
    if (color->parsed()) return cmd_color(cfg, out);
    if (init->parsed()) return cmd_init(cfg, out);
    if (refine_cmd->parsed()) return cmd_refine(cfg, out, err);
    if (uniform->parsed()) return cmd_uniform(cfg, out, err);
    if (check->parsed()) return cmd_check(cfg, out);
    if (stats->parsed()) return cmd_stats(cfg, out);
    if (exp->parsed()) return cmd_export(cfg, out, err);
  } catch (const Error& e) {
    err << compact_dump(error_json(e.kind(), e.what()));
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << compact_dump(error_json(ErrorKind::InvalidArgument, e.what()));
    return 1;
  }
  return 1;
}

}  // namespace nvb::cli
