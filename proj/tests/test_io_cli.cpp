#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nvb/cli.hpp"
#include "nvb/fixtures.hpp"
#include "nvb/io.hpp"

using namespace nvb;
namespace fs = std::filesystem;

namespace {

const std::string data_dir = NVB_DATA_DIR;

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("nvb_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = nvb::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("bundled data files match the generated fixtures") {
  for (const std::string& name : fixtures::bundled_names()) {
    CAPTURE(name);
    CHECK(slurp(data_dir + "/" + name + ".json") == canonical_dump(mesh_to_json(fixtures::bundled(name), std::nullopt)));
  }
}

TEST_CASE("canonical json") {
  const Json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", {{1.5, -2}, {3, 4}}}};
  CHECK(canonical_dump(j) == "{\n  \"a\": [1,2],\n  \"b\": 0.10000000000000001,\n  \"c\": [\n    [1.5,-2],\n    [3,4]\n  ]\n}\n");
  CHECK(compact_dump(j) == "{\"a\":[1,2],\"b\":0.10000000000000001,\"c\":[[1.5,-2],[3,4]]}\n");
}

TEST_CASE("mesh round trip is byte identical") {
  Triangulation t = fixtures::strip();
  initialize(t, color_map_of(t), BisectionRule::Generation);
  Lcg rng(3);
  for (int k = 0; k < 10; ++k) {
    const auto live = t.live_simplices();
    refine(t, live[random_index(rng, live.size())], {BisectionRule::Generation});
  }
  const std::string text = canonical_dump(mesh_to_json(t, BisectionRule::Generation));
  const MeshFile back = mesh_from_json(Json::parse(text));
  CHECK(back.rule == BisectionRule::Generation);
  CHECK(canonical_dump(mesh_to_json(back.tria, back.rule)) == text);
  CHECK(back.tria.num_live() == t.num_live());
}

TEST_CASE("malformed meshes") {
  CHECK_THROWS_AS(mesh_from_json(Json::parse(R"({"dim":2,"vertices":[[0,0]]})")), Error);
  try {
    mesh_from_json(Json::parse(R"({"dim":2,"vertices":[[0,0],[1,0],[0,1]],"cells":[[0,1,2]],"gens":[0,1,2]})"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
  }
  try {
    load_mesh("/nonexistent/mesh.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IoError);
  }
}

TEST_CASE("vtk export") {
  std::ostringstream os;
  CHECK(write_vtk(os, fixtures::kuhn_cube(3)));
  const std::string s = os.str();
  CHECK(s.find("POINTS 8 double") != std::string::npos);
  CHECK(s.find("CELLS 6 30") != std::string::npos);
  CHECK(s.find("CELL_TYPES 6\n10\n") != std::string::npos);
  std::ostringstream os4;
  CHECK_FALSE(write_vtk(os4, fixtures::kuhn_cube(4)));
  CHECK(os4.str().find("CELL_TYPES") != std::string::npos);
}

TEST_CASE("cli pipeline") {
  Scratch tmp;
  Run r = run_cli({"color", data_dir + "/pentagon_fan.json", "-o", tmp("pf.json")});
  REQUIRE(r.code == 0);
  CHECK(load_json(tmp("pf.json"))["N"] == 3);

  REQUIRE(run_cli({"init", tmp("pf.json"), "-o", tmp("pf_t.json")}).code == 0);
  REQUIRE(run_cli({"uniform", tmp("pf_t.json"), "--rounds", "1", "-o", tmp("pf_u.json")}).code == 0);
  CHECK(load_json(tmp("pf_u.json"))["cells"].size() == 20);
  CHECK(run_cli({"check", tmp("pf_u.json")}).code == 0);

  REQUIRE(run_cli({"color", data_dir + "/kuhn2d.json", "-o", tmp("k.json")}).code == 0);
  REQUIRE(run_cli({"init", tmp("k.json"), "-o", tmp("k_t.json")}).code == 0);
  REQUIRE(run_cli({"uniform", tmp("k_t.json"), "--rounds", "1", "-o", tmp("k_u.json")}).code == 0);
  CHECK(load_json(tmp("k_u.json"))["cells"].size() == 8);
  r = run_cli({"check", tmp("k_u.json")});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"ok\":true,\"violations\":[]}\n");

  REQUIRE(run_cli({"color", data_dir + "/square.json", "-o", tmp("s.json")}).code == 0);
  REQUIRE(run_cli({"init", tmp("s.json"), "-o", tmp("s_t.json")}).code == 0);
  r = run_cli({"refine", tmp("s_t.json"), "--point", "0.5,0.5", "--iters", "3", "--log", tmp("log.jsonl"), "--history",
           tmp("h.json"), "--vtk", tmp("s.vtk"), "-o", tmp("s_r.json")});
  REQUIRE(r.code == 0);
  CHECK(run_cli({"check", tmp("s_r.json")}).code == 0);
  r = run_cli({"stats", tmp("s_r.json"), "--initial", tmp("s_t.json"), "--history", tmp("h.json"), "-o", tmp("rep.json")});
  REQUIRE(r.code == 0);
  const Json rep = load_json(tmp("rep.json"));
  for (const char* key : {"gamma_max_initial", "gamma_max_current", "gamma_ratio", "similarity_class_count", "d", "D",
                          "D_over_d", "C_qu", "C_BDV_lb"})
    CHECK(rep.contains(key));
  CHECK(rep["gamma_ratio"].get<double>() <= 9.6569);
  std::ifstream log(tmp("log.jsonl"));
  std::string line;
  int lines = 0;
  while (std::getline(log, line)) {
    CHECK(Json::parse(line).contains("bisections"));
    ++lines;
  }
  CHECK(lines >= 3);
  CHECK(slurp(tmp("s.vtk")).find("CELL_TYPES") != std::string::npos);

  REQUIRE(run_cli({"export", tmp("s_r.json"), "-o", tmp("e.vtk")}).code == 0);
  CHECK(slurp(tmp("e.vtk")) == slurp(tmp("s.vtk")));
}

TEST_CASE("cli runs are deterministic") {
  Scratch tmp;
  REQUIRE(run_cli({"color", data_dir + "/fichera.json", "--order", "valency", "-o", tmp("f.json")}).code == 0);
  REQUIRE(run_cli({"init", tmp("f.json"), "-o", tmp("f_t.json")}).code == 0);
  for (const char* out : {"a.json", "b.json"})
    REQUIRE(run_cli({"refine", tmp("f_t.json"), "--random", "3", "--seed", "9", "--iters", "5", "-o", tmp(out)}).code == 0);
  CHECK(slurp(tmp("a.json")) == slurp(tmp("b.json")));
  REQUIRE(run_cli({"refine", tmp("f_t.json"), "--random", "3", "--seed", "10", "--iters", "5", "-o", tmp("c.json")}).code == 0);
  CHECK(slurp(tmp("a.json")) != slurp(tmp("c.json")));

  std::ofstream(tmp("marks.txt")) << "0 1\n5\n";
  REQUIRE(run_cli({"refine", tmp("f_t.json"), "--marks", tmp("marks.txt"), "-o", tmp("m.json")}).code == 0);
  CHECK(run_cli({"check", tmp("m.json")}).code == 0);
}

TEST_CASE("cli errors") {
  Scratch tmp;
  Run r = run_cli({"check", data_dir + "/hanging.json"});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.out)["violations"].size() >= 1);

  std::ofstream(tmp("trunc.json")) << "{\"dim\": 2, \"vertices\": [[0,";
  r = run_cli({"check", tmp("trunc.json")});
  CHECK(r.code == 2);
  CHECK(Json::parse(r.err)["error"] == "ParseError");
  CHECK(r.err.find('\n') == r.err.size() - 1);

  CHECK(run_cli({"check", tmp("missing.json")}).code == 2);
  CHECK(run_cli({"refine", data_dir + "/kuhn2d.json", "--point", "0.5,0.5"}).code == 1);  // not initialized
  CHECK(run_cli({"bogus"}).code == 1);

  REQUIRE(run_cli({"color", data_dir + "/kuhn2d.json", "-o", tmp("k.json")}).code == 0);
  REQUIRE(run_cli({"init", tmp("k.json"), "-o", tmp("k_t.json")}).code == 0);
  CHECK(run_cli({"refine", tmp("k_t.json"), "--point", "0.5,0.5", "--random", "2"}).code == 1);
  r = run_cli({"refine", tmp("k_t.json"), "--point", "5,5"});
  CHECK(r.code == 1);
  CHECK(Json::parse(r.err)["error"] == "PointOutside");
  CHECK(run_cli({"init", data_dir + "/kuhn2d.json", "-o", tmp("x.json")}).code == 1);  // uncolored
}
