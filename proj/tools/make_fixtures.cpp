#include <iostream>
#include <string>

#include "nvb/fixtures.hpp"
#include "nvb/io.hpp"

// Writes every bundled mesh as <dir>/<name>.json.
int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: nvb_fixtures <output-dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  for (const std::string& name : nvb::fixtures::bundled_names())
    nvb::save_mesh(dir + "/" + name + ".json", nvb::fixtures::bundled(name), std::nullopt);
  return 0;
}
