// Regenerates data/fixtures/ from the compiled-in fixture definitions.
//   make_fixtures <dir>

#include <iostream>
#include <string>

#include "conemaps/fixtures.hpp"
#include "conemaps/mapfile.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 64;
  }
  using namespace conemaps;
  const std::string dir = argv[1];
  const MapRep c = fixtures::choi_map();
  write_mapfile(dir + "/choi_map.json", MapFile{c.dims(), c.choi(), std::nullopt});
  write_mapfile(dir + "/choi_map_witness_state.json",
                MapFile{Dims(3, 3), fixtures::choi_map_witness_state(), std::nullopt});
  return 0;
}
