// JSON matrix files:
//   { "n": 2, "m": 3, "choi": [[re, im], ...] }
// with (n*m)^2 entries in row-major order of the composite index i*m + r.
// Numbers are written with 17 significant digits, so write-then-read is
// bit-exact. Unknown top-level fields are ignored on read.

#ifndef CONEMAPS_MAPFILE_HPP
#define CONEMAPS_MAPFILE_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "conemaps/choi.hpp"

namespace conemaps {

struct MapFile {
  Dims dims;
  CMatrix choi;
  /// Written after "choi" when set (witness files carry their violation).
  std::optional<double> violation;

  MapRep map() const { return MapRep(dims, choi); }
};

/// Malformed text, wrong entry count, non-finite numbers.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MapFile parse_mapfile(const std::string& text);
std::string format_mapfile(const MapFile& f);

MapFile read_mapfile(const std::string& path);
void write_mapfile(const std::string& path, const MapFile& f);

/// Shortest round-trip form at 17 significant digits ("%.17g", with ".0"
/// appended to integral values so readers keep them as floating point).
std::string format_double(double x);

}  // namespace conemaps

#endif  // CONEMAPS_MAPFILE_HPP
