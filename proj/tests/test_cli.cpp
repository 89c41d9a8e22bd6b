#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "conemaps/cli.hpp"
#include "conemaps/cones.hpp"
#include "conemaps/mapfile.hpp"
#include "conemaps/random.hpp"

using namespace conemaps;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "conemaps");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("conemaps_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_map(const TempDir& dir, const std::string& name, const MapRep& phi) {
  const std::string p = dir.file(name);
  write_mapfile(p, MapFile{phi.dims(), phi.choi(), std::nullopt});
  return p;
}

std::string fixture(const char* name) { return std::string(FIXTURE_DIR) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("map files round-trip bit-exactly") {
  Rng rng(51);
  for (Dims d : {Dims(1, 1), Dims(2, 3), Dims(3, 3)}) {
    CMatrix x = random_gaussian(d.composite(), d.composite(), rng);
    x(0, 0) = Complex(1.0 / 3.0, -0.0);
    if (x.size() > 1) x(0, 1) = Complex(std::numeric_limits<double>::denorm_min(), 1e300);
    const MapFile f{d, x, std::nullopt};
    const MapFile g = parse_mapfile(format_mapfile(f));
    CHECK(g.dims == d);
    CHECK(g.choi == x);
    CHECK_FALSE(g.violation);
    CHECK(format_mapfile(g) == format_mapfile(f));
  }
  const MapFile w = parse_mapfile(format_mapfile(MapFile{Dims(1, 1), CMatrix::Identity(1, 1), -0.125}));
  REQUIRE(w.violation);
  CHECK(*w.violation == -0.125);
  CHECK(format_double(2.0) == "2.0");
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("map file validation") {
  CHECK_THROWS_AS(parse_mapfile("{\"n\": 1, \"m\": 1, \"choi\": [[1.0, 0.0]"), ParseError);
  CHECK_THROWS_AS(parse_mapfile("{\"n\": 1, \"m\": 2, \"choi\": [[1.0, 0.0]]}"), ParseError);
  CHECK_THROWS_AS(parse_mapfile("{\"n\": 0, \"m\": 1, \"choi\": []}"), ParseError);
  CHECK_THROWS_AS(parse_mapfile("{\"n\": 1, \"m\": 1, \"choi\": [[1.0]]}"), ParseError);
  CHECK_THROWS_AS(parse_mapfile("{\"n\": 1, \"m\": 1, \"choi\": [[\"x\", 0.0]]}"), ParseError);
  CHECK_THROWS_AS(parse_mapfile("{\"n\": 1, \"m\": 1}"), ParseError);
  CHECK_THROWS_AS(read_mapfile("/nonexistent/file.json"), ParseError);
  const MapFile ok = parse_mapfile("{\"n\": 1, \"m\": 1, \"choi\": [[2, -1]], \"extra\": true}");
  CHECK(ok.choi(0, 0) == Complex(2.0, -1.0));
}

TEST_CASE("check") {
  TempDir dir;
  const std::string id = write_map(dir, "id.json", identity_map(2));
  CHECK(run({"check", id, "cp"}).code == kExitIn);
  const Run cop = run({"check", id, "cop"});
  CHECK(cop.code == kExitOut);
  CHECK(cop.out.find("OUT") == 0);
  CHECK(cop.out.find("min_eig(PT(C)) = -1") != std::string::npos);
  CHECK(run({"check", id, "d"}).code == kExitIn);
  CHECK(run({"check", id, "psd"}).code == kExitIn);
  CHECK(run({"check", id, "f"}).code == kExitOut);
  CHECK(run({"check", id, "s"}).code == kExitOut);
  CHECK(run({"check", fixture("choi_map.json"), "d"}).code == kExitOut);
  const Run pos = run({"check", fixture("choi_map.json"), "pos", "--restarts", "4"});
  CHECK(pos.code == kExitIn);
  CHECK(pos.out.find("heuristic") != std::string::npos);
  CHECK(run({"check", fixture("choi_map_witness_state.json"), "sep"}).code == kExitOut);

  {
    std::ofstream f(dir.file("trunc.json"));
    f << "{\"n\": 2, \"m\": 2, \"choi\": [[1.0, 0.0], [0.0";
  }
  CHECK(run({"check", dir.file("trunc.json"), "cp"}).code == kExitParse);
  CHECK(run({"check", dir.file("missing.json"), "cp"}).code == kExitParse);
  CHECK(run({"check", id, "nonsense"}).code == kExitUnknownName);

  Rng rng(52);
  write_mapfile(dir.file("nh.json"), MapFile{Dims(2, 2), random_gaussian(4, 4, rng), std::nullopt});
  CHECK(run({"check", dir.file("nh.json"), "cp"}).code == kExitDimension);
  CHECK(run({"check"}).code == kExitParse);
  CHECK(run({}).code == kExitParse);
}

TEST_CASE("pair") {
  TempDir dir;
  const std::string id = write_map(dir, "id.json", identity_map(2));
  const Run p = run({"pair", id, id});
  CHECK(p.code == 0);
  CHECK(std::stod(p.out) == 4.0);
  CHECK(p.out == "4.00000000000\n");

  const std::string a = write_map(dir, "a.json", MapRep(Dims(2, 2), [] {
                                    Rng rng(1);
                                    return random_density(4, rng);
                                  }()));
  const std::string b = write_map(dir, "b.json", MapRep(Dims(2, 2), [] {
                                    Rng rng(2);
                                    return random_density(4, rng);
                                  }()));
  CHECK(std::stod(run({"pair", a, b}).out) >= 0.0);
  const std::string c = write_map(dir, "c.json", identity_map(3));
  CHECK(run({"pair", id, c}).code == kExitDimension);
}

TEST_CASE("witness") {
  TempDir dir;
  const std::string out = dir.file("w.json");
  const Run r = run({"witness", fixture("choi_map.json"), "--out", out});
  CHECK(r.code == 0);
  const MapFile w = read_mapfile(out);
  REQUIRE(w.violation);
  CHECK(*w.violation < 0.0);
  CHECK(in_F(w.choi, w.dims).in());
  CHECK(std::abs(w.choi.trace().real() - 1.0) <= 1e-9);
  const MapRep c = read_mapfile(fixture("choi_map.json")).map();
  CHECK(trace_pairing(c.choi(), w.choi).real() == doctest::Approx(*w.violation).epsilon(1e-9));

  const Run to_stdout = run({"witness", fixture("choi_map.json")});
  CHECK(to_stdout.code == 0);
  CHECK(parse_mapfile(to_stdout.out).choi == w.choi);

  const std::string cp = write_map(dir, "cp.json", identity_map(3));
  const Run none = run({"witness", cp});
  CHECK(none.code == 1);
  CHECK(none.out == "none\n");
}

TEST_CASE("random and verify") {
  TempDir dir;
  const Run a = run({"random", "cp", "3", "3", "--seed", "7"});
  const Run b = run({"random", "cp", "3", "3", "--seed", "7"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(is_cp(parse_mapfile(a.out).map()).in());
  CHECK(run({"random", "cp", "3", "3", "--seed", "8"}).out != a.out);
  CHECK(run({"random", "psd", "2", "2"}).code == 0);
  CHECK(run({"random", "blob", "2", "2"}).code == kExitUnknownName);
  CHECK(run({"random", "d", "2", "2", "--out", dir.file("d.json")}).code == 0);
  CHECK(is_decomposable(read_mapfile(dir.file("d.json")).map()).in());

  const Run v = run({"verify", "L4", "3", "3", "--trials", "100", "--seed", "1", "--format", "json"});
  CHECK(v.code == 0);
  CHECK(v.out.find("\"status\": \"PASS\"") != std::string::npos);
  CHECK(run({"verify", "L4", "3", "3", "--trials", "100", "--seed", "1"}).out == v.out);
  const Run md = run({"verify", "L10", "2", "2", "--trials", "5", "--format", "markdown"});
  CHECK(md.out.rfind("# PASS", 0) == 0);
  CHECK(run({"verify", "T99", "3", "3"}).code == kExitUnknownName);
  CHECK(run({"verify", "L4", "3", "3", "--format", "xml"}).code == kExitParse);
}

TEST_CASE("process exit codes") {
  const std::string bin = CONEMAPS_BIN;
  auto status = [&](const std::string& args) {
    const int s = std::system((bin + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("check " + fixture("choi_map.json") + " cp") == kExitOut);
  CHECK(status("check " + fixture("choi_map.json") + " d") == kExitOut);
  CHECK(status("check " + fixture("choi_map_witness_state.json") + " f") == kExitIn);
  CHECK(status("frobnicate") == kExitParse);
  CHECK(status("--help") == 0);
}

}  // TEST_SUITE
