#include "conemaps/mapfile.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace conemaps {

std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("format_double: non-finite value");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

MapFile parse_mapfile(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  for (const char* key : {"n", "m", "choi"}) {
    if (!j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  }
  if (!j["n"].is_number_integer() || !j["m"].is_number_integer()) {
    throw ParseError("n and m must be integers");
  }
  const long long n = j["n"].get<long long>(), m = j["m"].get<long long>();
  if (n < 1 || m < 1 || n > 1024 || m > 1024) throw ParseError("n and m must be in [1, 1024]");
  const auto& arr = j["choi"];
  if (!arr.is_array()) throw ParseError("choi must be an array");
  const long long N = n * m;
  if (static_cast<long long>(arr.size()) != N * N) {
    throw ParseError("choi has " + std::to_string(arr.size()) + " entries, expected " +
                     std::to_string(N * N));
  }
  MapFile f;
  f.dims = Dims(int(n), int(m));
  f.choi.resize(N, N);
  for (long long k = 0; k < N * N; ++k) {
    const auto& e = arr[std::size_t(k)];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("entry " + std::to_string(k) + " must be [re, im]");
    }
    const double re = e[0].get<double>(), im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im)) {
      throw ParseError("entry " + std::to_string(k) + " is not finite");
    }
    f.choi(k / N, k % N) = Complex(re, im);
  }
  if (j.contains("violation") && j["violation"].is_number()) {
    f.violation = j["violation"].get<double>();
  }
  return f;
}

std::string format_mapfile(const MapFile& f) {
  require_composite(f.choi, f.dims, "format_mapfile");
  std::ostringstream os;
  os << "{\n  \"n\": " << f.dims.n << ",\n  \"m\": " << f.dims.m << ",\n  \"choi\": [";
  const Eigen::Index N = f.choi.rows();
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index k = 0; k < N; ++k) {
      os << ((i == 0 && k == 0) ? "\n    " : (k == 0 ? ",\n    " : ", "));
      os << '[' << format_double(f.choi(i, k).real()) << ", "
         << format_double(f.choi(i, k).imag()) << ']';
    }
  }
  os << "\n  ]";
  if (f.violation) os << ",\n  \"violation\": " << format_double(*f.violation);
  os << "\n}\n";
  return os.str();
}

MapFile read_mapfile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_mapfile(ss.str());
}

void write_mapfile(const std::string& path, const MapFile& f) {
  const std::string text = format_mapfile(f);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace conemaps
