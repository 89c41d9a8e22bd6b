#include "conemaps/cli.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "conemaps/cones.hpp"
#include "conemaps/harness.hpp"
#include "conemaps/mapfile.hpp"
#include "conemaps/report.hpp"

namespace conemaps {

namespace {

// An error that already knows its exit code.
struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

int exit_code(Status s) {
  switch (s) {
    case Status::In:
      return kExitIn;
    case Status::Out:
      return kExitOut;
    case Status::Undecided:
      return kExitUndecided;
  }
  return kExitInternal;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt_vector(const CVector& v) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    os << (i ? ", " : "") << '[' << format_double(v(i).real()) << ", "
       << format_double(v(i).imag()) << ']';
  }
  os << ']';
  return os.str();
}

struct CertificatePrinter {
  std::ostream& out;

  void operator()(const std::monostate&) const {}
  void operator()(const std::vector<SpectrumRecord>& recs) const {
    for (const SpectrumRecord& r : recs) {
      out << "min_eig(" << r.label << ") = " << fmt(r.min_eig) << "\n";
      out << "eigenvector(" << r.label << ") = " << fmt_vector(r.eigenvector) << "\n";
    }
  }
  void operator()(const Decomposition& d) const {
    out << "decomposition residual = " << fmt(d.residual) << " after " << d.iterations
        << " iterations\n";
  }
  void operator()(const Witness& w) const {
    out << "witness Tr(x w) = " << fmt(w.value) << "\n";
    if (w.omega_value) out << "n omega((iota(x)phi*)(w)) = " << fmt(*w.omega_value) << "\n";
  }
  void operator()(const ProductVectors& p) const {
    out << "product value = " << fmt(p.value) << "\n";
    out << "xi = " << fmt_vector(p.xi) << "\n";
    out << "eta = " << fmt_vector(p.eta) << "\n";
  }
  void operator()(const ViolatingMap& v) const {
    out << "generator " << v.index << " min_eig = " << fmt(v.min_eig) << "\n";
  }
  void operator()(const SeparableDecomposition& s) const {
    out << "product decomposition with " << s.weights.size() << " terms, residual "
        << fmt(s.residual) << "\n";
  }
  void operator()(const EntanglementWitness& w) const {
    out << "entanglement witness (" << w.source << ") Tr(W rho) = " << fmt(w.value) << "\n";
  }
};

void print_verdict(const Verdict& v, std::ostream& out) {
  out << status_name(v.status);
  if (v.heuristic) out << " (heuristic)";
  out << "\n";
  if (v.restarts > 0) out << "restarts = " << v.restarts << "\n";
  if (!v.note.empty()) out << "note: " << v.note << "\n";
  std::visit(CertificatePrinter{out}, v.certificate);
}

MapFile load(const std::string& path) {
  try {
    return read_mapfile(path);
  } catch (const ParseError& e) {
    throw CliError(kExitParse, path + ": " + e.what());
  }
}

ConeId cone_or_throw(const std::string& name) {
  if (auto c = parse_cone(name)) return *c;
  throw CliError(kExitUnknownName, "unknown cone '" + name + "'");
}

Verdict check_cone(ConeId cone, const MapFile& f, double tol, std::uint64_t seed, int restarts) {
  DykstraConfig cfg;
  cfg.tol = tol;
  const CMatrix& x = f.choi;
  const Dims d = f.dims;
  switch (cone) {
    case ConeId::MapCP:
      return is_cp(f.map(), tol);
    case ConeId::MapCOP:
      return is_cop(f.map(), tol);
    case ConeId::MapP:
      return in_P(f.map(), tol);
    case ConeId::MapD:
      return is_decomposable(f.map(), cfg, seed);
    case ConeId::MapS:
      return in_S(f.map(), tol, seed);
    case ConeId::MapPOS:
      return is_positive_map(f.map(), restarts, tol, seed);
    case ConeId::OpPSD: {
      require_hermitian(x, "psd");
      const PsdResult r = is_psd(x, tol);
      Verdict v;
      v.status = r.psd ? Status::In : Status::Out;
      v.certificate = std::vector<SpectrumRecord>{{"x", r.min_eig, r.min_vec}};
      return v;
    }
    case ConeId::OpF:
      return in_F(x, d, tol);
    case ConeId::OpE:
      return in_E(x, d, cfg, seed);
    case ConeId::OpSEP: {
      require_hermitian(x, "sep");
      const double tr = x.trace().real();
      if (!(tr > 0.0)) throw std::invalid_argument("sep: trace must be positive");
      return is_separable(x / tr, d, tol, seed);
    }
    case ConeId::OpBlockPos:
      return is_block_positive(x, d, restarts, tol, seed);
  }
  throw CliError(kExitInternal, "unhandled cone");
}

ConeId random_cone(const std::string& name) {
  static const std::map<std::string, ConeId> aliases{
      {"psd", ConeId::MapCP}, {"f", ConeId::MapP},   {"e", ConeId::MapD},
      {"sep", ConeId::MapS},  {"blockpos", ConeId::MapPOS}};
  const ConeId c = cone_or_throw(name);
  if (is_map_cone(c)) return c;
  return aliases.at(name);
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliError(kExitParse, "cannot write " + path);
  f << text;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cones of positive maps: membership, pairings, witnesses, verification",
               "conemaps"};
  app.require_subcommand(1);

  double tol = kDefaultTol;
  std::uint64_t seed = kDefaultSeed;
  int restarts = 8;
  int trials = 100;
  std::string file, file_b, cone_name_arg, theorem_arg, out_path, format = "json";
  int n = 0, m = 0;

  auto* check = app.add_subcommand("check", "cone membership with certificate");
  check->add_option("file", file, "map/operator file")->required();
  check->add_option("cone", cone_name_arg,
                    "cp, cop, p, d, s, pos, psd, f, e, sep, blockpos")->required();

  auto* pair = app.add_subcommand("pair", "Tr(C_A C_B)");
  pair->add_option("file_a", file, "first map")->required();
  pair->add_option("file_b", file_b, "second map")->required();

  auto* witness = app.add_subcommand("witness", "F-witness of non-decomposability");
  witness->add_option("file", file, "map file")->required();

  auto* random = app.add_subcommand("random", "sample a cone element");
  random->add_option("cone", cone_name_arg, "cone name")->required();
  random->add_option("n", n, "input dimension")->required()->check(CLI::PositiveNumber);
  random->add_option("m", m, "output dimension")->required()->check(CLI::PositiveNumber);

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("theorem", theorem_arg,
                         "T1 T6 T12 T13 T18 C2 C19 L4 L5 L8 L10 L15 L16 L17")->required();
  verify_cmd->add_option("n", n, "input dimension")->required()->check(CLI::PositiveNumber);
  verify_cmd->add_option("m", m, "output dimension")->required()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--trials", trials, "trials per suite")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--format", format, "json or markdown");

  for (CLI::App* sub : {check, witness, random, verify_cmd}) {
    sub->add_option("--seed", seed, "random seed");
  }
  for (CLI::App* sub : {check, witness, verify_cmd}) {
    sub->add_option("--tol", tol, "relative tolerance")->check(CLI::PositiveNumber);
  }
  check->add_option("--restarts", restarts, "see-saw restarts")->check(CLI::PositiveNumber);
  for (CLI::App* sub : {witness, random}) sub->add_option("--out", out_path, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (check->parsed()) {
      const ConeId cone = cone_or_throw(cone_name_arg);
      const MapFile f = load(file);
      const Verdict v = check_cone(cone, f, tol, seed, restarts);
      print_verdict(v, out);
      return exit_code(v.status);
    }
    if (pair->parsed()) {
      const MapFile a = load(file), b = load(file_b);
      const double p = pairing(a.map(), b.map());
      out << std::setprecision(12) << std::showpoint << p << "\n";
      return 0;
    }
    if (witness->parsed()) {
      const MapFile f = load(file);
      DykstraConfig cfg;
      cfg.tol = tol;
      const Verdict v = is_decomposable(f.map(), cfg, seed);
      if (v.out()) {
        const Witness& w = std::get<Witness>(v.certificate);
        emit(format_mapfile(MapFile{f.dims, w.w, w.value}), out_path, out);
        if (!out_path.empty() && out_path != "-") out << "violation " << fmt(w.value) << "\n";
        return 0;
      }
      if (v.in()) {
        out << "none\n";
        return 1;
      }
      out << "undecided\n";
      if (!v.note.empty()) out << "note: " << v.note << "\n";
      return 2;
    }
    if (random->parsed()) {
      const ConeId cone = random_cone(cone_name_arg);
      const MapRep phi = sample_map(cone, Dims(n, m), seed);
      emit(format_mapfile(MapFile{phi.dims(), phi.choi(), std::nullopt}), out_path, out);
      return 0;
    }
    if (verify_cmd->parsed()) {
      const auto id = parse_theorem(theorem_arg);
      if (!id) throw CliError(kExitUnknownName, "unknown theorem '" + theorem_arg + "'");
      const auto fmt_id = parse_report_format(format);
      if (!fmt_id) throw CliError(kExitParse, "unknown format '" + format + "'");
      const TheoremReport r = verify(*id, Dims(n, m), trials, seed, tol);
      out << emit_report(r, *fmt_id);
      return r.passed() ? 0 : 1;
    }
  } catch (const CliError& e) {
    err << "error: " << e.what() << "\n";
    return e.code;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return kExitDimension;
  } catch (const NotHermitianError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitDimension;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitDimension;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitParse;
}

}  // namespace conemaps
