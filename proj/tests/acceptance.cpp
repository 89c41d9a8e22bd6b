// Acceptance run: one line per criterion, nonzero exit if any fails.
// Tolerances and time limits are fixed here, not taken from the library.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "conemaps/cli.hpp"
#include "conemaps/cones.hpp"
#include "conemaps/fixtures.hpp"
#include "conemaps/harness.hpp"
#include "conemaps/report.hpp"

using namespace conemaps;

namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string num(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

int failed = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) o.require(false, "runtime " + num(secs) + " s >= " + num(limit_s) + " s");
  if (!o.ok) ++failed;
  std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << id << ". " << title << " (" << num(secs) << " s)";
  if (!o.detail.empty()) std::cout << " -- " << o.detail;
  std::cout << std::endl;
}

CMatrix random_psd(int dim, Rng& rng) {
  const CMatrix g = random_gaussian(dim, dim, rng);
  return g * g.adjoint();
}

std::string run_cli_capture(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"conemaps"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  run_cli(int(argv.size()), argv.data(), out, err);
  return out.str();
}

std::string run_process(const std::string& cmd) {
  std::string text;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return text;
  std::array<char, 4096> buf{};
  std::size_t k;
  while ((k = std::fread(buf.data(), 1, buf.size(), p)) > 0) text.append(buf.data(), k);
  ::pclose(p);
  return text;
}

}  // namespace

int main() {
  criterion(1, "transpose identities on 200 maps at (2,2), (2,3), (3,3)", 10.0, [] {
    Outcome o;
    for (Dims d : {Dims(2, 2), Dims(2, 3), Dims(3, 3)}) {
      const TheoremReport r = verify(TheoremId::L4, d, 200, kSeed);
      o.require(r.tolerance <= 1e-12, "tolerance looser than 1e-12");
      o.require(r.passed() && r.worst_violation <= 1e-12,
                std::to_string(d.n) + "x" + std::to_string(d.m) + " worst " + num(r.worst_violation));
      o.require(r.checks == 200 * 4, "check count " + std::to_string(r.checks));
    }
    return o;
  });

  criterion(2, "CP test vs maximally entangled probes, 200 maps at n = m = 3", 30.0, [] {
    Outcome o;
    HarnessConfig cfg;
    cfg.omega_probes = 200;
    const TheoremReport r = verify(TheoremId::L8, Dims(3, 3), 200, kSeed, kDefaultTol, cfg);
    o.require(r.passed(), std::to_string(r.failures.size()) + " failures");
    o.require(r.stat("bridge_max_error") <= 1e-12, "bridge error " + num(r.stat("bridge_max_error")));
    o.require(r.boundary < 20, std::to_string(r.boundary) + " boundary instances");
    o.require(r.stat("cp") >= 20 && r.stat("not_cp") >= 20, "outcomes one-sided");
    o.detail += (o.detail.empty() ? "" : "; ") + num(r.stat("cp")) + " CP, " + num(r.stat("not_cp")) +
                " not CP, " + std::to_string(r.boundary) + " boundary";
    return o;
  });

  criterion(3, "four-way agreement of the dual-cone conditions, K in {CP, COP, P, D}", 180.0, [] {
    Outcome o;
    const TheoremReport r = verify(TheoremId::T1, Dims(3, 3), 200, kSeed);
    o.require(r.passed(), std::to_string(r.failures.size()) + " disagreements");
    for (const char* k : {"cp", "cop", "p", "d"}) {
      const std::string key(k);
      const double in = r.stat(key + "_in"), out = r.stat(key + "_out"), bd = r.stat(key + "_boundary");
      o.require(in + out + bd == 200, key + " trial count");
      o.require(in >= 20 && out >= 20, key + " outcomes one-sided");
      o.require(bd <= 20, key + " boundary " + num(bd));
      o.detail += (o.detail.empty() ? "" : ", ") + key + " " + num(in) + "/" + num(out) + "/" + num(bd);
    }
    o.detail += " (in/out/boundary)";
    return o;
  });

  criterion(4, "500 (P, D) pairs pair nonnegatively; fixture pair strictly negative", 120.0, [] {
    Outcome o;
    const TheoremReport r = verify(TheoremId::T13, Dims(3, 3), 500, kSeed);
    o.require(r.tolerance <= 1e-9, "tolerance looser than 1e-9");
    o.require(r.passed(), std::to_string(r.failures.size()) + " failures");
    o.require(r.stat("min_pairing") >= -1e-9, "min pairing " + num(r.stat("min_pairing")));
    const double fx = trace_pairing(fixtures::choi_map().choi(), fixtures::choi_map_witness_state()).real();
    o.require(fx < 0 && std::abs(fx) > 1e-6, "fixture pairing " + num(fx));
    return o;
  });

  criterion(5, "decomposition certificates for 100 A + PT(B); fixture witness", 180.0, [] {
    Outcome o;
    const Dims d(3, 3);
    Rng rng(kSeed);
    int in = 0;
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const CMatrix x = random_psd(9, rng) + partial_transpose(random_psd(9, rng), d);
      const Verdict v = in_E(x, d, {}, substream_seed(kSeed, std::uint64_t(k)));
      if (!v.in()) continue;
      const auto& dec = std::get<Decomposition>(v.certificate);
      const double sc = 1.0 + x.norm();
      const double res = (x - dec.a - partial_transpose(dec.b, d)).norm() / sc;
      const bool psd = is_psd(0.5 * (dec.a + dec.a.adjoint())).psd && is_psd(0.5 * (dec.b + dec.b.adjoint())).psd;
      worst = std::max(worst, res);
      in += (res <= 1e-9 && psd);
    }
    o.require(in == 100, std::to_string(100 - in) + " instances without a valid certificate");
    const CMatrix c = fixtures::choi_map().choi();
    const Verdict f = in_E(c, d);
    o.require(f.out(), "fixture not OUT");
    if (f.out()) {
      const Witness& w = std::get<Witness>(f.certificate);
      o.require(in_F(w.w, d).in(), "witness not in F");
      o.require(std::abs(w.w.trace().real() - 1.0) <= 1e-9, "witness trace");
      const double val = trace_pairing(c, w.w).real();
      o.require(val < -1e-6, "Tr(C w) = " + num(val));
    }
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("worst residual ") + num(worst);
    return o;
  });

  criterion(6, "separability at 2x2 and 2x3: 200 mixtures IN, 50 entangled pure states OUT", 60.0, [] {
    Outcome o;
    int wrong = 0;
    for (Dims d : {Dims(2, 2), Dims(2, 3)}) {
      Rng rng(substream_seed(kSeed, std::uint64_t(d.m)));
      for (int k = 0; k < 200; ++k) {
        CMatrix rho = CMatrix::Zero(d.composite(), d.composite());
        const int terms = uniform_int(rng, 1, 8);
        for (int j = 0; j < terms; ++j)
          rho += uniform(rng, 0.05, 1.0) * tensor(random_density(d.n, rng, uniform_int(rng, 1, d.n)),
                                                  random_density(d.m, rng, uniform_int(rng, 1, d.m)));
        rho /= rho.trace().real();
        rho = 0.5 * (rho + rho.adjoint());
        if (!is_ppt_state(rho, d).in() || !is_separable(rho, d).in()) ++wrong;
      }
      for (int k = 0; k < 50; ++k) {
        // Schmidt coefficients bounded away from zero: rank 2 by construction.
        const double s0 = uniform(rng, 0.2, 0.8);
        const CMatrix u = eig_hermitian(random_hermitian(d.n, rng)).eigenvectors;
        const CMatrix v = eig_hermitian(random_hermitian(d.m, rng)).eigenvectors;
        CVector psi = std::sqrt(s0) * tensor(CVector(u.col(0)), CVector(v.col(0))) +
                      std::sqrt(1 - s0) * tensor(CVector(u.col(1)), CVector(v.col(1)));
        psi.normalize();
        const CMatrix rho = psi * psi.adjoint();
        if (!is_separable(0.5 * (rho + rho.adjoint()), d).out()) ++wrong;
      }
    }
    o.require(wrong == 0, std::to_string(wrong) + " misclassified");
    return o;
  });

  criterion(7, "100 decomposable beta, 32 alpha in P at n = 3: beta o alpha* is CP", 60.0, [] {
    Outcome o;
    const Dims d(3, 3);
    const auto alphas = sample_maps(ConeId::MapP, d, 32, substream_seed(kSeed, 1));
    const auto betas = sample_maps(ConeId::MapD, d, 100, substream_seed(kSeed, 2));
    int bad = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const MapRep& a : alphas) o.require(in_P(a).in(), "alpha sample not in P");
    for (const MapRep& b : betas) {
      for (const MapRep& a : alphas) {
        const Verdict v = is_cp(compose_left(b, adjoint(a)));
        bad += !v.in();
        worst = std::min(worst, std::get<std::vector<SpectrumRecord>>(v.certificate)[0].min_eig);
      }
    }
    o.require(bad == 0, std::to_string(bad) + " of 3200 compositions not CP");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("min eigenvalue ") + num(worst);
    return o;
  });

  criterion(8, "verify reports are byte-identical across runs", 0.0, [] {
    Outcome o;
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"verify", "T1", "3", "3", "--trials", "10", "--seed", "1"},
          std::vector<std::string>{"verify", "T13", "3", "3", "--trials", "50", "--seed", "2", "--format", "markdown"},
          std::vector<std::string>{"verify", "L16", "3", "3", "--trials", "20"}}) {
      const std::string a = run_cli_capture(args), b = run_cli_capture(args);
      o.require(!a.empty() && a == b, "in-process " + args[1]);
      std::string cmd = CONEMAPS_BIN;
      for (const auto& s : args) cmd += " " + s;
      const std::string p = run_process(cmd), q = run_process(cmd);
      o.require(!p.empty() && p == q && p == a, "process " + args[1]);
    }
    return o;
  });

  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
