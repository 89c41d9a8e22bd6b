#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "conemaps/fixtures.hpp"
#include "conemaps/harness.hpp"
#include "harness_detail.hpp"

namespace conemaps {

using namespace detail;

namespace {

struct TheoremEntry {
  TheoremId id;
  std::string_view name;
};

constexpr std::array<TheoremEntry, 14> kTheorems{{
    {TheoremId::T1, "T1"},
    {TheoremId::T6, "T6"},
    {TheoremId::T12, "T12"},
    {TheoremId::T13, "T13"},
    {TheoremId::T18, "T18"},
    {TheoremId::C2, "C2"},
    {TheoremId::C19, "C19"},
    {TheoremId::L4, "L4"},
    {TheoremId::L5, "L5"},
    {TheoremId::L8, "L8"},
    {TheoremId::L10, "L10"},
    {TheoremId::L15, "L15"},
    {TheoremId::L16, "L16"},
    {TheoremId::L17, "L17"},
}};

constexpr std::array<TheoremId, 14> kTheoremIds{
    TheoremId::T1,  TheoremId::T6,  TheoremId::T12, TheoremId::T13, TheoremId::T18,
    TheoremId::C2,  TheoremId::C19, TheoremId::L4,  TheoremId::L5,  TheoremId::L8,
    TheoremId::L10, TheoremId::L15, TheoremId::L16, TheoremId::L17};

constexpr double kIdentityTol = 1e-12;
constexpr std::size_t kMaxRecordedFailures = 200;

constexpr std::array<ConeId, 4> kFourCones{ConeId::MapCP, ConeId::MapCOP, ConeId::MapP,
                                           ConeId::MapD};

// Accumulates checks into a report.
class Suite {
 public:
  explicit Suite(TheoremReport& r) : r_(r) {}

  void check(int trial, const std::string& what, double violation) {
    ++r_.checks;
    if (!std::isfinite(violation)) violation = std::numeric_limits<double>::max();
    if (violation > 0.0) {
      ++r_.histogram[int(std::floor(std::log10(violation)))];
      r_.worst_violation = std::max(r_.worst_violation, violation);
    }
    if (violation > r_.tolerance && r_.failures.size() < kMaxRecordedFailures) {
      r_.failures.push_back(Failure{trial, what, violation});
    } else if (violation > r_.tolerance) {
      ++dropped_;
    }
  }

  /// A yes/no agreement check: violation is `magnitude` when they disagree.
  void agree(int trial, const std::string& what, bool a, bool b, double magnitude) {
    check(trial, what, a == b ? 0.0 : std::max(magnitude, 2.0 * r_.tolerance));
  }

  void boundary() { ++r_.boundary; }
  void stat(std::string name, double value) { r_.stats.emplace_back(std::move(name), value); }
  void note(std::string text) { r_.notes.push_back(std::move(text)); }

  void finish() {
    if (dropped_ > 0) {
      note(std::to_string(dropped_) + " further failures not listed");
    }
  }

  const TheoremReport& report() const { return r_; }

 private:
  TheoremReport& r_;
  int dropped_ = 0;
};

std::uint64_t trial_seed(std::uint64_t seed, int block, int trial) {
  return substream_seed(substream_seed(seed, std::uint64_t(block)), std::uint64_t(trial));
}

MapRep gue_map(Dims d, Rng& rng) {
  CMatrix h = random_hermitian(d.composite(), rng);
  return MapRep(d, h / h.norm());
}

MapRep with_choi(Dims d, const CMatrix& c) { return MapRep(d, hermitian_part(c)); }

void require_square(Dims d, TheoremId id) {
  if (!d.square()) {
    throw DimensionError(std::string(theorem_name(id)) + " needs n == m");
  }
}

// The dual of the generated cone for each concrete K, as a cone to sample:
// CP <-> CP, COP <-> COP, P <-> D.
ConeId dual_sampler(ConeId k) {
  switch (k) {
    case ConeId::MapP:
      return ConeId::MapD;
    case ConeId::MapD:
      return ConeId::MapP;
    default:
      return k;
  }
}

// ---------------------------------------------------------------------------
// Identity suites.

void suite_l4(Suite& s, Dims d, int trials, std::uint64_t seed) {
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    const MapRep phi = gue_map(d, rng);
    const CMatrix& c = phi.choi();
    const double sc = scale_of(c);
    const MapRep phit = transpose_conj(phi);
    s.check(t, "C(phi^t) = (t(x)t)(C)", (phit.choi() - both_transpose(c, d)).norm() / sc);
    s.check(t, "C(phi^t) = C^t", (phit.choi() - c.transpose()).norm() / sc);
    const DualFunctional f = dual_functional(phi), ft = dual_functional(phit);
    double worst = 0.0, worst_tt = 0.0;
    for (int k = 0; k < 20; ++k) {
      CMatrix x = random_gaussian(d.composite(), d.composite(), rng);
      x /= x.norm();
      worst = std::max(worst, std::abs(ft(x) - f(x.transpose())) / sc);
      worst_tt = std::max(worst_tt, std::abs(ft(x) - f(both_transpose(x, d))) / sc);
    }
    s.check(t, "phi~^t(x) = phi~(x^t)", worst);
    s.check(t, "phi~^t = phi~ o (t(x)t)", worst_tt);
  }
}

void suite_l5(Suite& s, Dims d, int trials, std::uint64_t seed) {
  const int m = d.m;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    const MapRep alpha = sample_map(ConeId::MapCP, Dims(m, m), rng());
    const MapRep at = transpose_conj(alpha);
    const CMatrix x = random_hermitian(d.composite(), rng);
    const double sc = scale_of(x) * scale_of(alpha.choi());
    const CMatrix lhs = apply_local(at, x.transpose(), d.n);
    const CMatrix rhs = apply_local(alpha, x, d.n).transpose();
    s.check(t, "(iota(x)alpha^t)(x^t) = ((iota(x)alpha)(x))^t", (lhs - rhs).norm() / sc);
    s.check(t, "spectra under t(x)t agree", std::abs(min_eig(lhs) - min_eig(rhs)) / sc);
  }
}

void suite_l8(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
              double tol) {
  require_square(d, TheoremId::L8);
  const int n = d.n;
  int cp = 0, not_cp = 0;
  double bridge_max = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    // Half CP samples, half Gaussian Hermitian Choi matrices.
    const MapRep phi = (t % 2 == 0) ? sample_map(ConeId::MapCP, d, rng()) : gue_map(d, rng);
    const MapRep phis = adjoint(phi);
    const CMatrix& c = phi.choi();
    const double sc = scale_of(c);
    double bridge = 0.0, omega_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < cfg.omega_probes; ++k) {
      const CMatrix x = random_density(d.composite(), rng, 1);
      const double lhs = trace_pairing(c, x).real();
      const double rhs = n * omega_eval(apply_local(phis, x, n), n);
      bridge = std::max(bridge, std::abs(lhs - rhs));
      omega_min = std::min(omega_min, rhs);
    }
    s.check(t, "Tr(C x) = n omega((iota(x)phi*)(x))", bridge);
    bridge_max = std::max(bridge_max, bridge);
    const PsdResult r = is_psd(c, tol);
    if (std::abs(r.min_eig) <= 1e-7) {
      s.boundary();
      continue;
    }
    (r.psd ? cp : not_cp)++;
    const bool omega_ok = omega_min >= -tol * sc;
    s.agree(t, "is_cp vs omega probes", r.psd, omega_ok, std::abs(r.min_eig) / sc);
  }
  s.stat("cp", cp);
  s.stat("not_cp", not_cp);
  s.stat("bridge_max_error", bridge_max);
}

void suite_l10(Suite& s, Dims d, int trials, std::uint64_t seed) {
  require_square(d, TheoremId::L10);
  const int n = d.n;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    const MapRep phi = gue_map(d, rng);
    const MapRep phist = transpose_conj(adjoint(phi));
    CMatrix x = random_gaussian(d.composite(), d.composite(), rng);
    x /= x.norm();
    const double sc = scale_of(phi.choi());
    const Complex lhs = dual_functional(phi)(x);
    const Complex rhs = trpi_eval(apply_local(phist, x, n), d);
    s.check(t, "phi~ = Tr o pi o (iota(x)phi*t)", std::abs(lhs - rhs) / sc);
    const Complex pos = trpi_eval(x * x.adjoint(), d);
    s.check(t, "Tr o pi positive", std::max(0.0, -pos.real()) + std::abs(pos.imag()));
    const CMatrix a = random_gaussian(n, n, rng), b = random_gaussian(n, n, rng);
    const Complex prod = trpi_eval(tensor(a, b), d);
    s.check(t, "Tr o pi(a(x)b) = Tr(b^t a)",
            std::abs(prod - (b.transpose() * a).trace()) / (1.0 + a.norm() * b.norm()));
  }
}

// ---------------------------------------------------------------------------
// Cone suites.

void suite_l15(Suite& s, Dims d, int trials, std::uint64_t seed, double tol) {
  const std::vector<MapRep> id{identity_map(d.m)}, tr{transpose_map(d.m)};
  const std::vector<MapRep> both{identity_map(d.m), transpose_map(d.m)};
  int in = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    const CMatrix x = random_threshold_map(ConeId::MapD, d, rng).choi();
    const double margin = closed_margin(ConeId::MapD, x, d);
    const double band = 10.0 * tol * scale_of(x);
    const bool f = in_F(x, d, tol).in();
    const bool joint = pm_k_membership(x, d, id, tol).in() && pm_k_membership(x, d, tr, tol).in();
    const bool join = pm_k_membership(x, d, both, tol).in();
    if (std::abs(margin) <= band) {
      s.boundary();
      continue;
    }
    in += f;
    s.agree(t, "F vs P(iota) and P(t)", f, joint, std::abs(margin) / scale_of(x));
    s.agree(t, "F vs P(iota v t)", f, join, std::abs(margin) / scale_of(x));
  }
  s.stat("in_F", in);
}

void suite_l16(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
               double tol) {
  const int N = d.composite();
  double worst_residual = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    const CMatrix a = random_density(N, rng, uniform_int(rng, 1, N));
    const CMatrix b = random_density(N, rng, uniform_int(rng, 1, N));
    // Sums of low-rank terms sit on the boundary of E, where the projection
    // iteration converges sublinearly; the sum case uses full-rank terms.
    const CMatrix sum = random_density(N, rng) + partial_transpose(random_density(N, rng), d);
    const std::array<std::pair<const char*, CMatrix>, 3> cases{{
        {"A + PT(B) in E", sum},
        {"PSD in E", a},
        {"PT(PSD) in E", partial_transpose(b, d)},
    }};
    for (const auto& [what, x] : cases) {
      const Verdict v = in_E(x, d, cfg.dykstra, trial_seed(seed, 1, t));
      const double sc = scale_of(x);
      if (!v.in()) {
        s.check(t, what, std::numeric_limits<double>::infinity());
        continue;
      }
      const auto& dec = std::get<Decomposition>(v.certificate);
      const double recon = (x - dec.a - partial_transpose(dec.b, d)).norm() / sc;
      const double neg = std::max({0.0, -min_eig(dec.a) / sc, -min_eig(dec.b) / sc});
      worst_residual = std::max(worst_residual, recon);
      s.check(t, what, std::max(recon, neg > tol ? neg : 0.0));
    }
    // E pairs nonnegatively with F.
    const MapRep w = sample_map(ConeId::MapP, d, trial_seed(seed, 2, t));
    const double p = trace_pairing(w.choi(), sum).real();
    s.check(t, "Tr(E F) >= 0", std::max(0.0, -p));
  }
  s.stat("worst_residual", worst_residual);
}

void suite_l17(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
               double tol) {
  std::vector<MapRep> gens = sample_maps(ConeId::MapD, Dims(d.m, d.m), cfg.generators,
                                         substream_seed(seed, 99));
  gens.push_back(identity_map(d.m));
  gens.push_back(transpose_map(d.m));
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    const MapRep phi = sample_map(ConeId::MapP, d, rng());
    const Verdict vp = in_P(phi, tol);
    const Verdict vf = in_F(phi.choi(), d, tol);
    s.check(t, "in_P => in_F", vp.in() && !vf.in() ? 1.0 : 0.0);
    s.check(t, "P samples are in P", vp.in() ? 0.0 : 1.0);

    const CMatrix x = random_threshold_map(ConeId::MapD, d, rng).choi();
    const double margin = closed_margin(ConeId::MapD, x, d);
    if (std::abs(margin) <= 10.0 * tol * scale_of(x)) {
      s.boundary();
      continue;
    }
    s.agree(t, "P(M, D) vs F", pm_k_membership(x, d, gens, tol).in(), in_F(x, d, tol).in(),
            std::abs(margin) / scale_of(x));
  }
}

void suite_t1(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
              double tol) {
  Rng prng(substream_seed(seed, 7));
  const std::vector<CMatrix> probes = random_probes(d.composite(), cfg.probes, prng);
  for (std::size_t ki = 0; ki < kFourCones.size(); ++ki) {
    const ConeId k = kFourCones[ki];
    const std::string name(cone_name(k));
    if (k == ConeId::MapP && !d.square()) {
      s.note("cone p skipped: its targeted generators need n == m");
      continue;
    }
    const std::vector<MapRep> samples =
        sample_maps(k, Dims(d.m, d.m), cfg.generators, substream_seed(seed, 100 + ki));
    int in = 0, out = 0, bnd = 0;
    for (int t = 0; t < trials; ++t) {
      const int trial = int(ki) * trials + t;
      Rng rng(trial_seed(seed, int(ki) + 1, t));
      const MapRep phi = random_threshold_map(k, d, rng);
      const Theorem1Result r =
          theorem1_conditions(phi, k, samples, probes, tol, cfg.dykstra, rng());
      if (r.boundary) {
        s.boundary();
        ++bnd;
        continue;
      }
      (r.cond[1].holds ? in : out)++;
      double violation = 0.0;
      std::string which;
      for (int j = 0; j < 4; ++j) {
        if (r.cond[std::size_t(j)].holds != r.cond[1].holds) {
          violation = std::max(violation, std::abs(r.cond[std::size_t(j)].value));
          which += (which.empty() ? "" : ",") + std::to_string(j + 1);
        }
      }
      s.check(trial, name + ": (ii) vs (" + which + ")", violation / scale_of(phi.choi()));
    }
    s.stat(name + "_in", in);
    s.stat(name + "_out", out);
    s.stat(name + "_boundary", bnd);
  }
}

// Membership of phi in the generated cone for K, and in its dual, by
// closed forms; operators in E are decided by in_E.
struct Closed {
  bool holds = false;
  double margin = 0.0;
  bool undecided = false;
};

Closed closed_membership(ConeId target, const CMatrix& c, Dims d, const DykstraConfig& cfg,
                         std::uint64_t seed) {
  if (target != ConeId::MapP) {
    const double mg = closed_margin(target, c, d);
    return {mg >= 0.0, mg, false};
  }
  const Verdict v = in_E(c, d, cfg, seed);
  if (v.out()) return {false, std::get<Witness>(v.certificate).value, false};
  if (v.undecided()) return {false, 0.0, true};
  const Witness w = minimize_over_F(c, d, cfg, 2, seed);
  return {true, std::max(w.value, 0.0), false};
}

// Targeted dual generators certifying non-membership (Choi matrices).
std::vector<CMatrix> targeted_duals(ConeId target, const CMatrix& c, Dims d,
                                    const DykstraConfig& cfg, std::uint64_t seed) {
  std::vector<CMatrix> out;
  if (target == ConeId::MapCP || target == ConeId::MapD) out.push_back(projector(min_vec(c)));
  if (target == ConeId::MapCOP || target == ConeId::MapD) {
    out.push_back(partial_transpose(projector(min_vec(partial_transpose(c, d))), d));
  }
  if (target == ConeId::MapP) out.push_back(minimize_over_F(c, d, cfg, 2, seed).w);
  return out;
}

void suite_t6(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
              double tol) {
  for (std::size_t ki = 0; ki < kFourCones.size(); ++ki) {
    const ConeId k = kFourCones[ki];
    const std::string name(cone_name(k));
    // Generated cone for K: CP, COP, {Choi in F}, D; its dual samples from
    // CP, COP, D, {Choi in F}.
    const ConeId gen = k, dual = dual_sampler(k);
    // Closed form of the generated cone: PSD, PT(PSD), F, E. In the
    // closed_membership encoding F is MapD and E is MapP, i.e. the dual's tag.
    const ConeId target = dual;
    const std::vector<MapRep> duals = sample_maps(dual, d, cfg.generators,
                                                  substream_seed(seed, 200 + ki));
    int in = 0, out = 0;
    for (int t = 0; t < trials; ++t) {
      const int trial = int(ki) * trials + t;
      Rng rng(trial_seed(seed, int(ki) + 1, t));
      // Sampled pairs: generated cone against its dual.
      const MapRep phi = sample_map(gen, d, rng());
      const MapRep psi = sample_map(dual, d, rng());
      s.check(trial, name + ": pairing(gen, dual)", std::max(0.0, -pairing(phi, psi)));

      // Double dual: closed-form membership vs pairing with the dual.
      const MapRep x = random_threshold_map(target, d, rng);
      const CMatrix& c = x.choi();
      const std::uint64_t sd = rng();
      const Closed cl = closed_membership(target, c, d, cfg.dykstra, sd);
      double worst = std::numeric_limits<double>::infinity();
      for (const MapRep& g : duals) worst = std::min(worst, pairing(x, g));
      for (const CMatrix& g : targeted_duals(target, c, d, cfg.dykstra, sd)) {
        worst = std::min(worst, pairing(x, with_choi(d, unit_trace(g))));
      }
      const double band = 10.0 * tol * scale_of(c);
      const bool dual_ok = worst >= 0.0;
      if (cl.undecided || (cl.holds != dual_ok &&
                           (std::abs(cl.margin) <= band || std::abs(worst) <= band))) {
        s.boundary();
        continue;
      }
      (cl.holds ? in : out)++;
      s.agree(trial, name + ": closed form vs double dual", cl.holds, dual_ok,
              std::max(std::abs(cl.margin), std::abs(worst)) / scale_of(c));
    }
    s.stat(name + "_in", in);
    s.stat(name + "_out", out);
  }
}

void suite_t12(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
               double tol) {
  require_square(d, TheoremId::T12);
  for (std::size_t ki = 0; ki < kFourCones.size(); ++ki) {
    const ConeId k = kFourCones[ki];
    const std::string name(cone_name(k));
    std::vector<MapRep> samples =
        sample_maps(k, d, cfg.generators, substream_seed(seed, 300 + ki));
    for (MapRep& a : canonical_generators(k, d.m)) samples.push_back(unit_trace(a));
    int in = 0, out = 0;
    for (int t = 0; t < trials; ++t) {
      const int trial = int(ki) * trials + t;
      Rng rng(trial_seed(seed, int(ki) + 1, t));
      const MapRep beta = random_threshold_map(k, d, rng);
      const CMatrix& c = beta.choi();
      const std::uint64_t sd = rng();
      // Dual of the generated cone, closed form: PSD, PT(PSD), E, F.
      const Closed cl = closed_membership(k, c, d, cfg.dykstra, sd);
      std::vector<MapRep> alphas = samples;
      if (k == ConeId::MapP) {
        // beta o beta_w* has <p|.|p> = Tr(C_beta w) for the F-witness w.
        alphas.push_back(unit_trace(MapRep(d, minimize_over_F(c, d, cfg.dykstra, 2, sd).w)));
      }
      const Verdict ks = ksharp_membership(beta, alphas, tol);
      const double ks_val = std::get<ViolatingMap>(ks.certificate).min_eig;
      const double band = 10.0 * tol * scale_of(c);
      if (cl.undecided || (cl.holds != ks.in() &&
                           (std::abs(cl.margin) <= band || std::abs(ks_val) <= band))) {
        s.boundary();
        continue;
      }
      (cl.holds ? in : out)++;
      s.agree(trial, name + ": dual of generated cone vs K-sharp", cl.holds, ks.in(),
              std::max(std::abs(cl.margin), std::abs(ks_val)) / scale_of(c));
    }
    s.stat(name + "_in", in);
    s.stat(name + "_out", out);
  }
}

void suite_t13(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
               double tol) {
  double min_pair = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    const MapRep phi = sample_map(ConeId::MapP, d, rng());
    const MapRep psi = sample_map(ConeId::MapD, d, rng());
    if (!in_P(phi, tol).in()) {
      s.check(t, "P sample in P", std::numeric_limits<double>::infinity());
      continue;
    }
    if (!is_decomposable(psi, cfg.dykstra, rng()).in()) {
      s.check(t, "D sample decomposable", std::numeric_limits<double>::infinity());
      continue;
    }
    const double p1 = pairing(phi, psi), p2 = pairing(psi, phi);
    min_pair = std::min({min_pair, p1, p2});
    s.check(t, "pairing(P, D) >= -tol", std::max(0.0, -p1));
    s.check(t, "pairing(D, P) >= -tol", std::max(0.0, -p2));
  }
  s.stat("min_pairing", trials > 0 ? min_pair : 0.0);
  if (d == Dims(3, 3)) {
    const double fx = trace_pairing(fixtures::choi_map().choi(),
                                    fixtures::choi_map_witness_state()).real();
    s.stat("fixture_pairing", fx);
    s.check(trials, "fixture pairing < -10 tol", fx < -10.0 * tol ? 0.0 : 1.0);
  } else {
    s.note("fixture pairing needs n = m = 3");
  }
}

void suite_t18(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
               double tol) {
  require_square(d, TheoremId::T18);
  const std::vector<MapRep> pool =
      sample_maps(ConeId::MapP, d, cfg.generators, substream_seed(seed, 400));
  int in = 0, out = 0;
  auto compare = [&](int trial, const std::string& what, const MapRep& beta, std::uint64_t sd) {
    const Verdict dec = is_decomposable(beta, cfg.dykstra, sd);
    if (dec.undecided()) {
      s.boundary();
      return;
    }
    std::vector<MapRep> alphas = pool;
    const Witness w = dec.out() ? std::get<Witness>(dec.certificate)
                                : minimize_over_F(beta.choi(), d, cfg.dykstra, 2, sd);
    alphas.push_back(unit_trace(MapRep(d, w.w)));
    const Verdict ks = ksharp_membership(beta, alphas, tol);
    const double ks_val = std::get<ViolatingMap>(ks.certificate).min_eig;
    const double band = 10.0 * tol * scale_of(beta.choi());
    if (dec.in() != ks.in() && (std::abs(ks_val) <= band || std::abs(w.value) <= band)) {
      s.boundary();
      return;
    }
    (dec.in() ? in : out)++;
    s.agree(trial, what, dec.in(), ks.in(),
            std::max(std::abs(ks_val), std::abs(w.value)) / scale_of(beta.choi()));
  };
  double worst = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    // D in P-sharp holds exactly on every sample.
    const MapRep beta = sample_map(ConeId::MapD, d, rng());
    for (const MapRep& a : pool) {
      const double e = min_eig(compose_left(beta, adjoint(a)).choi());
      worst = std::min(worst, e);
      s.check(t, "beta o alpha* in CP", std::max(0.0, -e) / scale_of(beta.choi()));
    }
    compare(t, "decomposable sample vs K-sharp", beta, rng());
    compare(t, "random beta vs K-sharp", random_threshold_map(ConeId::MapP, d, rng), rng());
  }
  s.stat("min_eig_beta_alpha", trials > 0 ? worst : 0.0);
  s.stat("agree_in", in);
  s.stat("agree_out", out);
  if (d == Dims(3, 3)) {
    compare(trials, "fixture vs K-sharp", fixtures::choi_map(), substream_seed(seed, 401));
  }
}

void suite_c2(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
              double tol) {
  if (d.n > d.m) throw DimensionError("C2 needs n <= m");
  const int n = d.n, m = d.m, N = d.composite();
  std::vector<MapRep> alphas =
      sample_maps(ConeId::MapPOS, Dims(m, m), cfg.generators, substream_seed(seed, 500));
  alphas.push_back(unit_trace(identity_map(m)));
  alphas.push_back(unit_trace(transpose_map(m)));
  Rng prng(substream_seed(seed, 501));
  const std::vector<CMatrix> probes = random_probes(N, cfg.probes, prng);
  int sep = 0, ent = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    // CP map whose Choi matrix mixes a low-rank state with white noise.
    const double lambda = uniform(rng, 0.0, 1.0);
    const CMatrix c0 = (1.0 - lambda) * random_density(N, rng, uniform_int(rng, 1, 2)) +
                       lambda * CMatrix::Identity(N, N) / double(N);
    const MapRep phi(d, c0);
    const CMatrix& c = phi.choi();
    const double band = 10.0 * tol * scale_of(c);
    const DualFunctional f = dual_functional(phi);

    std::array<Condition, 5> cd;
    double v1 = std::numeric_limits<double>::infinity(), v2 = v1, v3 = v1, v4 = v1;
    for (std::size_t j = 0; j < alphas.size(); ++j) {
      const MapRep& a = alphas[j];
      const MapRep psi = sample_map(ConeId::MapCP, d, trial_seed(seed, 1, t * 1000 + int(j)));
      v1 = std::min(v1, pairing(phi, with_choi(d, unit_trace(apply_local(
                                                   transpose_conj(adjoint(a)), psi.choi(), n)))));
      v2 = std::min(v2, min_eig(apply_local(a, c, n)));
      const CMatrix y = apply_local(adjoint(a), f.density, n);
      for (const CMatrix& x : probes) v3 = std::min(v3, f(apply_local(a, x, n)).real());
      v3 = std::min(v3, f(apply_local(a, projector(min_vec(y)), n)).real());
      v4 = std::min(v4, min_eig(compose_left(a, phi).choi()));
    }
    v1 = std::min(v1, pairing(phi, with_choi(d, projector(min_vec(c)))));
    v1 = std::min(v1, pairing(phi, with_choi(d, partial_transpose(
                                                   projector(min_vec(partial_transpose(c, d))), d))));
    cd[0] = {v1 >= 0.0, v1};
    cd[1] = {v2 >= 0.0, v2};
    cd[2] = {v3 >= 0.0, v3};
    cd[3] = {v4 >= 0.0, v4};
    const CMatrix rho = unit_trace(CMatrix(f.density));
    const Verdict vs = is_separable(hermitian_part(rho), d, tol, trial_seed(seed, 2, t));
    if (vs.undecided()) {
      s.boundary();
      continue;
    }
    const double ppt = closed_margin(ConeId::MapD, f.density, d);
    cd[4] = {vs.in(), vs.in() ? std::max(ppt, 0.0) : std::min(ppt, 0.0)};
    bool agree = true, near = false;
    double violation = 0.0;
    for (const Condition& x : cd) {
      if (x.holds != cd[4].holds) {
        agree = false;
        violation = std::max(violation, std::abs(x.value));
      }
      near = near || std::abs(x.value) <= band;
    }
    if (!agree && near) {
      s.boundary();
      continue;
    }
    (cd[4].holds ? sep : ent)++;
    s.check(t, "(i)-(iv) vs (v) separability", agree ? 0.0 : violation / scale_of(c));
  }
  s.stat("separable", sep);
  s.stat("entangled", ent);
}

void suite_c19(Suite& s, Dims d, int trials, std::uint64_t seed, const HarnessConfig& cfg,
               double tol) {
  require_square(d, TheoremId::C19);
  int in = 0, out = 0;
  auto compare = [&](int trial, const std::string& what, const MapRep& phi, std::uint64_t sd) {
    const Verdict v = is_decomposable(phi, cfg.dykstra, sd);
    const std::optional<Witness> w = witness_search(phi.choi(), d, cfg.dykstra, 2, sd);
    const double sc = scale_of(phi.choi());
    if (v.undecided()) {
      s.boundary();
      return;
    }
    if (const auto* wit = std::get_if<Witness>(&v.certificate)) {
      // The reported value n omega((iota(x)phi*)(w)) is Tr(C w).
      s.check(trial, what + ": omega value = Tr(C w)",
              std::abs(*wit->omega_value - wit->value) / sc > kIdentityTol
                  ? std::abs(*wit->omega_value - wit->value) / sc
                  : 0.0);
      const bool valid = in_F(wit->w, d, tol).in() &&
                         std::abs(wit->w.trace().real() - 1.0) <= 1e-9 && wit->value < 0.0;
      s.check(trial, what + ": witness valid", valid ? 0.0 : 1.0);
    }
    const double wv = w ? w->value : 0.0;
    if (v.in() == !w.has_value() || std::abs(wv) > 10.0 * tol * sc || v.out()) {
      (v.in() ? in : out)++;
      s.agree(trial, what + ": decomposable vs no witness", v.in(), !w.has_value(),
              std::abs(wv) / sc);
    } else {
      s.boundary();
    }
  };
  for (int t = 0; t < trials; ++t) {
    Rng rng(trial_seed(seed, 0, t));
    compare(t, "D sample", sample_map(ConeId::MapD, d, rng()), rng());
    compare(t, "random map", random_threshold_map(ConeId::MapP, d, rng), rng());
  }
  if (d == Dims(3, 3)) {
    const MapRep fx = fixtures::choi_map();
    compare(trials, "fixture", fx, substream_seed(seed, 600));
    Rng rng(substream_seed(seed, 601));
    for (int k = 0; k < 50; ++k) {
      CMatrix h = random_hermitian(9, rng);
      h *= uniform(rng, 0.0, 0.05) / h.norm();
      compare(trials + 1 + k, "fixture perturbation", MapRep(d, fx.choi() + h), rng());
    }
  } else {
    s.note("fixture checks need n = m = 3");
  }
  s.stat("decomposable", in);
  s.stat("not_decomposable", out);
}

}  // namespace

std::string_view theorem_name(TheoremId id) {
  for (const auto& e : kTheorems) {
    if (e.id == id) return e.name;
  }
  return "?";
}

std::optional<TheoremId> parse_theorem(std::string_view name) {
  for (const auto& e : kTheorems) {
    if (e.name == name) return e.id;
  }
  return std::nullopt;
}

std::span<const TheoremId> all_theorems() { return kTheoremIds; }

double TheoremReport::stat(std::string_view name) const {
  for (const auto& [k, v] : stats) {
    if (k == name) return v;
  }
  throw std::out_of_range("TheoremReport: no stat " + std::string(name));
}

TheoremReport verify(TheoremId id, Dims d, int trials, std::uint64_t seed, double tol,
                     const HarnessConfig& cfg) {
  if (trials < 0) throw std::invalid_argument("verify: trials must be nonnegative");
  if (!(tol > 0.0)) throw std::invalid_argument("verify: tol must be positive");
  const auto start = std::chrono::steady_clock::now();
  TheoremReport r;
  r.theorem = id;
  r.dims = d;
  r.trials = trials;
  r.seed = seed;
  r.tol = tol;
  const bool identity = id == TheoremId::L4 || id == TheoremId::L5 || id == TheoremId::L10;
  r.tolerance = identity ? kIdentityTol : (id == TheoremId::T13 ? tol : 10.0 * tol);
  HarnessConfig hc = cfg;
  hc.dykstra.tol = tol;
  Suite s(r);
  switch (id) {
    case TheoremId::T1:
      suite_t1(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::T6:
      suite_t6(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::T12:
      suite_t12(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::T13:
      suite_t13(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::T18:
      suite_t18(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::C2:
      suite_c2(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::C19:
      suite_c19(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::L4:
      suite_l4(s, d, trials, seed);
      break;
    case TheoremId::L5:
      suite_l5(s, d, trials, seed);
      break;
    case TheoremId::L8:
      r.tolerance = kIdentityTol;
      suite_l8(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::L10:
      suite_l10(s, d, trials, seed);
      break;
    case TheoremId::L15:
      suite_l15(s, d, trials, seed, tol);
      break;
    case TheoremId::L16:
      r.tolerance = tol;
      suite_l16(s, d, trials, seed, hc, tol);
      break;
    case TheoremId::L17:
      suite_l17(s, d, trials, seed, hc, tol);
      break;
  }
  s.finish();
  r.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace conemaps
