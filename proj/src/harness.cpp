#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "conemaps/fixtures.hpp"
#include "conemaps/harness.hpp"
#include "harness_detail.hpp"

namespace conemaps {

namespace detail {

std::vector<CMatrix> random_probes(int dim, int count, Rng& rng) {
  std::vector<CMatrix> out;
  out.reserve(std::size_t(count));
  for (int k = 0; k < count; ++k) {
    // Half pure states: they are what detects a single negative direction.
    const int rank = (k % 2 == 0) ? 1 : uniform_int(rng, 1, dim);
    out.push_back(random_density(dim, rng, rank));
  }
  return out;
}

std::vector<MapRep> canonical_generators(ConeId k, int m) {
  switch (k) {
    case ConeId::MapCP:
      return {identity_map(m)};
    case ConeId::MapCOP:
      return {transpose_map(m)};
    case ConeId::MapD:
      return {identity_map(m), transpose_map(m)};
    default:
      return {};
  }
}

double closed_margin(ConeId target, const CMatrix& c, Dims d) {
  switch (target) {
    case ConeId::MapCP:
      return min_eig(c);
    case ConeId::MapCOP:
      return min_eig(partial_transpose(c, d));
    case ConeId::MapD:
      return std::min(min_eig(c), min_eig(partial_transpose(c, d)));
    default:
      throw std::invalid_argument("closed_margin: no spectral closed form");
  }
}

}  // namespace detail

using namespace detail;

namespace {

constexpr int kMaxRedraws = 100;

CMatrix cp_choi(int dim, Rng& rng) {
  const CMatrix g = random_gaussian(dim, dim, rng);
  return g * g.adjoint();
}

std::optional<CMatrix> draw_choi(ConeId cone, Dims d, Rng& rng) {
  const int N = d.composite();
  switch (cone) {
    case ConeId::MapCP:
      return cp_choi(N, rng);
    case ConeId::MapCOP:
      return partial_transpose(cp_choi(N, rng), d);
    case ConeId::MapP: {
      const CMatrix h = random_hermitian(N, rng);
      const Projection pf = project_F(h, d);
      if (pf.point.trace().real() <= 1e-3 * h.norm()) return std::nullopt;
      return repair_into_F(pf.point, d);
    }
    case ConeId::MapD: {
      const CMatrix a = unit_trace(cp_choi(N, rng));
      const CMatrix b = unit_trace(cp_choi(N, rng));
      return CMatrix(a + partial_transpose(b, d));
    }
    case ConeId::MapS: {
      const int r = uniform_int(rng, 1, N);
      CMatrix c = CMatrix::Zero(N, N);
      for (int k = 0; k < r; ++k) {
        const CMatrix sigma = random_density(d.n, rng, uniform_int(rng, 1, d.n));
        const CMatrix rho = random_density(d.m, rng, uniform_int(rng, 1, d.m));
        c += uniform(rng, 0.0, 1.0) * tensor(sigma, rho);
      }
      return c;
    }
    case ConeId::MapPOS: {
      const double lambda = uniform(rng, 0.0, 1.0);
      CMatrix c = lambda * unit_trace(*draw_choi(ConeId::MapD, d, rng));
      const std::vector<MapRep> fx = fixtures::positive_map_fixtures(d);
      if (fx.empty()) {
        c += (1.0 - lambda) * unit_trace(*draw_choi(ConeId::MapD, d, rng));
      } else {
        const int k = uniform_int(rng, 0, int(fx.size()) - 1);
        c += (1.0 - lambda) * unit_trace(fx[std::size_t(k)].choi());
      }
      return c;
    }
    default:
      throw std::invalid_argument("sample_map: " + std::string(cone_name(cone)) +
                                  " is not a map cone");
  }
}

}  // namespace

MapRep sample_map(ConeId cone, Dims d, std::uint64_t seed) {
  if (!is_map_cone(cone)) {
    throw std::invalid_argument("sample_map: " + std::string(cone_name(cone)) +
                                " is not a map cone");
  }
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::optional<CMatrix> c = draw_choi(cone, d, rng);
    if (!c) continue;
    const double tr = c->trace().real();
    if (!(tr > 1e-12)) continue;
    return MapRep(d, hermitian_part(*c) / tr);
  }
  throw ConvergenceError("sample_map: degenerate draws for " + std::string(cone_name(cone)));
}

std::vector<MapRep> sample_maps(ConeId cone, Dims d, int count, std::uint64_t seed) {
  std::vector<MapRep> out;
  out.reserve(std::size_t(std::max(count, 0)));
  for (int k = 0; k < count; ++k) out.push_back(sample_map(cone, d, substream_seed(seed, k)));
  return out;
}

std::vector<MapRep> kd_generators(std::span<const MapRep> samples) {
  std::vector<MapRep> out;
  for (const MapRep& a : samples) out.push_back(transpose_conj(adjoint(a)));
  return out;
}

std::vector<MapRep> k_t(std::span<const MapRep> samples) {
  std::vector<MapRep> out;
  for (const MapRep& a : samples) out.push_back(transpose_conj(a));
  return out;
}

Verdict ksharp_membership(const MapRep& beta, std::span<const MapRep> samples, double tol) {
  if (samples.empty()) throw std::invalid_argument("ksharp_membership: empty sample set");
  if (!beta.dims().square()) throw DimensionError("ksharp_membership: beta must be square");
  ViolatingMap worst{0, std::numeric_limits<double>::infinity()};
  bool violated = false;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!(samples[k].dims() == beta.dims())) {
      throw DimensionError("ksharp_membership: generator dims differ from beta");
    }
    const Verdict v = is_cp(compose_left(beta, adjoint(samples[k])), tol);
    const auto& spec = std::get<std::vector<SpectrumRecord>>(v.certificate);
    if (spec.front().min_eig < worst.min_eig) worst = ViolatingMap{k, spec.front().min_eig};
    violated = violated || v.out();
  }
  Verdict out;
  out.certificate = worst;
  if (violated) {
    out.status = Status::Out;
  } else {
    out.status = Status::In;
    out.heuristic = true;
    out.note = "relative to " + std::to_string(samples.size()) + " generators";
  }
  return out;
}

bool Theorem1Result::agree() const {
  return std::all_of(cond.begin(), cond.end(),
                     [&](const Condition& c) { return c.holds == cond[0].holds; });
}

MapRep random_threshold_map(ConeId k, Dims d, Rng& rng) {
  const int N = d.composite();
  CMatrix h = random_hermitian(N, rng);
  h /= h.norm();
  const double lo = min_eig(h), lo_pt = min_eig(partial_transpose(h, d));
  double s = 0.0, u = 0.0;
  switch (k) {
    case ConeId::MapCP:
      s = -lo;
      u = uniform(rng, 0.5, 1.5);
      break;
    case ConeId::MapCOP:
      s = -lo_pt;
      u = uniform(rng, 0.5, 1.5);
      break;
    case ConeId::MapD:
      s = std::max(-lo, -lo_pt);
      u = uniform(rng, 0.5, 1.5);
      break;
    case ConeId::MapP:
      // Shifts at or above min(...) land in E; the E threshold lies below.
      s = std::min(-lo, -lo_pt);
      u = uniform(rng, -0.25, 1.25);
      break;
    default:
      throw std::invalid_argument("random_threshold_map: unsupported cone");
  }
  return MapRep(d, h + (u * s) * CMatrix::Identity(N, N));
}

Theorem1Result theorem1_conditions(const MapRep& phi, ConeId k, std::span<const MapRep> samples,
                                   std::span<const CMatrix> probes, double tol,
                                   const DykstraConfig& cfg, std::uint64_t seed) {
  phi.require_hermitian_choi("theorem1_conditions");
  const Dims d = phi.dims();
  const int n = d.n, m = d.m;
  if (k != ConeId::MapCP && k != ConeId::MapCOP && k != ConeId::MapP && k != ConeId::MapD) {
    throw std::invalid_argument("theorem1_conditions: unsupported cone " +
                                std::string(cone_name(k)));
  }
  if (k == ConeId::MapP && n != m) {
    throw DimensionError("theorem1_conditions: cone P needs n == m");
  }
  for (const MapRep& a : samples) {
    if (a.in_dim() != m || a.out_dim() != m) {
      throw DimensionError("theorem1_conditions: generators must act on M_m");
    }
  }
  const CMatrix c = hermitian_part(phi.choi());
  Theorem1Result res;
  res.band = 10.0 * tol * scale_of(c);

  // (ii) closed form, plus the F-witness that targets the other conditions
  // when K = P.
  std::optional<Witness> wit;
  Condition& c2 = res.cond[1];
  if (k == ConeId::MapP) {
    const Verdict v = in_E(c, d, cfg, seed);
    if (v.out()) {
      wit = std::get<Witness>(v.certificate);
      c2 = {false, wit->value};
    } else {
      wit = minimize_over_F(c, d, cfg, 2, seed);
      c2 = {v.in(), v.in() ? std::max(wit->value, 0.0) : 0.0};
      if (v.undecided()) {
        res.boundary = true;
        res.note = "decomposability undecided";
      }
    }
  } else {
    // P(M, K^t) for K = CP, COP, D is PSD, PT(PSD), F.
    const double mg = closed_margin(k, c, d);
    c2 = {mg >= 0.0, mg};
  }

  std::vector<MapRep> canon = canonical_generators(k, m);

  // (i) pairing against generators alpha o psi, alpha in K^d, psi in CP.
  {
    std::vector<CMatrix> gens;
    const std::vector<MapRep> kd = kd_generators(samples);
    Rng rng(substream_seed(seed, 1));
    for (std::size_t j = 0; j < kd.size(); ++j) {
      const MapRep psi = sample_map(ConeId::MapCP, d, rng());
      gens.push_back(apply_local(kd[j], psi.choi(), n));
    }
    for (const MapRep& a : canon) {
      const MapRep psi = sample_map(ConeId::MapCP, d, rng());
      gens.push_back(apply_local(a, psi.choi(), n));
    }
    // Rank-one psi aligned with the most negative direction.
    if (k == ConeId::MapCP || k == ConeId::MapD) gens.push_back(projector(min_vec(c)));
    if (k == ConeId::MapCOP || k == ConeId::MapD) {
      gens.push_back(partial_transpose(projector(min_vec(partial_transpose(c, d))), d));
    }
    // K = P: the map with Choi w is in P, composed with psi = iota.
    if (wit) gens.push_back(wit->w);
    double best = std::numeric_limits<double>::infinity();
    for (const CMatrix& g : gens) {
      best = std::min(best, pairing(phi, MapRep(d, hermitian_part(unit_trace(g)))));
    }
    res.cond[0] = {best >= 0.0, best};
  }

  // (iii) phi~ o (iota (x) alpha*) >= 0 on PSD inputs, alpha in K.
  {
    std::vector<MapRep> alphas(samples.begin(), samples.end());
    alphas.insert(alphas.end(), canon.begin(), canon.end());
    if (wit) {
      // The density of phi~ is C^t, whose F-witness is w^t.
      const MapRep beta(d, CMatrix(wit->w.transpose()));
      alphas.push_back(adjoint(beta));
    }
    const DualFunctional f = dual_functional(phi);
    double best = std::numeric_limits<double>::infinity();
    for (const MapRep& a0 : alphas) {
      const MapRep a = unit_trace(a0);
      const MapRep astar = adjoint(a);
      for (const CMatrix& x : probes) {
        best = std::min(best, f(apply_local(astar, x, n)).real());
      }
      const CMatrix x = projector(min_vec(apply_local(a, f.density, n)));
      best = std::min(best, f(apply_local(astar, x, n)).real());
    }
    res.cond[2] = {best >= 0.0, best};
  }

  // (iv) alpha o phi in CP for alpha in K^t.
  {
    std::vector<MapRep> alphas = k_t(samples);
    alphas.insert(alphas.end(), canon.begin(), canon.end());
    if (wit) alphas.push_back(adjoint(MapRep(d, wit->w)));
    double best = std::numeric_limits<double>::infinity();
    for (const MapRep& a : alphas) {
      best = std::min(best, min_eig(compose_left(unit_trace(a), phi).choi()));
    }
    res.cond[3] = {best >= 0.0, best};
  }

  if (!res.boundary && !res.agree()) {
    // Disagreement inside the tolerance band is a boundary instance.
    for (const Condition& cd : res.cond) {
      if (std::abs(cd.value) <= res.band) res.boundary = true;
    }
    if (res.boundary) res.note = "disagreement within the tolerance band";
  }
  return res;
}

}  // namespace conemaps
