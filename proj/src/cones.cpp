#include "conemaps/cones.hpp"

#include <array>
#include <limits>
#include <string>

namespace conemaps {

namespace {

struct ConeName {
  ConeId id;
  std::string_view name;
};

constexpr std::array<ConeName, 11> kConeNames{{
    {ConeId::MapCP, "cp"},
    {ConeId::MapCOP, "cop"},
    {ConeId::MapP, "p"},
    {ConeId::MapD, "d"},
    {ConeId::MapS, "s"},
    {ConeId::MapPOS, "pos"},
    {ConeId::OpPSD, "psd"},
    {ConeId::OpF, "f"},
    {ConeId::OpE, "e"},
    {ConeId::OpSEP, "sep"},
    {ConeId::OpBlockPos, "blockpos"},
}};

SpectrumRecord record(std::string label, const PsdResult& r) {
  return SpectrumRecord{std::move(label), r.min_eig, r.min_vec};
}

}  // namespace

std::string_view cone_name(ConeId id) {
  for (const auto& c : kConeNames) {
    if (c.id == id) return c.name;
  }
  return "?";
}

std::optional<ConeId> parse_cone(std::string_view name) {
  for (const auto& c : kConeNames) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

bool is_map_cone(ConeId id) {
  switch (id) {
    case ConeId::MapCP:
    case ConeId::MapCOP:
    case ConeId::MapP:
    case ConeId::MapD:
    case ConeId::MapS:
    case ConeId::MapPOS:
      return true;
    default:
      return false;
  }
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::In:
      return "IN";
    case Status::Out:
      return "OUT";
    case Status::Undecided:
      return "UNDECIDED";
  }
  return "?";
}

void DykstraConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("DykstraConfig: tol must be positive");
  if (max_iters <= 0) throw std::invalid_argument("DykstraConfig: max_iters must be positive");
  if (stall_window <= 0) {
    throw std::invalid_argument("DykstraConfig: stall_window must be positive");
  }
}

Verdict is_cp(const MapRep& phi, double tol) {
  phi.require_hermitian_choi("is_cp");
  const PsdResult r = is_psd(phi.choi(), tol);
  Verdict v;
  v.status = r.psd ? Status::In : Status::Out;
  v.certificate = std::vector<SpectrumRecord>{record("C", r)};
  return v;
}

Verdict is_cop(const MapRep& phi, double tol) {
  phi.require_hermitian_choi("is_cop");
  const PsdResult r = is_psd(partial_transpose(phi.choi(), phi.dims()), tol);
  Verdict v;
  v.status = r.psd ? Status::In : Status::Out;
  v.certificate = std::vector<SpectrumRecord>{record("PT(C)", r)};
  return v;
}

Verdict in_F(const CMatrix& x, Dims d, double tol) {
  require_composite(x, d, "in_F");
  require_hermitian(x, "in_F");
  const PsdResult r1 = is_psd(x, tol);
  const PsdResult r2 = is_psd(partial_transpose(x, d), tol);
  Verdict v;
  v.status = (r1.psd && r2.psd) ? Status::In : Status::Out;
  v.certificate = std::vector<SpectrumRecord>{record("x", r1), record("PT(x)", r2)};
  return v;
}

Verdict in_P(const MapRep& phi, double tol) {
  phi.require_hermitian_choi("in_P");
  return in_F(phi.choi(), phi.dims(), tol);
}

Verdict is_ppt_state(const CMatrix& rho, Dims d, double tol) {
  require_composite(rho, d, "is_ppt_state");
  require_hermitian(rho, "is_ppt_state");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-9) {
    throw std::invalid_argument("is_ppt_state: trace is " + std::to_string(tr) + ", expected 1");
  }
  return in_F(rho, d, tol);
}

Verdict in_E(const CMatrix& x, Dims d, const DykstraConfig& cfg, std::uint64_t seed) {
  require_composite(x, d, "in_E");
  require_hermitian(x, "in_E");
  cfg.validate();
  const double scale = 1.0 + x.norm();
  const Eigen::Index N = x.rows();
  Verdict v;

  // Exact certificates for the two generating cones.
  if (const PsdResult r = is_psd(x, cfg.tol); r.psd) {
    v.status = Status::In;
    v.certificate = Decomposition{0.5 * (x + x.adjoint()), CMatrix::Zero(N, N), 0.0, 0};
    return v;
  }
  if (const CMatrix xt = partial_transpose(x, d); is_psd(xt, cfg.tol).psd) {
    v.status = Status::In;
    v.certificate = Decomposition{CMatrix::Zero(N, N), 0.5 * (xt + xt.adjoint()), 0.0, 0};
    return v;
  }

  const FeasibilityResult fr = dykstra_feasibility(x, d, cfg);
  if (fr.converged) {
    v.status = Status::In;
    v.certificate = Decomposition{fr.a, fr.b, fr.residual, fr.iterations};
    return v;
  }
  if (auto w = witness_search(x, d, cfg, 2, seed); w && w->value < -10.0 * cfg.tol * scale) {
    v.status = Status::Out;
    v.certificate = *w;
    return v;
  }
  v.status = Status::Undecided;
  v.note = "decomposition residual " + std::to_string(fr.residual) + " after " +
           std::to_string(fr.iterations) + " iterations; no witness below threshold";
  return v;
}

Verdict is_decomposable(const MapRep& phi, const DykstraConfig& cfg, std::uint64_t seed) {
  phi.require_hermitian_choi("is_decomposable");
  Verdict v = in_E(phi.choi(), phi.dims(), cfg, seed);
  if (auto* w = std::get_if<Witness>(&v.certificate); w && phi.dims().square()) {
    const int n = phi.in_dim();
    w->omega_value = n * omega_eval(apply_local(adjoint(phi), w->w, n), n);
  }
  return v;
}

Verdict pm_k_membership(const CMatrix& x, Dims d, std::span<const MapRep> samples, double tol) {
  require_composite(x, d, "pm_k_membership");
  require_hermitian(x, "pm_k_membership");
  if (samples.empty()) throw std::invalid_argument("pm_k_membership: empty sample set");
  ViolatingMap worst{0, std::numeric_limits<double>::infinity()};
  bool violated = false;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const MapRep& alpha = samples[k];
    if (alpha.in_dim() != d.m) {
      throw DimensionError("pm_k_membership: generator acts on M_" +
                           std::to_string(alpha.in_dim()) + ", expected M_" +
                           std::to_string(d.m));
    }
    const CMatrix y = apply_local(alpha, x, d.n);
    const PsdResult r = is_psd(y, tol);
    if (r.min_eig < worst.min_eig) worst = ViolatingMap{k, r.min_eig};
    violated = violated || !r.psd;
  }
  Verdict v;
  if (violated) {
    v.status = Status::Out;
    v.certificate = worst;
  } else {
    v.status = Status::In;
    v.heuristic = true;
    v.certificate = worst;
    v.note = "relative to " + std::to_string(samples.size()) + " generators";
  }
  return v;
}

}  // namespace conemaps
