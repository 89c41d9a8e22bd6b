#include <algorithm>
#include <cmath>
#include <limits>

#include "conemaps/cones.hpp"

namespace conemaps {

namespace {

CMatrix hermitize(const CMatrix& x) { return 0.5 * (x + x.adjoint()); }

CMatrix project_pt_psd(const CMatrix& x, Dims d) {
  return partial_transpose(project_psd(partial_transpose(x, d)), d);
}

CMatrix project_unit_trace(const CMatrix& x) {
  const Eigen::Index N = x.rows();
  const double shift = (1.0 - x.trace().real()) / double(N);
  return x + shift * CMatrix::Identity(N, N);
}

double objective(const CMatrix& x, const CMatrix& w) { return trace_pairing(x, w).real(); }

// Inner projections inside the subgradient loop only need to be accurate
// enough to steer; every scored point goes through repair_into_F.
constexpr double kInnerTol = 1e-8;
constexpr int kInnerIters = 60;
constexpr int kMoreauIters = 1500;
constexpr int kPolishIters = 25;
constexpr int kPolishPatience = 6;

}  // namespace

FeasibilityResult dykstra_feasibility(const CMatrix& x, Dims d, const DykstraConfig& cfg) {
  require_composite(x, d, "dykstra_feasibility");
  require_hermitian(x, "dykstra_feasibility");
  cfg.validate();
  const CMatrix xs = hermitize(x);
  const double scale = 1.0 + xs.norm();
  const Eigen::Index N = xs.rows();

  // z starts on the affine set A + PT(B) = x at (x, 0): Dykstra returns the
  // nearest feasible pair to its start, so a PSD x comes back as (x, 0).
  CMatrix za = xs;
  CMatrix zb = CMatrix::Zero(N, N);
  CMatrix pa = CMatrix::Zero(N, N), pb = CMatrix::Zero(N, N);
  CMatrix qa = CMatrix::Zero(N, N), qb = CMatrix::Zero(N, N);

  FeasibilityResult best;
  best.residual = std::numeric_limits<double>::infinity();
  double stall_ref = best.residual;
  int since_improve = 0;

  for (int it = 1; it <= cfg.max_iters; ++it) {
    // Cone step.
    const CMatrix a = project_psd(za + pa);
    const CMatrix b = project_psd(zb + pb);
    pa = za + pa - a;
    pb = zb + pb - b;

    const CMatrix r = xs - a - partial_transpose(b, d);
    const double residual = r.norm() / scale;
    if (residual < best.residual) {
      best.a = a;
      best.b = b;
      best.residual = residual;
    }
    best.iterations = it;
    if (residual <= cfg.tol) {
      best.a = a;
      best.b = b;
      best.residual = residual;
      best.converged = true;
      return best;
    }
    if (residual < stall_ref * (1.0 - 1e-6)) {
      stall_ref = residual;
      since_improve = 0;
    } else if (++since_improve >= cfg.stall_window) {
      best.stalled = true;
      return best;
    }

    // Affine step: minimal-norm correction onto A + PT(B) = x.
    const CMatrix ya = a + qa, yb = b + qb;
    const CMatrix ry = xs - ya - partial_transpose(yb, d);
    za = ya + 0.5 * ry;
    zb = yb + 0.5 * partial_transpose(ry, d);
    qa = ya - za;
    qb = yb - zb;
  }
  return best;
}

Projection project_F(const CMatrix& x, Dims d, const DykstraConfig& cfg) {
  require_composite(x, d, "project_F");
  require_hermitian(x, "project_F");
  cfg.validate();
  const Eigen::Index N = x.rows();
  const double scale = 1.0 + x.norm();
  CMatrix w = hermitize(x);
  CMatrix p = CMatrix::Zero(N, N), q = CMatrix::Zero(N, N);
  Projection out;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const CMatrix y = project_psd(w + p);
    p = w + p - y;
    CMatrix wn = project_pt_psd(y + q, d);
    q = y + q - wn;
    const double change = (wn - w).norm();
    const double gap = (wn - y).norm();
    w = std::move(wn);
    out.iterations = it;
    if (change <= cfg.tol * scale && gap <= cfg.tol * scale) {
      out.converged = true;
      break;
    }
  }
  out.point = hermitize(w);
  return out;
}

Projection project_F_unit_trace(const CMatrix& x, Dims d, const DykstraConfig& cfg) {
  require_composite(x, d, "project_F_unit_trace");
  cfg.validate();
  const Eigen::Index N = x.rows();
  CMatrix w = hermitize(x);
  CMatrix p1 = CMatrix::Zero(N, N), p2 = CMatrix::Zero(N, N), p3 = CMatrix::Zero(N, N);
  Projection out;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const CMatrix y1 = project_psd(w + p1);
    p1 = w + p1 - y1;
    const CMatrix y2 = project_pt_psd(y1 + p2, d);
    p2 = y1 + p2 - y2;
    CMatrix y3 = project_unit_trace(y2 + p3);
    p3 = y2 + p3 - y3;
    const double change = (y3 - w).norm();
    const double gap = std::max((y3 - y1).norm(), (y3 - y2).norm());
    w = std::move(y3);
    out.iterations = it;
    if (change <= cfg.tol && gap <= cfg.tol) {
      out.converged = true;
      break;
    }
  }
  // Three-set Dykstra can end a hair outside F; the repair shift is of the
  // order of the final gap.
  out.point = repair_into_F(w, d);
  return out;
}

CMatrix repair_into_F(const CMatrix& w, Dims d) {
  require_composite(w, d, "repair_into_F");
  const Eigen::Index N = w.rows();
  CMatrix h = hermitize(w);
  const double lo = std::min(eig_hermitian(h).min_eigenvalue(),
                             eig_hermitian(partial_transpose(h, d)).min_eigenvalue());
  // PT(I) = I, so one shift repairs both spectra.
  if (lo < 0.0) h += (-lo) * CMatrix::Identity(N, N);
  const double tr = h.trace().real();
  if (!(tr > 0.0)) return CMatrix::Identity(N, N) / double(N);
  return h / tr;
}

Witness minimize_over_F(const CMatrix& x, Dims d, const DykstraConfig& cfg, int restarts,
                        std::uint64_t seed) {
  require_composite(x, d, "minimize_over_F");
  require_hermitian(x, "minimize_over_F");
  cfg.validate();
  const Eigen::Index N = x.rows();
  const CMatrix xs = hermitize(x);
  const double xnorm = xs.norm();
  const double scale = 1.0 + xnorm;

  DykstraConfig inner = cfg;
  inner.tol = std::max(cfg.tol, kInnerTol);
  inner.max_iters = std::min(cfg.max_iters, kInnerIters);

  std::vector<CMatrix> starts;
  // Moreau: x = P_E(x) - P_F(-x), so P_F(-x) is nonzero exactly when x is
  // outside E and then Tr(x P_F(-x)) = -||P_F(-x)||^2.
  DykstraConfig moreau_cfg = inner;
  moreau_cfg.max_iters = std::min(cfg.max_iters, kMoreauIters);
  const Projection moreau = project_F(-xs, d, moreau_cfg);
  if (moreau.point.trace().real() > 1e-12 * scale) starts.push_back(repair_into_F(moreau.point, d));
  Rng rng(seed);
  for (int r = 0; r < restarts; ++r) {
    starts.push_back(repair_into_F(random_density(int(N), rng), d));
  }
  if (starts.empty()) starts.push_back(CMatrix::Identity(N, N) / double(N));

  Witness best;
  best.value = std::numeric_limits<double>::infinity();
  if (xnorm == 0.0) {
    best.w = starts.front();
    best.value = 0.0;
    return best;
  }
  const CMatrix dir = xs / xnorm;

  for (const CMatrix& start : starts) {
    CMatrix w = start;
    double local_best = objective(xs, w);
    if (local_best < best.value) {
      best.w = w;
      best.value = local_best;
    }
    int patience = 0;
    for (int k = 1; k <= kPolishIters && patience < kPolishPatience; ++k) {
      const double step = 0.5 / std::sqrt(double(k));
      w = project_F_unit_trace(w - step * dir, d, inner).point;
      const CMatrix wf = repair_into_F(w, d);
      const double val = objective(xs, wf);
      if (val < local_best - 1e-14 * scale) {
        local_best = val;
        patience = 0;
        if (val < best.value) {
          best.w = wf;
          best.value = val;
        }
      } else {
        ++patience;
      }
    }
  }
  return best;
}

std::optional<Witness> witness_search(const CMatrix& x, Dims d, const DykstraConfig& cfg,
                                      int restarts, std::uint64_t seed) {
  Witness w = minimize_over_F(x, d, cfg, restarts, seed);
  if (w.value < -cfg.tol * (1.0 + x.norm())) return w;
  return std::nullopt;
}

}  // namespace conemaps
