#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conemaps/cones.hpp"
#include "conemaps/fixtures.hpp"

namespace conemaps {

namespace {

// Real coordinates of a Hermitian matrix, isometric for the Frobenius norm.
Eigen::VectorXd hvec(const CMatrix& h) {
  const Eigen::Index N = h.rows();
  Eigen::VectorXd v(N * N);
  Eigen::Index k = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < N; ++i) v(k++) = h(i, i).real();
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i + 1; j < N; ++j) {
      v(k++) = r2 * h(i, j).real();
      v(k++) = r2 * h(i, j).imag();
    }
  }
  return v;
}

struct ProductAtom {
  CVector xi;
  CVector eta;

  CMatrix op() const {
    const CVector v = tensor(xi, eta);
    return v * v.adjoint();
  }
};

constexpr int kFitRounds = 60;

SeparableDecomposition product_fit(const CMatrix& rho, Dims d, double tol, Rng& rng) {
  const int n = d.n, m = d.m;
  std::vector<ProductAtom> atoms;
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < m; ++r) {
      atoms.push_back({CVector::Unit(n, i).cast<Complex>(), CVector::Unit(m, r).cast<Complex>()});
    }
  }
  // Local eigenbases: exact for product states.
  const HermSpectrum sa = eig_hermitian(partial_trace(rho, d, TraceFactor::Second));
  const HermSpectrum sb = eig_hermitian(partial_trace(rho, d, TraceFactor::First));
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < m; ++r) atoms.push_back({sa.eigenvectors.col(i), sb.eigenvectors.col(r)});
  }
  // Leading Schmidt pair of each eigenvector: exact when rho is a mixture
  // of orthogonal product vectors.
  const HermSpectrum s = eig_hermitian(rho);
  for (int k = 0; k < n * m; ++k) {
    if (s.eigenvalues(k) <= 0.0) continue;
    CMatrix v(n, m);
    for (int i = 0; i < n; ++i) {
      for (int r = 0; r < m; ++r) v(i, r) = s.eigenvectors(i * m + r, k);
    }
    Eigen::JacobiSVD<CMatrix> svd(v, Eigen::ComputeFullU | Eigen::ComputeFullV);
    atoms.push_back({svd.matrixU().col(0), svd.matrixV().col(0).conjugate()});
  }
  for (int k = 0; k < 2 * n * m; ++k) {
    atoms.push_back({random_unit_vector(n, rng), random_unit_vector(m, rng)});
  }

  const double scale = 1.0 + rho.norm();
  const Eigen::VectorXd target = hvec(rho);
  SeparableDecomposition best;
  best.residual = std::numeric_limits<double>::infinity();

  for (int round = 0; round < kFitRounds; ++round) {
    Eigen::MatrixXd a(target.size(), Eigen::Index(atoms.size()));
    for (std::size_t k = 0; k < atoms.size(); ++k) a.col(Eigen::Index(k)) = hvec(atoms[k].op());
    const std::vector<double> c = nnls(a, target);
    CMatrix fit = CMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (c[k] > 0.0) fit += c[k] * atoms[k].op();
    }
    const CMatrix resid = rho - fit;
    const double res = resid.norm() / scale;
    if (res < best.residual) {
      best = SeparableDecomposition{};
      best.residual = res;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        if (c[k] > 0.0) {
          best.weights.push_back(c[k]);
          best.xi.push_back(atoms[k].xi);
          best.eta.push_back(atoms[k].eta);
        }
      }
    }
    if (res <= tol) break;
    // Column generation: the product vector most aligned with the residual.
    ProductVectors pv = see_saw_min(-resid, d, random_unit_vector(n, rng),
                                    random_unit_vector(m, rng));
    if (pv.value >= 0.0) break;
    atoms.push_back({pv.xi, pv.eta});
  }
  return best;
}

}  // namespace

std::vector<double> nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, int max_iters) {
  const Eigen::Index cols = a.cols();
  if (a.rows() != b.size()) throw DimensionError("nnls: shape mismatch");
  if (max_iters <= 0) max_iters = int(3 * cols + 10);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(cols);
  std::vector<bool> passive(std::size_t(cols), false);
  const double eps = 1e-13 * std::max(1.0, a.cwiseAbs().maxCoeff() * b.cwiseAbs().sum());

  auto solve_passive = [&](Eigen::VectorXd& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (passive[std::size_t(j)]) idx.push_back(j);
    }
    s = Eigen::VectorXd::Zero(cols);
    if (idx.empty()) return;
    Eigen::MatrixXd ap(a.rows(), Eigen::Index(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) ap.col(Eigen::Index(k)) = a.col(idx[k]);
    const Eigen::VectorXd sp = ap.completeOrthogonalDecomposition().solve(b);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(Eigen::Index(k));
  };

  for (int outer = 0; outer < max_iters; ++outer) {
    const Eigen::VectorXd w = a.transpose() * (b - a * x);
    Eigen::Index t = -1;
    double wmax = eps;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!passive[std::size_t(j)] && w(j) > wmax) {
        wmax = w(j);
        t = j;
      }
    }
    if (t < 0) break;
    passive[std::size_t(t)] = true;

    Eigen::VectorXd s;
    solve_passive(s);
    for (int inner = 0; inner < max_iters; ++inner) {
      double alpha = std::numeric_limits<double>::infinity();
      bool infeasible = false;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[std::size_t(j)] && s(j) <= 0.0) {
          infeasible = true;
          const double denom = x(j) - s(j);
          if (denom > 0.0) alpha = std::min(alpha, x(j) / denom);
        }
      }
      if (!infeasible) break;
      if (!std::isfinite(alpha)) alpha = 0.0;
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[std::size_t(j)] && x(j) <= 1e-15) {
          passive[std::size_t(j)] = false;
          x(j) = 0.0;
        }
      }
      solve_passive(s);
    }
    x = s;
  }
  return std::vector<double>(x.data(), x.data() + cols);
}

Verdict is_separable(const CMatrix& rho, Dims d, double tol, std::uint64_t seed) {
  require_composite(rho, d, "is_separable");
  require_hermitian(rho, "is_separable");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-9) {
    throw std::invalid_argument("is_separable: trace is " + std::to_string(tr) + ", expected 1");
  }
  if (!is_psd(rho, tol)) throw std::invalid_argument("is_separable: state is not PSD");

  Verdict ppt = in_F(rho, d, tol);
  if (ppt.out()) {
    ppt.note = "partial transpose is not PSD";
    return ppt;
  }
  const int lo = std::min(d.n, d.m), hi = std::max(d.n, d.m);
  if (lo == 1 || (lo == 2 && hi <= 3)) {
    ppt.note = "PPT is exact for this dimension pair";
    return ppt;
  }

  Rng rng(seed);
  SeparableDecomposition dec = product_fit(rho, d, tol, rng);
  Verdict v;
  if (dec.residual <= tol) {
    v.status = Status::In;
    v.certificate = std::move(dec);
    v.note = "product decomposition found";
    return v;
  }
  const double scale = 1.0 + rho.norm();
  std::vector<CMatrix> witnesses = fixtures::block_positive_witnesses(d);
  for (std::size_t k = 0; k < witnesses.size(); ++k) {
    const double val = trace_pairing(witnesses[k], rho).real();
    if (val < -tol * scale) {
      v.status = Status::Out;
      v.certificate = EntanglementWitness{witnesses[k], val, "fixture " + std::to_string(k)};
      v.note = "detected by a block-positive fixture";
      return v;
    }
  }
  v.status = Status::Undecided;
  v.note = "PPT; no product decomposition within tolerance (residual " +
           std::to_string(dec.residual) + ") and no fixture witness";
  return v;
}

Verdict in_S(const MapRep& phi, double tol, std::uint64_t seed) {
  phi.require_hermitian_choi("in_S");
  const PsdResult r = is_psd(phi.choi(), tol);
  if (!r.psd) {
    Verdict v;
    v.status = Status::Out;
    v.certificate = std::vector<SpectrumRecord>{{"C", r.min_eig, r.min_vec}};
    v.note = "Choi matrix is not PSD";
    return v;
  }
  const double tr = phi.choi().trace().real();
  if (tr <= tol * (1.0 + phi.choi().norm())) {
    Verdict v;
    v.status = Status::In;
    v.note = "zero map";
    return v;
  }
  CMatrix rho = 0.5 * (phi.choi() + phi.choi().adjoint()) / tr;
  // Clip round-off negativity so the state precondition holds.
  if (r.min_eig < 0.0) {
    rho = project_psd(rho);
    rho /= rho.trace().real();
  }
  return is_separable(rho, phi.dims(), tol, seed);
}

}  // namespace conemaps
