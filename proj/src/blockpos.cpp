#include <cmath>
#include <limits>

#include "conemaps/cones.hpp"

namespace conemaps {

namespace {

// (xi (x) I)* x (xi (x) I), an m x m matrix.
CMatrix compress_first(const CMatrix& x, Dims d, const CVector& xi) {
  const int m = d.m;
  CMatrix out = CMatrix::Zero(m, m);
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      const Complex c = std::conj(xi(i)) * xi(j);
      if (c != Complex(0.0)) out += c * x.block(i * m, j * m, m, m);
    }
  }
  return out;
}

// (I (x) eta)* x (I (x) eta), an n x n matrix.
CMatrix compress_second(const CMatrix& x, Dims d, const CVector& eta) {
  const int m = d.m;
  CMatrix out(d.n, d.n);
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      out(i, j) = eta.dot(x.block(i * m, j * m, m, m) * eta);
    }
  }
  return out;
}

constexpr int kSeeSawIters = 500;

}  // namespace

ProductVectors see_saw_min(const CMatrix& x, Dims d, CVector xi, CVector eta) {
  const double scale = 1.0 + x.norm();
  double prev = std::numeric_limits<double>::infinity();
  ProductVectors pv;
  for (int it = 0; it < kSeeSawIters; ++it) {
    HermSpectrum s1 = eig_hermitian(compress_first(x, d, xi));
    eta = s1.min_eigenvector();
    HermSpectrum s2 = eig_hermitian(compress_second(x, d, eta));
    xi = s2.min_eigenvector();
    const double val = s2.min_eigenvalue();
    pv = ProductVectors{xi, eta, val};
    if (prev - val <= 1e-14 * scale) break;
    prev = val;
  }
  return pv;
}

Verdict is_block_positive(const CMatrix& x, Dims d, int restarts, double tol,
                          std::uint64_t seed) {
  require_composite(x, d, "is_block_positive");
  require_hermitian(x, "is_block_positive");
  const CMatrix h = 0.5 * (x + x.adjoint());
  restarts = std::max(restarts, 1);
  Rng rng(seed);
  ProductVectors best;
  best.value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    CVector xi = random_unit_vector(d.n, rng);
    CVector eta = random_unit_vector(d.m, rng);
    ProductVectors pv = see_saw_min(h, d, std::move(xi), std::move(eta));
    if (pv.value < best.value) best = std::move(pv);
  }
  Verdict v;
  v.restarts = restarts;
  if (best.value < -tol * (1.0 + h.norm())) {
    v.status = Status::Out;
  } else {
    v.status = Status::In;
    v.heuristic = true;
    v.note = "no product vector below threshold after " + std::to_string(restarts) +
             " see-saw restarts";
  }
  v.certificate = std::move(best);
  return v;
}

Verdict is_positive_map(const MapRep& phi, int restarts, double tol, std::uint64_t seed) {
  phi.require_hermitian_choi("is_positive_map");
  return is_block_positive(phi.choi(), phi.dims(), restarts, tol, seed);
}

}  // namespace conemaps
