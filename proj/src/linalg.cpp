#include "conemaps/linalg.hpp"

#include <cmath>
#include <string>

namespace conemaps {

Dims::Dims(int n_, int m_) : n(n_), m(m_) {
  if (n < 1 || m < 1) {
    throw DimensionError("Dims: factor dimensions must be positive, got (" + std::to_string(n) +
                         ", " + std::to_string(m) + ")");
  }
}

void require_square(const CMatrix& x, const char* what) {
  if (x.rows() != x.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  }
}

void require_composite(const CMatrix& x, Dims d, const char* what) {
  const int N = d.composite();
  if (x.rows() != N || x.cols() != N) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(N) + "x" +
                         std::to_string(N) + " operator for dims (" + std::to_string(d.n) +
                         "," + std::to_string(d.m) + "), got " + std::to_string(x.rows()) +
                         "x" + std::to_string(x.cols()));
  }
}

void require_finite(const CMatrix& x, const char* what) {
  if (!x.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
  }
}

double frobenius(const CMatrix& x) { return x.norm(); }

double hermiticity_defect(const CMatrix& x) {
  require_square(x, "hermiticity_defect");
  return (x - x.adjoint()).norm();
}

bool is_hermitian(const CMatrix& x, double tol) {
  if (x.rows() != x.cols()) return false;
  return hermiticity_defect(x) <= tol * (1.0 + x.norm());
}

void require_hermitian(const CMatrix& x, const char* what, double tol) {
  require_square(x, what);
  if (!is_hermitian(x, tol)) {
    throw NotHermitianError(std::string(what) + ": operator is not Hermitian (defect " +
                            std::to_string(hermiticity_defect(x)) + ")");
  }
}

CMatrix unit(int dim, int i, int j) {
  CMatrix e = CMatrix::Zero(dim, dim);
  e(i, j) = 1.0;
  return e;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index br = b.rows(), bc = b.cols();
  CMatrix out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
    }
  }
  return out;
}

CVector tensor(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

CMatrix partial_transpose(const CMatrix& x, Dims d) {
  require_composite(x, d, "partial_transpose");
  CMatrix out(x.rows(), x.cols());
  const int m = d.m;
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      out.block(i * m, j * m, m, m) = x.block(i * m, j * m, m, m).transpose();
    }
  }
  return out;
}

CMatrix full_transpose(const CMatrix& x) { return x.transpose(); }

CMatrix conj_transpose(const CMatrix& x) { return x.adjoint(); }

CMatrix both_transpose(const CMatrix& x, Dims d) {
  require_composite(x, d, "both_transpose");
  // t on the first factor moves block (i,j) to (j,i); t on the second
  // transposes inside each block.
  CMatrix out(x.rows(), x.cols());
  const int m = d.m;
  for (int i = 0; i < d.n; ++i) {
    for (int j = 0; j < d.n; ++j) {
      out.block(j * m, i * m, m, m) = x.block(i * m, j * m, m, m).transpose();
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& x, Dims d, TraceFactor factor) {
  require_composite(x, d, "partial_trace");
  const int n = d.n, m = d.m;
  if (factor == TraceFactor::First) {
    CMatrix out = CMatrix::Zero(m, m);
    for (int i = 0; i < n; ++i) out += x.block(i * m, i * m, m, m);
    return out;
  }
  CMatrix out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out(i, j) = x.block(i * m, j * m, m, m).trace();
  }
  return out;
}

HermSpectrum eig_hermitian(const CMatrix& x) {
  require_hermitian(x, "eig_hermitian");
  require_finite(x, "eig_hermitian");
  const CMatrix sym = 0.5 * (x + x.adjoint());
  // Householder tridiagonalization followed by implicit symmetric QR.
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eig_hermitian: eigensolver did not converge");
  }
  HermSpectrum spec;
  spec.eigenvalues = solver.eigenvalues().reverse();
  spec.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return spec;
}

PsdResult is_psd(const CMatrix& x, double tol) {
  const HermSpectrum spec = eig_hermitian(x);
  PsdResult r;
  r.min_eig = spec.min_eigenvalue();
  r.min_vec = spec.min_eigenvector();
  r.psd = r.min_eig >= -tol * (1.0 + x.norm());
  return r;
}

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: operand shapes differ");
  }
  return a.conjugate().cwiseProduct(b).sum();
}

Complex trace_pairing(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_pairing: operand shapes incompatible");
  }
  // Tr(ab) = sum_ij a_ij b_ji
  return a.cwiseProduct(b.transpose()).sum();
}

CMatrix project_psd(const CMatrix& x) {
  const HermSpectrum spec = eig_hermitian(x);
  const RVector clipped = spec.eigenvalues.cwiseMax(0.0);
  return spec.eigenvectors * clipped.asDiagonal() * spec.eigenvectors.adjoint();
}

}  // namespace conemaps
