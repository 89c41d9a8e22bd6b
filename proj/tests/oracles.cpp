#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace oracle {

using Complex = std::complex<double>;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int r = 0; r < b.rows(); ++r)
        for (int s = 0; s < b.cols(); ++s)
          out(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
  return out;
}

std::vector<double> jacobi_eigenvalues(CMatrix a) {
  const int N = int(a.rows());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q) off += std::norm(a(p, q));
    if (off < 1e-30) break;
    for (int p = 0; p < N; ++p) {
      for (int q = p + 1; q < N; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        // Unitary rotation zeroing (p,q) of the Hermitian matrix.
        const Complex phase = apq / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(theta), s = std::sin(theta);
        // Columns: p' = c p - s conj(phase) q ; q' = s phase p + c q
        for (int k = 0; k < N; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(phase) * akq;
          a(k, q) = s * phase * akp + c * akq;
        }
        for (int k = 0; k < N; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * std::conj(phase) * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) ev[std::size_t(i)] = a(i, i).real();
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

CMatrix pt_by_permutation(const CMatrix& x, int n, int m) {
  CMatrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < n; ++j)
        for (int s = 0; s < m; ++s) out(i * m + r, j * m + s) = x(i * m + s, j * m + r);
  return out;
}

CMatrix tt_by_permutation(const CMatrix& x, int n, int m) {
  CMatrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < m; ++r)
      for (int j = 0; j < n; ++j)
        for (int s = 0; s < m; ++s) out(i * m + r, j * m + s) = x(j * m + s, i * m + r);
  return out;
}

double product_grid_min_2x2(const CMatrix& x, int steps) {
  const double pi = std::acos(-1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= steps; ++a) {
    for (int pa = 0; pa < steps; ++pa) {
      const double ta = pi * a / steps, fa = 2 * pi * pa / steps;
      const Complex xi[2] = {std::cos(ta / 2), std::polar(std::sin(ta / 2), fa)};
      for (int b = 0; b <= steps; ++b) {
        for (int pb = 0; pb < steps; ++pb) {
          const double tb = pi * b / steps, fb = 2 * pi * pb / steps;
          const Complex eta[2] = {std::cos(tb / 2), std::polar(std::sin(tb / 2), fb)};
          Complex v[4];
          for (int i = 0; i < 2; ++i)
            for (int r = 0; r < 2; ++r) v[i * 2 + r] = xi[i] * eta[r];
          Complex val = 0.0;
          for (int p = 0; p < 4; ++p)
            for (int q = 0; q < 4; ++q) val += std::conj(v[p]) * x(p, q) * v[q];
          best = std::min(best, val.real());
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
