#include <doctest.h>

#include <cmath>

#include "conemaps/choi.hpp"
#include "conemaps/linalg.hpp"
#include "conemaps/random.hpp"
#include "oracles.hpp"

using namespace conemaps;

namespace {

CMatrix swap_operator(int n) {
  CMatrix v = CMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) v(i * n + r, r * n + i) = 1.0;
  return v;
}

double rel(const CMatrix& a, const CMatrix& b) { return (a - b).norm() / (1.0 + b.norm()); }

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("tensor follows the i*rows(b)+r convention") {
  CHECK(tensor(CMatrix(CMatrix::Identity(2, 2)), CMatrix(CMatrix::Identity(3, 3))).isApprox(CMatrix::Identity(6, 6)));

  const CMatrix t = tensor(unit(2, 0, 1), unit(2, 1, 0));
  CHECK(t.norm() == doctest::Approx(1.0));
  CHECK(t(1, 2) == Complex(1.0));

  Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    const CMatrix a = random_gaussian(2, 2, rng), b = random_gaussian(2, 2, rng);
    CHECK((tensor(a, b) - oracle::kron(a, b)).cwiseAbs().maxCoeff() <= 1e-15);
    const CMatrix c = random_gaussian(3, 2, rng), e = random_gaussian(2, 4, rng);
    CHECK((tensor(c, e) - oracle::kron(c, e)).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("partial transpose") {
  Rng rng(12);
  const CMatrix a = random_gaussian(2, 2, rng), b = random_gaussian(3, 3, rng);
  CHECK(rel(partial_transpose(tensor(a, b), Dims(2, 3)), tensor(a, CMatrix(b.transpose()))) < 1e-15);

  for (int n : {2, 3}) {
    const CMatrix p = max_entangled_projector(n);
    const CMatrix v = partial_transpose(p, Dims(n, n));
    CHECK(v == swap_operator(n));
    const auto ev = oracle::jacobi_eigenvalues(v);
    const int sym = n * (n + 1) / 2;
    for (int k = 0; k < n * n; ++k) CHECK(ev[std::size_t(k)] == doctest::Approx(k < sym ? 1.0 : -1.0).epsilon(1e-12));
  }

  for (Dims d : {Dims(2, 3), Dims(3, 2), Dims(3, 3), Dims(1, 4)}) {
    const CMatrix x = random_gaussian(d.composite(), d.composite(), rng);
    const CMatrix pt = partial_transpose(x, d);
    CHECK(pt == oracle::pt_by_permutation(x, d.n, d.m));
    CHECK(partial_transpose(pt, d) == x);
    CHECK(std::abs(pt.trace() - x.trace()) < 1e-13);
    CHECK(pt.norm() == doctest::Approx(x.norm()).epsilon(1e-14));
  }
  CHECK_THROWS_AS(partial_transpose(CMatrix::Identity(5, 5), Dims(2, 3)), DimensionError);
}

TEST_CASE("full, conjugate and two-sided transposes") {
  Rng rng(13);
  const CMatrix a = random_gaussian(2, 2, rng), b = random_gaussian(3, 3, rng);
  CHECK(rel(both_transpose(tensor(a, b), Dims(2, 3)), tensor(CMatrix(a.transpose()), CMatrix(b.transpose()))) < 1e-15);

  for (int k = 0; k < 20; ++k) {
    const CMatrix x = random_gaussian(6, 6, rng);
    CHECK((both_transpose(x, Dims(2, 3)) - full_transpose(x)).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(full_transpose(x) == oracle::tt_by_permutation(x, 2, 3));
    CHECK(conj_transpose(x) == x.adjoint());
  }
  const CMatrix p = max_entangled_projector(3);
  CHECK(both_transpose(p, Dims(3, 3)) == p);
}

TEST_CASE("partial trace") {
  Rng rng(14);
  const CMatrix a = random_gaussian(2, 2, rng), b = random_gaussian(3, 3, rng);
  CHECK(rel(partial_trace(tensor(a, b), Dims(2, 3), TraceFactor::Second), b.trace() * a) < 1e-14);
  CHECK(rel(partial_trace(tensor(a, b), Dims(2, 3), TraceFactor::First), a.trace() * b) < 1e-14);
  CHECK(partial_trace(max_entangled_projector(3), Dims(3, 3), TraceFactor::First) ==
        CMatrix(CMatrix::Identity(3, 3)));
  const CMatrix x = random_gaussian(6, 6, rng);
  CHECK(std::abs(partial_trace(x, Dims(2, 3), TraceFactor::First).trace() - x.trace()) < 1e-13);
  CHECK(std::abs(partial_trace(x, Dims(2, 3), TraceFactor::Second).trace() - x.trace()) < 1e-13);
}

TEST_CASE("Hermitian eigendecomposition") {
  CMatrix d = CMatrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  const HermSpectrum s = eig_hermitian(d);
  CHECK(s.eigenvalues(0) == doctest::Approx(3.0));
  CHECK(s.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(s.eigenvalues(2) == doctest::Approx(1.0));

  // 2x2 swap: characteristic polynomial (l-1)^3 (l+1).
  const HermSpectrum sw = eig_hermitian(swap_operator(2));
  CHECK(sw.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(sw.eigenvalues(2) == doctest::Approx(1.0));
  CHECK(sw.eigenvalues(3) == doctest::Approx(-1.0));

  Rng rng(15);
  const CVector v = random_unit_vector(7, rng);
  const HermSpectrum r1 = eig_hermitian(v * v.adjoint());
  CHECK(std::abs(r1.eigenvalues(0) - 1.0) <= 1e-10);
  for (int k = 1; k < 7; ++k) CHECK(std::abs(r1.eigenvalues(k)) <= 1e-10);

  for (int dim : {1, 2, 5, 9, 16, 27, 36, 64, 81}) {
    const CMatrix x = random_hermitian(dim, rng);
    const HermSpectrum h = eig_hermitian(x);
    const CMatrix& u = h.eigenvectors;
    const CMatrix recon = u * h.eigenvalues.cast<Complex>().asDiagonal() * u.adjoint();
    CHECK((x - recon).norm() <= 1e-10 * (1.0 + x.norm()));
    CHECK((u.adjoint() * u - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-10);
    for (int k = 1; k < dim; ++k) CHECK(h.eigenvalues(k - 1) >= h.eigenvalues(k));
    if (dim <= 27) {
      const auto ev = oracle::jacobi_eigenvalues(x);
      for (int k = 0; k < dim; ++k) CHECK(std::abs(ev[std::size_t(k)] - h.eigenvalues(k)) <= 1e-10 * (1.0 + x.norm()));
    }
  }

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(eig_hermitian(bad), NotHermitianError);
}

TEST_CASE("is_psd with relative tolerance") {
  const PsdResult id = is_psd(CMatrix::Identity(4, 4));
  CHECK(id.psd);
  CHECK(id.min_eig == doctest::Approx(1.0));

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.5;
  const PsdResult r = is_psd(d);
  CHECK_FALSE(r.psd);
  CHECK(r.min_eig == doctest::Approx(-0.5));

  const PsdResult sw = is_psd(partial_transpose(max_entangled_projector(3), Dims(3, 3)));
  CHECK_FALSE(sw.psd);
  CHECK(sw.min_eig == doctest::Approx(-1.0));

  // Slightly negative within tol*(1+||x||) passes.
  CMatrix e = CMatrix::Identity(2, 2);
  e(1, 1) = -1e-10;
  CHECK(is_psd(e).psd);
  e(1, 1) = -1e-7;
  CHECK_FALSE(is_psd(e).psd);

  CMatrix bad = CMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(is_psd(bad), NotHermitianError);
}

TEST_CASE("PSD and PT-PSD agree on products, disagree on p") {
  Rng rng(16);
  for (int k = 0; k < 10; ++k) {
    const CMatrix x = tensor(random_density(2, rng), random_density(3, rng));
    CHECK(is_psd(x).psd);
    CHECK(is_psd(partial_transpose(x, Dims(2, 3))).psd);
  }
  const CMatrix p = max_entangled_projector(2);
  CHECK(is_psd(p).psd);
  CHECK_FALSE(is_psd(partial_transpose(p, Dims(2, 2))).psd);
}

TEST_CASE("Hilbert-Schmidt and trace pairings") {
  CHECK(hs_inner(CMatrix::Identity(3, 3), CMatrix::Identity(3, 3)) == Complex(3.0));
  CHECK(trace_pairing(unit(2, 0, 1), unit(2, 1, 0)) == Complex(1.0));
  Rng rng(17);
  const CMatrix a = random_gaussian(4, 4, rng), b = random_gaussian(4, 4, rng);
  CHECK(std::abs(trace_pairing(a, b) - trace_pairing(b, a)) < 1e-13);
  CHECK(std::abs(hs_inner(a, b) - (a.adjoint() * b).trace()) < 1e-13);
  CHECK(hs_inner(a, a).real() >= 0.0);
  CHECK(std::abs(hs_inner(a, a).imag()) < 1e-14);
  CHECK_THROWS_AS(trace_pairing(a, CMatrix::Identity(3, 3)), DimensionError);
}

}  // TEST_SUITE
