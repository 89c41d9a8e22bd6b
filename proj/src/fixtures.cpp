#include "conemaps/fixtures.hpp"

#include "conemaps/linalg.hpp"

namespace conemaps::fixtures {

namespace {

CMatrix swap_operator(int n) {
  const int N = n * n;
  CMatrix s = CMatrix::Zero(N, N);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  }
  return s;
}

CMatrix basis_projector(int n, int i, int r) {
  const int N = n * n;
  CMatrix e = CMatrix::Zero(N, N);
  e(i * n + r, i * n + r) = 1.0;
  return e;
}

}  // namespace

MapRep choi_map() {
  return map_from_action(3, 3, [](const CMatrix& x) {
    CMatrix y = CMatrix::Zero(3, 3) - x;  // no signed zeros in the fixture file
    y(0, 0) = x(0, 0) + x(1, 1);
    y(1, 1) = x(1, 1) + x(2, 2);
    y(2, 2) = x(2, 2) + x(0, 0);
    return y;
  });
}

CMatrix choi_map_witness_state() {
  constexpr double a = 3.5;
  const CMatrix psi = max_entangled_projector(3) / 3.0;
  CMatrix s_plus = CMatrix::Zero(9, 9), s_minus = CMatrix::Zero(9, 9);
  for (int i = 0; i < 3; ++i) {
    s_plus += basis_projector(3, i, (i + 1) % 3) / 3.0;
    s_minus += basis_projector(3, (i + 1) % 3, i) / 3.0;
  }
  return (2.0 / 7.0) * psi + (a / 7.0) * s_plus + ((5.0 - a) / 7.0) * s_minus;
}

std::vector<MapRep> positive_map_fixtures(Dims d) {
  if (!(d == Dims(3, 3))) return {};
  const MapRep phi = choi_map();
  return {phi, transpose_conj(phi), adjoint(phi)};
}

std::vector<CMatrix> block_positive_witnesses(Dims d) {
  if (!(d == Dims(3, 3))) return {};
  const CMatrix c = choi_map().choi();
  const CMatrix s = swap_operator(3);
  return {c, partial_transpose(c, d), c.transpose(), s * c * s, s * partial_transpose(c, d) * s};
}

}  // namespace conemaps::fixtures
