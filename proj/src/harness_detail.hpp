// Helpers shared by the harness sources; not installed.

#ifndef CONEMAPS_HARNESS_DETAIL_HPP
#define CONEMAPS_HARNESS_DETAIL_HPP

#include <vector>

#include "conemaps/harness.hpp"

namespace conemaps::detail {

inline CMatrix hermitian_part(const CMatrix& x) { return 0.5 * (x + x.adjoint()); }

inline double min_eig(const CMatrix& x) { return eig_hermitian(hermitian_part(x)).min_eigenvalue(); }

inline CVector min_vec(const CMatrix& x) { return eig_hermitian(hermitian_part(x)).min_eigenvector(); }

inline CMatrix projector(const CVector& v) { return v * v.adjoint(); }

/// Positive rescaling to unit trace; left alone when the trace is not positive.
inline MapRep unit_trace(const MapRep& phi) {
  const double tr = phi.choi().trace().real();
  return tr > 0.0 ? phi.scaled(1.0 / tr) : phi;
}

inline CMatrix unit_trace(const CMatrix& x) {
  const double tr = x.trace().real();
  return tr > 0.0 ? CMatrix(x / tr) : x;
}

/// Relative scale used for every threshold on a Choi matrix.
inline double scale_of(const CMatrix& x) { return 1.0 + x.norm(); }

/// Random unit-trace PSD probes of assorted rank.
std::vector<CMatrix> random_probes(int dim, int count, Rng& rng);

/// The canonical members of K acting on M_m: CP {iota}, COP {t}, D {iota, t}.
std::vector<MapRep> canonical_generators(ConeId k, int m);

/// Closed-form membership margin for operators, by target cone:
/// MapCP -> PSD, MapCOP -> PT(PSD), MapD -> F (min of both spectra).
double closed_margin(ConeId target, const CMatrix& c, Dims d);

}  // namespace conemaps::detail

#endif  // CONEMAPS_HARNESS_DETAIL_HPP
