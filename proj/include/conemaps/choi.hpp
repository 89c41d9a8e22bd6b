// Linear maps M_n -> M_m stored as Choi matrices C = sum_ij e_ij (x) phi(e_ij).

#ifndef CONEMAPS_CHOI_HPP
#define CONEMAPS_CHOI_HPP

#include <functional>

#include "conemaps/linalg.hpp"

namespace conemaps {

/// A linear map phi: M_n -> M_m. Block (i,j) of the Choi matrix is phi(e_ij).
class MapRep {
 public:
  MapRep(Dims d, CMatrix choi);

  Dims dims() const { return dims_; }
  int in_dim() const { return dims_.n; }
  int out_dim() const { return dims_.m; }
  const CMatrix& choi() const { return choi_; }

  /// phi(e_ij)
  CMatrix block(int i, int j) const;

  bool hermitian_choi(double tol = kHermitianTol) const { return is_hermitian(choi_, tol); }
  /// Throws NotHermitianError; called by every cone oracle.
  void require_hermitian_choi(const char* what) const;

  MapRep scaled(double s) const { return MapRep(dims_, s * choi_); }

 private:
  Dims dims_;
  CMatrix choi_;
};

MapRep operator+(const MapRep& a, const MapRep& b);

/// Density operator of a dual functional: phi~(x) = Tr(density * x).
struct DualFunctional {
  CMatrix density;
  Dims dims;

  Complex operator()(const CMatrix& x) const;
};

using MatrixAction = std::function<CMatrix(const CMatrix&)>;

MapRep map_from_action(int n, int m, const MatrixAction& action);

/// phi(a) = sum_ij a_ij C_ij
CMatrix apply(const MapRep& phi, const CMatrix& a);

/// (iota (x) alpha)(x) for x in M_n (x) M_{alpha.in}, computed block by block.
CMatrix apply_local(const MapRep& alpha, const CMatrix& x, int n);

/// alpha o phi, via C_{alpha o phi} = (iota (x) alpha)(C_phi).
MapRep compose_left(const MapRep& alpha, const MapRep& phi);

/// phi^t = t o phi o t, with C_{phi^t} = (t (x) t)(C_phi).
MapRep transpose_conj(const MapRep& phi);

/// Hilbert-Schmidt adjoint: Tr(phi(a) b) = Tr(a phi*(b)).
MapRep adjoint(const MapRep& phi);

DualFunctional dual_functional(const MapRep& phi);

/// Tr(C_phi C_psi) for Hermitian Choi matrices of equal dims.
double pairing(const MapRep& phi, const MapRep& psi);

/// Maximally entangled functional (1/n) Tr(p x) on M_n (x) M_n.
double omega_eval(const CMatrix& x, int n);

/// Tr o pi where pi(a (x) b) = b^t a, on M_n (x) M_n. Equals sum_ij (X_ij)_ij.
Complex trpi_eval(const CMatrix& x, Dims d);

/// p = sum_ij e_ij (x) e_ij on C^n (x) C^n, unnormalized. Cached per n.
const CMatrix& max_entangled_projector(int n);

MapRep identity_map(int n);
MapRep transpose_map(int n);
/// x -> Tr(x) I_m / m
MapRep depolarizing_map(int n, int m);
/// x -> k x k*, k of size m x n
MapRep kraus_map(const CMatrix& k);
/// t o phi
MapRep transpose_after(const MapRep& phi);

}  // namespace conemaps

#endif  // CONEMAPS_CHOI_HPP
