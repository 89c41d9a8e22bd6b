// Dense complex linear algebra for operators on M_n (x) M_m.
//
// Composite index convention (used everywhere in the library and in the
// on-disk formats): the basis vector e_i (x) e_r of C^n (x) C^m has index
// i*m + r. An operator x on the composite space is therefore an n x n grid
// of m x m blocks X_ij, with X_ij = x.block(i*m, j*m, m, m).

#ifndef CONEMAPS_LINALG_HPP
#define CONEMAPS_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace conemaps {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Default relative tolerance for positivity decisions.
inline constexpr double kDefaultTol = 1e-9;

/// Hermiticity gate: ||x - x*||_F <= kHermitianTol * (1 + ||x||_F).
inline constexpr double kHermitianTol = 1e-9;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tensor factor dimensions: M_n (x) M_m.
struct Dims {
  int n = 1;
  int m = 1;

  Dims() = default;
  Dims(int n_, int m_);

  int composite() const { return n * m; }
  bool square() const { return n == m; }
  bool operator==(const Dims&) const = default;
};

enum class TraceFactor { First, Second };

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues are nonincreasing;
/// column k of `eigenvectors` belongs to eigenvalues(k).
struct HermSpectrum {
  RVector eigenvalues;
  CMatrix eigenvectors;

  double min_eigenvalue() const { return eigenvalues(eigenvalues.size() - 1); }
  CVector min_eigenvector() const { return eigenvectors.col(eigenvectors.cols() - 1); }
};

struct PsdResult {
  bool psd = false;
  double min_eig = 0.0;
  CVector min_vec;  // eigenvector for min_eig

  explicit operator bool() const { return psd; }
};

/// Throws DimensionError unless x is (d.n*d.m) square.
void require_composite(const CMatrix& x, Dims d, const char* what);
void require_square(const CMatrix& x, const char* what);
/// Throws std::invalid_argument if any entry is NaN or infinite.
void require_finite(const CMatrix& x, const char* what);

double frobenius(const CMatrix& x);
/// ||x - x*||_F
double hermiticity_defect(const CMatrix& x);
bool is_hermitian(const CMatrix& x, double tol = kHermitianTol);
void require_hermitian(const CMatrix& x, const char* what, double tol = kHermitianTol);

/// Matrix unit e_ij of size dim x dim.
CMatrix unit(int dim, int i, int j);

/// Kronecker product; row i of a and row r of b map to row i*rows(b) + r.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
CVector tensor(const CVector& a, const CVector& b);

/// iota (x) t: transposes every m x m block in place.
CMatrix partial_transpose(const CMatrix& x, Dims d);
CMatrix full_transpose(const CMatrix& x);
CMatrix conj_transpose(const CMatrix& x);
/// t (x) t computed factor by factor; coincides with full_transpose.
CMatrix both_transpose(const CMatrix& x, Dims d);

/// First: sum_i X_ii (m x m). Second: [Tr X_ij] (n x n).
CMatrix partial_trace(const CMatrix& x, Dims d, TraceFactor factor);

/// Hermitian eigensolver. The input is symmetrized to (x + x*)/2 after
/// passing the Hermiticity gate.
HermSpectrum eig_hermitian(const CMatrix& x);

/// PSD test with relative threshold -tol * (1 + ||x||_F).
PsdResult is_psd(const CMatrix& x, double tol = kDefaultTol);

/// Tr(a* b)
Complex hs_inner(const CMatrix& a, const CMatrix& b);
/// Tr(a b)
Complex trace_pairing(const CMatrix& a, const CMatrix& b);

/// Euclidean projection of a Hermitian matrix onto the PSD cone.
CMatrix project_psd(const CMatrix& x);

}  // namespace conemaps

#endif  // CONEMAPS_LINALG_HPP
