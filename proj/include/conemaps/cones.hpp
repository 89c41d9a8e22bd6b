// Membership oracles for cones of maps (CP, Cop, P, D, S, POS) and cones of
// composite operators (PSD, F, E, SEP, block-positive).
//
//   F = { x : x >= 0 and (iota (x) t)(x) >= 0 }      (unnormalized PPT cone)
//   E = { A + (iota (x) t)(B) : A, B >= 0 }          (decomposable operators)
//
// E and F are dual to each other under (x, w) -> Tr(x w). A map is in P iff
// its Choi matrix is in F, and decomposable iff its Choi matrix is in E.

#ifndef CONEMAPS_CONES_HPP
#define CONEMAPS_CONES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conemaps/choi.hpp"
#include "conemaps/random.hpp"

namespace conemaps {

enum class ConeId {
  MapCP,
  MapCOP,
  MapP,
  MapD,
  MapS,
  MapPOS,
  OpPSD,
  OpF,
  OpE,
  OpSEP,
  OpBlockPos,
};

std::string_view cone_name(ConeId id);
/// Accepts the command-line names cp, cop, p, d, s, pos, psd, f, e, sep, blockpos.
std::optional<ConeId> parse_cone(std::string_view name);
bool is_map_cone(ConeId id);

enum class Status { In, Out, Undecided };
std::string_view status_name(Status s);

/// Smallest eigenvalue of a named operator ("C", "PT(C)", ...).
struct SpectrumRecord {
  std::string label;
  double min_eig = 0.0;
  CVector eigenvector;
};

/// x = A + (iota (x) t)(B) up to `residual` (relative Frobenius).
struct Decomposition {
  CMatrix a;
  CMatrix b;
  double residual = 0.0;
  int iterations = 0;
};

/// w in F with Tr(w) = 1 and Tr(w x) = value < 0.
struct Witness {
  CMatrix w;
  double value = 0.0;
  /// n * omega((iota (x) phi*)(w)); set when the operator is a Choi matrix.
  std::optional<double> omega_value;
};

/// <xi (x) eta| x |xi (x) eta> = value
struct ProductVectors {
  CVector xi;
  CVector eta;
  double value = 0.0;
};

/// A generator alpha from a sample set under which membership fails.
struct ViolatingMap {
  std::size_t index = 0;
  double min_eig = 0.0;
};

/// Block-positive operator W with Tr(W rho) = value < 0.
struct EntanglementWitness {
  CMatrix w;
  double value = 0.0;
  std::string source;
};

/// rho ~ sum_k weights[k] * (xi_k xi_k*) (x) (eta_k eta_k*)
struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<CVector> xi;
  std::vector<CVector> eta;
  double residual = 0.0;
};

using Certificate = std::variant<std::monostate, std::vector<SpectrumRecord>, Decomposition,
                                 Witness, ProductVectors, ViolatingMap, SeparableDecomposition,
                                 EntanglementWitness>;

struct Verdict {
  Status status = Status::Undecided;
  Certificate certificate;
  /// IN relative to samples or restarts only; never a proof.
  bool heuristic = false;
  int restarts = 0;
  std::string note;

  bool in() const { return status == Status::In; }
  bool out() const { return status == Status::Out; }
  bool undecided() const { return status == Status::Undecided; }
};

struct DykstraConfig {
  double tol = 1e-9;
  int max_iters = 20000;
  int stall_window = 500;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Map cones with closed-form tests.

Verdict is_cp(const MapRep& phi, double tol = kDefaultTol);
Verdict is_cop(const MapRep& phi, double tol = kDefaultTol);
Verdict in_P(const MapRep& phi, double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// Operator cones.

Verdict in_F(const CMatrix& x, Dims d, double tol = kDefaultTol);
/// in_F for a density matrix; throws std::invalid_argument unless Tr = 1 +- 1e-9.
Verdict is_ppt_state(const CMatrix& rho, Dims d, double tol = kDefaultTol);

/// Decomposable-operator cone E. IN carries a Decomposition, OUT a Witness.
Verdict in_E(const CMatrix& x, Dims d, const DykstraConfig& cfg = {},
             std::uint64_t seed = kDefaultSeed);
Verdict is_decomposable(const MapRep& phi, const DykstraConfig& cfg = {},
                        std::uint64_t seed = kDefaultSeed);

// ---------------------------------------------------------------------------
// Projection engines.

struct FeasibilityResult {
  CMatrix a;
  CMatrix b;
  double residual = 0.0;  // ||x - A - PT(B)||_F / (1 + ||x||_F)
  int iterations = 0;
  bool converged = false;
  bool stalled = false;
};

/// Dykstra iteration between {(A,B) : A + PT(B) = x} and PSD x PSD.
FeasibilityResult dykstra_feasibility(const CMatrix& x, Dims d, const DykstraConfig& cfg = {});

struct Projection {
  CMatrix point;
  int iterations = 0;
  bool converged = false;
};

/// Euclidean projection onto F, by Dykstra between PSD and PT(PSD).
Projection project_F(const CMatrix& x, Dims d, const DykstraConfig& cfg = {});

/// Euclidean projection onto F intersected with {Tr w = 1}.
Projection project_F_unit_trace(const CMatrix& x, Dims d, const DykstraConfig& cfg = {});

/// Minimizes Tr(x w) over w in F, Tr w = 1. Returns the best point found and
/// its value whether or not it is negative.
Witness minimize_over_F(const CMatrix& x, Dims d, const DykstraConfig& cfg, int restarts,
                        std::uint64_t seed);

/// A w in F with Tr w = 1 and Tr(x w) < -tol (1 + ||x||_F), if one is found.
std::optional<Witness> witness_search(const CMatrix& x, Dims d, const DykstraConfig& cfg = {},
                                      int restarts = 2, std::uint64_t seed = kDefaultSeed);

/// Smallest shift making w an element of F, then trace normalization.
CMatrix repair_into_F(const CMatrix& w, Dims d);

// ---------------------------------------------------------------------------
// Heuristic cones.

/// Alternating minimal-eigenvector updates of xi and eta from the given start.
ProductVectors see_saw_min(const CMatrix& x, Dims d, CVector xi, CVector eta);

/// See-saw minimization of <xi (x) eta| x |xi (x) eta>. IN is always heuristic.
Verdict is_block_positive(const CMatrix& x, Dims d, int restarts = 8, double tol = kDefaultTol,
                          std::uint64_t seed = kDefaultSeed);
Verdict is_positive_map(const MapRep& phi, int restarts = 8, double tol = kDefaultTol,
                        std::uint64_t seed = kDefaultSeed);

/// Exact (PPT) at 2x2 and 2x3; product-decomposition search or fixture
/// witnesses elsewhere, UNDECIDED when neither succeeds.
Verdict is_separable(const CMatrix& rho, Dims d, double tol = kDefaultTol,
                     std::uint64_t seed = kDefaultSeed);
/// Entanglement breaking: is_separable(C_phi / Tr C_phi).
Verdict in_S(const MapRep& phi, double tol = kDefaultTol, std::uint64_t seed = kDefaultSeed);

/// x in P(M, K) tested against finitely many generators alpha of K.
Verdict pm_k_membership(const CMatrix& x, Dims d, std::span<const MapRep> samples,
                        double tol = kDefaultTol);

/// Least-squares fit rho ~ sum c_k D_k with c >= 0 (Lawson-Hanson).
std::vector<double> nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                         int max_iters = 0);

}  // namespace conemaps

#endif  // CONEMAPS_CONES_HPP
