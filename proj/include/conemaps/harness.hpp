// Randomized verification of the cone duality statements: samplers for each
// map cone, the K^d / K^t / K-sharp constructions, the four equivalent
// dual-cone conditions, and per-theorem suites producing TheoremReports.

#ifndef CONEMAPS_HARNESS_HPP
#define CONEMAPS_HARNESS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conemaps/cones.hpp"

namespace conemaps {

struct HarnessConfig {
  int generators = 32;      // cone generators per suite
  int probes = 64;          // PSD probes for functional conditions
  int omega_probes = 200;  // probes in the maximally-entangled CP test
  DykstraConfig dykstra;
};

/// A random element of a map cone. Redraws degenerate samples (at most 100
/// attempts, then ConvergenceError). Throws std::invalid_argument for
/// operator cones.
MapRep sample_map(ConeId cone, Dims d, std::uint64_t seed);
/// count samples; sample k uses substream_seed(seed, k).
std::vector<MapRep> sample_maps(ConeId cone, Dims d, int count, std::uint64_t seed);

/// { t o alpha* o t }
std::vector<MapRep> kd_generators(std::span<const MapRep> samples);
/// { t o alpha o t }
std::vector<MapRep> k_t(std::span<const MapRep> samples);

/// beta o alpha* in CP for every sampled alpha. OUT carries the violating
/// index; IN is heuristic.
Verdict ksharp_membership(const MapRep& beta, std::span<const MapRep> samples,
                          double tol = kDefaultTol);

/// Outcome of one dual-cone condition. `value` is the smallest pairing or
/// eigenvalue seen; the condition holds iff value >= 0, and |value| <= band
/// marks a boundary instance.
struct Condition {
  bool holds = false;
  double value = 0.0;
};

struct Theorem1Result {
  std::array<Condition, 4> cond;  // (i) .. (iv)
  double band = 0.0;
  bool boundary = false;
  std::string note;

  bool agree() const;
};

/// The four characterizations of membership of phi in the dual of the
/// mapping cone generated by K, each computed by its own route. Condition
/// (ii) uses the closed-form oracle; (i), (iii), (iv) use the given K samples
/// plus canonical and instance-targeted generators. K must be one of
/// MapCP, MapCOP, MapP, MapD; MapP needs n == m.
Theorem1Result theorem1_conditions(const MapRep& phi, ConeId k, std::span<const MapRep> samples,
                                   std::span<const CMatrix> probes, double tol,
                                   const DykstraConfig& cfg = {},
                                   std::uint64_t seed = kDefaultSeed);

/// Random Hermitian Choi matrix H + c I with H Gaussian, ||H||_F = 1, and
/// c spread across the membership threshold of the closed form for K.
MapRep random_threshold_map(ConeId k, Dims d, Rng& rng);

enum class TheoremId { T1, T6, T12, T13, T18, C2, C19, L4, L5, L8, L10, L15, L16, L17 };

std::string_view theorem_name(TheoremId id);
std::optional<TheoremId> parse_theorem(std::string_view name);
std::span<const TheoremId> all_theorems();

struct Failure {
  int trial = 0;
  std::string conditions;
  double violation = 0.0;
};

struct TheoremReport {
  TheoremId theorem = TheoremId::L4;
  Dims dims;
  int trials = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTol;
  double tolerance = 0.0;  // violation threshold for a hard failure
  int checks = 0;
  int boundary = 0;
  std::vector<Failure> failures;
  double worst_violation = 0.0;
  /// floor(log10(violation)) -> count; violations <= 0 are not binned.
  std::map<int, int> histogram;
  std::vector<std::pair<std::string, double>> stats;
  std::vector<std::string> notes;
  double elapsed_seconds = 0.0;  // not serialized

  bool passed() const { return failures.empty(); }
  double stat(std::string_view name) const;
};

TheoremReport verify(TheoremId id, Dims d, int trials, std::uint64_t seed,
                     double tol = kDefaultTol, const HarnessConfig& cfg = {});

}  // namespace conemaps

#endif  // CONEMAPS_HARNESS_HPP
