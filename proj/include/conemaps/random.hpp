// Seeded random matrices. Every randomized routine in the library takes an
// explicit seed or generator; nothing reads the clock.

#ifndef CONEMAPS_RANDOM_HPP
#define CONEMAPS_RANDOM_HPP

#include <cstdint>
#include <random>

#include "conemaps/linalg.hpp"

namespace conemaps {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed5eedULL;

/// splitmix64 finalizer applied to (master, index): the seed of the
/// index-th independent substream of a master seed.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index);

/// Entries (g1 + i g2)/sqrt(2) with g1, g2 standard normal.
CMatrix random_gaussian(int rows, int cols, Rng& rng);
CVector random_unit_vector(int dim, Rng& rng);
/// (G + G*)/2 for Gaussian G.
CMatrix random_hermitian(int dim, Rng& rng);
/// G G* / Tr(G G*) with G of size dim x rank.
CMatrix random_density(int dim, Rng& rng, int rank = -1);
double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive

}  // namespace conemaps

#endif  // CONEMAPS_RANDOM_HPP
