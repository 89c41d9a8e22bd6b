#include "conemaps/random.hpp"

#include <cmath>

namespace conemaps {

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CMatrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix g(rows, cols);
  // Column-major fill order is part of the determinism contract.
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(s * re, s * im);
    }
  }
  return g;
}

CVector random_unit_vector(int dim, Rng& rng) {
  CVector v = random_gaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_hermitian(int dim, Rng& rng) {
  const CMatrix g = random_gaussian(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_density(int dim, Rng& rng, int rank) {
  if (rank <= 0) rank = dim;
  const CMatrix g = random_gaussian(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace conemaps
