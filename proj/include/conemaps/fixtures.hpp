// Shipped instances: Choi's positive, non-decomposable map on M_3 and a
// PPT-entangled state on C^3 (x) C^3 that it detects.

#ifndef CONEMAPS_FIXTURES_HPP
#define CONEMAPS_FIXTURES_HPP

#include <vector>

#include "conemaps/choi.hpp"

namespace conemaps::fixtures {

/// X -> diag(x11 + x22, x22 + x33, x33 + x11) - offdiag(X), i.e. the map
/// with diagonal a x11 + b x22 + c x33 (cyclic) at (a,b,c) = (1,1,0).
MapRep choi_map();

/// (2/7) |psi+><psi+| + (a/7) s+ + ((5-a)/7) s- at a = 3.5, where
/// s+ = (|01><01| + |12><12| + |20><20|)/3 and s- is its swap image.
/// PPT with strictly positive partial-transpose spectrum; Tr(C w) = -1/14
/// against the Choi matrix of choi_map().
CMatrix choi_map_witness_state();

/// Positive maps on M_3 that are not decomposable; used to seed MAP_POS.
std::vector<MapRep> positive_map_fixtures(Dims d);

/// Block-positive operators on C^n (x) C^m with a known proof of block
/// positivity (images of the Choi map's Choi matrix under local symmetries).
std::vector<CMatrix> block_positive_witnesses(Dims d);

}  // namespace conemaps::fixtures

#endif  // CONEMAPS_FIXTURES_HPP
