#ifndef JETFORGE_LINALG_HPP
#define JETFORGE_LINALG_HPP

#include "jetforge/expr.hpp"

namespace jetforge {

// Rank over the fraction field of Q[atoms], fraction-free (Bareiss).
int polyMatrixRank(std::vector<std::vector<Poly>> m);

// Rank over Q(sqrt(D)) by Gaussian elimination.
int quadMatrixRank(std::vector<std::vector<QuadVal>> m);

}  // namespace jetforge

#endif
