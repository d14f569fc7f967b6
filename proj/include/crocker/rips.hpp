#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "crocker/metric.hpp"

namespace crocker {

// Simplex of dimension 0, 1 or 2. Vertices are sorted ascending; unused
// slots hold -1. `value` is the scale at which the simplex enters the
// filtration: 0 for vertices, the pairwise distance for edges, the max of
// the three edge values for triangles.
struct Simplex {
  std::array<std::int32_t, 3> vertices{-1, -1, -1};
  std::int8_t dim = 0;
  double value = 0.0;
};

// Vietoris-Rips filtration truncated at max_scale. Simplices are sorted by
// (value, dim, lexicographic vertices), which puts every face before each
// of its cofaces.
struct Filtration {
  std::vector<Simplex> simplices;
  double max_scale = 0.0;
  int max_dim = 0;
};

Filtration build_vr_filtration(const DistanceMatrix& dm, double max_scale,
                               int max_dim);

struct BettiPair {
  std::int64_t b0 = 0;
  std::int64_t b1 = 0;
};

// Brute-force oracle: builds the complex at one scale and computes Betti
// numbers from GF(2) boundary ranks by Gaussian elimination. Meant for
// small inputs and cross-validation of the persistence pipeline.
BettiPair betti_numbers_at(const DistanceMatrix& dm, double epsilon,
                           int max_dim);

}  // namespace crocker
