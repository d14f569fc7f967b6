#pragma once

#include "crocker/persistence.hpp"

namespace crocker {

// Bottleneck distance between the dim-restricted diagrams: binary search
// over candidate thresholds with a bipartite-matching feasibility test,
// diagonal projections included. Infinite-death points may only match
// infinite-death points (cost = birth difference); mismatched infinite
// counts give +inf.
double bottleneck_distance(const Barcode& d1, const Barcode& d2, int dim);

// Erosion distance: the smallest delta such that each diagram's rank
// function, eroded by delta, is dominated by the other's. Computed as the
// first feasible value of a candidate sweep; mismatched infinite counts
// give +inf.
double erosion_distance(const Barcode& d1, const Barcode& d2, int dim);

// max over t of the per-time bottleneck distance; time grids must match.
double sup_bottleneck(const BarcodeSeries& x, const BarcodeSeries& y, int dim);

// time_aggregate of the per-time bottleneck distances; p = inf equals
// sup_bottleneck.
double p_bottleneck(const BarcodeSeries& x, const BarcodeSeries& y, int dim,
                    double p);

}  // namespace crocker
