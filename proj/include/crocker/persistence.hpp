#pragma once

#include <cstdint>
#include <vector>

#include "crocker/metric.hpp"
#include "crocker/rips.hpp"

namespace crocker {

struct PersistenceInterval {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;  // kInf when the class survives past max_scale

  bool operator==(const PersistenceInterval&) const = default;
};

// Persistence summary of one filtration. Zero-length intervals are dropped;
// deaths beyond max_scale are recorded as kInf.
struct Barcode {
  std::vector<PersistenceInterval> intervals;  // sorted by (dim, birth, death)
  double max_scale = 0.0;
};

// Per-time barcodes of a time-varying metric space.
struct BarcodeSeries {
  std::vector<double> times;
  std::vector<Barcode> barcodes;
};

// Standard persistence pairing: union-find over edges in filtration order
// for dimension 0 (elder rule), GF(2) column reduction of the triangle
// boundary for dimension 1.
Barcode compute_ph(const Filtration& f);

// pairwise_distances + build_vr_filtration + compute_ph in one call.
Barcode vr_barcode(const DistanceMatrix& dm, double max_scale, int max_dim);

// Number of intervals of the given dimension containing [i, j], both ends
// closed; death = kInf contains every j.
std::int64_t rank_between(const Barcode& b, int dim, double i, double j);

// rank_between over the window [epsilon - alpha, epsilon + alpha].
std::int64_t rank_function(const Barcode& b, int dim, double epsilon,
                           double alpha);

}  // namespace crocker
