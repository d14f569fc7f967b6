#pragma once

#include <cstdint>
#include <vector>

#include "crocker/metric.hpp"

namespace crocker {

// Feature vectors with the generating noise value of each row as its label.
struct FeatureMatrix {
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;

  std::size_t size() const { return rows.size(); }
  std::size_t width() const { return rows.empty() ? 0 : rows.front().size(); }
};

struct PcaResult {
  FeatureMatrix reduced;
  std::vector<double> explained_variance_ratios;
};

// Center columns, project onto the top-k right singular directions. Each
// direction's largest-magnitude component is made positive so output is
// reproducible across platforms.
PcaResult pca_reduce(const FeatureMatrix& fm, std::size_t k);

DistanceMatrix euclidean_distance_matrix(const FeatureMatrix& fm);

struct ClusterResult {
  std::vector<std::size_t> medoid_indices;  // ascending row indices
  std::vector<std::size_t> assignment;      // cluster id per row
  std::size_t k = 0;
};

// Partitioning Around Medoids: greedy BUILD, then best-improvement SWAP
// until no swap strictly lowers the total distance. All ties break toward
// the lowest index. The seed is reserved for optional random restarts;
// the default run is deterministic BUILD+SWAP.
ClusterResult k_medoids_pam(const DistanceMatrix& dm, std::size_t k,
                            std::uint64_t seed = 0);

struct AccuracyReport {
  double accuracy = 0.0;
  std::vector<double> true_labels;    // distinct, ascending (confusion rows)
  std::vector<double> medoid_labels;  // distinct, ascending (confusion columns)
  std::vector<std::vector<std::int64_t>> confusion;
};

// Clusters inherit their medoid's label; clusters sharing a label are
// scored together. Accuracy is the fraction of rows whose own label equals
// their cluster's medoid label.
AccuracyReport clustering_accuracy(const ClusterResult& cr,
                                   const std::vector<double>& labels);

}  // namespace crocker
