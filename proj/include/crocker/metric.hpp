#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace crocker {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class MetricKind { euclidean, toroidal };

// Toroidal metrics wrap each axis by its own period before taking the
// Euclidean norm of the per-axis differences.
struct Metric {
  MetricKind kind = MetricKind::euclidean;
  std::vector<double> periods;  // per axis, toroidal only

  static Metric euclidean() { return {}; }
  static Metric toroidal(std::vector<double> periods);

  bool operator==(const Metric&) const = default;
};

double point_distance(std::span<const double> a, std::span<const double> b,
                      const Metric& metric);

// Finite sample of a metric space at one instant.
struct PointCloud {
  std::vector<std::vector<double>> points;
  Metric metric;

  std::size_t size() const { return points.size(); }
  std::size_t dim() const { return points.empty() ? 0 : points.front().size(); }
};

// One cloud per (strictly increasing) time stamp. Point counts may differ
// between slices; the ambient dimension may not.
struct TimeVaryingPointCloud {
  std::vector<double> times;
  std::vector<PointCloud> clouds;
};

struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> entries;  // row-major n*n, symmetric, zero diagonal

  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : n(size), entries(size * size, 0.0) {}

  double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return entries[i * n + j]; }

  void set_symmetric(std::size_t i, std::size_t j, double d) {
    entries[i * n + j] = d;
    entries[j * n + i] = d;
  }

  double max_entry() const;
};

DistanceMatrix pairwise_distances(const PointCloud& cloud);

// max(sup_x inf_y d(x,y), sup_y inf_x d(x,y)); clouds must share dimension
// and metric.
double hausdorff_distance(const PointCloud& x, const PointCloud& y);

// Hausdorff distance of the given embeddings, reported as an upper bound on
// the Gromov-Hausdorff distance. Never an exact GH value.
double gh_upper_bound(const PointCloud& x, const PointCloud& y);

// Discrete quadrature of (integral v(t)^p dt)^(1/p) on the sampling grid:
// left-Riemann weights t_{k+1}-t_k, last weight repeating the previous
// spacing, weight 1 for a single sample. p = infinity takes the max.
double time_aggregate(const std::vector<double>& per_time_values,
                      const std::vector<double>& times, double p);

}  // namespace crocker
