#include "crocker/metric.hpp"

#include <algorithm>
#include <cmath>

#include "crocker/errors.hpp"

namespace crocker {

Metric Metric::toroidal(std::vector<double> periods) {
  for (double p : periods)
    if (!(p > 0)) throw InvalidInput("toroidal period must be positive");
  return Metric{MetricKind::toroidal, std::move(periods)};
}

double point_distance(std::span<const double> a, std::span<const double> b,
                      const Metric& metric) {
  double sum = 0.0;
  if (metric.kind == MetricKind::toroidal) {
    for (std::size_t k = 0; k < a.size(); ++k) {
      double period = metric.periods[k];
      double d = std::abs(a[k] - b[k]);
      d = std::min(d, period - d);
      sum += d * d;
    }
  } else {
    for (std::size_t k = 0; k < a.size(); ++k) {
      double d = a[k] - b[k];
      sum += d * d;
    }
  }
  return std::sqrt(sum);
}

double DistanceMatrix::max_entry() const {
  double m = 0.0;
  for (double e : entries) m = std::max(m, e);
  return m;
}

static void check_cloud(const PointCloud& cloud, const char* what) {
  if (cloud.points.empty()) throw InvalidInput(std::string(what) + ": empty point cloud");
  std::size_t d = cloud.points.front().size();
  for (const auto& p : cloud.points)
    if (p.size() != d) throw InvalidInput(std::string(what) + ": mixed point dimensions");
  if (cloud.metric.kind == MetricKind::toroidal && cloud.metric.periods.size() != d)
    throw InvalidInput(std::string(what) + ": toroidal metric needs one period per axis");
}

DistanceMatrix pairwise_distances(const PointCloud& cloud) {
  check_cloud(cloud, "pairwise_distances");
  std::size_t n = cloud.size();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dm.set_symmetric(i, j, point_distance(cloud.points[i], cloud.points[j], cloud.metric));
  return dm;
}

static double directed_sup(const PointCloud& from, const PointCloud& to) {
  double sup = 0.0;
  for (const auto& p : from.points) {
    double inf = kInf;
    for (const auto& q : to.points)
      inf = std::min(inf, point_distance(p, q, from.metric));
    sup = std::max(sup, inf);
  }
  return sup;
}

double hausdorff_distance(const PointCloud& x, const PointCloud& y) {
  check_cloud(x, "hausdorff_distance");
  check_cloud(y, "hausdorff_distance");
  if (x.dim() != y.dim())
    throw InvalidInput("hausdorff_distance: dimension mismatch");
  if (!(x.metric == y.metric))
    throw InvalidInput("hausdorff_distance: metric mismatch");
  return std::max(directed_sup(x, y), directed_sup(y, x));
}

double gh_upper_bound(const PointCloud& x, const PointCloud& y) {
  return hausdorff_distance(x, y);
}

double time_aggregate(const std::vector<double>& per_time_values,
                      const std::vector<double>& times, double p) {
  if (per_time_values.empty() || per_time_values.size() != times.size())
    throw InvalidInput("time_aggregate: need matching non-empty values and times");
  if (!(p >= 1.0)) throw InvalidInput("time_aggregate: p must be in [1, inf]");

  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : per_time_values) m = std::max(m, v);
    return m;
  }

  std::size_t k = per_time_values.size();
  double sum = 0.0;
  double last_weight = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    double w = (i + 1 < k) ? times[i + 1] - times[i] : last_weight;
    last_weight = w;
    if (std::isinf(per_time_values[i])) return kInf;
    sum += w * std::pow(per_time_values[i], p);
  }
  return std::pow(sum, 1.0 / p);
}

}  // namespace crocker
