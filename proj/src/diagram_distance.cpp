#include "crocker/diagram_distance.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "crocker/errors.hpp"
#include "crocker/metric.hpp"

namespace crocker {

namespace {

struct DgmPoint {
  double birth = 0.0;
  double death = 0.0;  // kInf allowed
};

struct SplitDiagram {
  std::vector<DgmPoint> finite;
  std::vector<double> infinite_births;  // sorted
};

SplitDiagram split(const Barcode& barcode, int dim) {
  SplitDiagram out;
  for (const auto& iv : barcode.intervals) {
    if (iv.dim != dim) continue;
    if (std::isinf(iv.death))
      out.infinite_births.push_back(iv.birth);
    else
      out.finite.push_back({iv.birth, iv.death});
  }
  std::sort(out.infinite_births.begin(), out.infinite_births.end());
  return out;
}

// Threshold matching on left = A + |B| diagonal slots, right = B + |A|
// diagonal slots. Real-real edges cost the L-inf distance, real-diagonal
// edges cost persistence/2, diagonal-diagonal edges are free. Feasibility
// at delta means a perfect matching using only edges of cost <= delta.
class ThresholdMatcher {
 public:
  ThresholdMatcher(const std::vector<DgmPoint>& a,
                   const std::vector<DgmPoint>& b)
      : a_(a), b_(b), left_(a.size() + b.size()), right_(left_) {}

  bool feasible(double delta) {
    delta_ = delta;
    match_left_.assign(left_, -1);
    match_right_.assign(right_, -1);
    std::size_t matched = 0;
    while (bfs_layers()) {
      for (std::size_t u = 0; u < left_; ++u)
        if (match_left_[u] < 0 && augment(u)) ++matched;
      if (matched == left_) return true;
    }
    return matched == left_;
  }

 private:
  double cost(std::size_t u, std::size_t v) const {
    bool u_real = u < a_.size();
    bool v_real = v < b_.size();
    if (u_real && v_real) {
      const auto& x = a_[u];
      const auto& y = b_[v];
      return std::max(std::abs(x.birth - y.birth),
                      std::abs(x.death - y.death));
    }
    if (u_real) return (a_[u].death - a_[u].birth) / 2.0;
    if (v_real) return (b_[v].death - b_[v].birth) / 2.0;
    return 0.0;
  }

  bool bfs_layers() {
    dist_.assign(left_, -1);
    std::queue<std::size_t> queue;
    for (std::size_t u = 0; u < left_; ++u)
      if (match_left_[u] < 0) {
        dist_[u] = 0;
        queue.push(u);
      }
    bool reachable_free = false;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v = 0; v < right_; ++v) {
        if (cost(u, v) > delta_) continue;
        std::ptrdiff_t w = match_right_[v];
        if (w < 0) {
          reachable_free = true;
        } else if (dist_[static_cast<std::size_t>(w)] < 0) {
          dist_[static_cast<std::size_t>(w)] = dist_[u] + 1;
          queue.push(static_cast<std::size_t>(w));
        }
      }
    }
    return reachable_free;
  }

  bool augment(std::size_t u) {
    for (std::size_t v = 0; v < right_; ++v) {
      if (cost(u, v) > delta_) continue;
      std::ptrdiff_t w = match_right_[v];
      if (w >= 0) {
        auto wu = static_cast<std::size_t>(w);
        // follow the layered DAG only; failed vertices carry dist -1
        if (dist_[wu] != dist_[u] + 1) continue;
        if (!augment(wu)) continue;
      }
      match_right_[v] = static_cast<std::ptrdiff_t>(u);
      match_left_[u] = static_cast<std::ptrdiff_t>(v);
      return true;
    }
    dist_[u] = -1;
    return false;
  }

  const std::vector<DgmPoint>& a_;
  const std::vector<DgmPoint>& b_;
  std::size_t left_;
  std::size_t right_;
  double delta_ = 0.0;
  std::vector<std::ptrdiff_t> match_left_;
  std::vector<std::ptrdiff_t> match_right_;
  std::vector<std::ptrdiff_t> dist_;
};

double finite_bottleneck(const std::vector<DgmPoint>& a,
                         const std::vector<DgmPoint>& b) {
  if (a.empty() && b.empty()) return 0.0;

  // the optimum is an achieved matched cost, so these are the only values
  // the answer can take
  std::vector<double> candidates = {0.0};
  for (const auto& x : a)
    for (const auto& y : b)
      candidates.push_back(std::max(std::abs(x.birth - y.birth),
                                    std::abs(x.death - y.death)));
  for (const auto& x : a) candidates.push_back((x.death - x.birth) / 2.0);
  for (const auto& y : b) candidates.push_back((y.death - y.birth) / 2.0);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  ThresholdMatcher matcher(a, b);
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (matcher.feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace

double bottleneck_distance(const Barcode& d1, const Barcode& d2, int dim) {
  SplitDiagram a = split(d1, dim);
  SplitDiagram b = split(d2, dim);

  if (a.infinite_births.size() != b.infinite_births.size()) return kInf;
  // sorted order minimizes the max birth difference on the line
  double infinite_cost = 0.0;
  for (std::size_t i = 0; i < a.infinite_births.size(); ++i)
    infinite_cost = std::max(
        infinite_cost, std::abs(a.infinite_births[i] - b.infinite_births[i]));

  return std::max(infinite_cost, finite_bottleneck(a.finite, b.finite));
}

namespace {

std::vector<DgmPoint> all_points(const SplitDiagram& d) {
  std::vector<DgmPoint> out = d.finite;
  for (double birth : d.infinite_births) out.push_back({birth, kInf});
  return out;
}

// One direction of the erosion feasibility: the rank function of `from`,
// eroded by delta, must be dominated by the rank function of `to`. It is
// enough to test windows [birth(I), death(J)] anchored at ordered pairs of
// `from` intervals; the window condition is strict because the erosion
// distance is an infimum and the feasible set is open exactly at these
// boundaries.
bool erosion_dominates(const std::vector<DgmPoint>& from,
                       const std::vector<DgmPoint>& to, double delta) {
  auto count = [](const std::vector<DgmPoint>& d, double lo, double hi) {
    std::int64_t c = 0;
    for (const auto& p : d)
      if (p.birth <= lo && p.death >= hi) ++c;
    return c;
  };
  for (const auto& i : from) {
    for (const auto& j : from) {
      double lo = i.birth;
      double hi = j.death;  // kInf keeps the window alive for every delta
      if (!(hi - lo > 2.0 * delta)) continue;
      if (count(from, lo, hi) > count(to, lo + delta, hi - delta))
        return false;
    }
  }
  return true;
}

}  // namespace

double erosion_distance(const Barcode& d1, const Barcode& d2, int dim) {
  SplitDiagram sa = split(d1, dim);
  SplitDiagram sb = split(d2, dim);
  if (sa.infinite_births.size() != sb.infinite_births.size()) return kInf;

  std::vector<DgmPoint> a = all_points(sa);
  std::vector<DgmPoint> b = all_points(sb);

  // candidate deltas cover every feasibility jump: endpoint differences
  // move the dominating counts, half-window widths retire anchored windows
  std::vector<double> endpoints;
  for (const auto& d : {a, b})
    for (const auto& p : d) {
      endpoints.push_back(p.birth);
      if (!std::isinf(p.death)) endpoints.push_back(p.death);
    }

  std::vector<double> candidates = {0.0};
  for (std::size_t i = 0; i < endpoints.size(); ++i)
    for (std::size_t j = i + 1; j < endpoints.size(); ++j)
      candidates.push_back(std::abs(endpoints[i] - endpoints[j]));
  for (const auto& d : {a, b})
    for (const auto& i : d)
      for (const auto& j : d)
        if (!std::isinf(j.death) && j.death >= i.birth)
          candidates.push_back((j.death - i.birth) / 2.0);

  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  auto feasible = [&](double delta) {
    return erosion_dominates(a, b, delta) && erosion_dominates(b, a, delta);
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  if (!feasible(candidates[hi])) return kInf;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (feasible(candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

double sup_bottleneck(const BarcodeSeries& x, const BarcodeSeries& y, int dim) {
  if (x.times != y.times)
    throw InvalidInput("sup_bottleneck: time grids differ");
  double sup = 0.0;
  for (std::size_t t = 0; t < x.barcodes.size(); ++t)
    sup = std::max(sup, bottleneck_distance(x.barcodes[t], y.barcodes[t], dim));
  return sup;
}

double p_bottleneck(const BarcodeSeries& x, const BarcodeSeries& y, int dim,
                    double p) {
  if (x.times != y.times)
    throw InvalidInput("p_bottleneck: time grids differ");
  std::vector<double> per_time;
  per_time.reserve(x.barcodes.size());
  for (std::size_t t = 0; t < x.barcodes.size(); ++t)
    per_time.push_back(bottleneck_distance(x.barcodes[t], y.barcodes[t], dim));
  return time_aggregate(per_time, x.times, p);
}

}  // namespace crocker
