#include "crocker/vicsek.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "crocker/errors.hpp"

namespace crocker {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double v, double period) {
  double w = std::fmod(v, period);
  if (w < 0) w += period;
  if (w >= period) w -= period;  // fmod rounding can land exactly on period
  return w;
}

double wrapped_delta(double a, double b, double period) {
  double d = std::abs(a - b);
  return std::min(d, period - d);
}

bool within_radius(const AgentState& a, const AgentState& b, double box,
                   double radius) {
  double dx = wrapped_delta(a.x, b.x, box);
  if (dx > radius) return false;
  double dy = wrapped_delta(a.y, b.y, box);
  return dx * dx + dy * dy <= radius * radius;
}

struct HeadingAccumulator {
  double sum_sin = 0.0;
  double sum_cos = 0.0;
  double sum_theta = 0.0;
  std::int64_t count = 0;

  void add(double theta) {
    sum_sin += std::sin(theta);
    sum_cos += std::cos(theta);
    sum_theta += theta;
    ++count;
  }

  double mean(HeadingRule rule) const {
    if (rule == HeadingRule::arithmetic_mean)
      return sum_theta / static_cast<double>(count);
    return std::atan2(sum_sin, sum_cos);
  }
};

std::vector<HeadingAccumulator> accumulate_brute(const Frame& frame,
                                                 const VicsekParams& p) {
  std::size_t n = frame.size();
  std::vector<HeadingAccumulator> acc(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (within_radius(frame[i], frame[j], p.box_length, p.radius))
        acc[i].add(frame[j].theta);
  return acc;
}

std::vector<HeadingAccumulator> accumulate_grid(const Frame& frame,
                                                const VicsekParams& p) {
  int cells = static_cast<int>(std::floor(p.box_length / p.radius));
  if (cells < 3) return accumulate_brute(frame, p);  // wrap would double-count
  double cell_size = p.box_length / cells;

  std::size_t n = frame.size();
  std::vector<std::vector<std::int32_t>> buckets(
      static_cast<std::size_t>(cells) * cells);
  auto cell_of = [&](double v) {
    int c = static_cast<int>(v / cell_size);
    return std::min(c, cells - 1);
  };
  for (std::size_t i = 0; i < n; ++i)
    buckets[cell_of(frame[i].x) * cells + cell_of(frame[i].y)].push_back(
        static_cast<std::int32_t>(i));

  std::vector<HeadingAccumulator> acc(n);
  for (std::size_t i = 0; i < n; ++i) {
    int cx = cell_of(frame[i].x);
    int cy = cell_of(frame[i].y);
    for (int dx = -1; dx <= 1; ++dx) {
      int gx = (cx + dx + cells) % cells;
      for (int dy = -1; dy <= 1; ++dy) {
        int gy = (cy + dy + cells) % cells;
        for (std::int32_t j : buckets[gx * cells + gy])
          if (within_radius(frame[i], frame[j], p.box_length, p.radius))
            acc[i].add(frame[j].theta);
      }
    }
  }
  return acc;
}

}  // namespace

std::vector<double> neighbor_mean_headings(const Frame& frame,
                                           const VicsekParams& params,
                                           bool use_cell_grid) {
  auto acc = use_cell_grid ? accumulate_grid(frame, params)
                           : accumulate_brute(frame, params);
  std::vector<double> means(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i)
    means[i] = acc[i].mean(params.heading_rule);
  return means;
}

Frame init_state(const VicsekParams& params, Rng& rng) {
  if (params.n < 1) throw InvalidInput("init_state: need at least one agent");
  Frame frame(params.n);
  for (auto& a : frame) {
    a.x = rng.uniform(0.0, params.box_length);
    a.y = rng.uniform(0.0, params.box_length);
  }
  for (auto& a : frame) a.theta = rng.uniform(0.0, kTwoPi);
  return frame;
}

Frame step(const Frame& frame, const VicsekParams& params, Rng& rng) {
  auto acc = accumulate_grid(frame, params);
  Frame next(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    double noise = (rng.uniform() - 0.5) * params.noise;
    double theta = wrap(acc[i].mean(params.heading_rule) + noise, kTwoPi);
    next[i].theta = theta;
    next[i].x = wrap(frame[i].x + params.speed * std::cos(theta) * params.dt,
                     params.box_length);
    next[i].y = wrap(frame[i].y + params.speed * std::sin(theta) * params.dt,
                     params.box_length);
  }
  return next;
}

SimulationTrace simulate(const VicsekParams& params) {
  Rng rng(params.seed);
  SimulationTrace trace;
  trace.params = params;
  trace.frames.reserve(params.steps + 1);
  trace.frames.push_back(init_state(params, rng));
  for (int t = 0; t < params.steps; ++t)
    trace.frames.push_back(step(trace.frames.back(), params, rng));
  return trace;
}

std::vector<double> order_parameter(const SimulationTrace& trace) {
  std::vector<double> phi;
  phi.reserve(trace.frames.size());
  for (const auto& frame : trace.frames) {
    double sum_sin = 0.0, sum_cos = 0.0;
    for (const auto& a : frame) {
      sum_sin += std::sin(a.theta);
      sum_cos += std::cos(a.theta);
    }
    double value = std::hypot(sum_sin, sum_cos) / static_cast<double>(frame.size());
    phi.push_back(std::min(value, 1.0));
  }
  return phi;
}

TimeVaryingPointCloud to_point_clouds(const SimulationTrace& trace,
                                      int subsample_step, MetricKind kind) {
  if (subsample_step < 1)
    throw InvalidInput("to_point_clouds: subsample_step must be >= 1");
  TimeVaryingPointCloud tvc;
  Metric metric = kind == MetricKind::toroidal
                      ? Metric::toroidal({1.0, 1.0, 1.0})
                      : Metric::euclidean();
  for (std::size_t t = 0; t < trace.frames.size();
       t += static_cast<std::size_t>(subsample_step)) {
    PointCloud cloud;
    cloud.metric = metric;
    cloud.points.reserve(trace.frames[t].size());
    for (const auto& a : trace.frames[t])
      cloud.points.push_back({a.x / trace.params.box_length,
                              a.y / trace.params.box_length,
                              a.theta / kTwoPi});
    tvc.times.push_back(static_cast<double>(t) * trace.params.dt);
    tvc.clouds.push_back(std::move(cloud));
  }
  return tvc;
}

}  // namespace crocker
