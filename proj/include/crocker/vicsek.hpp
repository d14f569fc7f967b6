#pragma once

#include <cstdint>
#include <vector>

#include "crocker/metric.hpp"
#include "crocker/rng.hpp"

namespace crocker {

enum class HeadingRule {
  circular_mean,    // atan2 of mean sine over mean cosine
  arithmetic_mean,  // plain mean of stored angles; discontinuous at the wrap
};

struct VicsekParams {
  int n = 300;
  double box_length = 25.0;
  double speed = 0.03;
  double noise = 0.0;  // eta: width of the uniform heading noise, radians
  double radius = 1.0;
  double dt = 1.0;
  int steps = 0;
  std::uint64_t seed = 0;
  HeadingRule heading_rule = HeadingRule::circular_mean;
};

struct AgentState {
  double x = 0.0;      // [0, box_length)
  double y = 0.0;      // [0, box_length)
  double theta = 0.0;  // [0, 2*pi)
};

using Frame = std::vector<AgentState>;

// Agent identity is the positional index, constant across frames.
struct SimulationTrace {
  VicsekParams params;
  std::vector<Frame> frames;  // steps + 1 frames
};

// Uniform positions in the box, uniform headings. Positions are drawn
// first (x then y per agent), then headings, all in agent-index order.
Frame init_state(const VicsekParams& params, Rng& rng);

// Synchronous update: every new heading is the neighbour average (toroidal
// distance <= radius, self included) of the old frame plus one uniform draw
// from (-noise/2, noise/2), consumed in agent-index order; then agents
// advance speed*dt along the new heading with periodic wrapping.
Frame step(const Frame& frame, const VicsekParams& params, Rng& rng);

SimulationTrace simulate(const VicsekParams& params);

// Alignment order parameter per frame: |sum of unit heading vectors| / n,
// in [0, 1].
std::vector<double> order_parameter(const SimulationTrace& trace);

// Subsampled slices t = 0, s, 2s, ... as 3D clouds
// (x/box_length, y/box_length, theta/2pi) in [0,1)^3.
TimeVaryingPointCloud to_point_clouds(const SimulationTrace& trace,
                                      int subsample_step,
                                      MetricKind kind = MetricKind::euclidean);

// Neighbour-average headings of one frame; the brute-force path is the
// cross-check oracle for the cell grid used by step().
std::vector<double> neighbor_mean_headings(const Frame& frame,
                                           const VicsekParams& params,
                                           bool use_cell_grid);

}  // namespace crocker
