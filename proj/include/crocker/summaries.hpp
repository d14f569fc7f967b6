#pragma once

#include <cstdint>
#include <vector>

#include "crocker/persistence.hpp"

namespace crocker {

struct ScaleGrid {
  std::vector<double> epsilons;  // ascending, >= 0
  std::vector<double> alphas;    // ascending, starting at 0

  // 50 equally spaced scales in [0, 0.35] and smoothing values
  // 0, 0.01, ..., 0.17.
  static ScaleGrid experiment_preset();
  static std::vector<double> linspace(double lo, double hi, std::size_t count);
};

// Grid of ranks over (time, scale) at one smoothing value. `truncated`
// marks that some cell needed epsilon + alpha past the computed max_scale,
// where deaths are only known as +inf.
struct CrockerPlot {
  std::vector<double> times;
  std::vector<double> epsilons;
  std::vector<std::int64_t> values;  // row-major: time rows, epsilon columns
  int dim = 0;
  double alpha = 0.0;
  double max_scale = 0.0;
  bool truncated = false;

  std::int64_t value(std::size_t t, std::size_t e) const {
    return values[t * epsilons.size() + e];
  }
};

// Family of alpha-smoothed plots over an ascending alpha grid; nonincreasing
// in alpha at every (time, scale) cell.
struct CrockerStack {
  std::vector<double> times;
  std::vector<double> epsilons;
  std::vector<double> alphas;
  std::vector<std::int64_t> values;  // alpha-major, then time rows, epsilon columns
  int dim = 0;
  double max_scale = 0.0;
  bool truncated = false;

  std::int64_t value(std::size_t t, std::size_t e, std::size_t a) const {
    return values[(a * times.size() + t) * epsilons.size() + e];
  }

  CrockerPlot slice(std::size_t a) const;
};

CrockerPlot crocker_plot(const BarcodeSeries& series, const ScaleGrid& grid,
                         int dim);

// crocker_plot with a 2*alpha containment window; alpha = 0 reproduces
// crocker_plot exactly.
CrockerPlot alpha_smoothed_plot(const BarcodeSeries& series,
                                const ScaleGrid& grid, int dim, double alpha);

CrockerStack crocker_stack(const BarcodeSeries& series, const ScaleGrid& grid,
                           int dim);

// Row-major flattening: time-major then epsilon; stacks concatenate their
// alpha slices in ascending alpha order.
std::vector<double> vectorize(const CrockerPlot& plot);
std::vector<double> vectorize_stack(const CrockerStack& stack);

std::vector<double> concat_dims(const std::vector<double>& v0,
                                const std::vector<double>& v1);

}  // namespace crocker
