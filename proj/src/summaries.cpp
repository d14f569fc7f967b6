#include "crocker/summaries.hpp"

#include <algorithm>

#include "crocker/errors.hpp"

namespace crocker {

std::vector<double> ScaleGrid::linspace(double lo, double hi,
                                        std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) /
                      static_cast<double>(count - 1);
  return out;
}

ScaleGrid ScaleGrid::experiment_preset() {
  ScaleGrid grid;
  grid.epsilons = linspace(0.0, 0.35, 50);
  grid.alphas.resize(18);
  for (std::size_t i = 0; i < grid.alphas.size(); ++i)
    grid.alphas[i] = 0.01 * static_cast<double>(i);
  return grid;
}

namespace {

void check_series(const BarcodeSeries& series, const ScaleGrid& grid) {
  if (series.barcodes.empty() ||
      series.barcodes.size() != series.times.size())
    throw InvalidInput("crocker: need matching non-empty times and barcodes");
  if (grid.epsilons.empty())
    throw InvalidInput("crocker: empty epsilon grid");
  for (const auto& b : series.barcodes)
    if (grid.epsilons.back() > b.max_scale)
      throw InvalidInput("crocker: epsilon grid exceeds the computed max_scale");
}

// Intervals of one dimension, as (birth, death) pairs.
std::vector<std::pair<double, double>> dim_intervals(const Barcode& barcode,
                                                     int dim) {
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : barcode.intervals)
    if (iv.dim == dim) out.emplace_back(iv.birth, iv.death);
  return out;
}

std::int64_t window_count(const std::vector<std::pair<double, double>>& ivs,
                          double lo, double hi) {
  std::int64_t count = 0;
  for (const auto& [birth, death] : ivs)
    if (birth <= lo && death >= hi) ++count;
  return count;
}

}  // namespace

CrockerPlot alpha_smoothed_plot(const BarcodeSeries& series,
                                const ScaleGrid& grid, int dim, double alpha) {
  if (!(alpha >= 0))
    throw InvalidInput("alpha_smoothed_plot: alpha must be >= 0");
  check_series(series, grid);

  CrockerPlot plot;
  plot.times = series.times;
  plot.epsilons = grid.epsilons;
  plot.dim = dim;
  plot.alpha = alpha;
  plot.max_scale = series.barcodes.front().max_scale;
  for (const auto& b : series.barcodes)
    plot.max_scale = std::min(plot.max_scale, b.max_scale);
  plot.truncated = grid.epsilons.back() + alpha > plot.max_scale;
  plot.values.reserve(plot.times.size() * plot.epsilons.size());

  for (std::size_t t = 0; t < series.barcodes.size(); ++t) {
    auto ivs = dim_intervals(series.barcodes[t], dim);
    for (double eps : grid.epsilons)
      plot.values.push_back(window_count(ivs, eps - alpha, eps + alpha));
  }
  return plot;
}

CrockerPlot crocker_plot(const BarcodeSeries& series, const ScaleGrid& grid,
                         int dim) {
  return alpha_smoothed_plot(series, grid, dim, 0.0);
}

CrockerStack crocker_stack(const BarcodeSeries& series, const ScaleGrid& grid,
                           int dim) {
  check_series(series, grid);
  if (grid.alphas.empty() || grid.alphas.front() != 0.0)
    throw InvalidInput("crocker_stack: alpha grid must start at 0");

  CrockerStack stack;
  stack.times = series.times;
  stack.epsilons = grid.epsilons;
  stack.alphas = grid.alphas;
  stack.dim = dim;
  stack.max_scale = series.barcodes.front().max_scale;
  for (const auto& b : series.barcodes)
    stack.max_scale = std::min(stack.max_scale, b.max_scale);
  stack.truncated = grid.epsilons.back() + grid.alphas.back() > stack.max_scale;
  stack.values.reserve(stack.alphas.size() * stack.times.size() *
                       stack.epsilons.size());

  std::vector<std::vector<std::pair<double, double>>> per_time;
  per_time.reserve(series.barcodes.size());
  for (const auto& b : series.barcodes)
    per_time.push_back(dim_intervals(b, dim));

  for (double alpha : grid.alphas)
    for (std::size_t t = 0; t < per_time.size(); ++t)
      for (double eps : grid.epsilons)
        stack.values.push_back(
            window_count(per_time[t], eps - alpha, eps + alpha));
  return stack;
}

CrockerPlot CrockerStack::slice(std::size_t a) const {
  CrockerPlot plot;
  plot.times = times;
  plot.epsilons = epsilons;
  plot.dim = dim;
  plot.alpha = alphas[a];
  plot.max_scale = max_scale;
  plot.truncated = epsilons.back() + alphas[a] > max_scale;
  auto begin = values.begin() +
               static_cast<std::ptrdiff_t>(a * times.size() * epsilons.size());
  plot.values.assign(begin,
                     begin + static_cast<std::ptrdiff_t>(times.size() *
                                                         epsilons.size()));
  return plot;
}

std::vector<double> vectorize(const CrockerPlot& plot) {
  return std::vector<double>(plot.values.begin(), plot.values.end());
}

std::vector<double> vectorize_stack(const CrockerStack& stack) {
  return std::vector<double>(stack.values.begin(), stack.values.end());
}

std::vector<double> concat_dims(const std::vector<double>& v0,
                                const std::vector<double>& v1) {
  std::vector<double> out;
  out.reserve(v0.size() + v1.size());
  out.insert(out.end(), v0.begin(), v0.end());
  out.insert(out.end(), v1.begin(), v1.end());
  return out;
}

}  // namespace crocker
