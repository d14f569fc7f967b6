#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "crocker/analysis.hpp"
#include "crocker/metric.hpp"
#include "crocker/persistence.hpp"
#include "crocker/summaries.hpp"
#include "crocker/vicsek.hpp"

namespace crocker {

// Shortest round-trip decimal form; +inf serializes as "inf".
std::string format_double(double v);
double parse_double(const std::string& token);

// Trace CSV: header `t,id,x,y,theta`, one row per agent per frame, LF
// endings. Params are carried by the manifest, so the reader takes them.
void write_trace_csv(const std::filesystem::path& path,
                     const SimulationTrace& trace);
SimulationTrace read_trace_csv(const std::filesystem::path& path,
                               const VicsekParams& params);

// Barcode CSV: header `dim,birth,death`, death `inf` for surviving classes.
// max_scale is pipeline metadata, supplied on read.
void write_barcode_csv(const std::filesystem::path& path, const Barcode& b);
Barcode read_barcode_csv(const std::filesystem::path& path, double max_scale);

// Stack JSON: {times, epsilons, alphas, dim, max_scale, truncated, values}
// with a row-major (alpha, time, epsilon) integer array. A single-alpha
// stack serializes a crocker plot.
void write_stack_json(const std::filesystem::path& path,
                      const CrockerStack& stack);
CrockerStack read_stack_json(const std::filesystem::path& path);
CrockerStack plot_as_stack(const CrockerPlot& plot);

// Distance matrix CSV: full N x N rows, `inf` allowed.
void write_distance_csv(const std::filesystem::path& path,
                        const DistanceMatrix& dm);
DistanceMatrix read_distance_csv(const std::filesystem::path& path);

// Cluster JSON: {medoid_indices, medoid_labels, assignment, accuracy,
// confusion}.
struct ClusterOutput {
  ClusterResult result;
  AccuracyReport report;
};
void write_cluster_json(const std::filesystem::path& path,
                        const ClusterOutput& output);
ClusterOutput read_cluster_json(const std::filesystem::path& path);

// Corpus manifest: ordering defines distance-matrix row order.
struct ManifestEntry {
  std::string id;
  double eta = 0.0;
  std::uint64_t seed = 0;
  std::string trace;  // path relative to the manifest directory
};
struct CorpusManifest {
  std::vector<ManifestEntry> entries;

  std::vector<double> labels() const;
};
void write_manifest_json(const std::filesystem::path& path,
                         const CorpusManifest& manifest);
CorpusManifest read_manifest_json(const std::filesystem::path& path);

// Two-column CSV for time series (order parameters).
void write_series_csv(const std::filesystem::path& path,
                      const std::string& value_header,
                      const std::vector<double>& times,
                      const std::vector<double>& values);
std::pair<std::vector<double>, std::vector<double>> read_series_csv(
    const std::filesystem::path& path);

// Grayscale P2 PGM of one plot, epsilon rows top-down from the largest
// scale, values clamped to maxval (clamp <= 0 means the grid maximum).
void write_plot_pgm(const std::filesystem::path& path, const CrockerPlot& plot,
                    std::int64_t clamp);

// Grid CSV for external contouring: header `epsilon,t...`, one row per
// epsilon ascending.
void write_grid_csv(const std::filesystem::path& path,
                    const CrockerPlot& plot);

}  // namespace crocker
