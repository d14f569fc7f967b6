#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crocker/io.hpp"
#include "crocker/parallel.hpp"
#include "crocker/summaries.hpp"
#include "crocker/vicsek.hpp"

namespace crocker {

enum class Homology { h0, h1, h01 };

// One feature column of an experiment. Canonical tokens:
//   order_parameter
//   crocker_plot_H0 | crocker_plot_H1 | crocker_plot_H01
//   crocker_stack_H0 | crocker_stack_H1 | crocker_stack_H01
//   alpha_slice_H0(a) | alpha_slice_H1(a) | alpha_slice_H01(a)  (a snaps to
//     the configured alpha grid; bare alpha_slice(a) means H01)
//   stacked_diagrams_bottleneck_H0 | stacked_diagrams_bottleneck_H1  (the
//     bare token means H0)
struct FeatureSpec {
  enum class Kind {
    order_parameter,
    crocker_plot,
    crocker_stack,
    alpha_slice,
    stacked_diagrams_bottleneck,
  };

  Kind kind = Kind::order_parameter;
  Homology homology = Homology::h0;
  double alpha = 0.0;  // alpha_slice only

  std::string token() const;
  // file-name stem of the distance matrix / feature artifacts
  std::string stem() const;
  static FeatureSpec parse(const std::string& token);

  bool operator==(const FeatureSpec&) const = default;
};

struct ExperimentConfig {
  std::vector<double> eta_values = {0.01, 0.5, 1.0, 1.5, 2.0};
  int sims_per_eta = 20;

  // desk-scale defaults; --paper-scale switches to n=300, T=2000, 100/eta
  int n = 100;
  double box_length = 25.0;
  double speed = 0.03;
  double radius = 1.0;
  double dt = 1.0;
  int steps = 500;
  HeadingRule heading_rule = HeadingRule::circular_mean;
  MetricKind cloud_metric = MetricKind::euclidean;

  int subsample_step = 10;
  std::size_t epsilon_count = 50;
  double epsilon_max = 0.35;
  std::vector<double> alphas;  // default 0, 0.01, ..., 0.17

  std::vector<FeatureSpec> features;
  std::size_t pca_k = 3;  // 0 disables the PCA columns
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency

  ExperimentConfig();

  VicsekParams vicsek_params(double eta, std::uint64_t sim_seed) const;
  ScaleGrid grid() const;
  // barcodes are computed out to epsilon_max + max alpha so no grid cell is
  // truncated
  double vr_max_scale() const;
  unsigned worker_count() const;

  void apply_preset(const std::string& name);  // exp1..exp4
  void apply_paper_scale();

  // flat key=value file; unknown keys are an error
  static ExperimentConfig load(const std::filesystem::path& path);
  void set_key(const std::string& key, const std::string& value);
};

// simulate: write traces and the manifest; seeds derive from the config
// seed and the (eta index, replicate) pair.
CorpusManifest cmd_simulate(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

// summarize: order parameters at full resolution, per-slice barcodes, and
// the configured crocker artifacts for every simulation.
void cmd_summarize(const CorpusManifest& manifest,
                   const ExperimentConfig& config,
                   const std::filesystem::path& out_dir);

// distances: one matrix per feature; Euclidean on vectors (optionally
// PCA-reduced first), sup-bottleneck for stacked diagrams.
DistanceMatrix cmd_distances(const CorpusManifest& manifest,
                             const FeatureSpec& feature,
                             const ExperimentConfig& config,
                             const std::filesystem::path& out_dir,
                             bool use_pca);

ClusterOutput cmd_cluster(const DistanceMatrix& dm,
                          const std::vector<double>& labels, std::size_t k,
                          std::uint64_t seed,
                          const std::filesystem::path& json_path);

struct ExperimentRow {
  FeatureSpec feature;
  double accuracy = 0.0;
  std::optional<double> accuracy_pca;
};
struct ExperimentReport {
  std::vector<ExperimentRow> rows;

  std::string table() const;  // aligned text table, no timestamps
};

ExperimentReport cmd_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir);

// render: one PGM + grid CSV per alpha slice of a stack JSON file.
// clamp < 0 picks the default (6 for dimension 0, grid max otherwise).
void cmd_render(const std::filesystem::path& stack_path,
                const std::filesystem::path& out_prefix, std::int64_t clamp);

// shared helpers (also exercised directly by tests)
BarcodeSeries compute_barcode_series(const SimulationTrace& trace,
                                     const ExperimentConfig& config);
BarcodeSeries load_barcode_series(const std::filesystem::path& sim_dir,
                                  const std::string& name, double max_scale);

}  // namespace crocker
