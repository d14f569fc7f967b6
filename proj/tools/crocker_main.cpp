// crocker: topological summaries of time-varying metric spaces.
//
// Subcommands: simulate, summarize, distances, cluster, experiment, render.
// Flags override config-file keys.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "crocker/errors.hpp"
#include "crocker/pipeline.hpp"

namespace fs = std::filesystem;
using namespace crocker;

namespace {

struct CommonOptions {
  std::string config_path;
  std::string preset;
  std::string out_dir = "out";
  std::int64_t seed = -1;
  unsigned threads = 0;
  bool paper_scale = false;
  std::string features;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key = value config file");
  cmd->add_option("--preset", opts.preset,
                  "noise-value preset exp1..exp4");
  cmd->add_option("--out", opts.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_option("--seed", opts.seed, "base seed for the corpus");
  cmd->add_option("--threads", opts.threads, "worker threads (0 = all cores)");
  cmd->add_flag("--paper-scale", opts.paper_scale,
                "n=300, box 25, T=2000, 100 sims per noise value");
  cmd->add_option("--features", opts.features,
                  "comma-separated feature kinds");
}

ExperimentConfig build_config(const CommonOptions& opts) {
  ExperimentConfig config;
  if (!opts.config_path.empty())
    config = ExperimentConfig::load(opts.config_path);
  if (!opts.preset.empty()) config.apply_preset(opts.preset);
  if (opts.paper_scale) config.apply_paper_scale();
  if (opts.seed >= 0) config.seed = static_cast<std::uint64_t>(opts.seed);
  if (opts.threads > 0) config.threads = opts.threads;
  if (!opts.features.empty()) config.set_key("features", opts.features);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crocker plots, crocker stacks, and Vicsek-model clustering"};
  app.require_subcommand(1);

  CommonOptions opts;

  auto* simulate_cmd =
      app.add_subcommand("simulate", "generate the simulation corpus");
  add_common(simulate_cmd, opts);

  auto* summarize_cmd = app.add_subcommand(
      "summarize", "order parameters, barcodes, and crockers per simulation");
  add_common(summarize_cmd, opts);

  auto* distances_cmd =
      app.add_subcommand("distances", "pairwise distance matrix of a feature");
  add_common(distances_cmd, opts);
  std::string feature_token = "crocker_plot_H0";
  bool use_pca = false;
  distances_cmd->add_option("--feature", feature_token, "feature kind")
      ->capture_default_str();
  distances_cmd->add_flag("--pca", use_pca, "PCA-reduce vectors first");

  auto* cluster_cmd =
      app.add_subcommand("cluster", "K-medoids over a distance matrix");
  add_common(cluster_cmd, opts);
  std::string matrix_path;
  std::size_t k_override = 0;
  cluster_cmd->add_option("--matrix", matrix_path, "distance matrix CSV")
      ->required();
  cluster_cmd->add_option("--k", k_override,
                          "cluster count (default: distinct noise values)");

  auto* experiment_cmd = app.add_subcommand(
      "experiment", "simulate + summarize + distances + cluster, all features");
  add_common(experiment_cmd, opts);

  auto* render_cmd =
      app.add_subcommand("render", "PGM heatmaps and grid CSVs from a stack");
  add_common(render_cmd, opts);
  std::string input_path;
  std::string out_prefix;
  std::int64_t clamp = -1;
  render_cmd->add_option("--input", input_path, "stack JSON file")->required();
  render_cmd->add_option("--out-prefix", out_prefix,
                         "output path prefix (default: input stem)");
  render_cmd->add_option("--clamp", clamp,
                         "value clamp (default 6 for H0, none for H1)");

  CLI11_PARSE(app, argc, argv);

  try {
    fs::path out_dir = opts.out_dir;

    if (app.got_subcommand(simulate_cmd)) {
      auto config = build_config(opts);
      auto manifest = cmd_simulate(config, out_dir);
      std::cout << manifest.entries.size() << " traces written to "
                << (out_dir / "traces").string() << "\n";
    } else if (app.got_subcommand(summarize_cmd)) {
      auto config = build_config(opts);
      auto manifest = read_manifest_json(out_dir / "manifest.json");
      cmd_summarize(manifest, config, out_dir);
      std::cout << "features written for " << manifest.entries.size()
                << " simulations\n";
    } else if (app.got_subcommand(distances_cmd)) {
      auto config = build_config(opts);
      auto manifest = read_manifest_json(out_dir / "manifest.json");
      auto feature = FeatureSpec::parse(feature_token);
      cmd_distances(manifest, feature, config, out_dir, use_pca);
      std::cout << "distance matrix written for " << feature.token() << "\n";
    } else if (app.got_subcommand(cluster_cmd)) {
      auto config = build_config(opts);
      auto manifest = read_manifest_json(out_dir / "manifest.json");
      auto labels = manifest.labels();
      std::size_t k = k_override;
      if (k == 0) k = std::set<double>(labels.begin(), labels.end()).size();
      auto dm = read_distance_csv(matrix_path);
      auto json_path =
          out_dir / "clusters" /
          (fs::path(matrix_path).stem().string() + "_clusters.json");
      auto output = cmd_cluster(dm, labels, k, config.seed, json_path);
      std::printf("accuracy %.4f (K=%zu), result in %s\n",
                  output.report.accuracy, k, json_path.string().c_str());
    } else if (app.got_subcommand(experiment_cmd)) {
      auto config = build_config(opts);
      auto report = cmd_experiment(config, out_dir);
      std::cout << report.table();
      std::cout << "full report in " << (out_dir / "report.txt").string()
                << "\n";
    } else if (app.got_subcommand(render_cmd)) {
      fs::path prefix = out_prefix.empty()
                            ? fs::path(input_path).replace_extension("")
                            : fs::path(out_prefix);
      cmd_render(input_path, prefix, clamp);
      std::cout << "rendered " << input_path << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
