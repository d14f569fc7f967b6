#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "crocker/errors.hpp"
#include "crocker/pipeline.hpp"

using namespace crocker;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / "crocker_pipeline" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

ExperimentConfig mini_config() {
  ExperimentConfig config;
  config.eta_values = {0.1, 2.0};
  config.sims_per_eta = 2;
  config.n = 12;
  config.steps = 30;
  config.subsample_step = 10;
  config.epsilon_count = 12;
  config.epsilon_max = 0.35;
  config.alphas = {0.0, 0.05, 0.1};
  config.pca_k = 2;
  config.seed = 7;
  config.set_key("features",
                 "order_parameter,crocker_plot_H0,crocker_plot_H01,"
                 "crocker_stack_H0,alpha_slice_H0(0.05),"
                 "stacked_diagrams_bottleneck");
  return config;
}

}  // namespace

TEST_CASE("feature tokens parse and print") {
  for (const char* token :
       {"order_parameter", "crocker_plot_H0", "crocker_plot_H1",
        "crocker_plot_H01", "crocker_stack_H0", "crocker_stack_H1",
        "crocker_stack_H01", "stacked_diagrams_bottleneck_H0",
        "stacked_diagrams_bottleneck_H1"}) {
    auto spec = FeatureSpec::parse(token);
    CHECK(spec.token() == token);
  }

  auto slice = FeatureSpec::parse("alpha_slice(0.05)");
  CHECK(slice.kind == FeatureSpec::Kind::alpha_slice);
  CHECK(slice.homology == Homology::h01);
  CHECK(slice.alpha == 0.05);
  CHECK(slice.token() == "alpha_slice_H01(0.05)");

  CHECK(FeatureSpec::parse("stacked_diagrams_bottleneck").homology ==
        Homology::h0);
  CHECK(FeatureSpec::parse("crocker_plot").homology == Homology::h01);

  CHECK_THROWS_AS(FeatureSpec::parse("crocker_blob"), InvalidInput);
  CHECK_THROWS_AS(FeatureSpec::parse("alpha_slice"), InvalidInput);
  CHECK_THROWS_AS(FeatureSpec::parse("order_parameter(0.1)"), InvalidInput);
}

TEST_CASE("config defaults, presets, and file loading") {
  ExperimentConfig config;
  CHECK(config.n == 100);
  CHECK(config.steps == 500);
  CHECK(config.sims_per_eta == 20);
  CHECK(config.alphas.size() == 18);
  CHECK(config.grid().epsilons.size() == 50);
  CHECK(config.vr_max_scale() == doctest::Approx(0.52));
  CHECK(config.features.size() == 7);

  config.apply_preset("exp3");
  CHECK(config.eta_values ==
        std::vector<double>{0.01, 0.02, 0.19, 0.2, 1.99, 2.0});
  config.apply_preset("exp4");
  CHECK(config.eta_values.size() == 15);
  CHECK_THROWS_AS(config.apply_preset("exp9"), InvalidInput);

  config.apply_paper_scale();
  CHECK(config.n == 300);
  CHECK(config.steps == 2000);
  CHECK(config.sims_per_eta == 100);

  auto dir = fresh_dir("config");
  auto path = dir / "run.cfg";
  {
    std::ofstream out(path);
    out << "# comment line\n";
    out << "eta_values = 0.01, 1\n";
    out << "sims_per_eta = 3\n";
    out << "heading_rule = arithmetic_mean\n";
    out << "features = order_parameter\n";
    out << "seed = 11\n";
  }
  auto loaded = ExperimentConfig::load(path);
  CHECK(loaded.eta_values == std::vector<double>{0.01, 1.0});
  CHECK(loaded.sims_per_eta == 3);
  CHECK(loaded.heading_rule == HeadingRule::arithmetic_mean);
  CHECK(loaded.features.size() == 1);
  CHECK(loaded.seed == 11);

  CHECK_THROWS_AS(loaded.set_key("no_such_key", "1"), InvalidInput);
}

TEST_CASE("simulate writes a reproducible corpus with distinct seeds") {
  auto config = mini_config();
  auto dir = fresh_dir("simulate");
  auto manifest = cmd_simulate(config, dir);

  REQUIRE(manifest.entries.size() == 4);
  std::set<std::uint64_t> seeds;
  for (const auto& entry : manifest.entries) {
    seeds.insert(entry.seed);
    CHECK(fs::exists(dir / entry.trace));
  }
  CHECK(seeds.size() == 4);

  auto again = fresh_dir("simulate_again");
  cmd_simulate(config, again);
  for (const auto& entry : manifest.entries)
    CHECK(slurp(dir / entry.trace) == slurp(again / entry.trace));
  CHECK(slurp(dir / "manifest.json") == slurp(again / "manifest.json"));
}

TEST_CASE("end-to-end experiment: artifacts, consistency, determinism") {
  auto config = mini_config();
  auto dir = fresh_dir("experiment");
  auto report = cmd_experiment(config, dir);

  REQUIRE(report.rows.size() == config.features.size());
  for (const auto& row : report.rows) {
    CHECK(row.accuracy >= 0.0);
    CHECK(row.accuracy <= 1.0);
    if (row.feature.kind == FeatureSpec::Kind::stacked_diagrams_bottleneck)
      CHECK(!row.accuracy_pca.has_value());
    else
      CHECK(row.accuracy_pca.has_value());
  }

  CHECK(fs::exists(dir / "report.txt"));
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "distances" / "order_parameter.csv"));
  CHECK(fs::exists(dir / "distances" / "crocker_plot_h0.csv"));
  CHECK(fs::exists(dir / "distances" / "crocker_plot_h0_pca2.csv"));
  CHECK(fs::exists(dir / "clusters" / "order_parameter.json"));

  // stacked-diagram matrix: symmetric, zero diagonal, finite
  auto dm = read_distance_csv(dir / "distances" /
                              "stacked_diagrams_bottleneck_h0.csv");
  for (std::size_t i = 0; i < dm.n; ++i) {
    CHECK(dm(i, i) == 0.0);
    for (std::size_t j = 0; j < dm.n; ++j) {
      CHECK(dm(i, j) == dm(j, i));
      CHECK(std::isfinite(dm(i, j)));
    }
  }

  // cross-file consistency: the plot file equals slice 0 of the stack file
  for (const auto& entry :
       read_manifest_json(dir / "manifest.json").entries) {
    auto sim_dir = dir / "features" / entry.id;
    auto plot = read_stack_json(sim_dir / "crocker_plot_h0.json");
    auto stack = read_stack_json(sim_dir / "crocker_stack_h0.json");
    CHECK(plot.alphas == std::vector<double>{0.0});
    CHECK(stack.slice(0).values == plot.values);

    // stack monotonicity in alpha on the persisted artifact
    for (std::size_t t = 0; t < stack.times.size(); ++t)
      for (std::size_t e = 0; e < stack.epsilons.size(); ++e)
        for (std::size_t a = 0; a + 1 < stack.alphas.size(); ++a)
          CHECK(stack.value(t, e, a) >= stack.value(t, e, a + 1));
  }

  // rerun with a different thread count: identical bytes
  auto rerun = fresh_dir("experiment_rerun");
  auto config2 = config;
  config2.threads = 1;
  cmd_experiment(config2, rerun);
  CHECK(slurp(dir / "report.txt") == slurp(rerun / "report.txt"));
  CHECK(slurp(dir / "report.json") == slurp(rerun / "report.json"));
  CHECK(slurp(dir / "distances" / "crocker_plot_h01.csv") ==
        slurp(rerun / "distances" / "crocker_plot_h01.csv"));
}

TEST_CASE("summarize with a missing trace raises IoError") {
  auto config = mini_config();
  auto dir = fresh_dir("missing_trace");
  auto manifest = cmd_simulate(config, dir);
  fs::remove(dir / manifest.entries[1].trace);
  CHECK_THROWS_AS(cmd_summarize(manifest, config, dir), IoError);
}

TEST_CASE("render emits one PGM and grid per alpha slice") {
  auto config = mini_config();
  auto dir = fresh_dir("render");
  auto manifest = cmd_simulate(config, dir);
  cmd_summarize(manifest, config, dir);

  auto stack_path = dir / "features" / manifest.entries[0].id /
                    "crocker_stack_h0.json";
  cmd_render(stack_path, dir / "render" / "stack", -1);
  for (std::size_t a = 0; a < config.alphas.size(); ++a) {
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), "_a%02zu", a);
    CHECK(fs::exists(dir / "render" / ("stack" + std::string(suffix) + ".pgm")));
    CHECK(fs::exists(dir / "render" / ("stack" + std::string(suffix) + ".csv")));
  }

  auto pgm = slurp(dir / "render" / "stack_a00.pgm");
  CHECK(pgm.substr(0, 3) == "P2\n");
  CHECK(pgm.find("\n6\n") != std::string::npos);  // H0 clamp defaults to 6
}
