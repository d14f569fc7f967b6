#include "crocker/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "crocker/analysis.hpp"
#include "crocker/diagram_distance.hpp"
#include "crocker/errors.hpp"
#include "crocker/persistence.hpp"
#include "json.hpp"

namespace crocker {

namespace {

std::string homology_suffix(Homology h) {
  switch (h) {
    case Homology::h0: return "H0";
    case Homology::h1: return "H1";
    default: return "H01";
  }
}

std::string slice_name(std::size_t index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "t%04zu.csv", index);
  return buffer;
}

}  // namespace

std::string FeatureSpec::token() const {
  switch (kind) {
    case Kind::order_parameter:
      return "order_parameter";
    case Kind::crocker_plot:
      return "crocker_plot_" + homology_suffix(homology);
    case Kind::crocker_stack:
      return "crocker_stack_" + homology_suffix(homology);
    case Kind::alpha_slice:
      return "alpha_slice_" + homology_suffix(homology) + "(" +
             format_double(alpha) + ")";
    case Kind::stacked_diagrams_bottleneck:
      return "stacked_diagrams_bottleneck_" + homology_suffix(homology);
  }
  return {};
}

std::string FeatureSpec::stem() const {
  std::string t = token();
  for (char& c : t)
    if (c == '(' || c == ')' || c == '.') c = '_';
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return t;
}

FeatureSpec FeatureSpec::parse(const std::string& raw) {
  auto fail = [&] {
    throw InvalidInput("unknown feature kind: '" + raw + "'");
  };
  FeatureSpec spec;
  std::string token = raw;

  // optional (alpha) argument
  auto open = token.find('(');
  std::optional<double> argument;
  if (open != std::string::npos) {
    if (token.back() != ')') fail();
    try {
      argument = parse_double(token.substr(open + 1, token.size() - open - 2));
    } catch (const IoError&) {
      fail();
    }
    token = token.substr(0, open);
  }

  auto strip_homology = [&](std::string& t) {
    Homology h = Homology::h01;
    if (t.size() >= 4 && t.compare(t.size() - 4, 4, "_H01") == 0) {
      t.resize(t.size() - 4);
    } else if (t.size() >= 3 && t.compare(t.size() - 3, 3, "_H0") == 0) {
      h = Homology::h0;
      t.resize(t.size() - 3);
    } else if (t.size() >= 3 && t.compare(t.size() - 3, 3, "_H1") == 0) {
      h = Homology::h1;
      t.resize(t.size() - 3);
    }
    return h;
  };

  if (token == "order_parameter") {
    spec.kind = Kind::order_parameter;
    if (argument) fail();
    return spec;
  }

  std::string base = token;
  Homology homology = strip_homology(base);
  bool had_suffix = base != token;

  if (base == "crocker_plot") {
    spec.kind = Kind::crocker_plot;
    spec.homology = had_suffix ? homology : Homology::h01;
    if (argument) fail();
  } else if (base == "crocker_stack") {
    spec.kind = Kind::crocker_stack;
    spec.homology = had_suffix ? homology : Homology::h01;
    if (argument) fail();
  } else if (base == "alpha_slice") {
    spec.kind = Kind::alpha_slice;
    spec.homology = had_suffix ? homology : Homology::h01;
    if (!argument) fail();
    spec.alpha = *argument;
  } else if (base == "stacked_diagrams_bottleneck") {
    spec.kind = Kind::stacked_diagrams_bottleneck;
    spec.homology = had_suffix ? homology : Homology::h0;
    if (spec.homology == Homology::h01 && had_suffix) fail();
    if (argument) fail();
  } else {
    fail();
  }
  return spec;
}

ExperimentConfig::ExperimentConfig() {
  alphas.resize(18);
  for (std::size_t i = 0; i < alphas.size(); ++i)
    alphas[i] = 0.01 * static_cast<double>(i);
  for (const char* token :
       {"order_parameter", "crocker_plot_H01", "crocker_plot_H0",
        "crocker_plot_H1", "crocker_stack_H01", "crocker_stack_H0",
        "crocker_stack_H1"})
    features.push_back(FeatureSpec::parse(token));
}

VicsekParams ExperimentConfig::vicsek_params(double eta,
                                             std::uint64_t sim_seed) const {
  VicsekParams p;
  p.n = n;
  p.box_length = box_length;
  p.speed = speed;
  p.noise = eta;
  p.radius = radius;
  p.dt = dt;
  p.steps = steps;
  p.seed = sim_seed;
  p.heading_rule = heading_rule;
  return p;
}

ScaleGrid ExperimentConfig::grid() const {
  ScaleGrid g;
  g.epsilons = ScaleGrid::linspace(0.0, epsilon_max, epsilon_count);
  g.alphas = alphas;
  return g;
}

double ExperimentConfig::vr_max_scale() const {
  return epsilon_max + (alphas.empty() ? 0.0 : alphas.back());
}

unsigned ExperimentConfig::worker_count() const {
  return threads == 0 ? default_thread_count() : threads;
}

void ExperimentConfig::apply_preset(const std::string& name) {
  if (name == "exp1")
    eta_values = {0.01, 0.5, 1.0, 1.5, 2.0};
  else if (name == "exp2")
    eta_values = {0.01, 0.1, 1.0};
  else if (name == "exp3")
    eta_values = {0.01, 0.02, 0.19, 0.2, 1.99, 2.0};
  else if (name == "exp4")
    eta_values = {0.01, 0.02, 0.03, 0.05, 0.1,  0.19, 0.2, 0.21,
                  0.3,  0.5,  1.0,  1.5,  1.9, 1.99, 2.0};
  else
    throw InvalidInput("unknown preset: '" + name + "' (use exp1..exp4)");
}

void ExperimentConfig::apply_paper_scale() {
  n = 300;
  box_length = 25.0;
  steps = 2000;
  sims_per_eta = 100;
}

namespace {

std::string trim_copy(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim_copy(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split_list(value)) out.push_back(parse_double(item));
  return out;
}

}  // namespace

void ExperimentConfig::set_key(const std::string& key,
                               const std::string& value) {
  if (key == "eta_values") {
    eta_values = parse_double_list(value);
  } else if (key == "sims_per_eta") {
    sims_per_eta = static_cast<int>(parse_double(value));
  } else if (key == "n") {
    n = static_cast<int>(parse_double(value));
  } else if (key == "box_length") {
    box_length = parse_double(value);
  } else if (key == "speed") {
    speed = parse_double(value);
  } else if (key == "radius") {
    radius = parse_double(value);
  } else if (key == "dt") {
    dt = parse_double(value);
  } else if (key == "steps") {
    steps = static_cast<int>(parse_double(value));
  } else if (key == "heading_rule") {
    if (value == "circular_mean")
      heading_rule = HeadingRule::circular_mean;
    else if (value == "arithmetic_mean")
      heading_rule = HeadingRule::arithmetic_mean;
    else
      throw InvalidInput("heading_rule must be circular_mean or arithmetic_mean");
  } else if (key == "metric") {
    if (value == "euclidean")
      cloud_metric = MetricKind::euclidean;
    else if (value == "toroidal")
      cloud_metric = MetricKind::toroidal;
    else
      throw InvalidInput("metric must be euclidean or toroidal");
  } else if (key == "subsample_step") {
    subsample_step = static_cast<int>(parse_double(value));
  } else if (key == "epsilon_count") {
    epsilon_count = static_cast<std::size_t>(parse_double(value));
  } else if (key == "epsilon_max") {
    epsilon_max = parse_double(value);
  } else if (key == "alphas") {
    alphas = parse_double_list(value);
  } else if (key == "features") {
    features.clear();
    for (const auto& item : split_list(value))
      features.push_back(FeatureSpec::parse(item));
  } else if (key == "pca") {
    pca_k = static_cast<std::size_t>(parse_double(value));
  } else if (key == "seed") {
    seed = static_cast<std::uint64_t>(parse_double(value));
  } else if (key == "threads") {
    threads = static_cast<unsigned>(parse_double(value));
  } else {
    throw InvalidInput("unknown config key: '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  ExperimentConfig config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    auto trim = [](std::string s) {
      auto begin = s.find_first_not_of(" \t\r");
      if (begin == std::string::npos) return std::string();
      auto end = s.find_last_not_of(" \t\r");
      return s.substr(begin, end - begin + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected key = value");
    config.set_key(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

// ---------------------------------------------------------------------------
// pipeline stages

namespace {

std::string sim_id(std::size_t index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "sim_%04zu", index);
  return buffer;
}

std::filesystem::path sim_feature_dir(const std::filesystem::path& out_dir,
                                      const std::string& id) {
  return out_dir / "features" / id;
}

bool wants(const ExperimentConfig& config, FeatureSpec::Kind kind) {
  return std::any_of(config.features.begin(), config.features.end(),
                     [kind](const FeatureSpec& f) { return f.kind == kind; });
}

bool needs_dim(const ExperimentConfig& config, FeatureSpec::Kind kind,
               int dim) {
  for (const auto& f : config.features) {
    if (f.kind != kind) continue;
    if (f.homology == Homology::h01 || f.homology == (dim == 0 ? Homology::h0
                                                               : Homology::h1))
      return true;
  }
  return false;
}

// enclosing radius: the complex is a cone past this scale, so diagrams are
// exact (one infinite H0 bar, finite H1 deaths)
double enclosing_radius(const DistanceMatrix& dm) {
  double radius = kInf;
  for (std::size_t i = 0; i < dm.n; ++i) {
    double row_max = 0.0;
    for (std::size_t j = 0; j < dm.n; ++j)
      row_max = std::max(row_max, dm(i, j));
    radius = std::min(radius, row_max);
  }
  return radius;
}

}  // namespace

BarcodeSeries compute_barcode_series(const SimulationTrace& trace,
                                     const ExperimentConfig& config) {
  auto tvc = to_point_clouds(trace, config.subsample_step, config.cloud_metric);
  BarcodeSeries series;
  series.times = tvc.times;
  series.barcodes.resize(tvc.clouds.size());
  for (std::size_t t = 0; t < tvc.clouds.size(); ++t)
    series.barcodes[t] =
        vr_barcode(pairwise_distances(tvc.clouds[t]), config.vr_max_scale(), 2);
  return series;
}

BarcodeSeries load_barcode_series(const std::filesystem::path& sim_dir,
                                  const std::string& name, double max_scale) {
  BarcodeSeries series;
  auto dir = sim_dir / name;
  auto times_file = dir / "times.csv";
  auto [times, indices] = read_series_csv(times_file);
  series.times = times;
  for (std::size_t t = 0; t < times.size(); ++t)
    series.barcodes.push_back(
        read_barcode_csv(dir / slice_name(t), max_scale));
  return series;
}

namespace {

void write_barcode_series(const std::filesystem::path& dir,
                          const BarcodeSeries& series) {
  std::vector<double> indices(series.times.size());
  for (std::size_t t = 0; t < indices.size(); ++t)
    indices[t] = static_cast<double>(t);
  write_series_csv(dir / "times.csv", "slice", series.times, indices);
  for (std::size_t t = 0; t < series.barcodes.size(); ++t)
    write_barcode_csv(dir / slice_name(t), series.barcodes[t]);
}

}  // namespace

CorpusManifest cmd_simulate(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir) {
  if (config.eta_values.empty() || config.sims_per_eta < 1)
    throw InvalidInput("cmd_simulate: need eta values and sims_per_eta >= 1");

  CorpusManifest manifest;
  for (std::size_t e = 0; e < config.eta_values.size(); ++e)
    for (int r = 0; r < config.sims_per_eta; ++r) {
      ManifestEntry entry;
      entry.id = sim_id(manifest.entries.size());
      entry.eta = config.eta_values[e];
      entry.seed = derive_seed(config.seed, e, static_cast<std::uint64_t>(r));
      entry.trace = "traces/" + entry.id + ".csv";
      manifest.entries.push_back(std::move(entry));
    }

  parallel_for(manifest.entries.size(), config.worker_count(), [&](std::size_t i) {
    const auto& entry = manifest.entries[i];
    auto trace = simulate(config.vicsek_params(entry.eta, entry.seed));
    write_trace_csv(out_dir / entry.trace, trace);
  });

  write_manifest_json(out_dir / "manifest.json", manifest);
  return manifest;
}

void cmd_summarize(const CorpusManifest& manifest,
                   const ExperimentConfig& config,
                   const std::filesystem::path& out_dir) {
  ScaleGrid grid = config.grid();
  bool want_stacks = wants(config, FeatureSpec::Kind::crocker_stack) ||
                     wants(config, FeatureSpec::Kind::alpha_slice);
  bool want_bottleneck =
      wants(config, FeatureSpec::Kind::stacked_diagrams_bottleneck);
  int bottleneck_dim =
      needs_dim(config, FeatureSpec::Kind::stacked_diagrams_bottleneck, 1) ? 2
                                                                           : 1;

  parallel_for(manifest.entries.size(), config.worker_count(), [&](std::size_t i) {
    const auto& entry = manifest.entries[i];
    auto trace_path = out_dir / entry.trace;
    if (!std::filesystem::exists(trace_path))
      throw IoError("missing trace " + trace_path.string());
    auto trace = read_trace_csv(
        trace_path, config.vicsek_params(entry.eta, entry.seed));
    auto dir = sim_feature_dir(out_dir, entry.id);

    // order parameters at full time resolution
    auto phi = order_parameter(trace);
    std::vector<double> times(phi.size());
    for (std::size_t t = 0; t < times.size(); ++t)
      times[t] = static_cast<double>(t) * config.dt;
    write_series_csv(dir / "order_parameter.csv", "phi", times, phi);

    // per-slice barcodes on the crocker scale range
    auto series = compute_barcode_series(trace, config);
    write_barcode_series(dir / "barcodes", series);

    for (int dim : {0, 1}) {
      if (needs_dim(config, FeatureSpec::Kind::crocker_plot, dim))
        write_stack_json(
            dir / ("crocker_plot_h" + std::to_string(dim) + ".json"),
            plot_as_stack(crocker_plot(series, grid, dim)));
      if (want_stacks &&
          (needs_dim(config, FeatureSpec::Kind::crocker_stack, dim) ||
           needs_dim(config, FeatureSpec::Kind::alpha_slice, dim)))
        write_stack_json(
            dir / ("crocker_stack_h" + std::to_string(dim) + ".json"),
            crocker_stack(series, grid, dim));
    }

    if (want_bottleneck) {
      auto tvc =
          to_point_clouds(trace, config.subsample_step, config.cloud_metric);
      BarcodeSeries exact;
      exact.times = tvc.times;
      for (const auto& cloud : tvc.clouds) {
        auto dm = pairwise_distances(cloud);
        exact.barcodes.push_back(
            vr_barcode(dm, enclosing_radius(dm), bottleneck_dim));
      }
      write_barcode_series(dir / "diagrams", exact);
    }
  });
}

namespace {

std::vector<double> feature_vector(const FeatureSpec& feature,
                                   const std::filesystem::path& sim_dir) {
  auto plot_vector = [&](const std::string& file) {
    auto stack = read_stack_json(sim_dir / file);
    return vectorize_stack(stack);
  };
  auto slice_vector = [&](int dim, double alpha) {
    auto stack =
        read_stack_json(sim_dir / ("crocker_stack_h" + std::to_string(dim) + ".json"));
    std::size_t best = 0;
    for (std::size_t a = 1; a < stack.alphas.size(); ++a)
      if (std::abs(stack.alphas[a] - alpha) <
          std::abs(stack.alphas[best] - alpha))
        best = a;
    return vectorize(stack.slice(best));
  };

  switch (feature.kind) {
    case FeatureSpec::Kind::order_parameter: {
      auto [times, phi] = read_series_csv(sim_dir / "order_parameter.csv");
      return phi;
    }
    case FeatureSpec::Kind::crocker_plot: {
      if (feature.homology == Homology::h0)
        return plot_vector("crocker_plot_h0.json");
      if (feature.homology == Homology::h1)
        return plot_vector("crocker_plot_h1.json");
      return concat_dims(plot_vector("crocker_plot_h0.json"),
                         plot_vector("crocker_plot_h1.json"));
    }
    case FeatureSpec::Kind::crocker_stack: {
      if (feature.homology == Homology::h0)
        return plot_vector("crocker_stack_h0.json");
      if (feature.homology == Homology::h1)
        return plot_vector("crocker_stack_h1.json");
      return concat_dims(plot_vector("crocker_stack_h0.json"),
                         plot_vector("crocker_stack_h1.json"));
    }
    case FeatureSpec::Kind::alpha_slice: {
      if (feature.homology == Homology::h0)
        return slice_vector(0, feature.alpha);
      if (feature.homology == Homology::h1)
        return slice_vector(1, feature.alpha);
      return concat_dims(slice_vector(0, feature.alpha),
                         slice_vector(1, feature.alpha));
    }
    default:
      throw InvalidInput("feature has no vector form: " + feature.token());
  }
}

}  // namespace

DistanceMatrix cmd_distances(const CorpusManifest& manifest,
                             const FeatureSpec& feature,
                             const ExperimentConfig& config,
                             const std::filesystem::path& out_dir,
                             bool use_pca) {
  std::size_t count = manifest.entries.size();
  DistanceMatrix dm(count);

  if (feature.kind == FeatureSpec::Kind::stacked_diagrams_bottleneck) {
    if (use_pca)
      throw InvalidInput("stacked diagrams have no vector form for PCA");
    int dim = feature.homology == Homology::h1 ? 1 : 0;
    std::vector<BarcodeSeries> series(count);
    parallel_for(count, config.worker_count(), [&](std::size_t i) {
      series[i] = load_barcode_series(
          sim_feature_dir(out_dir, manifest.entries[i].id), "diagrams", kInf);
    });
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = i + 1; j < count; ++j) pairs.emplace_back(i, j);
    parallel_for(pairs.size(), config.worker_count(), [&](std::size_t p) {
      auto [i, j] = pairs[p];
      dm.set_symmetric(i, j, sup_bottleneck(series[i], series[j], dim));
    });
  } else {
    FeatureMatrix fm;
    fm.rows.resize(count);
    fm.labels = manifest.labels();
    parallel_for(count, config.worker_count(), [&](std::size_t i) {
      fm.rows[i] = feature_vector(
          feature, sim_feature_dir(out_dir, manifest.entries[i].id));
    });
    for (std::size_t i = 1; i < count; ++i)
      if (fm.rows[i].size() != fm.rows[0].size())
        throw InvalidInput("mixed feature vector lengths for " +
                           feature.token());
    if (use_pca) {
      std::size_t k = std::min({config.pca_k, count, fm.width()});
      fm = pca_reduce(fm, k).reduced;
    }
    dm = euclidean_distance_matrix(fm);
  }

  std::string name = feature.stem();
  if (use_pca) name += "_pca" + std::to_string(config.pca_k);
  write_distance_csv(out_dir / "distances" / (name + ".csv"), dm);
  return dm;
}

ClusterOutput cmd_cluster(const DistanceMatrix& dm,
                          const std::vector<double>& labels, std::size_t k,
                          std::uint64_t seed,
                          const std::filesystem::path& json_path) {
  ClusterOutput output;
  output.result = k_medoids_pam(dm, k, seed);
  output.report = clustering_accuracy(output.result, labels);
  write_cluster_json(json_path, output);
  return output;
}

std::string ExperimentReport::table() const {
  std::size_t width = 12;
  for (const auto& row : rows) width = std::max(width, row.feature.token().size());
  std::ostringstream out;
  out << "feature";
  out << std::string(width - 7, ' ') << "  accuracy  accuracy_pca\n";
  char buffer[64];
  for (const auto& row : rows) {
    std::string token = row.feature.token();
    out << token << std::string(width - token.size(), ' ');
    std::snprintf(buffer, sizeof(buffer), "  %8.4f", row.accuracy);
    out << buffer;
    if (row.accuracy_pca) {
      std::snprintf(buffer, sizeof(buffer), "  %12.4f", *row.accuracy_pca);
      out << buffer;
    } else {
      out << "             -";
    }
    out << '\n';
  }
  return out.str();
}

ExperimentReport cmd_experiment(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir) {
  auto manifest = cmd_simulate(config, out_dir);
  cmd_summarize(manifest, config, out_dir);

  std::vector<double> labels = manifest.labels();
  std::set<double> distinct(labels.begin(), labels.end());
  std::size_t k = distinct.size();

  ExperimentReport report;
  for (const auto& feature : config.features) {
    ExperimentRow row;
    row.feature = feature;
    auto dm = cmd_distances(manifest, feature, config, out_dir, false);
    row.accuracy =
        cmd_cluster(dm, labels, k, config.seed,
                    out_dir / "clusters" / (feature.stem() + ".json"))
            .report.accuracy;
    if (config.pca_k > 0 &&
        feature.kind != FeatureSpec::Kind::stacked_diagrams_bottleneck) {
      auto dm_pca = cmd_distances(manifest, feature, config, out_dir, true);
      row.accuracy_pca =
          cmd_cluster(dm_pca, labels, k, config.seed,
                      out_dir / "clusters" /
                          (feature.stem() + "_pca" +
                           std::to_string(config.pca_k) + ".json"))
              .report.accuracy;
    }
    report.rows.push_back(std::move(row));
  }

  // report artifacts carry no timestamps so reruns are byte-identical
  {
    std::ofstream out(out_dir / "report.txt", std::ios::binary);
    if (!out) throw IoError("cannot write report.txt");
    out << report.table();
  }
  {
    nlohmann::ordered_json j;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
      nlohmann::ordered_json r;
      r["feature"] = row.feature.token();
      r["accuracy"] = row.accuracy;
      if (row.accuracy_pca)
        r["accuracy_pca"] = *row.accuracy_pca;
      else
        r["accuracy_pca"] = nullptr;
      j["rows"].push_back(std::move(r));
    }
    std::ofstream out(out_dir / "report.json", std::ios::binary);
    if (!out) throw IoError("cannot write report.json");
    out << j.dump(2) << '\n';
  }
  return report;
}

void cmd_render(const std::filesystem::path& stack_path,
                const std::filesystem::path& out_prefix, std::int64_t clamp) {
  auto stack = read_stack_json(stack_path);
  std::int64_t effective = clamp;
  if (clamp < 0) effective = stack.dim == 0 ? 6 : 0;
  for (std::size_t a = 0; a < stack.alphas.size(); ++a) {
    auto plot = stack.slice(a);
    char suffix[24];
    std::snprintf(suffix, sizeof(suffix), "_a%02zu", a);
    auto stem = out_prefix.string() + suffix;
    write_plot_pgm(stem + ".pgm", plot, effective);
    write_grid_csv(stem + ".csv", plot);
  }
}

}  // namespace crocker
