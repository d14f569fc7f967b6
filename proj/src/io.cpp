#include "crocker/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "crocker/errors.hpp"
#include "json.hpp"

namespace crocker {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, end);
}

double parse_double(const std::string& token) {
  if (token == "inf") return kInf;
  if (token == "-inf") return -kInf;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw IoError("bad numeric field: '" + token + "'");
  return value;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return in;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

ordered_json load_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw IoError("bad json in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

void write_trace_csv(const std::filesystem::path& path,
                     const SimulationTrace& trace) {
  auto out = open_out(path);
  out << "t,id,x,y,theta\n";
  for (std::size_t t = 0; t < trace.frames.size(); ++t)
    for (std::size_t i = 0; i < trace.frames[t].size(); ++i) {
      const auto& a = trace.frames[t][i];
      out << t << ',' << i << ',' << format_double(a.x) << ','
          << format_double(a.y) << ',' << format_double(a.theta) << '\n';
    }
  finish(out, path);
}

SimulationTrace read_trace_csv(const std::filesystem::path& path,
                               const VicsekParams& params) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "t,id,x,y,theta")
    throw IoError("bad trace header in " + path.string());

  SimulationTrace trace;
  trace.params = params;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 5) throw IoError("bad trace row in " + path.string());
    auto t = static_cast<std::size_t>(parse_double(fields[0]));
    if (t >= trace.frames.size()) trace.frames.resize(t + 1);
    trace.frames[t].push_back(
        {parse_double(fields[2]), parse_double(fields[3]), parse_double(fields[4])});
  }
  return trace;
}

void write_barcode_csv(const std::filesystem::path& path, const Barcode& b) {
  auto out = open_out(path);
  out << "dim,birth,death\n";
  for (const auto& iv : b.intervals)
    out << iv.dim << ',' << format_double(iv.birth) << ','
        << format_double(iv.death) << '\n';
  finish(out, path);
}

Barcode read_barcode_csv(const std::filesystem::path& path, double max_scale) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "dim,birth,death")
    throw IoError("bad barcode header in " + path.string());
  Barcode b;
  b.max_scale = max_scale;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 3) throw IoError("bad barcode row in " + path.string());
    b.intervals.push_back({static_cast<int>(parse_double(fields[0])),
                           parse_double(fields[1]), parse_double(fields[2])});
  }
  return b;
}

CrockerStack plot_as_stack(const CrockerPlot& plot) {
  CrockerStack stack;
  stack.times = plot.times;
  stack.epsilons = plot.epsilons;
  stack.alphas = {plot.alpha};
  stack.values = plot.values;
  stack.dim = plot.dim;
  stack.max_scale = plot.max_scale;
  stack.truncated = plot.truncated;
  return stack;
}

void write_stack_json(const std::filesystem::path& path,
                      const CrockerStack& stack) {
  ordered_json j;
  j["times"] = stack.times;
  j["epsilons"] = stack.epsilons;
  j["alphas"] = stack.alphas;
  j["dim"] = stack.dim;
  j["max_scale"] = stack.max_scale;
  j["truncated"] = stack.truncated;
  j["values"] = stack.values;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

CrockerStack read_stack_json(const std::filesystem::path& path) {
  auto j = load_json(path);
  CrockerStack stack;
  try {
    stack.times = j.at("times").get<std::vector<double>>();
    stack.epsilons = j.at("epsilons").get<std::vector<double>>();
    stack.alphas = j.at("alphas").get<std::vector<double>>();
    stack.dim = j.at("dim").get<int>();
    stack.max_scale = j.at("max_scale").get<double>();
    stack.truncated = j.at("truncated").get<bool>();
    stack.values = j.at("values").get<std::vector<std::int64_t>>();
  } catch (const std::exception& e) {
    throw IoError("bad stack json in " + path.string() + ": " + e.what());
  }
  if (stack.values.size() !=
      stack.alphas.size() * stack.times.size() * stack.epsilons.size())
    throw IoError("stack value count mismatch in " + path.string());
  return stack;
}

void write_distance_csv(const std::filesystem::path& path,
                        const DistanceMatrix& dm) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < dm.n; ++i) {
    for (std::size_t j = 0; j < dm.n; ++j) {
      if (j) out << ',';
      out << format_double(dm(i, j));
    }
    out << '\n';
  }
  finish(out, path);
}

DistanceMatrix read_distance_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (const auto& field : split_csv(line)) row.push_back(parse_double(field));
    rows.push_back(std::move(row));
  }
  DistanceMatrix dm(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw IoError("distance matrix is not square in " + path.string());
    for (std::size_t j = 0; j < rows.size(); ++j) dm.at(i, j) = rows[i][j];
  }
  return dm;
}

void write_cluster_json(const std::filesystem::path& path,
                        const ClusterOutput& output) {
  ordered_json j;
  j["medoid_indices"] = output.result.medoid_indices;
  j["medoid_labels"] = output.report.medoid_labels;
  j["assignment"] = output.result.assignment;
  j["accuracy"] = output.report.accuracy;
  j["confusion"] = {{"true_labels", output.report.true_labels},
                    {"medoid_labels", output.report.medoid_labels},
                    {"counts", output.report.confusion}};
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

ClusterOutput read_cluster_json(const std::filesystem::path& path) {
  auto j = load_json(path);
  ClusterOutput output;
  try {
    output.result.medoid_indices =
        j.at("medoid_indices").get<std::vector<std::size_t>>();
    output.result.assignment =
        j.at("assignment").get<std::vector<std::size_t>>();
    output.result.k = output.result.medoid_indices.size();
    output.report.medoid_labels =
        j.at("medoid_labels").get<std::vector<double>>();
    output.report.accuracy = j.at("accuracy").get<double>();
    const auto& confusion = j.at("confusion");
    output.report.true_labels =
        confusion.at("true_labels").get<std::vector<double>>();
    output.report.confusion =
        confusion.at("counts").get<std::vector<std::vector<std::int64_t>>>();
  } catch (const std::exception& e) {
    throw IoError("bad cluster json in " + path.string() + ": " + e.what());
  }
  return output;
}

std::vector<double> CorpusManifest::labels() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& entry : entries) out.push_back(entry.eta);
  return out;
}

void write_manifest_json(const std::filesystem::path& path,
                         const CorpusManifest& manifest) {
  ordered_json sims = ordered_json::array();
  for (const auto& entry : manifest.entries) {
    ordered_json e;
    e["id"] = entry.id;
    e["eta"] = entry.eta;
    e["seed"] = entry.seed;
    e["trace"] = entry.trace;
    sims.push_back(std::move(e));
  }
  ordered_json j;
  j["simulations"] = std::move(sims);
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  finish(out, path);
}

CorpusManifest read_manifest_json(const std::filesystem::path& path) {
  auto j = load_json(path);
  CorpusManifest manifest;
  try {
    for (const auto& e : j.at("simulations")) {
      ManifestEntry entry;
      entry.id = e.at("id").get<std::string>();
      entry.eta = e.at("eta").get<double>();
      entry.seed = e.at("seed").get<std::uint64_t>();
      entry.trace = e.at("trace").get<std::string>();
      manifest.entries.push_back(std::move(entry));
    }
  } catch (const std::exception& e) {
    throw IoError("bad manifest in " + path.string() + ": " + e.what());
  }
  return manifest;
}

void write_series_csv(const std::filesystem::path& path,
                      const std::string& value_header,
                      const std::vector<double>& times,
                      const std::vector<double>& values) {
  if (times.size() != values.size())
    throw InvalidInput("write_series_csv: length mismatch");
  auto out = open_out(path);
  out << "t," << value_header << '\n';
  for (std::size_t i = 0; i < times.size(); ++i)
    out << format_double(times[i]) << ',' << format_double(values[i]) << '\n';
  finish(out, path);
}

std::pair<std::vector<double>, std::vector<double>> read_series_csv(
    const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0)
    throw IoError("bad series header in " + path.string());
  std::vector<double> times, values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != 2) throw IoError("bad series row in " + path.string());
    times.push_back(parse_double(fields[0]));
    values.push_back(parse_double(fields[1]));
  }
  return {std::move(times), std::move(values)};
}

void write_plot_pgm(const std::filesystem::path& path, const CrockerPlot& plot,
                    std::int64_t clamp) {
  std::int64_t maxval = clamp;
  if (maxval <= 0)
    maxval = std::max<std::int64_t>(
        1, *std::max_element(plot.values.begin(), plot.values.end()));

  auto out = open_out(path);
  out << "P2\n" << plot.times.size() << ' ' << plot.epsilons.size() << '\n'
      << maxval << '\n';
  for (std::size_t e = plot.epsilons.size(); e-- > 0;) {
    for (std::size_t t = 0; t < plot.times.size(); ++t) {
      if (t) out << ' ';
      out << std::min(plot.value(t, e), maxval);
    }
    out << '\n';
  }
  finish(out, path);
}

void write_grid_csv(const std::filesystem::path& path,
                    const CrockerPlot& plot) {
  auto out = open_out(path);
  out << "epsilon";
  for (double t : plot.times) out << ',' << format_double(t);
  out << '\n';
  for (std::size_t e = 0; e < plot.epsilons.size(); ++e) {
    out << format_double(plot.epsilons[e]);
    for (std::size_t t = 0; t < plot.times.size(); ++t)
      out << ',' << plot.value(t, e);
    out << '\n';
  }
  finish(out, path);
}

}  // namespace crocker
