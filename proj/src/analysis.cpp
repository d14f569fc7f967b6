#include "crocker/analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "crocker/errors.hpp"

namespace crocker {

PcaResult pca_reduce(const FeatureMatrix& fm, std::size_t k) {
  std::size_t n = fm.size();
  std::size_t d = fm.width();
  if (n == 0) throw InvalidInput("pca_reduce: empty feature matrix");
  if (k == 0 || k > std::min(n, d))
    throw InvalidInput("pca_reduce: k must be in [1, min(N, D)]");

  Eigen::MatrixXd x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    if (fm.rows[i].size() != d)
      throw InvalidInput("pca_reduce: ragged feature matrix");
    for (std::size_t j = 0; j < d; ++j) x(i, j) = fm.rows[i][j];
  }
  Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::MatrixXd directions = svd.matrixV().leftCols(k);

  for (std::size_t c = 0; c < k; ++c) {
    Eigen::Index argmax = 0;
    directions.col(c).cwiseAbs().maxCoeff(&argmax);
    if (directions(argmax, c) < 0) directions.col(c) = -directions.col(c);
  }

  Eigen::MatrixXd scores = x * directions;

  PcaResult result;
  result.reduced.labels = fm.labels;
  result.reduced.rows.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.reduced.rows[i].resize(k);
    for (std::size_t j = 0; j < k; ++j) result.reduced.rows[i][j] = scores(i, j);
  }

  double total = x.squaredNorm();
  result.explained_variance_ratios.resize(k, 0.0);
  if (total > 0)
    for (std::size_t j = 0; j < k; ++j) {
      double s = svd.singularValues()(static_cast<Eigen::Index>(j));
      result.explained_variance_ratios[j] = s * s / total;
    }
  return result;
}

DistanceMatrix euclidean_distance_matrix(const FeatureMatrix& fm) {
  std::size_t n = fm.size();
  DistanceMatrix dm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (fm.rows[i].size() != fm.rows[j].size())
        throw InvalidInput("euclidean_distance_matrix: ragged rows");
      double sum = 0.0;
      for (std::size_t c = 0; c < fm.rows[i].size(); ++c) {
        double diff = fm.rows[i][c] - fm.rows[j][c];
        sum += diff * diff;
      }
      dm.set_symmetric(i, j, std::sqrt(sum));
    }
  return dm;
}

namespace {

double total_cost(const DistanceMatrix& dm,
                  const std::vector<std::size_t>& medoids) {
  double cost = 0.0;
  for (std::size_t j = 0; j < dm.n; ++j) {
    double nearest = kInf;
    for (std::size_t m : medoids) nearest = std::min(nearest, dm(j, m));
    cost += nearest;
  }
  return cost;
}

std::vector<std::size_t> assign_to_medoids(
    const DistanceMatrix& dm, const std::vector<std::size_t>& medoids) {
  std::vector<std::size_t> assignment(dm.n, 0);
  for (std::size_t j = 0; j < dm.n; ++j) {
    double best = kInf;
    std::size_t cluster = 0;
    for (std::size_t c = 0; c < medoids.size(); ++c)
      if (dm(j, medoids[c]) < best) {
        best = dm(j, medoids[c]);
        cluster = c;
      }
    assignment[j] = cluster;
  }
  return assignment;
}

}  // namespace

ClusterResult k_medoids_pam(const DistanceMatrix& dm, std::size_t k,
                            std::uint64_t /*seed*/) {
  std::size_t n = dm.n;
  if (k == 0 || k > n)
    throw InvalidInput("k_medoids_pam: K must be in [1, N]");

  std::vector<bool> is_medoid(n, false);
  std::vector<std::size_t> medoids;

  // BUILD: first the 1-medoid optimum, then the largest cost reduction
  {
    double best = kInf;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) sum += dm(i, j);
      if (sum < best) {
        best = sum;
        pick = i;
      }
    }
    medoids.push_back(pick);
    is_medoid[pick] = true;
  }
  std::vector<double> nearest(n);
  auto refresh_nearest = [&] {
    for (std::size_t j = 0; j < n; ++j) {
      nearest[j] = kInf;
      for (std::size_t m : medoids) nearest[j] = std::min(nearest[j], dm(j, m));
    }
  };
  refresh_nearest();
  while (medoids.size() < k) {
    double best_gain = -1.0;
    std::size_t pick = 0;
    for (std::size_t c = 0; c < n; ++c) {
      if (is_medoid[c]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        gain += std::max(0.0, nearest[j] - dm(c, j));
      if (gain > best_gain) {
        best_gain = gain;
        pick = c;
      }
    }
    medoids.push_back(pick);
    is_medoid[pick] = true;
    refresh_nearest();
  }

  // SWAP: apply the best strictly-improving (medoid, candidate) swap until
  // none is left; lowest indices win ties
  double cost = total_cost(dm, medoids);
  std::sort(medoids.begin(), medoids.end());
  for (;;) {
    double best_cost = cost;
    std::size_t best_slot = 0, best_candidate = 0;
    bool found = false;
    for (std::size_t slot = 0; slot < medoids.size(); ++slot) {
      for (std::size_t c = 0; c < n; ++c) {
        if (is_medoid[c]) continue;
        std::size_t saved = medoids[slot];
        medoids[slot] = c;
        double candidate_cost = total_cost(dm, medoids);
        medoids[slot] = saved;
        if (candidate_cost < best_cost - 1e-15 * (1.0 + std::abs(best_cost))) {
          best_cost = candidate_cost;
          best_slot = slot;
          best_candidate = c;
          found = true;
        }
      }
    }
    if (!found) break;
    is_medoid[medoids[best_slot]] = false;
    is_medoid[best_candidate] = true;
    medoids[best_slot] = best_candidate;
    cost = best_cost;
    std::sort(medoids.begin(), medoids.end());
  }

  std::sort(medoids.begin(), medoids.end());
  ClusterResult result;
  result.medoid_indices = medoids;
  result.k = k;
  result.assignment = assign_to_medoids(dm, medoids);
  return result;
}

AccuracyReport clustering_accuracy(const ClusterResult& cr,
                                   const std::vector<double>& labels) {
  if (labels.size() != cr.assignment.size())
    throw InvalidInput("clustering_accuracy: label count mismatch");

  AccuracyReport report;
  std::set<double> true_set(labels.begin(), labels.end());
  report.true_labels.assign(true_set.begin(), true_set.end());

  std::set<double> medoid_set;
  for (std::size_t m : cr.medoid_indices) medoid_set.insert(labels[m]);
  report.medoid_labels.assign(medoid_set.begin(), medoid_set.end());

  auto index_of = [](const std::vector<double>& values, double v) {
    return static_cast<std::size_t>(
        std::lower_bound(values.begin(), values.end(), v) - values.begin());
  };

  report.confusion.assign(
      report.true_labels.size(),
      std::vector<std::int64_t>(report.medoid_labels.size(), 0));

  std::size_t correct = 0;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    double cluster_label = labels[cr.medoid_indices[cr.assignment[j]]];
    if (cluster_label == labels[j]) ++correct;
    report.confusion[index_of(report.true_labels, labels[j])]
                    [index_of(report.medoid_labels, cluster_label)] += 1;
  }
  report.accuracy =
      static_cast<double>(correct) / static_cast<double>(labels.size());
  return report;
}

}  // namespace crocker
