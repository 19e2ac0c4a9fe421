#include "chartlab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "chartlab/features.hpp"
#include "chartlab/parallel.hpp"

namespace chartlab {

namespace {

void check_distance_matrix(const Eigen::MatrixXd& d, const char* name) {
  if (d.rows() != d.cols()) throw DimensionMismatchError(std::string(name) + " must be square");
  if (d.rows() < 2) throw InvalidArgumentError(std::string(name) + " needs at least 2 samples");
}

// Neighbor ordering of node i by (distance, index).
std::vector<int> neighbor_order(const Eigen::MatrixXd& d, Eigen::Index i) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(d.rows()) - 1);
  for (int j = 0; j < d.rows(); ++j)
    if (j != static_cast<int>(i)) order.push_back(j);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (d(i, a) != d(i, b)) return d(i, a) < d(i, b);
    return a < b;
  });
  return order;
}

}  // namespace

double trustworthiness(const Eigen::MatrixXd& reference_distances,
                       const Eigen::MatrixXd& latent_distances, int k) {
  check_distance_matrix(reference_distances, "reference distance matrix");
  check_distance_matrix(latent_distances, "latent distance matrix");
  const Eigen::Index n = reference_distances.rows();
  if (latent_distances.rows() != n)
    throw DimensionMismatchError("reference and latent matrices differ in size");
  if (k < 1 || 2 * k >= n)
    throw InvalidArgumentError("K must satisfy 1 <= K < N/2 (K=" + std::to_string(k) +
                               ", N=" + std::to_string(n) + ")");

  std::vector<double> penalties(static_cast<std::size_t>(n), 0.0);
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const std::vector<int> ref_order = neighbor_order(reference_distances, ii);
    const std::vector<int> lat_order = neighbor_order(latent_distances, ii);
    std::vector<int> ref_rank(static_cast<std::size_t>(n), 0);
    for (std::size_t r = 0; r < ref_order.size(); ++r)
      ref_rank[static_cast<std::size_t>(ref_order[r])] = static_cast<int>(r) + 1;
    std::vector<char> in_ref_knn(static_cast<std::size_t>(n), 0);
    for (int r = 0; r < k; ++r) in_ref_knn[static_cast<std::size_t>(ref_order[r])] = 1;

    double p = 0.0;
    for (int r = 0; r < k; ++r) {
      const int j = lat_order[static_cast<std::size_t>(r)];
      if (!in_ref_knn[static_cast<std::size_t>(j)])
        p += ref_rank[static_cast<std::size_t>(j)] - k;
    }
    penalties[i] = p;
  });

  const double total = std::accumulate(penalties.begin(), penalties.end(), 0.0);
  const double norm = 2.0 / (static_cast<double>(n) * k * (2.0 * n - 3.0 * k - 1.0));
  return 1.0 - norm * total;
}

double continuity(const Eigen::MatrixXd& reference_distances,
                  const Eigen::MatrixXd& latent_distances, int k) {
  return trustworthiness(latent_distances, reference_distances, k);
}

double kruskal_stress(const Eigen::MatrixXd& reference_distances,
                      const Eigen::MatrixXd& latent_distances) {
  check_distance_matrix(reference_distances, "reference distance matrix");
  check_distance_matrix(latent_distances, "latent distance matrix");
  const Eigen::Index n = reference_distances.rows();
  if (latent_distances.rows() != n)
    throw DimensionMismatchError("reference and latent matrices differ in size");

  double sum_dd = 0.0, sum_ll = 0.0, sum_dl = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double del = reference_distances(i, j);
      const double lat = latent_distances(i, j);
      sum_dd += del * del;
      sum_ll += lat * lat;
      sum_dl += del * lat;
    }
  }
  if (sum_dd <= 0.0) throw DegenerateInputError("all reference distances are zero");
  // Optimal positive scale; a collapsed latent chart yields beta = 0 and
  // therefore stress 1.
  const double beta = sum_ll > 0.0 ? std::max(sum_dl / sum_ll, 0.0) : 0.0;
  double resid = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = reference_distances(i, j) - beta * latent_distances(i, j);
      resid += r * r;
    }
  }
  return std::sqrt(resid / sum_dd);
}

AlignmentResult align_similarity(const Eigen::MatrixXd& chart_coords,
                                 const Eigen::MatrixXd& reference_coords) {
  if (chart_coords.rows() != reference_coords.rows())
    throw DimensionMismatchError("point counts differ");
  if (chart_coords.cols() != reference_coords.cols())
    throw DimensionMismatchError("alignment requires matching dimensions");
  const Eigen::Index n = chart_coords.rows();
  if (n < 2) throw InvalidArgumentError("need at least 2 points to align");

  const Eigen::RowVectorXd mu_x = chart_coords.colwise().mean();
  const Eigen::RowVectorXd mu_y = reference_coords.colwise().mean();
  const Eigen::MatrixXd xc = chart_coords.rowwise() - mu_x;
  const Eigen::MatrixXd yc = reference_coords.rowwise() - mu_y;

  const double ref_spread = yc.squaredNorm();
  if (ref_spread <= 0.0) throw DegenerateInputError("all reference points are identical");

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(xc.transpose() * yc,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd rotation = svd.matrixU() * svd.matrixV().transpose();

  const double x_spread = xc.squaredNorm();
  const double scale = x_spread > 0.0 ? svd.singularValues().sum() / x_spread : 0.0;

  AlignmentResult result;
  result.transformed = (scale * (xc * rotation)).rowwise() + mu_y;
  result.rmse = std::sqrt((result.transformed - reference_coords).squaredNorm() /
                          static_cast<double>(n));
  return result;
}

std::vector<int> default_k_list(Eigen::Index n) {
  auto clamp_k = [&](double frac) {
    int k = static_cast<int>(std::ceil(frac * static_cast<double>(n)));
    if (k < 1) k = 1;
    const int kmax = static_cast<int>((n - 1) / 2);
    if (k > kmax) k = kmax;
    return k;
  };
  std::vector<int> ks{clamp_k(0.01), clamp_k(0.05)};
  if (ks[0] == ks[1]) ks.pop_back();
  return ks;
}

MetricsReport evaluate(const ChannelChart& chart, const Eigen::MatrixXd& reference_positions,
                       const std::vector<int>& k_list) {
  chart.validate();
  if (reference_positions.rows() != chart.size())
    throw DimensionMismatchError("reference positions do not cover every chart sample");

  const Eigen::MatrixXd ref_d = pairwise_distances(reference_positions);
  const Eigen::MatrixXd lat_d = pairwise_distances(chart.coordinates);

  MetricsReport report;
  report.k_list = k_list.empty() ? default_k_list(chart.size()) : k_list;
  for (int k : report.k_list) {
    report.trustworthiness[k] = trustworthiness(ref_d, lat_d, k);
    report.continuity[k] = continuity(ref_d, lat_d, k);
  }
  report.kruskal_stress = kruskal_stress(ref_d, lat_d);
  if (chart.latent_dim() == reference_positions.cols())
    report.alignment_rmse = align_similarity(chart.coordinates, reference_positions).rmse;
  else
    report.alignment_rmse = std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace chartlab
