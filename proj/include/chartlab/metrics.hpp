#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "chartlab/chart.hpp"

namespace chartlab {

struct MetricsReport {
  std::map<int, double> trustworthiness;  // K -> value in [0,1]
  std::map<int, double> continuity;
  double kruskal_stress = 0.0;
  double alignment_rmse = 0.0;  // meters, after the optimal similarity transform
  std::vector<int> k_list;
};

// Rank-based score penalizing latent-space neighbors that are not reference
// neighbors:
//   TW(K) = 1 - 2 / (N K (2N - 3K - 1)) * sum_i sum_{j in U_K(i)} (r(i,j) - K)
// with r(i,j) the reference rank of j seen from i. Rank ties break on the
// lower index, so the value is deterministic on discretized data.
double trustworthiness(const Eigen::MatrixXd& reference_distances,
                       const Eigen::MatrixXd& latent_distances, int k);

// Same score with the two spaces exchanged; penalizes reference neighbors
// missing from the latent space.
double continuity(const Eigen::MatrixXd& reference_distances,
                  const Eigen::MatrixXd& latent_distances, int k);

// Scale-invariant Kruskal stress
//   min_{beta>0} sqrt( sum (delta - beta d)^2 / sum delta^2 ),
// beta in closed form. Zero iff the latent distances are a positive
// rescaling of the reference distances; 1 when the latent chart collapses.
double kruskal_stress(const Eigen::MatrixXd& reference_distances,
                      const Eigen::MatrixXd& latent_distances);

struct AlignmentResult {
  Eigen::MatrixXd transformed;  // chart mapped into the reference frame
  double rmse = 0.0;
};

// Optimal similarity transform (rotation, reflection, uniform scale,
// translation) from chart to reference coordinates, via orthogonal
// Procrustes on the centered matrices. Reflections are allowed: a channel
// chart is only defined up to mirroring.
AlignmentResult align_similarity(const Eigen::MatrixXd& chart_coords,
                                 const Eigen::MatrixXd& reference_coords);

// Full report against reference positions (one row per chart sample).
MetricsReport evaluate(const ChannelChart& chart, const Eigen::MatrixXd& reference_positions,
                       const std::vector<int>& k_list);

// K values used when the caller does not specify any: ceil(0.01 N) and
// ceil(0.05 N), clamped to the valid range 1 <= K < N/2.
std::vector<int> default_k_list(Eigen::Index n);

}  // namespace chartlab
