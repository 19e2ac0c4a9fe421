#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "chartlab/chart.hpp"
#include "chartlab/features.hpp"
#include "chartlab/neighbors.hpp"

namespace chartlab {

// Linear baseline: center the data and project onto the top-d principal
// directions. Output columns are ordered by decreasing variance.
ChannelChart pca_embed(const FeatureSet& features, int d);
ChannelChart pca_embed(const Eigen::MatrixXd& data, int d,
                       const std::vector<std::uint64_t>& sample_ids = {});

struct SammonOptions {
  int iters = 500;
  double lr = 0.5;            // initial step, adapted by backtracking
  std::uint64_t seed = 0;
  double tolerance = 1e-15;   // stop when the loss improvement drops below
};

// Sammon stress of a configuration and its gradient w.r.t. the latent
// coordinates. Exposed so the gradients can be checked independently.
double sammon_loss(const Eigen::MatrixXd& target_distances, const Eigen::MatrixXd& latent);
double sammon_loss_and_gradient(const Eigen::MatrixXd& target_distances,
                                const Eigen::MatrixXd& latent, Eigen::MatrixXd& gradient);

// Classical metric scaling (Torgerson) used to initialize Sammon.
Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& distances, int d);

// Gradient descent on the Sammon stress with a backtracking line search, so
// the recorded loss trace is non-increasing. Exact duplicate rows of the
// input (zero off-diagonal distance) are merged before optimization and
// share the representative's coordinates in the output.
ChannelChart sammon_embed(const Eigen::MatrixXd& distances, int d, const SammonOptions& options,
                          const std::vector<std::uint64_t>& sample_ids = {});

// Spectral embedding from the graph Laplacian: solves L y = lambda D y via
// the normalized Laplacian and keeps the eigenvectors of the d smallest
// non-zero eigenvalues. Refuses disconnected graphs.
ChannelChart laplacian_eigenmaps_embed(const NeighborGraph& graph, int d,
                                       const std::vector<std::uint64_t>& sample_ids = {});

}  // namespace chartlab
