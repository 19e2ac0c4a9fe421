#pragma once

#include <Eigen/Dense>
#include <vector>

#include "chartlab/mlp.hpp"
#include "chartlab/triplet.hpp"

namespace chartlab {

// One optimization batch: a set of triplets plus the anchor samples assigned
// to this batch. Targets are column-aligned with anchor_indices.
struct BatchSpec {
  std::vector<Triplet> triplets;
  std::vector<int> anchor_indices;
  Eigen::MatrixXd anchor_targets;  // d x |anchor_indices|
  double margin = 1.0;
  double lambda = 0.0;
};

// Total batch loss
//   mean_i hinge(a_i, p_i, n_i; margin) + lambda * mean_j |f(x_j) - z_j|^2
// over the columns of `inputs` (F x N). When `grads` is non-null the
// parameter gradients are accumulated into it (callers zero it first).
// Exposed separately from the training loop so the analytic gradients can
// be verified against finite differences.
double batch_loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& inputs,
                                const BatchSpec& batch, MlpGradients* grads);

}  // namespace chartlab
