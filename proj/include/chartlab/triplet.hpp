#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "chartlab/chart.hpp"
#include "chartlab/features.hpp"
#include "chartlab/mlp.hpp"

namespace chartlab {

// Timestamp-based triplet selection: positives lie within T_close seconds of
// the anchor, negatives at least T_far seconds away.
struct TripletMiningConfig {
  double t_close = 2.0;   // seconds
  double t_far = 60.0;    // seconds
  int triplets_per_epoch = 4096;
  double margin = 1.0;    // latent-distance units

  void validate() const;
};

struct Triplet {
  int anchor = 0;
  int positive = 0;
  int negative = 0;
};

// Sample with known physical position, used as a supervised regularizer.
struct AnchorSet {
  struct Anchor {
    std::uint64_t sample_id = 0;
    Eigen::Vector2d position{0.0, 0.0};
  };
  std::vector<Anchor> anchors;
  double lambda = 1.0;

  bool empty() const { return anchors.empty(); }
};

// Keeps roughly one anchor per `interval` seconds of the trajectory.
AnchorSet decimate_anchors(const std::vector<double>& timestamps,
                           const std::vector<std::uint64_t>& sample_ids,
                           const Eigen::MatrixXd& positions, double interval, double lambda);

struct TrainOptions {
  std::vector<Eigen::Index> hidden_widths{256, 128, 64};
  Activation activation = Activation::kRelu;
  int latent_dim = 2;
  int epochs = 100;
  int batch_size = 64;
  double learning_rate = 3e-3;
  double momentum = 0.9;
  std::uint64_t seed = 0;

  void validate() const;
};

struct TrainResult {
  MlpModel model;
  std::vector<double> loss_trace;  // one entry per epoch
};

// Hinge triplet loss max(0, |a-p| - |a-n| + margin).
double triplet_loss(const Eigen::VectorXd& anchor, const Eigen::VectorXd& positive,
                    const Eigen::VectorXd& negative, double margin);

// Draws `triplets_per_epoch` triplets satisfying the time constraints,
// uniformly over the eligible positive/negative sets of each sampled anchor.
// Deterministic given seed.
std::vector<Triplet> mine_triplets(const std::vector<double>& timestamps,
                                   const TripletMiningConfig& config, std::uint64_t seed);

// Stochastic gradient descent with momentum on
//   mean triplet hinge + lambda * mean anchor squared error,
// batching triplets and anchors together. Features are standardized
// per-dimension first; the statistics are stored inside the model.
TrainResult train_triplet_model(const FeatureSet& features, const TripletMiningConfig& mining,
                                const TrainOptions& options,
                                const std::optional<AnchorSet>& anchors = std::nullopt);

// Forward-maps every feature vector through the model, preserving order.
ChannelChart chart_from_model(const MlpModel& model, const FeatureSet& features);

}  // namespace chartlab
