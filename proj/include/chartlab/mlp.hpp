#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "chartlab/errors.hpp"

namespace chartlab {

enum class Activation { kRelu, kTanh };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

// Fully-connected network mapping standardized feature vectors to latent
// points. Hidden layers use the configured activation; the output layer is
// linear. input_mean/input_std are fixed at training time and applied on
// every forward pass, which makes trained models self-contained for
// out-of-sample queries.
struct MlpModel {
  std::vector<Eigen::MatrixXd> weights;  // layer l: (width[l+1] x width[l])
  std::vector<Eigen::VectorXd> biases;
  Activation activation = Activation::kRelu;
  std::uint64_t seed = 0;
  Eigen::VectorXd input_mean;  // empty = identity standardization
  Eigen::VectorXd input_std;

  Eigen::Index input_dim() const { return weights.empty() ? 0 : weights.front().cols(); }
  Eigen::Index output_dim() const { return weights.empty() ? 0 : weights.back().rows(); }
  std::size_t num_layers() const { return weights.size(); }
  std::vector<Eigen::Index> widths() const;

  void validate() const;
};

// He-style N(0, sqrt(2/fan_in)) weights, zero biases, from the given seed.
MlpModel make_mlp(const std::vector<Eigen::Index>& widths, Activation activation,
                  std::uint64_t seed);

// Single-sample forward pass.
Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& feature);

// Column-batched forward pass: inputs (F x B) -> outputs (d x B).
Eigen::MatrixXd forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs);

// Reverse-mode machinery. ForwardTape caches per-layer activations so one
// forward pass supports one backward pass.
struct ForwardTape {
  std::vector<Eigen::MatrixXd> activations;     // inputs of each layer, plus output
  std::vector<Eigen::MatrixXd> preactivations;  // affine outputs before the nonlinearity
};

struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  void set_zero(const MlpModel& model);
  void accumulate(const MlpGradients& other, double scale = 1.0);
  void scale(double s);
};

Eigen::MatrixXd forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs,
                              ForwardTape& tape);

// Propagates dLoss/dOutput (d x B) back through the tape; parameter
// gradients are accumulated into `grads` (must be pre-sized, see set_zero).
void backward_batch(const MlpModel& model, const ForwardTape& tape,
                    const Eigen::MatrixXd& output_grad, MlpGradients& grads);

}  // namespace chartlab
