#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chartlab/errors.hpp"

namespace chartlab {

enum class ChartMethod { kPca, kSammon, kLaplacianEigenmaps, kTripletNet };

std::string to_string(ChartMethod m);
ChartMethod chart_method_from_string(const std::string& s);

struct TrainingMeta {
  std::uint64_t seed = 0;
  std::map<std::string, double> hyperparameters;
  std::vector<double> loss_trace;
  Eigen::VectorXd eigenvalues;  // spectral methods only
  std::vector<std::string> notes;
};

struct MlpModel;  // defined in mlp.hpp

// Low-dimensional pseudo-positions, one row per sample.
struct ChannelChart {
  Eigen::MatrixXd coordinates;  // N x d
  std::vector<std::uint64_t> sample_ids;
  ChartMethod method = ChartMethod::kPca;
  std::shared_ptr<const MlpModel> model;  // parametric charts only
  TrainingMeta training_meta;

  Eigen::Index size() const { return coordinates.rows(); }
  Eigen::Index latent_dim() const { return coordinates.cols(); }

  void validate() const;
};

}  // namespace chartlab
