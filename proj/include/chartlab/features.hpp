#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "chartlab/scenario.hpp"

namespace chartlab {

enum class FeatureTransform { kBeamspaceMagnitude, kDelayProfile, kRawSecondMoment };
enum class NormMode { kUnitNorm, kPathlossScaled, kRaw };

std::string to_string(FeatureTransform t);
std::string to_string(NormMode m);
FeatureTransform feature_transform_from_string(const std::string& s);
NormMode norm_mode_from_string(const std::string& s);

struct FeatureConfig {
  FeatureTransform transform = FeatureTransform::kBeamspaceMagnitude;
  NormMode normalization = NormMode::kUnitNorm;
  int beamspace_oversampling = 1;
  // Exponent of the pathloss-scaled mode: features are multiplied by
  // |H|_F^(-beta+1) / |H|_F.
  double pathloss_beta = 1.0;
  // Rows/cols of the array the antenna axis folds into (beamspace only).
  int array_rows = 1;
  int array_cols = 1;

  void validate() const;
};

struct FeatureVector {
  Eigen::VectorXd values;
  double timestamp = 0.0;
  std::uint64_t sample_id = 0;
  NormMode norm_mode = NormMode::kRaw;
};

struct FeatureSet {
  std::vector<FeatureVector> items;

  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  Eigen::Index dim() const { return items.empty() ? 0 : items.front().values.size(); }

  // N x F matrix, one feature vector per row.
  Eigen::MatrixXd matrix() const;
  std::vector<double> timestamps() const;
};

// Maps one CSI sample to a real feature vector. All transforms reduce to
// entrywise magnitudes, so the output is invariant to a global phase
// rotation of the input. Normalization is applied last.
FeatureVector extract_features(const CsiSample& sample, const FeatureConfig& config);

// Applies extract_features to every sample. The array shape is taken from
// the scenario when the config has not set one.
FeatureSet extract_features(const CsiDataset& dataset, FeatureConfig config);

// Pairwise Euclidean distances; symmetric with zero diagonal.
Eigen::MatrixXd feature_distance_matrix(const FeatureSet& features);
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& rows);

}  // namespace chartlab
