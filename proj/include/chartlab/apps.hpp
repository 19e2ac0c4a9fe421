#pragma once

#include <Eigen/Dense>
#include <vector>

#include "chartlab/chart.hpp"
#include "chartlab/features.hpp"

namespace chartlab {

// Fixed small-cell sites; ground-truth association is nearest cell by
// physical distance.
struct CellLayout {
  std::vector<Eigen::Vector2d> positions;

  void validate() const;
  int nearest_cell(const Eigen::Vector2d& p) const;
  // Cells whose association regions share a border inside `area`, found by
  // labeling a fine grid. adjacency[i][j] is true for neighboring cells.
  std::vector<std::vector<bool>> adjacency(const Rect& area, int grid = 256) const;
};

// Nearest-cell labels for a batch of positions.
std::vector<int> assign_cell_labels(const Eigen::MatrixXd& positions, const CellLayout& layout);

// Maps one query feature into an existing chart. Parametric charts use the
// model's forward pass; non-parametric charts use an inverse-distance
// weighted average of the k nearest training features' chart points. A query
// coinciding with a training feature returns that chart point exactly.
Eigen::VectorXd out_of_sample_map(const ChannelChart& chart, const FeatureSet& training_features,
                                  const Eigen::VectorXd& query_feature, int k);

struct CellAssociationResult {
  std::vector<int> predicted;
  double accuracy = 0.0;
  Eigen::MatrixXi confusion;  // row = true cell, col = predicted cell
};

// Majority vote over the k chart-nearest labeled training points; ties break
// towards the label with the smallest aggregate chart distance, then the
// smaller cell id. Test features are first mapped into the chart.
CellAssociationResult cell_association(const ChannelChart& chart,
                                       const FeatureSet& training_features,
                                       const std::vector<int>& training_labels, int num_cells,
                                       const FeatureSet& test_features,
                                       const std::vector<int>& test_labels, int k);

// Trailing (causal) mean over `window` seconds; output i averages all chart
// rows with timestamp in (t_i - window, t_i].
Eigen::MatrixXd smooth_positions(const Eigen::MatrixXd& positions,
                                 const std::vector<double>& timestamps, double window);

struct RocCurve {
  std::vector<double> thresholds;
  std::vector<double> fpr;
  std::vector<double> tpr;
  double auc = 0.0;

  // Largest TPR over the curve at false positive rate <= max_fpr, with
  // linear interpolation between the bracketing points.
  double tpr_at_fpr(double max_fpr) const;
};

// Pairs are ground-truth neighbors when their physical distance is below
// true_radius, and predicted neighbors when their chart distance is below
// the threshold. Sweeps the thresholds and always includes the (0,0) and
// (1,1) endpoints. AUC by trapezoid rule.
RocCurve proximity_roc(const Eigen::MatrixXd& chart_positions,
                       const Eigen::MatrixXd& true_positions, double true_radius,
                       std::vector<double> thresholds = {});

// Default sweep: `count` log-spaced thresholds spanning the positive range
// of observed chart distances.
std::vector<double> log_spaced_thresholds(const Eigen::MatrixXd& chart_positions, int count = 200);

}  // namespace chartlab
