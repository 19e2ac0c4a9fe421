#pragma once

#include <Eigen/Dense>
#include <vector>

#include "chartlab/errors.hpp"

namespace chartlab {

enum class KnnWeightMode { kBinary, kGaussian };

// Union-symmetrized k-nearest-neighbor graph.
struct NeighborGraph {
  struct Edge {
    int neighbor = 0;
    double weight = 0.0;
  };

  int k = 0;
  bool symmetric = true;
  double gaussian_sigma = 0.0;  // 0 for binary weights
  std::vector<std::vector<Edge>> adjacency;

  std::size_t num_nodes() const { return adjacency.size(); }
  std::size_t num_edges() const;  // undirected count
  double weight(int i, int j) const;

  // Connected components; component id per node, ids are 0..count-1.
  std::vector<int> components(std::size_t* count = nullptr) const;
};

// Directed k-NN edges from a full distance matrix, symmetrized by union.
// Ties on equal distance are broken by the lower node index. In gaussian
// mode, sigma <= 0 selects the median of all directed k-NN distances.
NeighborGraph build_knn_graph(const Eigen::MatrixXd& distances, int k,
                              KnnWeightMode mode = KnnWeightMode::kBinary, double sigma = 0.0);

// All-pairs shortest-path distances over the graph with edge costs equal to
// the underlying metric distances (weights are ignored). Throws
// DisconnectedGraphError when some pair is unreachable.
Eigen::MatrixXd graph_geodesic_distances(const NeighborGraph& graph,
                                         const Eigen::MatrixXd& distances);

}  // namespace chartlab
