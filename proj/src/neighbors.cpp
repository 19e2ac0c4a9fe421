#include "chartlab/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "chartlab/parallel.hpp"

namespace chartlab {

std::size_t NeighborGraph::num_edges() const {
  std::size_t directed = 0;
  for (const auto& row : adjacency) directed += row.size();
  return directed / 2;
}

double NeighborGraph::weight(int i, int j) const {
  for (const auto& e : adjacency[static_cast<std::size_t>(i)])
    if (e.neighbor == j) return e.weight;
  return 0.0;
}

std::vector<int> NeighborGraph::components(std::size_t* count) const {
  const std::size_t n = num_nodes();
  std::vector<int> comp(n, -1);
  int next = 0;
  std::vector<int> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (comp[root] >= 0) continue;
    comp[root] = next;
    stack.push_back(static_cast<int>(root));
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& e : adjacency[static_cast<std::size_t>(u)]) {
        if (comp[static_cast<std::size_t>(e.neighbor)] < 0) {
          comp[static_cast<std::size_t>(e.neighbor)] = next;
          stack.push_back(e.neighbor);
        }
      }
    }
    ++next;
  }
  if (count) *count = static_cast<std::size_t>(next);
  return comp;
}

NeighborGraph build_knn_graph(const Eigen::MatrixXd& distances, int k, KnnWeightMode mode,
                              double sigma) {
  const auto n = distances.rows();
  if (distances.cols() != n) throw DimensionMismatchError("distance matrix must be square");
  if (k <= 0) throw InvalidArgumentError("k must be positive");
  if (k >= n) throw InvalidArgumentError("k must be smaller than the number of samples");

  // Directed k-NN lists, ties by lower index.
  std::vector<std::vector<int>> knn(static_cast<std::size_t>(n));
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
    std::vector<int> order(static_cast<std::size_t>(n - 1));
    int pos = 0;
    for (int j = 0; j < n; ++j)
      if (j != static_cast<int>(i)) order[static_cast<std::size_t>(pos++)] = j;
    const auto ii = static_cast<Eigen::Index>(i);
    std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
      const double da = distances(ii, a), db = distances(ii, b);
      if (da != db) return da < db;
      return a < b;
    });
    knn[i].assign(order.begin(), order.begin() + k);
  });

  double sig = sigma;
  if (mode == KnnWeightMode::kGaussian && sig <= 0.0) {
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < knn.size(); ++i)
      for (int j : knn[i]) all.push_back(distances(static_cast<Eigen::Index>(i), j));
    std::nth_element(all.begin(), all.begin() + all.size() / 2, all.end());
    sig = all[all.size() / 2];
    if (sig <= 0.0) sig = 1.0;  // all duplicate points; weights become 1
  }

  auto edge_weight = [&](double d) {
    return mode == KnnWeightMode::kBinary ? 1.0 : std::exp(-d * d / (sig * sig));
  };

  NeighborGraph g;
  g.k = k;
  g.symmetric = true;
  g.gaussian_sigma = mode == KnnWeightMode::kGaussian ? sig : 0.0;
  g.adjacency.resize(static_cast<std::size_t>(n));
  std::vector<std::vector<bool>> present(static_cast<std::size_t>(n));
  for (auto& p : present) p.assign(static_cast<std::size_t>(n), false);
  auto add = [&](int a, int b) {
    if (present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) return;
    present[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    g.adjacency[static_cast<std::size_t>(a)].push_back({b, edge_weight(distances(a, b))});
  };
  for (std::size_t i = 0; i < knn.size(); ++i) {
    for (int j : knn[i]) {
      add(static_cast<int>(i), j);
      add(j, static_cast<int>(i));
    }
  }
  for (auto& row : g.adjacency)
    std::sort(row.begin(), row.end(),
              [](const NeighborGraph::Edge& a, const NeighborGraph::Edge& b) {
                return a.neighbor < b.neighbor;
              });
  return g;
}

Eigen::MatrixXd graph_geodesic_distances(const NeighborGraph& graph,
                                         const Eigen::MatrixXd& distances) {
  const auto n = static_cast<Eigen::Index>(graph.num_nodes());
  if (distances.rows() != n || distances.cols() != n)
    throw DimensionMismatchError("distance matrix does not match graph size");
  std::size_t comp_count = 0;
  graph.components(&comp_count);
  if (comp_count > 1)
    throw DisconnectedGraphError(
        "graph has " + std::to_string(comp_count) + " connected components", comp_count);

  Eigen::MatrixXd geo(n, n);
  const double inf = std::numeric_limits<double>::infinity();
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t src) {
    // Dijkstra from src with metric edge costs.
    std::vector<double> dist(static_cast<std::size_t>(n), inf);
    dist[src] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, static_cast<int>(src));
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      for (const auto& e : graph.adjacency[static_cast<std::size_t>(u)]) {
        const double nd = d + distances(u, e.neighbor);
        if (nd < dist[static_cast<std::size_t>(e.neighbor)]) {
          dist[static_cast<std::size_t>(e.neighbor)] = nd;
          heap.emplace(nd, e.neighbor);
        }
      }
    }
    for (Eigen::Index j = 0; j < n; ++j) geo(static_cast<Eigen::Index>(src), j) = dist[static_cast<std::size_t>(j)];
  });
  // Enforce exact symmetry against floating accumulation-order effects.
  geo = ((geo + geo.transpose()) / 2.0).eval();
  return geo;
}

}  // namespace chartlab
