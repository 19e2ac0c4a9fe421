#include "chartlab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "chartlab/random.hpp"

namespace chartlab {

namespace {

// Latent pair distances floor; keeps Sammon gradients finite near collapse.
constexpr double kDistanceFloor = 1e-12;

std::vector<std::uint64_t> default_ids(Eigen::Index n, const std::vector<std::uint64_t>& given) {
  if (!given.empty()) {
    if (static_cast<Eigen::Index>(given.size()) != n)
      throw DimensionMismatchError("sample_ids length does not match data");
    return given;
  }
  std::vector<std::uint64_t> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

// Deterministic eigenvector sign: largest-|entry| coefficient positive.
void canonicalize_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index imax = 0;
    m.col(c).cwiseAbs().maxCoeff(&imax);
    if (m(imax, c) < 0.0) m.col(c) = -m.col(c);
  }
}

void check_square_distances(const Eigen::MatrixXd& d) {
  if (d.rows() != d.cols()) throw DimensionMismatchError("distance matrix must be square");
  if (d.rows() < 1) throw InvalidArgumentError("empty distance matrix");
}

}  // namespace

std::string to_string(ChartMethod m) {
  switch (m) {
    case ChartMethod::kPca: return "pca";
    case ChartMethod::kSammon: return "sammon";
    case ChartMethod::kLaplacianEigenmaps: return "laplacian-eigenmaps";
    case ChartMethod::kTripletNet: return "triplet-net";
  }
  return "?";
}

ChartMethod chart_method_from_string(const std::string& s) {
  if (s == "pca") return ChartMethod::kPca;
  if (s == "sammon") return ChartMethod::kSammon;
  if (s == "laplacian-eigenmaps") return ChartMethod::kLaplacianEigenmaps;
  if (s == "triplet-net") return ChartMethod::kTripletNet;
  throw InvalidArgumentError("unknown chart method: " + s);
}

void ChannelChart::validate() const {
  if (coordinates.rows() < 1) throw InvalidArgumentError("chart is empty");
  if (coordinates.cols() < 1) throw InvalidArgumentError("latent dimension must be >= 1");
  if (!coordinates.allFinite()) throw InvalidArgumentError("chart has non-finite coordinates");
  if (sample_ids.size() != static_cast<std::size_t>(coordinates.rows()))
    throw DimensionMismatchError("sample_ids length does not match coordinates");
}

ChannelChart pca_embed(const Eigen::MatrixXd& data, int d,
                       const std::vector<std::uint64_t>& sample_ids) {
  const Eigen::Index n = data.rows();
  if (d < 1) throw InvalidArgumentError("latent dimension must be >= 1");
  if (n <= d) throw InvalidArgumentError("need more samples than latent dimensions");

  const Eigen::RowVectorXd mean = data.colwise().mean();
  const Eigen::MatrixXd centered = data.rowwise() - mean;
  const Eigen::MatrixXd cov =
      (centered.transpose() * centered) / static_cast<double>(n - 1);

  const double scale = std::max(1.0, cov.trace());
  if (cov.trace() <= 1e-14 * scale)
    throw DegenerateInputError("all points identical; covariance is zero");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw DegenerateInputError("eigendecomposition of the covariance failed");

  // Eigen returns ascending eigenvalues; take the top d in descending order.
  const Eigen::Index f = cov.rows();
  Eigen::MatrixXd basis(f, d);
  Eigen::VectorXd eigenvalues(d);
  for (int j = 0; j < d; ++j) {
    basis.col(j) = solver.eigenvectors().col(f - 1 - j);
    eigenvalues(j) = solver.eigenvalues()(f - 1 - j);
  }
  canonicalize_signs(basis);

  ChannelChart chart;
  chart.coordinates = centered * basis;
  chart.sample_ids = default_ids(n, sample_ids);
  chart.method = ChartMethod::kPca;
  chart.training_meta.eigenvalues = eigenvalues;
  return chart;
}

ChannelChart pca_embed(const FeatureSet& features, int d) {
  std::vector<std::uint64_t> ids;
  ids.reserve(features.size());
  for (const auto& f : features.items) ids.push_back(f.sample_id);
  return pca_embed(features.matrix(), d, ids);
}

double sammon_loss(const Eigen::MatrixXd& delta, const Eigen::MatrixXd& latent) {
  const Eigen::Index n = delta.rows();
  double c = 0.0, e = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dij = std::max(delta(i, j), kDistanceFloor);
      const double lij = (latent.row(i) - latent.row(j)).norm();
      c += dij;
      e += (dij - lij) * (dij - lij) / dij;
    }
  }
  return e / c;
}

double sammon_loss_and_gradient(const Eigen::MatrixXd& delta, const Eigen::MatrixXd& latent,
                                Eigen::MatrixXd& gradient) {
  const Eigen::Index n = delta.rows();
  gradient = Eigen::MatrixXd::Zero(n, latent.cols());
  double c = 0.0, e = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) c += std::max(delta(i, j), kDistanceFloor);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dij = std::max(delta(i, j), kDistanceFloor);
      const Eigen::RowVectorXd diff = latent.row(i) - latent.row(j);
      const double lij = std::max(diff.norm(), kDistanceFloor);
      e += (dij - lij) * (dij - lij) / dij;
      const double coeff = -2.0 * (dij - lij) / (dij * lij * c);
      gradient.row(i) += coeff * diff;
      gradient.row(j) -= coeff * diff;
    }
  }
  return e / c;
}

Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& distances, int d) {
  check_square_distances(distances);
  const Eigen::Index n = distances.rows();
  const Eigen::MatrixXd d2 = distances.cwiseProduct(distances);
  const Eigen::MatrixXd j =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd b = -0.5 * j * d2 * j;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver((b + b.transpose()) / 2.0);
  Eigen::MatrixXd coords(n, d);
  for (int k = 0; k < d; ++k) {
    const Eigen::Index idx = n - 1 - k;
    const double lambda = idx >= 0 ? solver.eigenvalues()(idx) : 0.0;
    if (idx >= 0 && lambda > 0.0)
      coords.col(k) = solver.eigenvectors().col(idx) * std::sqrt(lambda);
    else
      coords.col(k).setZero();
  }
  canonicalize_signs(coords);
  return coords;
}

ChannelChart sammon_embed(const Eigen::MatrixXd& distances, int d, const SammonOptions& options,
                          const std::vector<std::uint64_t>& sample_ids) {
  check_square_distances(distances);
  const Eigen::Index n = distances.rows();
  if (d < 1) throw InvalidArgumentError("latent dimension must be >= 1");
  if (n <= d) throw InvalidArgumentError("need more samples than latent dimensions");
  if (options.iters < 0) throw InvalidArgumentError("iters must be >= 0");

  // Merge exact duplicates (zero off-diagonal distance); they would make the
  // stress weights singular. Representative = lowest index of the group.
  std::vector<Eigen::Index> rep(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> uniques;
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index r = i;
    for (Eigen::Index j = 0; j < i; ++j) {
      if (distances(i, j) == 0.0) {
        r = rep[static_cast<std::size_t>(j)];
        break;
      }
    }
    rep[static_cast<std::size_t>(i)] = r;
    if (r == i) uniques.push_back(i);
  }
  const auto m = static_cast<Eigen::Index>(uniques.size());
  if (m <= d)
    throw DegenerateInputError("fewer distinct points than latent dimensions after merging");

  Eigen::MatrixXd delta(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) delta(a, b) = distances(uniques[a], uniques[b]);

  Eigen::MatrixXd y = classical_mds(delta, d);
  const double spread = std::max(delta.maxCoeff(), 1.0);
  // Break exactly coincident initial points so gradients are well defined.
  {
    bool coincident = false;
    for (Eigen::Index i = 0; i < m && !coincident; ++i)
      for (Eigen::Index j = i + 1; j < m; ++j)
        if ((y.row(i) - y.row(j)).norm() < kDistanceFloor) {
          coincident = true;
          break;
        }
    if (coincident) {
      std::mt19937_64 eng(mix_seed(options.seed));
      std::normal_distribution<double> g(0.0, 1e-6 * spread);
      for (Eigen::Index i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) y(i, j) += g(eng);
    }
  }

  TrainingMeta meta;
  meta.seed = options.seed;
  meta.hyperparameters["iters"] = options.iters;
  meta.hyperparameters["lr"] = options.lr;
  if (m != n) meta.notes.push_back("merged " + std::to_string(n - m) + " duplicate samples");

  Eigen::MatrixXd grad;
  double loss = sammon_loss_and_gradient(delta, y, grad);
  if (!std::isfinite(loss)) throw DivergenceError("non-finite initial Sammon stress", 0);
  meta.loss_trace.push_back(loss);

  double step = options.lr;
  bool converged = false;
  for (int it = 1; it <= options.iters && !converged; ++it) {
    bool accepted = false;
    for (int half = 0; half < 40; ++half) {
      const Eigen::MatrixXd trial = y - step * grad;
      const double trial_loss = sammon_loss(delta, trial);
      if (std::isnan(trial_loss))
        throw DivergenceError("NaN Sammon stress", static_cast<std::size_t>(it));
      if (trial_loss < loss) {
        y = trial;
        const double improvement = loss - trial_loss;
        loss = trial_loss;
        meta.loss_trace.push_back(loss);
        step *= 1.2;
        accepted = true;
        converged = improvement < options.tolerance;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no descent direction at shrinking steps
    if (!converged) loss = sammon_loss_and_gradient(delta, y, grad);
  }

  ChannelChart chart;
  chart.coordinates.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = rep[static_cast<std::size_t>(i)];
    const auto it = std::lower_bound(uniques.begin(), uniques.end(), r);
    chart.coordinates.row(i) = y.row(it - uniques.begin());
  }
  chart.sample_ids = default_ids(n, sample_ids);
  chart.method = ChartMethod::kSammon;
  chart.training_meta = std::move(meta);
  return chart;
}

ChannelChart laplacian_eigenmaps_embed(const NeighborGraph& graph, int d,
                                       const std::vector<std::uint64_t>& sample_ids) {
  const auto n = static_cast<Eigen::Index>(graph.num_nodes());
  if (d < 1) throw InvalidArgumentError("latent dimension must be >= 1");
  if (n <= d + 1) throw InvalidArgumentError("need more nodes than latent dimensions + 1");

  std::size_t comp_count = 0;
  graph.components(&comp_count);
  if (comp_count > 1)
    throw DisconnectedGraphError(
        "graph has " + std::to_string(comp_count) + " connected components", comp_count);

  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (const auto& e : graph.adjacency[static_cast<std::size_t>(i)])
      w(i, e.neighbor) = e.weight;
  w = ((w + w.transpose()) / 2.0).eval();

  const Eigen::VectorXd degree = w.rowwise().sum();
  if ((degree.array() <= 0.0).any())
    throw DegenerateInputError("graph has a node with zero total edge weight");
  const Eigen::VectorXd dinv_sqrt = degree.array().rsqrt();

  // Normalized Laplacian I - D^-1/2 W D^-1/2; same spectrum as L y = l D y.
  Eigen::MatrixXd lsym = -(dinv_sqrt * dinv_sqrt.transpose()).cwiseProduct(w);
  lsym.diagonal().array() += 1.0;
  lsym = ((lsym + lsym.transpose()) / 2.0).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lsym);
  if (solver.info() != Eigen::Success)
    throw DegenerateInputError("Laplacian eigendecomposition failed");

  // Ascending eigenvalues; index 0 is the zero eigenvalue of the connected
  // graph (constant eigenvector), which is excluded.
  Eigen::MatrixXd coords(n, d);
  Eigen::VectorXd eigenvalues(d);
  for (int j = 0; j < d; ++j) {
    coords.col(j) = dinv_sqrt.asDiagonal() * solver.eigenvectors().col(j + 1);
    eigenvalues(j) = solver.eigenvalues()(j + 1);
  }
  canonicalize_signs(coords);

  ChannelChart chart;
  chart.coordinates = coords;
  chart.sample_ids = default_ids(n, sample_ids);
  chart.method = ChartMethod::kLaplacianEigenmaps;
  chart.training_meta.eigenvalues = eigenvalues;
  return chart;
}

}  // namespace chartlab
