#include "chartlab/features.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "chartlab/parallel.hpp"

namespace chartlab {

std::string to_string(FeatureTransform t) {
  switch (t) {
    case FeatureTransform::kBeamspaceMagnitude: return "beamspace-magnitude";
    case FeatureTransform::kDelayProfile: return "delay-profile";
    case FeatureTransform::kRawSecondMoment: return "raw-second-moment";
  }
  return "?";
}

std::string to_string(NormMode m) {
  switch (m) {
    case NormMode::kUnitNorm: return "unit-norm";
    case NormMode::kPathlossScaled: return "pathloss-scaled";
    case NormMode::kRaw: return "raw";
  }
  return "?";
}

FeatureTransform feature_transform_from_string(const std::string& s) {
  if (s == "beamspace-magnitude") return FeatureTransform::kBeamspaceMagnitude;
  if (s == "delay-profile") return FeatureTransform::kDelayProfile;
  if (s == "raw-second-moment") return FeatureTransform::kRawSecondMoment;
  throw InvalidArgumentError("unknown feature transform: " + s);
}

NormMode norm_mode_from_string(const std::string& s) {
  if (s == "unit-norm") return NormMode::kUnitNorm;
  if (s == "pathloss-scaled") return NormMode::kPathlossScaled;
  if (s == "raw") return NormMode::kRaw;
  throw InvalidArgumentError("unknown normalization mode: " + s);
}

void FeatureConfig::validate() const {
  if (beamspace_oversampling < 1)
    throw InvalidArgumentError("beamspace_oversampling must be >= 1");
  if (array_rows < 1 || array_cols < 1)
    throw InvalidArgumentError("feature array shape must be positive");
}

namespace {

// DFT analysis matrix with `os`-fold angular oversampling: (os*n) x n.
Eigen::MatrixXcd dft_matrix(int n, int os) {
  const int m = os * n;
  Eigen::MatrixXcd w(m, n);
  for (int u = 0; u < m; ++u)
    for (int x = 0; x < n; ++x)
      w(u, x) = std::polar(1.0, -2.0 * std::numbers::pi * u * x / m);
  return w;
}

Eigen::VectorXd beamspace_magnitude(const Eigen::MatrixXcd& h, int rows, int cols, int os) {
  if (h.rows() != static_cast<Eigen::Index>(rows) * cols)
    throw DimensionMismatchError("antenna count does not match array shape");
  const Eigen::MatrixXcd wr = dft_matrix(rows, os);
  const Eigen::MatrixXcd wc = dft_matrix(cols, os);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(os) * rows * os * cols);
  Eigen::MatrixXcd grid(rows, cols);
  for (Eigen::Index k = 0; k < h.cols(); ++k) {
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) grid(r, c) = h(r * cols + c, k);
    const Eigen::MatrixXcd beams = wr * grid * wc.transpose();
    Eigen::Index i = 0;
    for (Eigen::Index u = 0; u < beams.rows(); ++u)
      for (Eigen::Index v = 0; v < beams.cols(); ++v) acc(i++) += std::abs(beams(u, v));
  }
  return acc / static_cast<double>(h.cols());
}

Eigen::VectorXd delay_profile(const Eigen::MatrixXcd& h) {
  const Eigen::Index k = h.cols();
  const Eigen::MatrixXcd w = dft_matrix(static_cast<int>(k), 1).conjugate() / static_cast<double>(k);
  // Rows of h are per-antenna subcarrier responses; w^* gives delay taps.
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(k);
  for (Eigen::Index a = 0; a < h.rows(); ++a) {
    const Eigen::VectorXcd taps = w * h.row(a).transpose();
    acc += taps.cwiseAbs2();
  }
  return acc / static_cast<double>(h.rows());
}

Eigen::VectorXd raw_second_moment(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd r = (h * h.adjoint()) / static_cast<double>(h.cols());
  const Eigen::Index a = r.rows();
  Eigen::VectorXd out(a * (a + 1) / 2);
  Eigen::Index i = 0;
  for (Eigen::Index row = 0; row < a; ++row)
    for (Eigen::Index col = row; col < a; ++col) out(i++) = std::abs(r(row, col));
  return out;
}

}  // namespace

FeatureVector extract_features(const CsiSample& sample, const FeatureConfig& config) {
  config.validate();
  if (sample.matrix.size() == 0) throw InvalidArgumentError("empty CSI matrix");

  Eigen::VectorXd v;
  switch (config.transform) {
    case FeatureTransform::kBeamspaceMagnitude:
      v = beamspace_magnitude(sample.matrix, config.array_rows, config.array_cols,
                              config.beamspace_oversampling);
      break;
    case FeatureTransform::kDelayProfile:
      v = delay_profile(sample.matrix);
      break;
    case FeatureTransform::kRawSecondMoment:
      v = raw_second_moment(sample.matrix);
      break;
  }

  switch (config.normalization) {
    case NormMode::kRaw:
      break;
    case NormMode::kUnitNorm: {
      const double n = v.norm();
      if (n <= 0.0) throw ZeroNormError("cannot unit-normalize all-zero features");
      v /= n;
      break;
    }
    case NormMode::kPathlossScaled: {
      const double hn = sample.matrix.norm();
      if (hn <= 0.0) throw ZeroNormError("cannot pathloss-scale an all-zero CSI matrix");
      v *= std::pow(hn, -config.pathloss_beta + 1.0) / hn;
      break;
    }
  }

  FeatureVector f;
  f.values = std::move(v);
  f.timestamp = sample.timestamp;
  f.sample_id = sample.sample_id;
  f.norm_mode = config.normalization;
  return f;
}

FeatureSet extract_features(const CsiDataset& dataset, FeatureConfig config) {
  FeatureSet out;
  out.items.resize(dataset.size());
  parallel_for(0, dataset.size(), [&](std::size_t i) {
    out.items[i] = extract_features(dataset.samples[i], config);
  });
  return out;
}

Eigen::MatrixXd FeatureSet::matrix() const {
  if (items.empty()) return Eigen::MatrixXd(0, 0);
  const Eigen::Index f = items.front().values.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(items.size()), f);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto& v = items[static_cast<std::size_t>(i)].values;
    if (v.size() != f) throw DimensionMismatchError("feature vectors have differing dimensions");
    m.row(i) = v.transpose();
  }
  return m;
}

std::vector<double> FeatureSet::timestamps() const {
  std::vector<double> t;
  t.reserve(items.size());
  for (const auto& it : items) t.push_back(it.timestamp);
  return t;
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t i) {
    const auto ii = static_cast<Eigen::Index>(i);
    for (Eigen::Index j = 0; j < ii; ++j) {
      const double dist = (rows.row(ii) - rows.row(j)).norm();
      d(ii, j) = dist;
      d(j, ii) = dist;
    }
  });
  return d;
}

Eigen::MatrixXd feature_distance_matrix(const FeatureSet& features) {
  return pairwise_distances(features.matrix());
}

}  // namespace chartlab
