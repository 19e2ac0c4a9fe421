#include "chartlab/triplet.hpp"
#include "chartlab/triplet_batch.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "chartlab/random.hpp"

namespace chartlab {

namespace {
constexpr double kNormFloor = 1e-12;
}

void TripletMiningConfig::validate() const {
  if (!(t_close > 0.0)) throw InvalidArgumentError("T_close must be > 0");
  if (!(t_far > t_close)) throw InvalidArgumentError("T_far must be > T_close");
  if (triplets_per_epoch < 0) throw InvalidArgumentError("triplets_per_epoch must be >= 0");
  if (!(margin > 0.0)) throw InvalidArgumentError("margin must be > 0");
}

void TrainOptions::validate() const {
  if (latent_dim < 1) throw InvalidArgumentError("latent_dim must be >= 1");
  if (epochs < 1) throw InvalidArgumentError("epochs must be >= 1");
  if (batch_size < 1) throw InvalidArgumentError("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw InvalidArgumentError("learning_rate must be > 0");
  if (momentum < 0.0 || momentum >= 1.0) throw InvalidArgumentError("momentum must be in [0,1)");
  for (auto w : hidden_widths)
    if (w < 1) throw InvalidArgumentError("hidden widths must be positive");
}

double triplet_loss(const Eigen::VectorXd& anchor, const Eigen::VectorXd& positive,
                    const Eigen::VectorXd& negative, double margin) {
  if (anchor.size() != positive.size() || anchor.size() != negative.size())
    throw DimensionMismatchError("triplet points must share a dimension");
  const double d_ap = (anchor - positive).norm();
  const double d_an = (anchor - negative).norm();
  return std::max(0.0, d_ap - d_an + margin);
}

std::vector<Triplet> mine_triplets(const std::vector<double>& timestamps,
                                   const TripletMiningConfig& config, std::uint64_t seed) {
  config.validate();
  const int n = static_cast<int>(timestamps.size());
  if (n < 3) throw InvalidArgumentError("need at least 3 samples to mine triplets");

  std::vector<int> order(timestamps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (timestamps[static_cast<std::size_t>(a)] != timestamps[static_cast<std::size_t>(b)])
      return timestamps[static_cast<std::size_t>(a)] < timestamps[static_cast<std::size_t>(b)];
    return a < b;
  });
  std::vector<double> sorted(timestamps.size());
  for (std::size_t i = 0; i < order.size(); ++i)
    sorted[i] = timestamps[static_cast<std::size_t>(order[i])];

  const double span = sorted.back() - sorted.front();
  if (!(span > 2.0 * config.t_far))
    throw TemporalDiversityError("dataset spans " + std::to_string(span) +
                                 " s; need more than 2*T_far = " +
                                 std::to_string(2.0 * config.t_far) + " s");

  auto lower = [&](double t) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
  };
  auto upper = [&](double t) {
    return static_cast<int>(std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
  };

  std::mt19937_64 eng(mix_seed(seed));
  std::uniform_int_distribution<int> pick_anchor(0, n - 1);

  std::vector<Triplet> out;
  out.reserve(static_cast<std::size_t>(config.triplets_per_epoch));
  constexpr int kMaxAnchorRetries = 256;
  for (int t = 0; t < config.triplets_per_epoch; ++t) {
    bool emitted = false;
    for (int attempt = 0; attempt < kMaxAnchorRetries && !emitted; ++attempt) {
      const int a = pick_anchor(eng);  // index into sorted order
      const double ta = sorted[static_cast<std::size_t>(a)];

      // Positives: |t - ta| <= t_close, excluding the anchor itself.
      const int plo = lower(ta - config.t_close);
      const int phi = upper(ta + config.t_close);  // exclusive
      const int pos_count = phi - plo - 1;
      if (pos_count <= 0) continue;

      // Negatives: |t - ta| >= t_far; two contiguous tails.
      const int nlo = upper(ta - config.t_far);  // count of t <= ta - t_far
      const int nhi = lower(ta + config.t_far);  // first index with t >= ta + t_far
      const int neg_count = nlo + (n - nhi);
      if (neg_count <= 0) continue;

      std::uniform_int_distribution<int> pick_pos(0, pos_count - 1);
      int p = plo + pick_pos(eng);
      if (p >= a) ++p;  // skip the anchor slot

      std::uniform_int_distribution<int> pick_neg(0, neg_count - 1);
      int ni = pick_neg(eng);
      const int neg = ni < nlo ? ni : nhi + (ni - nlo);

      out.push_back({order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(p)],
                     order[static_cast<std::size_t>(neg)]});
      emitted = true;
    }
    if (!emitted)
      throw TemporalDiversityError(
          "no anchor with both a positive within T_close and a negative beyond T_far");
  }
  return out;
}

AnchorSet decimate_anchors(const std::vector<double>& timestamps,
                           const std::vector<std::uint64_t>& sample_ids,
                           const Eigen::MatrixXd& positions, double interval, double lambda) {
  if (interval <= 0.0) throw InvalidArgumentError("anchor interval must be > 0");
  if (positions.rows() != static_cast<Eigen::Index>(timestamps.size()) ||
      sample_ids.size() != timestamps.size())
    throw DimensionMismatchError("positions/ids do not match timestamps");
  AnchorSet set;
  set.lambda = lambda;
  double next = timestamps.empty() ? 0.0 : timestamps.front();
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    if (timestamps[i] >= next) {
      set.anchors.push_back({sample_ids[i], positions.row(static_cast<Eigen::Index>(i)).transpose()});
      next = timestamps[i] + interval;
    }
  }
  return set;
}

double batch_loss_and_gradients(const MlpModel& model, const Eigen::MatrixXd& inputs,
                                const BatchSpec& batch, MlpGradients* grads) {
  const auto nt = static_cast<Eigen::Index>(batch.triplets.size());
  const auto na = static_cast<Eigen::Index>(batch.anchor_indices.size());
  double loss = 0.0;

  if (nt > 0) {
    Eigen::MatrixXd xa(inputs.rows(), nt), xp(inputs.rows(), nt), xn(inputs.rows(), nt);
    for (Eigen::Index i = 0; i < nt; ++i) {
      const Triplet& t = batch.triplets[static_cast<std::size_t>(i)];
      xa.col(i) = inputs.col(t.anchor);
      xp.col(i) = inputs.col(t.positive);
      xn.col(i) = inputs.col(t.negative);
    }
    ForwardTape tape_a, tape_p, tape_n;
    const Eigen::MatrixXd ya = forward_batch(model, xa, tape_a);
    const Eigen::MatrixXd yp = forward_batch(model, xp, tape_p);
    const Eigen::MatrixXd yn = forward_batch(model, xn, tape_n);

    const Eigen::MatrixXd ap = ya - yp;
    const Eigen::MatrixXd an = ya - yn;
    const Eigen::VectorXd d_ap = ap.colwise().norm();
    const Eigen::VectorXd d_an = an.colwise().norm();

    Eigen::MatrixXd ga = Eigen::MatrixXd::Zero(ya.rows(), nt);
    Eigen::MatrixXd gp = Eigen::MatrixXd::Zero(ya.rows(), nt);
    Eigen::MatrixXd gn = Eigen::MatrixXd::Zero(ya.rows(), nt);
    double hinge_sum = 0.0;
    for (Eigen::Index i = 0; i < nt; ++i) {
      const double h = d_ap(i) - d_an(i) + batch.margin;
      if (h <= 0.0) continue;  // inactive triplets contribute no gradient
      hinge_sum += h;
      if (grads) {
        const Eigen::VectorXd u_ap = ap.col(i) / std::max(d_ap(i), kNormFloor);
        const Eigen::VectorXd u_an = an.col(i) / std::max(d_an(i), kNormFloor);
        ga.col(i) = (u_ap - u_an) / static_cast<double>(nt);
        gp.col(i) = -u_ap / static_cast<double>(nt);
        gn.col(i) = u_an / static_cast<double>(nt);
      }
    }
    loss += hinge_sum / static_cast<double>(nt);
    if (grads) {
      backward_batch(model, tape_a, ga, *grads);
      backward_batch(model, tape_p, gp, *grads);
      backward_batch(model, tape_n, gn, *grads);
    }
  }

  if (na > 0 && batch.lambda > 0.0) {
    Eigen::MatrixXd x(inputs.rows(), na);
    for (Eigen::Index i = 0; i < na; ++i)
      x.col(i) = inputs.col(batch.anchor_indices[static_cast<std::size_t>(i)]);
    ForwardTape tape;
    const Eigen::MatrixXd y = forward_batch(model, x, tape);
    const Eigen::MatrixXd resid = y - batch.anchor_targets;
    loss += batch.lambda * resid.squaredNorm() / static_cast<double>(na);
    if (grads) {
      const Eigen::MatrixXd gy = (2.0 * batch.lambda / static_cast<double>(na)) * resid;
      backward_batch(model, tape, gy, *grads);
    }
  }

  return loss;
}

TrainResult train_triplet_model(const FeatureSet& features, const TripletMiningConfig& mining,
                                const TrainOptions& options,
                                const std::optional<AnchorSet>& anchors) {
  mining.validate();
  options.validate();
  if (features.empty()) throw InvalidArgumentError("no training features");

  const Eigen::MatrixXd rows = features.matrix();
  const Eigen::MatrixXd inputs = rows.transpose();  // F x N, column per sample
  const auto n = inputs.cols();
  const auto f = inputs.rows();

  // Resolve anchors against the feature set.
  std::vector<int> anchor_idx;
  Eigen::MatrixXd anchor_targets(options.latent_dim, 0);
  double lambda = 0.0;
  if (anchors.has_value()) {
    lambda = anchors->lambda;
    if (lambda < 0.0) throw InvalidArgumentError("anchor lambda must be >= 0");
    if (lambda > 0.0 && anchors->empty())
      throw ConfigError("anchor weight lambda > 0 but the anchor set is empty");
    std::unordered_map<std::uint64_t, int> by_id;
    for (std::size_t i = 0; i < features.size(); ++i)
      by_id[features.items[i].sample_id] = static_cast<int>(i);
    anchor_targets.resize(2, static_cast<Eigen::Index>(anchors->anchors.size()));
    for (std::size_t i = 0; i < anchors->anchors.size(); ++i) {
      const auto it = by_id.find(anchors->anchors[i].sample_id);
      if (it == by_id.end())
        throw InvalidArgumentError("anchor sample_id " +
                                   std::to_string(anchors->anchors[i].sample_id) +
                                   " not present in the dataset");
      anchor_idx.push_back(it->second);
      anchor_targets.col(static_cast<Eigen::Index>(i)) = anchors->anchors[i].position;
    }
    if (!anchor_idx.empty() && options.latent_dim != 2)
      throw ConfigError("anchor positions are 2D; latent_dim must be 2 when anchors are used");
  }

  // Per-dimension standardization, stored in the model.
  Eigen::VectorXd mean = inputs.rowwise().mean();
  Eigen::VectorXd std_dev(f);
  for (Eigen::Index i = 0; i < f; ++i) {
    const double var = (inputs.row(i).array() - mean(i)).square().sum() / static_cast<double>(n);
    std_dev(i) = std::max(std::sqrt(var), 1e-12);
  }

  std::vector<Eigen::Index> widths;
  widths.push_back(f);
  for (auto w : options.hidden_widths) widths.push_back(w);
  widths.push_back(options.latent_dim);
  MlpModel model = make_mlp(widths, options.activation, options.seed);
  model.input_mean = mean;
  model.input_std = std_dev;

  const std::vector<double> times = features.timestamps();

  MlpGradients velocity;
  velocity.set_zero(model);
  MlpGradients grads;
  grads.set_zero(model);

  std::mt19937_64 shuffle_eng(mix_seed(options.seed ^ 0x5bd1e995ULL));
  TrainResult result;

  double lr = options.learning_rate;
  const int drop1 = options.epochs / 2;
  const int drop2 = (3 * options.epochs) / 4;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    if (epoch > 0 && (epoch == drop1 || epoch == drop2)) lr *= 0.5;

    std::vector<Triplet> triplets;
    if (mining.triplets_per_epoch > 0)
      triplets = mine_triplets(times, mining, stream_seed(options.seed, static_cast<std::uint64_t>(epoch)));
    std::shuffle(triplets.begin(), triplets.end(), shuffle_eng);

    std::vector<int> epoch_anchors(anchor_idx.size());
    std::iota(epoch_anchors.begin(), epoch_anchors.end(), 0);
    std::shuffle(epoch_anchors.begin(), epoch_anchors.end(), shuffle_eng);

    std::size_t num_batches =
        (triplets.size() + static_cast<std::size_t>(options.batch_size) - 1) /
        static_cast<std::size_t>(options.batch_size);
    if (num_batches == 0)
      num_batches = (epoch_anchors.size() + static_cast<std::size_t>(options.batch_size) - 1) /
                    static_cast<std::size_t>(options.batch_size);
    if (num_batches == 0)
      throw ConfigError("nothing to train on: no triplets and no anchors");

    double epoch_loss = 0.0;
    for (std::size_t b = 0; b < num_batches; ++b) {
      BatchSpec batch;
      batch.margin = mining.margin;
      batch.lambda = lambda;
      const std::size_t tlo = b * static_cast<std::size_t>(options.batch_size);
      const std::size_t thi =
          std::min(triplets.size(), tlo + static_cast<std::size_t>(options.batch_size));
      if (tlo < thi) batch.triplets.assign(triplets.begin() + tlo, triplets.begin() + thi);

      // Round-robin the shuffled anchors over the epoch's batches.
      std::vector<Eigen::Index> cols;
      for (std::size_t j = b; j < epoch_anchors.size(); j += num_batches) {
        batch.anchor_indices.push_back(anchor_idx[static_cast<std::size_t>(epoch_anchors[j])]);
        cols.push_back(static_cast<Eigen::Index>(epoch_anchors[j]));
      }
      batch.anchor_targets.resize(anchor_targets.rows(), static_cast<Eigen::Index>(cols.size()));
      for (std::size_t j = 0; j < cols.size(); ++j)
        batch.anchor_targets.col(static_cast<Eigen::Index>(j)) = anchor_targets.col(cols[j]);

      grads.set_zero(model);
      const double batch_loss = batch_loss_and_gradients(model, inputs, batch, &grads);
      epoch_loss += batch_loss;

      for (std::size_t l = 0; l < model.num_layers(); ++l) {
        velocity.weights[l] = options.momentum * velocity.weights[l] - lr * grads.weights[l];
        velocity.biases[l] = options.momentum * velocity.biases[l] - lr * grads.biases[l];
        model.weights[l] += velocity.weights[l];
        model.biases[l] += velocity.biases[l];
      }
    }
    epoch_loss /= static_cast<double>(num_batches);
    if (!std::isfinite(epoch_loss))
      throw DivergenceError("non-finite training loss", static_cast<std::size_t>(epoch));
    result.loss_trace.push_back(epoch_loss);
  }

  result.model = std::move(model);
  return result;
}

ChannelChart chart_from_model(const MlpModel& model, const FeatureSet& features) {
  model.validate();
  if (features.empty()) throw InvalidArgumentError("no features to chart");
  const Eigen::MatrixXd inputs = features.matrix().transpose();
  const Eigen::MatrixXd outputs = forward_batch(model, inputs);

  ChannelChart chart;
  chart.coordinates = outputs.transpose();
  chart.sample_ids.reserve(features.size());
  for (const auto& item : features.items) chart.sample_ids.push_back(item.sample_id);
  chart.method = ChartMethod::kTripletNet;
  chart.model = std::make_shared<MlpModel>(model);
  chart.training_meta.seed = model.seed;
  return chart;
}

}  // namespace chartlab
