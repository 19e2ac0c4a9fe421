#include "chartlab/mlp.hpp"

#include <cmath>
#include <random>

#include "chartlab/random.hpp"

namespace chartlab {

std::string to_string(Activation a) {
  return a == Activation::kRelu ? "relu" : "tanh";
}

Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::kRelu;
  if (s == "tanh") return Activation::kTanh;
  throw InvalidArgumentError("unknown activation: " + s);
}

std::vector<Eigen::Index> MlpModel::widths() const {
  std::vector<Eigen::Index> w;
  if (weights.empty()) return w;
  w.push_back(weights.front().cols());
  for (const auto& m : weights) w.push_back(m.rows());
  return w;
}

void MlpModel::validate() const {
  if (weights.empty()) throw InvalidArgumentError("model has no layers");
  if (weights.size() != biases.size())
    throw DimensionMismatchError("weights/biases layer count mismatch");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (biases[l].size() != weights[l].rows())
      throw DimensionMismatchError("bias size mismatch in layer " + std::to_string(l));
    if (l > 0 && weights[l].cols() != weights[l - 1].rows())
      throw DimensionMismatchError("layer width mismatch at layer " + std::to_string(l));
    if (!weights[l].allFinite() || !biases[l].allFinite())
      throw InvalidArgumentError("non-finite parameters in layer " + std::to_string(l));
  }
  if (input_mean.size() != input_std.size())
    throw DimensionMismatchError("standardization vectors differ in size");
  if (input_mean.size() != 0 && input_mean.size() != input_dim())
    throw DimensionMismatchError("standardization size does not match input width");
}

MlpModel make_mlp(const std::vector<Eigen::Index>& widths, Activation activation,
                  std::uint64_t seed) {
  if (widths.size() < 2) throw InvalidArgumentError("need at least input and output widths");
  for (auto w : widths)
    if (w < 1) throw InvalidArgumentError("layer widths must be positive");

  MlpModel model;
  model.activation = activation;
  model.seed = seed;
  std::mt19937_64 eng(mix_seed(seed));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const Eigen::Index fan_in = widths[l];
    const Eigen::Index fan_out = widths[l + 1];
    const double std_dev = std::sqrt(2.0 / static_cast<double>(fan_in));
    Eigen::MatrixXd w(fan_out, fan_in);
    for (Eigen::Index i = 0; i < fan_out; ++i)
      for (Eigen::Index j = 0; j < fan_in; ++j) w(i, j) = std_dev * gauss(eng);
    model.weights.push_back(std::move(w));
    model.biases.push_back(Eigen::VectorXd::Zero(fan_out));
  }
  return model;
}

namespace {

Eigen::MatrixXd standardize(const MlpModel& model, const Eigen::MatrixXd& inputs) {
  if (model.input_mean.size() == 0) return inputs;
  return model.input_std.cwiseInverse().asDiagonal() * (inputs.colwise() - model.input_mean);
}

Eigen::MatrixXd apply_activation(Activation a, const Eigen::MatrixXd& z) {
  if (a == Activation::kRelu) return z.cwiseMax(0.0);
  return z.array().tanh().matrix();
}

Eigen::MatrixXd activation_derivative(Activation a, const Eigen::MatrixXd& z) {
  if (a == Activation::kRelu) return (z.array() > 0.0).cast<double>().matrix();
  return (1.0 - z.array().tanh().square()).matrix();
}

}  // namespace

Eigen::MatrixXd forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs,
                              ForwardTape& tape) {
  if (inputs.rows() != model.input_dim())
    throw DimensionMismatchError("input dimension does not match model input width");
  tape.activations.clear();
  tape.preactivations.clear();
  Eigen::MatrixXd x = standardize(model, inputs);
  const std::size_t layers = model.num_layers();
  for (std::size_t l = 0; l < layers; ++l) {
    tape.activations.push_back(x);
    Eigen::MatrixXd z = (model.weights[l] * x).colwise() + model.biases[l];
    tape.preactivations.push_back(z);
    x = (l + 1 < layers) ? apply_activation(model.activation, z) : std::move(z);
  }
  tape.activations.push_back(x);
  return tape.activations.back();
}

Eigen::MatrixXd forward_batch(const MlpModel& model, const Eigen::MatrixXd& inputs) {
  ForwardTape tape;
  return forward_batch(model, inputs, tape);
}

Eigen::VectorXd forward(const MlpModel& model, const Eigen::VectorXd& feature) {
  return forward_batch(model, feature).col(0);
}

void MlpGradients::set_zero(const MlpModel& model) {
  weights.resize(model.num_layers());
  biases.resize(model.num_layers());
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    weights[l] = Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols());
    biases[l] = Eigen::VectorXd::Zero(model.biases[l].size());
  }
}

void MlpGradients::accumulate(const MlpGradients& other, double scale) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] += scale * other.weights[l];
    biases[l] += scale * other.biases[l];
  }
}

void MlpGradients::scale(double s) {
  for (std::size_t l = 0; l < weights.size(); ++l) {
    weights[l] *= s;
    biases[l] *= s;
  }
}

void backward_batch(const MlpModel& model, const ForwardTape& tape,
                    const Eigen::MatrixXd& output_grad, MlpGradients& grads) {
  const std::size_t layers = model.num_layers();
  Eigen::MatrixXd delta = output_grad;  // dLoss/dz of the linear output layer
  for (std::size_t l = layers; l-- > 0;) {
    if (l + 1 < layers)
      delta = delta.cwiseProduct(activation_derivative(model.activation, tape.preactivations[l]));
    grads.weights[l].noalias() += delta * tape.activations[l].transpose();
    grads.biases[l] += delta.rowwise().sum();
    if (l > 0) delta = (model.weights[l].transpose() * delta).eval();
  }
}

}  // namespace chartlab
