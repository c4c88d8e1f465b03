#ifndef HB_MLP_HPP
#define HB_MLP_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hb/rng.hpp"

namespace hb {

enum class OutputActivation { Tanh, Linear };

inline std::string to_string(OutputActivation a) {
  return a == OutputActivation::Tanh ? "tanh" : "linear";
}

/// Fully connected net: ReLU hidden layers, tanh or linear output.
/// weights[l] maps sizes[l] -> sizes[l+1]; batches are column-stacked.
template <typename Scalar = double>
struct Mlp {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  std::vector<Eigen::Index> sizes;
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
  OutputActivation output = OutputActivation::Tanh;

  Eigen::Index inputSize() const { return sizes.front(); }
  Eigen::Index outputSize() const { return sizes.back(); }
  std::size_t layerCount() const { return weights.size(); }

  bool sameArchitecture(const Mlp& other) const {
    return sizes == other.sizes && output == other.output;
  }
};

using Mlpd = Mlp<double>;

/// Per-parameter partials plus the gradient w.r.t. the network input
/// (needed to chain critic gradients into the actor).
template <typename Scalar = double>
struct MlpGrads {
  std::vector<typename Mlp<Scalar>::Matrix> weights;
  std::vector<typename Mlp<Scalar>::Vector> biases;
  typename Mlp<Scalar>::Matrix input;  // in_dim x batch
};

using MlpGradsd = MlpGrads<double>;

/// Activations kept from a forward pass; layers[0] is the input batch.
template <typename Scalar = double>
struct ForwardTrace {
  std::vector<typename Mlp<Scalar>::Matrix> layers;

  const typename Mlp<Scalar>::Matrix& outputs() const { return layers.back(); }
};

template <typename Scalar>
Eigen::Index parameterCount(const Mlp<Scalar>& net) {
  Eigen::Index n = 0;
  for (std::size_t l = 0; l < net.weights.size(); ++l)
    n += net.weights[l].size() + net.biases[l].size();
  return n;
}

/// Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)], biases zero.
/// Fill order is fixed (layer by layer, row-major), so a seed pins every
/// parameter bit-exactly.
template <typename Scalar = double>
Mlp<Scalar> mlpInit(const std::vector<Eigen::Index>& sizes, OutputActivation output,
                    std::uint64_t seed) {
  if (sizes.size() < 2) throw std::invalid_argument("mlpInit: need at least two layer sizes");
  for (Eigen::Index s : sizes)
    if (s < 1) throw std::invalid_argument("mlpInit: layer sizes must be positive");

  using M = typename Mlp<Scalar>::Matrix;
  using V = typename Mlp<Scalar>::Vector;
  Mlp<Scalar> net;
  net.sizes = sizes;
  net.output = output;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const Eigen::Index fanIn = sizes[l];
    const Eigen::Index fanOut = sizes[l + 1];
    const Scalar bound = Scalar(1) / std::sqrt(Scalar(fanIn));
    M w(fanOut, fanIn);
    for (Eigen::Index r = 0; r < fanOut; ++r)
      for (Eigen::Index c = 0; c < fanIn; ++c)
        w(r, c) = Scalar(rng.uniform(-double(bound), double(bound)));
    net.weights.push_back(std::move(w));
    net.biases.push_back(V::Zero(fanOut));
  }
  return net;
}

template <typename Scalar>
ForwardTrace<Scalar> forwardTrace(const Mlp<Scalar>& net,
                                  const typename Mlp<Scalar>::Matrix& inputs) {
  if (inputs.rows() != net.inputSize())
    throw std::invalid_argument("forward: input has " + std::to_string(inputs.rows()) +
                                " rows, expected " + std::to_string(net.inputSize()));
  ForwardTrace<Scalar> trace;
  trace.layers.reserve(net.layerCount() + 1);
  trace.layers.push_back(inputs);
  for (std::size_t l = 0; l < net.layerCount(); ++l) {
    typename Mlp<Scalar>::Matrix z =
        (net.weights[l] * trace.layers.back()).colwise() + net.biases[l];
    if (l + 1 < net.layerCount())
      z = z.cwiseMax(Scalar(0));
    else if (net.output == OutputActivation::Tanh)
      z = z.array().tanh().matrix();
    trace.layers.push_back(std::move(z));
  }
  return trace;
}

template <typename Scalar>
typename Mlp<Scalar>::Matrix forward(const Mlp<Scalar>& net,
                                     const typename Mlp<Scalar>::Matrix& inputs) {
  return forwardTrace(net, inputs).outputs();
}

template <typename Scalar>
typename Mlp<Scalar>::Vector forward(const Mlp<Scalar>& net,
                                     const typename Mlp<Scalar>::Vector& input) {
  return forwardTrace(net, typename Mlp<Scalar>::Matrix(input)).outputs().col(0);
}

/// Exact reverse-mode gradients of sum_b upstream(:,b) . output(:,b).
/// ReLU uses the zero subgradient at kinks.
template <typename Scalar>
MlpGrads<Scalar> backward(const Mlp<Scalar>& net, const ForwardTrace<Scalar>& trace,
                          const typename Mlp<Scalar>::Matrix& upstream) {
  using Matrix = typename Mlp<Scalar>::Matrix;
  if (upstream.rows() != net.outputSize() || upstream.cols() != trace.outputs().cols())
    throw std::invalid_argument("backward: upstream gradient shape mismatch");

  const std::size_t L = net.layerCount();
  MlpGrads<Scalar> grads;
  grads.weights.resize(L);
  grads.biases.resize(L);

  Matrix delta;
  if (net.output == OutputActivation::Tanh) {
    const Matrix& a = trace.outputs();
    delta = upstream.cwiseProduct((Scalar(1) - a.array().square()).matrix());
  } else {
    delta = upstream;
  }
  for (std::size_t l = L; l-- > 0;) {
    grads.weights[l].noalias() = delta * trace.layers[l].transpose();
    grads.biases[l] = delta.rowwise().sum();
    Matrix back = net.weights[l].transpose() * delta;
    if (l > 0) {
      // ReLU mask: activation > 0 iff pre-activation > 0.
      delta = back.cwiseProduct(
          (trace.layers[l].array() > Scalar(0)).template cast<Scalar>().matrix());
    } else {
      grads.input = std::move(back);
    }
  }
  return grads;
}

template <typename Scalar>
MlpGrads<Scalar> backward(const Mlp<Scalar>& net, const typename Mlp<Scalar>::Vector& input,
                          const typename Mlp<Scalar>::Vector& upstream) {
  return backward(net, forwardTrace(net, typename Mlp<Scalar>::Matrix(input)),
                  typename Mlp<Scalar>::Matrix(upstream));
}

}  // namespace hb

#endif  // HB_MLP_HPP
