#ifndef HB_OPTIM_HPP
#define HB_OPTIM_HPP

#include <cmath>
#include <stdexcept>

#include "hb/errors.hpp"
#include "hb/mlp.hpp"

namespace hb {

/// Adam moments shaped like the owning net's parameters.
template <typename Scalar = double>
struct AdamState {
  std::vector<typename Mlp<Scalar>::Matrix> mWeights, vWeights;
  std::vector<typename Mlp<Scalar>::Vector> mBiases, vBiases;
  long step = 0;
  Scalar learningRate = Scalar(1e-3);
  Scalar beta1 = Scalar(0.9);
  Scalar beta2 = Scalar(0.999);
  Scalar epsilon = Scalar(1e-8);
};

using AdamStated = AdamState<double>;

template <typename Scalar>
AdamState<Scalar> makeAdamState(const Mlp<Scalar>& net, Scalar learningRate) {
  using M = typename Mlp<Scalar>::Matrix;
  using V = typename Mlp<Scalar>::Vector;
  AdamState<Scalar> st;
  st.learningRate = learningRate;
  for (std::size_t l = 0; l < net.layerCount(); ++l) {
    st.mWeights.push_back(M::Zero(net.weights[l].rows(), net.weights[l].cols()));
    st.vWeights.push_back(M::Zero(net.weights[l].rows(), net.weights[l].cols()));
    st.mBiases.push_back(V::Zero(net.biases[l].size()));
    st.vBiases.push_back(V::Zero(net.biases[l].size()));
  }
  return st;
}

namespace detail {

template <typename Scalar, typename T>
void adamUpdateBlock(T& p, const T& g, T& m, T& v, const AdamState<Scalar>& st) {
  m = st.beta1 * m + (Scalar(1) - st.beta1) * g;
  v = st.beta2 * v + (Scalar(1) - st.beta2) * g.cwiseProduct(g);
  const Scalar c1 = Scalar(1) - std::pow(st.beta1, Scalar(st.step));
  const Scalar c2 = Scalar(1) - std::pow(st.beta2, Scalar(st.step));
  p.array() -= st.learningRate * (m.array() / c1) / ((v.array() / c2).sqrt() + st.epsilon);
}

}  // namespace detail

/// One bias-corrected Adam step, in place. Rejects non-finite gradients.
template <typename Scalar>
void adamStep(Mlp<Scalar>& net, const MlpGrads<Scalar>& grads, AdamState<Scalar>& st) {
  if (grads.weights.size() != net.layerCount())
    throw std::invalid_argument("adamStep: gradient/parameter layer mismatch");
  for (std::size_t l = 0; l < net.layerCount(); ++l) {
    if (grads.weights[l].rows() != net.weights[l].rows() ||
        grads.weights[l].cols() != net.weights[l].cols() ||
        grads.biases[l].size() != net.biases[l].size())
      throw std::invalid_argument("adamStep: gradient shape mismatch");
    if (!grads.weights[l].allFinite() || !grads.biases[l].allFinite())
      throw DivergenceError("adamStep: non-finite gradient");
  }
  ++st.step;
  for (std::size_t l = 0; l < net.layerCount(); ++l) {
    detail::adamUpdateBlock(net.weights[l], grads.weights[l], st.mWeights[l], st.vWeights[l], st);
    detail::adamUpdateBlock(net.biases[l], grads.biases[l], st.mBiases[l], st.vBiases[l], st);
  }
}

/// target <- (1 - tau) * target + tau * online, elementwise.
template <typename Scalar>
void polyakUpdate(Mlp<Scalar>& target, const Mlp<Scalar>& online, Scalar tau) {
  if (!target.sameArchitecture(online))
    throw std::invalid_argument("polyakUpdate: architecture mismatch");
  for (std::size_t l = 0; l < target.layerCount(); ++l) {
    target.weights[l] = (Scalar(1) - tau) * target.weights[l] + tau * online.weights[l];
    target.biases[l] = (Scalar(1) - tau) * target.biases[l] + tau * online.biases[l];
  }
}

}  // namespace hb

#endif  // HB_OPTIM_HPP
