#ifndef HB_DDPG_HPP
#define HB_DDPG_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "hb/checkpoint.hpp"
#include "hb/mlp.hpp"
#include "hb/optim.hpp"
#include "hb/replay.hpp"
#include "hb/rng.hpp"

namespace hb {

struct DdpgConfig {
  double gamma = 0.98;
  double tau = 0.05;
  double actorLr = 1e-3;
  double criticLr = 1e-3;
  double exploreNoiseStd = 0.1;
  double randomActionProb = 0.2;
  std::vector<Eigen::Index> hidden = {64, 64};
};

/// Goal-conditioned DDPG: tanh actor on (obs, goal), linear critic on
/// (obs, goal, action), plus Polyak-tracked target copies of both.
struct DdpgAgent {
  Eigen::Index obsDim = 0;
  Eigen::Index goalDim = 0;
  Eigen::Index actionDim = 0;
  DdpgConfig config;
  Mlpd actor, critic, targetActor, targetCritic;
  AdamStated actorOpt, criticOpt;
};

DdpgAgent makeDdpgAgent(Eigen::Index obsDim, Eigen::Index goalDim, Eigen::Index actionDim,
                        const DdpgConfig& config, std::uint64_t seed);

/// Greedy actor output; with `explore`, an epsilon-uniform action or the
/// actor output plus Gaussian noise, clipped to [-1, 1].
Eigen::VectorXd selectAction(const DdpgAgent& agent, const Eigen::VectorXd& observation,
                             const Eigen::VectorXd& desiredGoal, bool explore, Rng& rng);

/// y_i = r_i + gamma * (1 - terminal_i) * Q_target(s'_i, g_i, pi_target(s'_i, g_i)).
Eigen::VectorXd criticTargets(const DdpgAgent& agent, const std::vector<Transition>& batch);

struct UpdateStats {
  double criticLoss = 0.0;
  double actorLoss = 0.0;
};

/// One critic step (MSE to bootstrapped targets), one actor step (ascent on
/// the critic), then Polyak updates of both targets. Losses are the
/// pre-update values; non-finite losses raise DivergenceError.
UpdateStats ddpgUpdate(DdpgAgent& agent, const std::vector<Transition>& batch);

/// Overwrites the chosen networks (and their targets) from a checkpoint and
/// resets their optimizer state. Architecture must match exactly.
void transferInit(DdpgAgent& agent, const std::string& checkpointPath, bool loadActor,
                  bool loadCritic);

Checkpoint toCheckpoint(const DdpgAgent& agent);

/// Rebuilds an agent around checkpoint weights; dims must be consistent.
DdpgAgent agentFromCheckpoint(const Checkpoint& ckpt, Eigen::Index obsDim, Eigen::Index goalDim,
                              Eigen::Index actionDim, const DdpgConfig& config);

}  // namespace hb

#endif  // HB_DDPG_HPP
