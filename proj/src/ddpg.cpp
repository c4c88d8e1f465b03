#include "hb/ddpg.hpp"

#include <cmath>
#include <stdexcept>

#include "hb/errors.hpp"

namespace hb {

namespace {

std::vector<Eigen::Index> layerSizes(Eigen::Index in, const std::vector<Eigen::Index>& hidden,
                                     Eigen::Index out) {
  std::vector<Eigen::Index> sizes;
  sizes.push_back(in);
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out);
  return sizes;
}

struct BatchViews {
  Eigen::MatrixXd obsGoal;      // (obs+goal) x B
  Eigen::MatrixXd nextObsGoal;  // (obs+goal) x B
  Eigen::MatrixXd actions;      // action x B
  Eigen::VectorXd rewards;      // B
  Eigen::VectorXd bootstrapMask;  // B, 0 where terminal
};

BatchViews stack(const DdpgAgent& agent, const std::vector<Transition>& batch) {
  const Eigen::Index B = static_cast<Eigen::Index>(batch.size());
  BatchViews v;
  v.obsGoal.resize(agent.obsDim + agent.goalDim, B);
  v.nextObsGoal.resize(agent.obsDim + agent.goalDim, B);
  v.actions.resize(agent.actionDim, B);
  v.rewards.resize(B);
  v.bootstrapMask.resize(B);
  for (Eigen::Index i = 0; i < B; ++i) {
    const Transition& t = batch[i];
    if (t.observation.size() != agent.obsDim || t.desired_goal.size() != agent.goalDim ||
        t.action.size() != agent.actionDim)
      throw std::invalid_argument("ddpg: transition dimensions do not match agent");
    v.obsGoal.col(i) << t.observation, t.desired_goal;
    v.nextObsGoal.col(i) << t.next_observation, t.desired_goal;
    v.actions.col(i) = t.action;
    v.rewards[i] = t.reward;
    v.bootstrapMask[i] = t.terminal ? 0.0 : 1.0;
  }
  return v;
}

Eigen::MatrixXd vstack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

DdpgAgent makeDdpgAgent(Eigen::Index obsDim, Eigen::Index goalDim, Eigen::Index actionDim,
                        const DdpgConfig& config, std::uint64_t seed) {
  if (obsDim < 1 || goalDim < 1 || actionDim < 1)
    throw std::invalid_argument("makeDdpgAgent: dimensions must be positive");
  DdpgAgent agent;
  agent.obsDim = obsDim;
  agent.goalDim = goalDim;
  agent.actionDim = actionDim;
  agent.config = config;

  Rng seeds(seed);
  agent.actor = mlpInit<double>(layerSizes(obsDim + goalDim, config.hidden, actionDim),
                                OutputActivation::Tanh, seeds.nextU64());
  agent.critic = mlpInit<double>(layerSizes(obsDim + goalDim + actionDim, config.hidden, 1),
                                 OutputActivation::Linear, seeds.nextU64());
  agent.targetActor = agent.actor;
  agent.targetCritic = agent.critic;
  agent.actorOpt = makeAdamState(agent.actor, config.actorLr);
  agent.criticOpt = makeAdamState(agent.critic, config.criticLr);
  return agent;
}

Eigen::VectorXd selectAction(const DdpgAgent& agent, const Eigen::VectorXd& observation,
                             const Eigen::VectorXd& desiredGoal, bool explore, Rng& rng) {
  if (observation.size() != agent.obsDim || desiredGoal.size() != agent.goalDim)
    throw std::invalid_argument("selectAction: dimension mismatch");
  Eigen::VectorXd input(agent.obsDim + agent.goalDim);
  input << observation, desiredGoal;
  if (!explore) return forward(agent.actor, input);

  Eigen::VectorXd action(agent.actionDim);
  if (rng.uniform01() < agent.config.randomActionProb) {
    for (Eigen::Index i = 0; i < action.size(); ++i) action[i] = rng.uniform(-1.0, 1.0);
    return action;
  }
  action = forward(agent.actor, input);
  for (Eigen::Index i = 0; i < action.size(); ++i)
    action[i] = std::clamp(action[i] + rng.normal(0.0, agent.config.exploreNoiseStd), -1.0, 1.0);
  return action;
}

Eigen::VectorXd criticTargets(const DdpgAgent& agent, const std::vector<Transition>& batch) {
  if (batch.empty()) throw std::invalid_argument("criticTargets: empty batch");
  const BatchViews v = stack(agent, batch);
  const Eigen::MatrixXd nextActions = forward(agent.targetActor, v.nextObsGoal);
  const Eigen::MatrixXd nextQ = forward(agent.targetCritic, vstack(v.nextObsGoal, nextActions));
  return v.rewards.array() +
         agent.config.gamma * v.bootstrapMask.array() * nextQ.row(0).transpose().array();
}

UpdateStats ddpgUpdate(DdpgAgent& agent, const std::vector<Transition>& batch) {
  if (batch.empty()) throw std::invalid_argument("ddpgUpdate: empty batch");
  const Eigen::Index B = static_cast<Eigen::Index>(batch.size());
  const BatchViews v = stack(agent, batch);
  const Eigen::VectorXd y = criticTargets(agent, batch);

  UpdateStats stats;

  // Critic regression toward the bootstrapped targets.
  const auto criticTrace = forwardTrace(agent.critic, vstack(v.obsGoal, v.actions));
  const Eigen::VectorXd q = criticTrace.outputs().row(0).transpose();
  const Eigen::VectorXd residual = q - y;
  stats.criticLoss = residual.squaredNorm() / double(B);
  if (!std::isfinite(stats.criticLoss))
    throw DivergenceError("ddpgUpdate: non-finite critic loss");
  Eigen::MatrixXd upstream = (2.0 / double(B)) * residual.transpose();
  adamStep(agent.critic, backward(agent.critic, criticTrace, upstream), agent.criticOpt);

  // Actor ascent on the freshly updated critic; critic parameters are not
  // touched here, only differentiated through.
  const auto actorTrace = forwardTrace(agent.actor, v.obsGoal);
  const auto qTrace = forwardTrace(agent.critic, vstack(v.obsGoal, actorTrace.outputs()));
  stats.actorLoss = -qTrace.outputs().row(0).mean();
  if (!std::isfinite(stats.actorLoss))
    throw DivergenceError("ddpgUpdate: non-finite actor loss");
  Eigen::MatrixXd qUpstream = Eigen::MatrixXd::Constant(1, B, -1.0 / double(B));
  const auto chain = backward(agent.critic, qTrace, qUpstream);
  const Eigen::MatrixXd actorUpstream = chain.input.bottomRows(agent.actionDim);
  adamStep(agent.actor, backward(agent.actor, actorTrace, actorUpstream), agent.actorOpt);

  polyakUpdate(agent.targetCritic, agent.critic, agent.config.tau);
  polyakUpdate(agent.targetActor, agent.actor, agent.config.tau);
  return stats;
}

void transferInit(DdpgAgent& agent, const std::string& checkpointPath, bool loadActor,
                  bool loadCritic) {
  if (!loadActor && !loadCritic) return;
  const Checkpoint ckpt = loadCheckpoint(checkpointPath);
  if (loadActor) {
    if (!ckpt.actor.sameArchitecture(agent.actor) ||
        !ckpt.target_actor.sameArchitecture(agent.targetActor))
      throw ConfigError("transferInit: actor architecture mismatch in " + checkpointPath);
    agent.actor = ckpt.actor;
    agent.targetActor = ckpt.target_actor;
    agent.actorOpt = makeAdamState(agent.actor, agent.config.actorLr);
  }
  if (loadCritic) {
    if (!ckpt.critic.sameArchitecture(agent.critic) ||
        !ckpt.target_critic.sameArchitecture(agent.targetCritic))
      throw ConfigError("transferInit: critic architecture mismatch in " + checkpointPath);
    agent.critic = ckpt.critic;
    agent.targetCritic = ckpt.target_critic;
    agent.criticOpt = makeAdamState(agent.critic, agent.config.criticLr);
  }
}

Checkpoint toCheckpoint(const DdpgAgent& agent) {
  return Checkpoint{agent.actor, agent.critic, agent.targetActor, agent.targetCritic};
}

DdpgAgent agentFromCheckpoint(const Checkpoint& ckpt, Eigen::Index obsDim, Eigen::Index goalDim,
                              Eigen::Index actionDim, const DdpgConfig& config) {
  if (ckpt.actor.inputSize() != obsDim + goalDim || ckpt.actor.outputSize() != actionDim ||
      ckpt.critic.inputSize() != obsDim + goalDim + actionDim || ckpt.critic.outputSize() != 1)
    throw ConfigError("checkpoint architecture does not match environment dimensions");
  DdpgAgent agent;
  agent.obsDim = obsDim;
  agent.goalDim = goalDim;
  agent.actionDim = actionDim;
  agent.config = config;
  agent.actor = ckpt.actor;
  agent.critic = ckpt.critic;
  agent.targetActor = ckpt.target_actor;
  agent.targetCritic = ckpt.target_critic;
  agent.actorOpt = makeAdamState(agent.actor, config.actorLr);
  agent.criticOpt = makeAdamState(agent.critic, config.criticLr);
  return agent;
}

}  // namespace hb
