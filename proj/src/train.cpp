#include "hb/train.hpp"

#include <chrono>
#include <filesystem>

#include "hb/checkpoint.hpp"
#include "hb/errors.hpp"
#include "hb/her.hpp"

namespace hb {

namespace {

// Substream ids off the run seed; fixed so runs reproduce bit-exactly.
enum : std::uint64_t {
  kStreamEnvReset = 1,
  kStreamExplore = 2,
  kStreamRelabel = 3,
  kStreamEval = 4,
  kStreamAgentInit = 5,
  kStreamEnvNoise = 6,
  kStreamBatch = 7,
};

EnvOptions envOptionsFromConfig(const RunConfig& cfg, bool noiseOn, std::uint64_t noiseSeed) {
  EnvOptions opts;
  opts.maxEpisodeStepsOverride = cfg.maxEpisodeSteps;
  opts.liftSparseReward = cfg.liftReward == "sparse";
  if (noiseOn) {
    if (cfg.obsNoiseStd > 0) opts.noise.obsStd = Eigen::VectorXd::Constant(1, cfg.obsNoiseStd);
    opts.noise.actionStd = cfg.actionNoiseStd;
    opts.noise.seed = noiseSeed;
  }
  return opts;
}

PolicyFn greedyPolicy(const DdpgAgent& agent) {
  return [&agent](const Eigen::VectorXd& obs, const Eigen::VectorXd& goal) {
    Rng unused(0);
    return selectAction(agent, obs, goal, false, unused);
  };
}

}  // namespace

std::vector<Episode> collectEpisodes(GoalEnv& env, const PolicyFn& policy,
                                     std::uint64_t resetSeed) {
  const ResetOut start = env.reset(resetSeed);
  Eigen::VectorXd obs = start.observation;
  Eigen::VectorXd achieved = start.achievedGoal;
  Eigen::VectorXd goal = start.desiredGoal;

  std::vector<Episode> segments;
  Episode current;
  while (true) {
    const Eigen::VectorXd action = policy(obs, goal);
    const StepResult sr = env.step(action);
    current.steps.push_back(Transition{obs, action, sr.reward, sr.nextObservation, achieved,
                                       sr.achievedGoal, goal, sr.terminal});
    obs = sr.nextObservation;
    achieved = sr.achievedGoal;
    if (sr.terminal) break;
    if (env.desiredGoal() != goal) {
      // Subgoal advanced: close this constant-goal segment.
      segments.push_back(std::move(current));
      current = Episode{};
      goal = env.desiredGoal();
    }
  }
  segments.push_back(std::move(current));
  return segments;
}

EvalResult evaluatePolicy(const PolicyFn& policy, GoalEnv& env, int episodes, Rng& rng) {
  if (episodes < 1) throw std::invalid_argument("evaluatePolicy: episodes must be positive");
  EvalResult result;
  for (int e = 0; e < episodes; ++e) {
    const std::vector<Episode> segments = collectEpisodes(env, policy, rng.nextU64());
    double ret = 0.0;
    for (const Episode& seg : segments)
      for (const Transition& t : seg.steps) ret += t.reward;
    result.meanReturn += ret;
    if (segments.back().steps.back().terminal &&
        env.isSuccess(segments.back().steps.back().next_achieved_goal,
                      segments.back().steps.back().desired_goal))
      result.successRate += 1.0;
  }
  result.successRate /= double(episodes);
  result.meanReturn /= double(episodes);
  return result;
}

EvalResult evaluate(const std::string& checkpointPath, const std::string& envName, int episodes,
                    std::uint64_t seed) {
  auto env = makeEnv(envName);
  const Checkpoint ckpt = loadCheckpoint(checkpointPath);
  const DdpgAgent agent = agentFromCheckpoint(ckpt, env->spec().obsDim, env->spec().goalDim,
                                              env->spec().actionDim, DdpgConfig{});
  Rng rng = Rng(seed).child(kStreamEval);
  return evaluatePolicy(greedyPolicy(agent), *env, episodes, rng);
}

TrainResult runTraining(const RunConfig& cfg,
                        const std::function<void(const MetricsRow&)>& onEval) {
  validateConfig(cfg);
  std::error_code ec;
  std::filesystem::create_directories(cfg.outDir, ec);
  if (ec) throw IoError("cannot create output directory " + cfg.outDir + ": " + ec.message());

  const Rng master(cfg.seed);
  Rng envRng = master.child(kStreamEnvReset);
  Rng exploreRng = master.child(kStreamExplore);
  Rng relabelRng = master.child(kStreamRelabel);
  Rng evalRng = master.child(kStreamEval);
  Rng batchRng = master.child(kStreamBatch);

  auto env = makeEnv(cfg.env, envOptionsFromConfig(cfg, true, master.child(kStreamEnvNoise).nextU64()));
  auto evalEnv = makeEnv(cfg.env, envOptionsFromConfig(cfg, false, 0));

  DdpgConfig agentCfg;
  agentCfg.gamma = cfg.gamma;
  agentCfg.tau = cfg.tau;
  agentCfg.actorLr = cfg.actorLr;
  agentCfg.criticLr = cfg.criticLr;
  agentCfg.exploreNoiseStd = cfg.exploreNoiseStd;
  agentCfg.randomActionProb = cfg.randomActionProb;
  agentCfg.hidden = cfg.hiddenSizes;
  DdpgAgent agent = makeDdpgAgent(env->spec().obsDim, env->spec().goalDim, env->spec().actionDim,
                                  agentCfg, master.child(kStreamAgentInit).nextU64());
  if (!cfg.transferCheckpoint.empty())
    transferInit(agent, cfg.transferCheckpoint, cfg.transferActor, cfg.transferCritic);

  ReplayBuffer buffer(cfg.bufferCapacity);
  const GoalRewardFn rewardFn = [&env](const Eigen::VectorXd& a, const Eigen::VectorXd& g) {
    return env->computeReward(a, g);
  };
  const GoalSuccessFn successFn = [&env](const Eigen::VectorXd& a, const Eigen::VectorXd& g) {
    return env->isSuccess(a, g);
  };
  const PolicyFn explorePolicy = [&](const Eigen::VectorXd& obs, const Eigen::VectorXd& goal) {
    return selectAction(agent, obs, goal, true, exploreRng);
  };

  TrainResult result;
  result.checkpointPath = (std::filesystem::path(cfg.outDir) / "checkpoint.ckpt").string();
  result.metricsPath = (std::filesystem::path(cfg.outDir) / "metrics.csv").string();

  std::uint64_t envSteps = 0, episodesDone = 0, nextEval = cfg.evalInterval;
  double criticLossSum = 0, actorLossSum = 0;
  std::uint64_t lossCount = 0;
  const auto wallStart = std::chrono::steady_clock::now();

  try {
    while (envSteps < cfg.totalSteps) {
      for (int e = 0; e < cfg.episodesPerCycle; ++e) {
        const std::vector<Episode> segments =
            collectEpisodes(*env, explorePolicy, envRng.nextU64());
        for (const Episode& segment : segments) {
          envSteps += segment.steps.size();
          const std::vector<Transition> labeled =
              cfg.partialGoalRelabel
                  ? partialGoalRelabel(segment, cfg.her, rewardFn, successFn, 0, 2, relabelRng)
                  : herRelabel(segment, cfg.her, rewardFn, successFn, relabelRng);
          for (const Transition& t : labeled) buffer.push(t);
        }
        ++episodesDone;
      }
      if (buffer.size() >= static_cast<std::size_t>(cfg.batchSize)) {
        for (int u = 0; u < cfg.updatesPerCycle; ++u) {
          const UpdateStats stats =
              ddpgUpdate(agent, sampleBatch(buffer, std::size_t(cfg.batchSize), batchRng));
          criticLossSum += stats.criticLoss;
          actorLossSum += stats.actorLoss;
          ++lossCount;
        }
      }
      if (envSteps >= nextEval) {
        const EvalResult eval =
            evaluatePolicy(greedyPolicy(agent), *evalEnv, cfg.evalEpisodes, evalRng);
        MetricsRow row;
        row.envStep = envSteps;
        row.episodes = episodesDone;
        row.successRate = eval.successRate;
        row.meanReturn = eval.meanReturn;
        row.criticLoss = lossCount ? criticLossSum / double(lossCount) : 0.0;
        row.actorLoss = lossCount ? actorLossSum / double(lossCount) : 0.0;
        row.bufferSize = buffer.size();
        row.wallSeconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - wallStart).count();
        result.rows.push_back(row);
        if (onEval) onEval(row);
        criticLossSum = actorLossSum = 0;
        lossCount = 0;
        saveCheckpoint(toCheckpoint(agent), result.checkpointPath);
        while (nextEval <= envSteps) nextEval += cfg.evalInterval;
      }
    }
  } catch (const DivergenceError&) {
    writeMetrics(result.rows, result.metricsPath);
    throw;
  }

  saveCheckpoint(toCheckpoint(agent), result.checkpointPath);
  writeMetrics(result.rows, result.metricsPath);
  return result;
}

}  // namespace hb
