#ifndef HB_TRAIN_HPP
#define HB_TRAIN_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hb/config.hpp"
#include "hb/ddpg.hpp"
#include "hb/env.hpp"
#include "hb/metrics.hpp"
#include "hb/replay.hpp"

namespace hb {

using PolicyFn =
    std::function<Eigen::VectorXd(const Eigen::VectorXd& obs, const Eigen::VectorXd& goal)>;

struct EvalResult {
  double successRate = 0.0;
  double meanReturn = 0.0;
};

struct TrainResult {
  std::string checkpointPath;
  std::string metricsPath;
  std::vector<MetricsRow> rows;
};

/// Runs one environment episode and splits it into constant-goal segments
/// (rotate-decomposed serves a new subgoal after each one; other
/// environments yield exactly one segment).
std::vector<Episode> collectEpisodes(GoalEnv& env, const PolicyFn& policy,
                                     std::uint64_t resetSeed);

/// Greedy rollout evaluation on an already-constructed environment. An
/// episode counts as a success when it terminates with the success flag set.
EvalResult evaluatePolicy(const PolicyFn& policy, GoalEnv& env, int episodes, Rng& rng);

/// Loads a checkpoint and evaluates it greedily, noise off.
EvalResult evaluate(const std::string& checkpointPath, const std::string& envName, int episodes,
                    std::uint64_t seed);

/// Full collect -> relabel -> store -> update loop. Writes metrics.csv and
/// checkpoint.ckpt under config.outDir; deterministic given (config, seed)
/// except the wall_seconds metrics column. On divergence the metrics
/// gathered so far are flushed before the error propagates. `onEval`, when
/// set, is called after each evaluation row.
TrainResult runTraining(const RunConfig& config,
                        const std::function<void(const MetricsRow&)>& onEval = {});

}  // namespace hb

#endif  // HB_TRAIN_HPP
