#ifndef HB_ENV_HPP
#define HB_ENV_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hb/rng.hpp"

namespace hb {

struct EnvSpec {
  std::string name;
  Eigen::Index obsDim = 0;
  Eigen::Index actionDim = 0;
  Eigen::Index goalDim = 0;
  int maxEpisodeSteps = 0;
  std::string successPredicate;
};

struct StepResult {
  Eigen::VectorXd nextObservation;
  Eigen::VectorXd achievedGoal;
  double reward = 0.0;
  bool success = false;
  bool terminal = false;
};

struct ResetOut {
  Eigen::VectorXd observation;
  Eigen::VectorXd achievedGoal;
  Eigen::VectorXd desiredGoal;
};

/// Domain-randomization noise. obsStd may be empty (noiseless), a single
/// value broadcast over the observation, or one stddev per component.
/// An all-zero spec leaves the environment exactly deterministic.
struct NoiseSpec {
  Eigen::VectorXd obsStd;
  double actionStd = 0.0;
  std::uint64_t seed = 0;
};

/// Adds independent zero-mean Gaussian noise per component.
Eigen::VectorXd applyNoise(const Eigen::VectorXd& v, const Eigen::VectorXd& stddevs, Rng& rng);

// Manipulation rewards. The sparse planar term is 0 within 2 cm and -1
// otherwise; the dense height term penalizes being below the goal twice as
// hard as being above it, and is 0 at equality.
double rewardXy(const Eigen::Vector2d& achievedXy, const Eigen::Vector2d& goalXy);
double rewardZ(double zCube, double zGoal);
double rewardLift(const Eigen::Vector3d& achieved, const Eigen::Vector3d& goal);

constexpr double kXyTolerance = 0.02;
constexpr double kLiftZTolerance = 0.01;
constexpr double kRotateTolerance = 0.1;

/// Deterministic, physics-free goal-conditioned environment. Episodes end
/// on success or on step-budget exhaustion; all randomness flows from the
/// reset seed and the NoiseSpec seed.
class GoalEnv {
 public:
  virtual ~GoalEnv() = default;

  const EnvSpec& spec() const { return spec_; }
  const Eigen::VectorXd& desiredGoal() const { return desiredGoal_; }

  /// Draws initial state and goal; resamples (up to 100 times) so the
  /// episode never starts already solved.
  ResetOut reset(std::uint64_t seed);

  StepResult step(const Eigen::VectorXd& action);

  virtual double computeReward(const Eigen::VectorXd& achieved,
                               const Eigen::VectorXd& desired) const = 0;
  virtual bool isSuccess(const Eigen::VectorXd& achieved,
                         const Eigen::VectorXd& desired) const = 0;

 protected:
  GoalEnv(EnvSpec spec, NoiseSpec noise);

  virtual void resetState(Rng& rng) = 0;
  virtual void drawGoal(Rng& rng) = 0;
  virtual Eigen::VectorXd observe() const = 0;
  virtual Eigen::VectorXd achieved() const = 0;
  virtual void applyAction(const Eigen::VectorXd& action) = 0;

  /// Serve the next intermediate goal, if any; returns false when the
  /// reached goal was the final one.
  virtual bool advanceGoal() { return false; }

  /// Episode-level "already solved at reset" check.
  virtual bool solvedAtReset() const { return isSuccess(achieved(), desiredGoal_); }

  EnvSpec spec_;
  NoiseSpec noise_;
  Eigen::VectorXd desiredGoal_;
  Rng noiseRng_{0};
  int stepCount_ = 0;
};

struct EnvOptions {
  NoiseSpec noise;
  int maxEpisodeStepsOverride = 0;  // 0 keeps the environment default
  bool liftSparseReward = false;    // lift only: drop the dense height term
};

/// reach2d, push2d, lift, rotate-z, rotate-full, rotate-decomposed.
std::unique_ptr<GoalEnv> makeEnv(const std::string& name, const EnvOptions& options = {});
const std::vector<std::string>& envNames();

}  // namespace hb

#endif  // HB_ENV_HPP
