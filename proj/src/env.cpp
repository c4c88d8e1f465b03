#include "hb/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hb/geometry.hpp"

namespace hb {

namespace {

constexpr double kStepScale = 0.05;
constexpr double kPushContact = 0.03;
constexpr double kZMax = 0.3;
constexpr double kZDecay = 0.05;
constexpr double kRotateScale = 0.1;
constexpr int kDefaultEpisodeSteps = 50;
// Worst decomposed plan is three near-pi elementary rotations at 0.1 rad
// per step, so the scripted optimum needs ~95 steps.
constexpr int kDecomposedEpisodeSteps = 120;

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

Eigen::VectorXd clipBox(Eigen::VectorXd v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::clamp(v[i], -1.0, 1.0);
  return v;
}

UnitQuaterniond randomRotation(Rng& rng) {
  // Shoemake's method: uniform over SO(3).
  const double u1 = rng.uniform01();
  const double u2 = rng.uniform01();
  const double u3 = rng.uniform01();
  const double a = std::sqrt(1.0 - u1), b = std::sqrt(u1);
  return UnitQuaterniond(b * std::cos(2 * M_PI * u3), a * std::sin(2 * M_PI * u2),
                         a * std::cos(2 * M_PI * u2), b * std::sin(2 * M_PI * u3));
}

Eigen::Vector4d wxyz(const UnitQuaterniond& q) { return q.wxyz(); }

UnitQuaterniond quatFromVec(const Eigen::VectorXd& v) {
  return UnitQuaterniond(v[0], v[1], v[2], v[3]);
}

}  // namespace

Eigen::VectorXd applyNoise(const Eigen::VectorXd& v, const Eigen::VectorXd& stddevs, Rng& rng) {
  if (stddevs.size() != 0 && stddevs.size() != 1 && stddevs.size() != v.size())
    throw std::invalid_argument("applyNoise: stddev vector size mismatch");
  if (stddevs.size() == 0 || stddevs.isZero(0.0)) return v;
  Eigen::VectorXd out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double s = stddevs.size() == 1 ? stddevs[0] : stddevs[i];
    out[i] += rng.normal(0.0, s);
  }
  return out;
}

double rewardXy(const Eigen::Vector2d& achievedXy, const Eigen::Vector2d& goalXy) {
  return (achievedXy - goalXy).norm() <= kXyTolerance ? 0.0 : -1.0;
}

double rewardZ(double zCube, double zGoal) {
  if (zCube < zGoal) return -20.0 * std::abs(zCube - zGoal);
  if (zCube > zGoal) return -10.0 * std::abs(zCube - zGoal);
  return 0.0;
}

double rewardLift(const Eigen::Vector3d& achieved, const Eigen::Vector3d& goal) {
  return rewardXy(achieved.head<2>(), goal.head<2>()) + rewardZ(achieved[2], goal[2]);
}

GoalEnv::GoalEnv(EnvSpec spec, NoiseSpec noise) : spec_(std::move(spec)), noise_(std::move(noise)) {
  if (noise_.obsStd.size() > 1 && noise_.obsStd.size() != spec_.obsDim)
    throw std::invalid_argument(spec_.name + ": obs noise stddev size mismatch");
  for (Eigen::Index i = 0; i < noise_.obsStd.size(); ++i)
    if (noise_.obsStd[i] < 0) throw std::invalid_argument("negative obs noise stddev");
  if (noise_.actionStd < 0) throw std::invalid_argument("negative action noise stddev");
}

ResetOut GoalEnv::reset(std::uint64_t seed) {
  Rng rng(seed);
  // Per-episode noise stream: replaying a reset seed replays the noise too.
  noiseRng_ = Rng(noise_.seed).child(seed);
  bool placed = false;
  for (int attempt = 0; attempt < 100; ++attempt) {
    resetState(rng);
    drawGoal(rng);
    if (!solvedAtReset()) {
      placed = true;
      break;
    }
  }
  if (!placed)
    throw std::runtime_error(spec_.name +
                             ": could not draw an unsolved start after 100 attempts");
  stepCount_ = 0;
  return ResetOut{applyNoise(observe(), noise_.obsStd, noiseRng_), achieved(), desiredGoal_};
}

StepResult GoalEnv::step(const Eigen::VectorXd& action) {
  if (action.size() != spec_.actionDim)
    throw std::invalid_argument(spec_.name + ": action dimension mismatch");
  Eigen::VectorXd a = clipBox(action);
  if (noise_.actionStd > 0) {
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] += noiseRng_.normal(0.0, noise_.actionStd);
    a = clipBox(std::move(a));
  }
  applyAction(a);
  ++stepCount_;

  StepResult r;
  r.achievedGoal = achieved();
  r.reward = computeReward(r.achievedGoal, desiredGoal_);
  bool reached = isSuccess(r.achievedGoal, desiredGoal_);
  if (reached && advanceGoal()) reached = false;  // intermediate goal: keep going
  r.success = reached;
  r.terminal = r.success || stepCount_ >= spec_.maxEpisodeSteps;
  r.nextObservation = applyNoise(observe(), noise_.obsStd, noiseRng_);
  return r;
}

namespace {

class Reach2dEnv final : public GoalEnv {
 public:
  explicit Reach2dEnv(const EnvOptions& opts)
      : GoalEnv({"reach2d", 2, 2, 2,
                 opts.maxEpisodeStepsOverride > 0 ? opts.maxEpisodeStepsOverride
                                                  : kDefaultEpisodeSteps,
                 "planar distance to goal <= 2 cm"},
                opts.noise) {}

  double computeReward(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    return rewardXy(a.head<2>(), g.head<2>());
  }
  bool isSuccess(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    return computeReward(a, g) == 0.0;
  }

 protected:
  void resetState(Rng& rng) override { agent_ = {rng.uniform01(), rng.uniform01()}; }
  void drawGoal(Rng& rng) override {
    desiredGoal_ = Eigen::Vector2d(rng.uniform01(), rng.uniform01());
  }
  Eigen::VectorXd observe() const override { return agent_; }
  Eigen::VectorXd achieved() const override { return agent_; }
  void applyAction(const Eigen::VectorXd& a) override {
    agent_[0] = clip01(agent_[0] + kStepScale * a[0]);
    agent_[1] = clip01(agent_[1] + kStepScale * a[1]);
  }

 private:
  Eigen::Vector2d agent_{0.5, 0.5};
};

class Push2dEnv final : public GoalEnv {
 public:
  explicit Push2dEnv(const EnvOptions& opts)
      : GoalEnv({"push2d", 4, 2, 2,
                 opts.maxEpisodeStepsOverride > 0 ? opts.maxEpisodeStepsOverride
                                                  : kDefaultEpisodeSteps,
                 "block planar distance to goal <= 2 cm"},
                opts.noise) {}

  double computeReward(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    return rewardXy(a.head<2>(), g.head<2>());
  }
  bool isSuccess(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    return computeReward(a, g) == 0.0;
  }

 protected:
  void resetState(Rng& rng) override {
    agent_ = {rng.uniform01(), rng.uniform01()};
    block_ = {rng.uniform01(), rng.uniform01()};
    lastMove_.setZero();
  }
  void drawGoal(Rng& rng) override {
    desiredGoal_ = Eigen::Vector2d(rng.uniform01(), rng.uniform01());
  }
  bool solvedAtReset() const override {
    // Also reject starts with the pusher already inside the contact radius.
    return isSuccess(achieved(), desiredGoal_) || (block_ - agent_).norm() < kPushContact;
  }
  Eigen::VectorXd observe() const override {
    Eigen::VectorXd obs(4);
    obs << agent_, block_;
    return obs;
  }
  Eigen::VectorXd achieved() const override { return block_; }
  void applyAction(const Eigen::VectorXd& a) override {
    const Eigen::Vector2d before = agent_;
    agent_[0] = clip01(agent_[0] + kStepScale * a[0]);
    agent_[1] = clip01(agent_[1] + kStepScale * a[1]);
    if ((agent_ - before).norm() > 0) lastMove_ = agent_ - before;

    const Eigen::Vector2d toBlock = block_ - agent_;
    const double dist = toBlock.norm();
    if (dist >= kPushContact) return;
    // Quasi-static push: expel the block to exactly the contact radius.
    Eigen::Vector2d dir;
    if (dist > 1e-12) {
      dir = toBlock / dist;
    } else if (lastMove_.norm() > 1e-12) {
      dir = lastMove_.normalized();  // pusher landed exactly on the block
    } else {
      return;
    }
    block_ = agent_ + kPushContact * dir;
    block_[0] = clip01(block_[0]);
    block_[1] = clip01(block_[1]);
  }

 private:
  Eigen::Vector2d agent_{0.0, 0.0};
  Eigen::Vector2d block_{0.5, 0.5};
  Eigen::Vector2d lastMove_{0.0, 0.0};
};

class LiftEnv final : public GoalEnv {
 public:
  explicit LiftEnv(const EnvOptions& opts)
      : GoalEnv({"lift", 3, 4, 3,
                 opts.maxEpisodeStepsOverride > 0 ? opts.maxEpisodeStepsOverride
                                                  : kDefaultEpisodeSteps,
                 "planar distance <= 2 cm and height within 1 cm"},
                opts.noise),
        sparseOnly_(opts.liftSparseReward) {}

  double computeReward(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    if (sparseOnly_) return rewardXy(a.head<2>(), g.head<2>());
    return rewardLift(a.head<3>(), g.head<3>());
  }
  bool isSuccess(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    return rewardXy(a.head<2>(), g.head<2>()) == 0.0 &&
           std::abs(a[2] - g[2]) <= kLiftZTolerance;
  }

 protected:
  void resetState(Rng& rng) override {
    cube_ = {rng.uniform01(), rng.uniform01(), 0.0};  // cube starts on the surface
  }
  void drawGoal(Rng& rng) override {
    desiredGoal_ =
        Eigen::Vector3d(rng.uniform01(), rng.uniform01(), rng.uniform(0.0, kZMax));
  }
  Eigen::VectorXd observe() const override { return cube_; }
  Eigen::VectorXd achieved() const override { return cube_; }
  void applyAction(const Eigen::VectorXd& a) override {
    cube_[0] = clip01(cube_[0] + kStepScale * a[0]);
    cube_[1] = clip01(cube_[1] + kStepScale * a[1]);
    if (a[3] > 0) {
      cube_[2] = std::clamp(cube_[2] + kStepScale * a[2], 0.0, kZMax);
    } else {
      cube_[2] = std::max(0.0, cube_[2] - kZDecay);  // released: settles back down
    }
  }

 private:
  Eigen::Vector3d cube_{0.5, 0.5, 0.0};
  bool sparseOnly_;
};

class RotateEnv final : public GoalEnv {
 public:
  enum class Mode { Z, Full, Decomposed };

  RotateEnv(Mode mode, const EnvOptions& opts)
      : GoalEnv({mode == Mode::Z       ? "rotate-z"
                 : mode == Mode::Full  ? "rotate-full"
                                       : "rotate-decomposed",
                 4, 3, 4,
                 opts.maxEpisodeStepsOverride > 0 ? opts.maxEpisodeStepsOverride
                 : mode == Mode::Decomposed       ? kDecomposedEpisodeSteps
                                                  : kDefaultEpisodeSteps,
                 "geodesic angle to goal <= 0.1 rad"},
                opts.noise),
        mode_(mode) {}

  double computeReward(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    return geodesicAngle(quatFromVec(a), quatFromVec(g)) <= kRotateTolerance ? 0.0 : -1.0;
  }
  bool isSuccess(const Eigen::VectorXd& a, const Eigen::VectorXd& g) const override {
    return computeReward(a, g) == 0.0;
  }

 protected:
  void resetState(Rng& rng) override {
    // z mode stays on the z-rotation circle (the "flat object" manifold);
    // the other modes start anywhere on SO(3).
    orientation_ = mode_ == Mode::Z
                       ? UnitQuaterniond::fromAxisAngle({0, 0, 1}, rng.uniform(-M_PI, M_PI))
                       : randomRotation(rng);
  }
  void drawGoal(Rng& rng) override {
    switch (mode_) {
      case Mode::Z:
        target_ = UnitQuaterniond::fromAxisAngle({0, 0, 1}, rng.uniform(-M_PI, M_PI));
        desiredGoal_ = wxyz(target_);
        break;
      case Mode::Full:
        target_ = randomRotation(rng);
        desiredGoal_ = wxyz(target_);
        break;
      case Mode::Decomposed: {
        target_ = randomRotation(rng);
        plan_ = planSubgoals(orientation_, target_, EulerConvention::ZXZ);
        subgoalIndex_ = 0;
        desiredGoal_ = wxyz(plan_.empty() ? target_ : plan_.subgoals.front());
        break;
      }
    }
  }
  bool solvedAtReset() const override {
    return geodesicAngle(orientation_, target_) <= kRotateTolerance;
  }
  bool advanceGoal() override {
    if (mode_ != Mode::Decomposed || subgoalIndex_ + 1 >= plan_.size()) return false;
    ++subgoalIndex_;
    desiredGoal_ = wxyz(plan_.subgoals[subgoalIndex_]);
    return true;
  }
  Eigen::VectorXd observe() const override { return wxyz(orientation_); }
  Eigen::VectorXd achieved() const override { return wxyz(orientation_); }
  void applyAction(const Eigen::VectorXd& a) override {
    Eigen::Vector3d increment = kRotateScale * a.head<3>();
    // z mode: the object stays flat, so tilt components are inert (the
    // analog of a block resting on the palm). Other modes are free.
    if (mode_ == Mode::Z) increment.head<2>().setZero();
    orientation_ = UnitQuaterniond::fromRotationVector(increment) * orientation_;
  }

 private:
  Mode mode_;
  UnitQuaterniond orientation_;
  UnitQuaterniond target_;
  SubgoalPland plan_;
  std::size_t subgoalIndex_ = 0;
};

}  // namespace

std::unique_ptr<GoalEnv> makeEnv(const std::string& name, const EnvOptions& options) {
  if (name == "reach2d") return std::make_unique<Reach2dEnv>(options);
  if (name == "push2d") return std::make_unique<Push2dEnv>(options);
  if (name == "lift") return std::make_unique<LiftEnv>(options);
  if (name == "rotate-z") return std::make_unique<RotateEnv>(RotateEnv::Mode::Z, options);
  if (name == "rotate-full") return std::make_unique<RotateEnv>(RotateEnv::Mode::Full, options);
  if (name == "rotate-decomposed")
    return std::make_unique<RotateEnv>(RotateEnv::Mode::Decomposed, options);
  throw std::invalid_argument("unknown environment: " + name);
}

const std::vector<std::string>& envNames() {
  static const std::vector<std::string> names = {"reach2d",  "push2d",      "lift",
                                                 "rotate-z", "rotate-full", "rotate-decomposed"};
  return names;
}

}  // namespace hb
