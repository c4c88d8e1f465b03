#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "hb/checkpoint.hpp"
#include "hb/ddpg.hpp"
#include "hb/errors.hpp"

using Eigen::VectorXd;
using hb::DdpgAgent;
using hb::DdpgConfig;
using hb::Rng;
using hb::Transition;

namespace {

Transition makeTransition(double s, double g, double a, double r, double s2, bool terminal) {
  Transition t;
  t.observation = VectorXd::Constant(1, s);
  t.desired_goal = VectorXd::Constant(1, g);
  t.action = VectorXd::Constant(1, a);
  t.reward = r;
  t.next_observation = VectorXd::Constant(1, s2);
  t.achieved_goal = t.observation;
  t.next_achieved_goal = t.next_observation;
  t.terminal = terminal;
  return t;
}

// 1-unit agent: actor tanh([ws wg] . [s g] + b), critic linear.
DdpgAgent tinyAgent(double gamma) {
  DdpgConfig cfg;
  cfg.gamma = gamma;
  cfg.hidden = {};
  return makeDdpgAgent(1, 1, 1, cfg, 99);
}

std::string tempPath(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("selectAction: determinism, bounds, reproducible exploration") {
  DdpgAgent agent = makeDdpgAgent(3, 2, 2, DdpgConfig{}, 5);
  const VectorXd obs = VectorXd::Constant(3, 0.4);
  const VectorXd goal = VectorXd::Constant(2, 0.6);

  Rng unused(0);
  const VectorXd a1 = selectAction(agent, obs, goal, false, unused);
  const VectorXd a2 = selectAction(agent, obs, goal, false, unused);
  CHECK(a1 == a2);
  CHECK(a1.cwiseAbs().maxCoeff() < 1.0);

  Rng e1(42), e2(42);
  for (int i = 0; i < 50; ++i) {
    const VectorXd x1 = selectAction(agent, obs, goal, true, e1);
    const VectorXd x2 = selectAction(agent, obs, goal, true, e2);
    CHECK(x1 == x2);
    CHECK(x1.cwiseAbs().maxCoeff() <= 1.0);
  }

  CHECK_THROWS_AS(selectAction(agent, VectorXd::Zero(5), goal, false, unused),
                  std::invalid_argument);
}

TEST_CASE("criticTargets: terminal and gamma-zero short-circuits, hand evaluation") {
  DdpgAgent agent = tinyAgent(0.9);
  const auto termBatch = std::vector<Transition>{makeTransition(0.1, 0.2, 0.3, -1.5, 0.4, true)};
  CHECK(criticTargets(agent, termBatch)[0] == -1.5);

  DdpgAgent g0 = tinyAgent(0.0);
  const auto batch = std::vector<Transition>{makeTransition(0.1, 0.2, 0.3, -0.7, 0.4, false)};
  CHECK(criticTargets(g0, batch)[0] == -0.7);

  // Hand evaluation through the two 1-unit target networks.
  DdpgAgent agent2 = tinyAgent(0.9);
  agent2.targetActor.weights[0] << 0.5, -0.25;
  agent2.targetActor.biases[0] << 0.1;
  agent2.targetCritic.weights[0] << 0.3, 0.2, -0.4;
  agent2.targetCritic.biases[0] << 0.05;
  const double s2 = 0.4, g = 0.2, r = -0.7;
  const double aNext = std::tanh(0.5 * s2 - 0.25 * g + 0.1);
  const double qNext = 0.3 * s2 + 0.2 * g - 0.4 * aNext + 0.05;
  const double expect = r + 0.9 * qNext;
  const auto batch2 = std::vector<Transition>{makeTransition(0.1, g, 0.3, r, s2, false)};
  CHECK(criticTargets(agent2, batch2)[0] == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("ddpgUpdate: critic at a stationary point stays put") {
  DdpgAgent agent = tinyAgent(0.9);
  // Terminal transitions with reward equal to the critic's own output make
  // the targets coincide with the predictions: zero critic gradient.
  std::vector<Transition> batch;
  for (double s : {0.1, 0.5, -0.3}) {
    VectorXd in(3);
    in << s, 0.2, std::tanh(s);
    const double q = forward(agent.critic, in)[0];
    batch.push_back(makeTransition(s, 0.2, std::tanh(s), q, s, true));
  }
  const Eigen::MatrixXd criticW = agent.critic.weights[0];
  const auto stats = ddpgUpdate(agent, batch);
  CHECK(stats.criticLoss == 0.0);
  CHECK(agent.critic.weights[0] == criticW);
}

TEST_CASE("ddpgUpdate: actor step follows the finite-difference gradient of mean Q") {
  DdpgAgent agent = tinyAgent(0.9);
  std::vector<Transition> batch;
  for (double s : {0.4, -0.6, 0.9, 0.05}) {
    VectorXd in(3);
    in << s, 0.3, std::tanh(0.2 * s);
    const double q = forward(agent.critic, in)[0];
    batch.push_back(makeTransition(s, 0.3, std::tanh(0.2 * s), q, s, true));
  }

  // Closed form for the 1-unit toy: dL/dw = -mean(wc_a * (1 - a^2) * input).
  const double wcA = agent.critic.weights[0](0, 2);
  const double wS = agent.actor.weights[0](0, 0);
  const double wG = agent.actor.weights[0](0, 1);
  const double b = agent.actor.biases[0][0];
  double gradWs = 0, gradWg = 0, gradB = 0;
  for (const auto& t : batch) {
    const double s = t.observation[0], g = t.desired_goal[0];
    const double a = std::tanh(wS * s + wG * g + b);
    const double d = -wcA * (1 - a * a) / double(batch.size());
    gradWs += d * s;
    gradWg += d * g;
    gradB += d;
  }

  // Finite differences through an independent forward composition.
  auto lossAt = [&](double ws, double wg, double bb) {
    double sum = 0;
    for (const auto& t : batch) {
      const double s = t.observation[0], g = t.desired_goal[0];
      const double a = std::tanh(ws * s + wg * g + bb);
      VectorXd in(3);
      in << s, g, a;
      sum += forward(agent.critic, in)[0];
    }
    return -sum / double(batch.size());
  };
  const double h = 1e-6;
  const double fdWs = (lossAt(wS + h, wG, b) - lossAt(wS - h, wG, b)) / (2 * h);
  const double fdWg = (lossAt(wS, wG + h, b) - lossAt(wS, wG - h, b)) / (2 * h);
  const double fdB = (lossAt(wS, wG, b + h) - lossAt(wS, wG, b - h)) / (2 * h);
  CHECK(std::abs(fdWs - gradWs) < 1e-4 * std::max(1.0, std::abs(fdWs)));
  CHECK(std::abs(fdWg - gradWg) < 1e-4 * std::max(1.0, std::abs(fdWg)));
  CHECK(std::abs(fdB - gradB) < 1e-4 * std::max(1.0, std::abs(fdB)));

  // Stationary critic (see above), so the actor's first Adam step moves each
  // parameter by -lr * sign(gradient).
  ddpgUpdate(agent, batch);
  if (std::abs(gradWs) > 1e-9)
    CHECK(agent.actor.weights[0](0, 0) - wS == doctest::Approx(-0.001 * (gradWs > 0 ? 1 : -1))
                                                   .epsilon(1e-4));
  if (std::abs(gradB) > 1e-9)
    CHECK(agent.actor.biases[0][0] - b ==
          doctest::Approx(-0.001 * (gradB > 0 ? 1 : -1)).epsilon(1e-4));
}

TEST_CASE("ddpgUpdate: determinism and divergence signalling") {
  std::vector<Transition> batch;
  for (double s : {0.1, 0.2, 0.3}) batch.push_back(makeTransition(s, 0.0, 0.1, -1.0, s + 0.1, false));

  DdpgAgent a1 = makeDdpgAgent(1, 1, 1, DdpgConfig{}, 7);
  DdpgAgent a2 = makeDdpgAgent(1, 1, 1, DdpgConfig{}, 7);
  for (int i = 0; i < 10; ++i) {
    const auto s1 = ddpgUpdate(a1, batch);
    const auto s2 = ddpgUpdate(a2, batch);
    CHECK(s1.criticLoss == s2.criticLoss);
    CHECK(s1.actorLoss == s2.actorLoss);
  }
  for (std::size_t l = 0; l < a1.actor.weights.size(); ++l)
    CHECK(a1.actor.weights[l] == a2.actor.weights[l]);

  DdpgAgent diverging = makeDdpgAgent(1, 1, 1, DdpgConfig{}, 7);
  auto bad = batch;
  bad[0].reward = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(ddpgUpdate(diverging, bad), hb::DivergenceError);
}

TEST_CASE("transferInit: parts, round trip, errors") {
  const std::string path = tempPath("hb_transfer_test.ckpt");
  DdpgAgent src = makeDdpgAgent(2, 1, 1, DdpgConfig{}, 21);
  // Make targets differ from the online nets so the round trip is visible.
  std::vector<Transition> batch;
  for (double s : {0.1, 0.7}) {
    Transition t;
    t.observation = Eigen::Vector2d(s, -s);
    t.desired_goal = VectorXd::Constant(1, 0.3);
    t.action = VectorXd::Constant(1, 0.2);
    t.reward = -1;
    t.next_observation = t.observation;
    t.achieved_goal = VectorXd::Constant(1, s);
    t.next_achieved_goal = t.achieved_goal;
    t.terminal = false;
    batch.push_back(t);
  }
  ddpgUpdate(src, batch);
  saveCheckpoint(toCheckpoint(src), path);

  DdpgAgent dst = makeDdpgAgent(2, 1, 1, DdpgConfig{}, 22);
  const DdpgAgent before = dst;
  transferInit(dst, path, false, false);
  CHECK(dst.actor.weights[0] == before.actor.weights[0]);
  CHECK(dst.critic.weights[0] == before.critic.weights[0]);

  transferInit(dst, path, true, false);
  CHECK(dst.actor.weights[0] == src.actor.weights[0]);
  CHECK(dst.targetActor.weights[0] == src.targetActor.weights[0]);
  CHECK(dst.critic.weights[0] == before.critic.weights[0]);  // untouched part
  CHECK(dst.actorOpt.step == 0);                             // optimizer reset

  transferInit(dst, path, true, true);
  CHECK(dst.critic.weights[0] == src.critic.weights[0]);
  CHECK(dst.targetCritic.weights[0] == src.targetCritic.weights[0]);

  DdpgAgent other = makeDdpgAgent(3, 1, 1, DdpgConfig{}, 23);
  CHECK_THROWS_AS(transferInit(other, path, true, true), hb::ConfigError);
  CHECK_THROWS_AS(transferInit(dst, tempPath("hb_missing.ckpt"), true, true), hb::IoError);
  std::filesystem::remove(path);
}
