#include "hb/her.hpp"

#include <stdexcept>

namespace hb {

std::string to_string(HerKind kind) {
  switch (kind) {
    case HerKind::None: return "none";
    case HerKind::Final: return "final";
    case HerKind::Future: return "future";
    case HerKind::EpisodeWide: return "episode";
  }
  return "none";
}

bool herKindFromString(const std::string& text, HerKind& out) {
  if (text == "none") out = HerKind::None;
  else if (text == "final") out = HerKind::Final;
  else if (text == "future") out = HerKind::Future;
  else if (text == "episode") out = HerKind::EpisodeWide;
  else return false;
  return true;
}

namespace {

// Substituted goal for one relabel draw. `future` draws a step index at or
// after the current one; all strategies take the goal that step achieved.
Eigen::VectorXd drawGoal(const Episode& ep, HerKind kind, std::size_t stepIndex, Rng& rng) {
  const std::int64_t last = static_cast<std::int64_t>(ep.steps.size()) - 1;
  switch (kind) {
    case HerKind::Final:
      return ep.steps.back().next_achieved_goal;
    case HerKind::Future:
      return ep.steps[static_cast<std::size_t>(
                          rng.uniformInt(static_cast<std::int64_t>(stepIndex), last))]
          .next_achieved_goal;
    case HerKind::EpisodeWide:
      return ep.steps[static_cast<std::size_t>(rng.uniformInt(0, last))].next_achieved_goal;
    case HerKind::None:
      break;
  }
  throw std::logic_error("drawGoal: no relabel for this strategy");
}

std::vector<Transition> relabelImpl(const Episode& episode, const HerStrategy& strategy,
                                    const GoalRewardFn& reward, const GoalSuccessFn& success,
                                    Eigen::Index sliceBegin, Eigen::Index sliceLen, Rng& rng) {
  if (episode.steps.empty()) throw std::invalid_argument("relabel: empty episode");
  const Eigen::Index goalDim = episode.steps.front().desired_goal.size();
  if (sliceBegin < 0 || sliceLen < 0 || sliceBegin + sliceLen > goalDim)
    throw std::out_of_range("relabel: goal slice out of bounds");

  std::vector<Transition> out;
  out.reserve(episode.steps.size() * (1 + strategy.relabelsPerStep()));
  for (std::size_t i = 0; i < episode.steps.size(); ++i) {
    out.push_back(episode.steps[i]);
    for (int c = 0; c < strategy.relabelsPerStep(); ++c) {
      Transition t = episode.steps[i];
      const Eigen::VectorXd achieved = drawGoal(episode, strategy.kind, i, rng);
      t.desired_goal.segment(sliceBegin, sliceLen) = achieved.segment(sliceBegin, sliceLen);
      t.reward = reward(t.next_achieved_goal, t.desired_goal);
      t.terminal = success(t.next_achieved_goal, t.desired_goal);
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace

std::vector<Transition> herRelabel(const Episode& episode, const HerStrategy& strategy,
                                   const GoalRewardFn& reward, const GoalSuccessFn& success,
                                   Rng& rng) {
  const Eigen::Index goalDim =
      episode.steps.empty() ? 0 : episode.steps.front().desired_goal.size();
  return relabelImpl(episode, strategy, reward, success, 0, goalDim, rng);
}

std::vector<Transition> partialGoalRelabel(const Episode& episode, const HerStrategy& strategy,
                                           const GoalRewardFn& reward,
                                           const GoalSuccessFn& success, Eigen::Index sliceBegin,
                                           Eigen::Index sliceLen, Rng& rng) {
  return relabelImpl(episode, strategy, reward, success, sliceBegin, sliceLen, rng);
}

}  // namespace hb
