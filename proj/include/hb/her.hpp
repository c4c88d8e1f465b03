#ifndef HB_HER_HPP
#define HB_HER_HPP

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

#include "hb/replay.hpp"
#include "hb/rng.hpp"

namespace hb {

enum class HerKind { None, Final, Future, EpisodeWide };

std::string to_string(HerKind kind);
bool herKindFromString(const std::string& text, HerKind& out);

/// Relabeled goals per stored transition: 0 (none), 1 (final), k otherwise.
struct HerStrategy {
  HerKind kind = HerKind::Future;
  int k = 4;

  bool operator==(const HerStrategy&) const = default;

  int relabelsPerStep() const {
    switch (kind) {
      case HerKind::None: return 0;
      case HerKind::Final: return 1;
      default: return k;
    }
  }
};

using GoalRewardFn = std::function<double(const Eigen::VectorXd& achieved,
                                          const Eigen::VectorXd& desired)>;
using GoalSuccessFn = std::function<bool(const Eigen::VectorXd& achieved,
                                         const Eigen::VectorXd& desired)>;

/// Original transitions plus hindsight copies whose desired goal is replaced
/// by a goal actually achieved in the episode (at the same step or later for
/// `future`). Rewards and terminal flags of copies are recomputed against
/// the substituted goal.
std::vector<Transition> herRelabel(const Episode& episode, const HerStrategy& strategy,
                                   const GoalRewardFn& reward, const GoalSuccessFn& success,
                                   Rng& rng);

/// Like herRelabel, but only goal components [sliceBegin, sliceBegin+sliceLen)
/// are replaced by the achieved values; the rest of the goal is preserved.
std::vector<Transition> partialGoalRelabel(const Episode& episode, const HerStrategy& strategy,
                                           const GoalRewardFn& reward,
                                           const GoalSuccessFn& success, Eigen::Index sliceBegin,
                                           Eigen::Index sliceLen, Rng& rng);

}  // namespace hb

#endif  // HB_HER_HPP
