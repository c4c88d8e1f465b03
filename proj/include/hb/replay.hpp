#ifndef HB_REPLAY_HPP
#define HB_REPLAY_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "hb/rng.hpp"

namespace hb {

/// One environment step. Goal vectors follow the owning environment's
/// goal dimension; actions are componentwise in [-1, 1].
struct Transition {
  Eigen::VectorXd observation;
  Eigen::VectorXd action;
  double reward = 0.0;
  Eigen::VectorXd next_observation;
  Eigen::VectorXd achieved_goal;
  Eigen::VectorXd next_achieved_goal;
  Eigen::VectorXd desired_goal;
  bool terminal = false;
};

/// Ordered steps sharing one desired goal; consecutive observations chain.
struct Episode {
  std::vector<Transition> steps;

  std::size_t length() const { return steps.size(); }
};

/// Bounded FIFO ring of transitions; eviction is strictly oldest-first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  std::uint64_t insertions() const { return insertions_; }
  const Transition& at(std::size_t logicalIndex) const;  // 0 = oldest

 private:
  std::size_t capacity_;
  std::size_t head_ = 0;  // next write slot once full
  std::uint64_t insertions_ = 0;
  std::vector<Transition> data_;
};

/// Appends every step in order; rejects empty episodes and episodes that
/// violate the shared-goal / observation-chain invariants.
void storeEpisode(ReplayBuffer& buffer, const Episode& episode);

/// batch_size uniform draws with replacement.
std::vector<Transition> sampleBatch(const ReplayBuffer& buffer, std::size_t batchSize, Rng& rng);

}  // namespace hb

#endif  // HB_REPLAY_HPP
