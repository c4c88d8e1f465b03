#include "hb/replay.hpp"

#include <stdexcept>

namespace hb {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("ReplayBuffer: capacity must be positive");
  data_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
  if (data_.size() < capacity_) {
    data_.push_back(std::move(t));
  } else {
    data_[head_] = std::move(t);
    head_ = (head_ + 1) % capacity_;
  }
  ++insertions_;
}

const Transition& ReplayBuffer::at(std::size_t logicalIndex) const {
  if (logicalIndex >= data_.size()) throw std::out_of_range("ReplayBuffer::at");
  if (data_.size() < capacity_) return data_[logicalIndex];
  return data_[(head_ + logicalIndex) % capacity_];
}

void storeEpisode(ReplayBuffer& buffer, const Episode& episode) {
  if (episode.steps.empty()) throw std::invalid_argument("storeEpisode: empty episode");
  for (std::size_t i = 0; i < episode.steps.size(); ++i) {
    const Transition& t = episode.steps[i];
    if (t.desired_goal != episode.steps.front().desired_goal)
      throw std::invalid_argument("storeEpisode: desired goal changes within episode");
    if (i + 1 < episode.steps.size() &&
        t.next_observation != episode.steps[i + 1].observation)
      throw std::invalid_argument("storeEpisode: observation chain broken");
  }
  for (const Transition& t : episode.steps) buffer.push(t);
}

std::vector<Transition> sampleBatch(const ReplayBuffer& buffer, std::size_t batchSize, Rng& rng) {
  if (buffer.size() == 0) throw std::invalid_argument("sampleBatch: empty buffer");
  std::vector<Transition> batch;
  batch.reserve(batchSize);
  for (std::size_t i = 0; i < batchSize; ++i)
    batch.push_back(buffer.at(static_cast<std::size_t>(
        rng.uniformInt(0, static_cast<std::int64_t>(buffer.size()) - 1))));
  return batch;
}

}  // namespace hb
