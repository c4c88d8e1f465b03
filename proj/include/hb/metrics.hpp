#ifndef HB_METRICS_HPP
#define HB_METRICS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace hb {

inline constexpr const char* kMetricsHeader =
    "env_step,episodes,success_rate,mean_return,critic_loss,actor_loss,buffer_size,wall_seconds";

/// One evaluation point of a training run.
struct MetricsRow {
  std::uint64_t envStep = 0;
  std::uint64_t episodes = 0;
  double successRate = 0.0;
  double meanReturn = 0.0;
  double criticLoss = 0.0;
  double actorLoss = 0.0;
  std::uint64_t bufferSize = 0;
  double wallSeconds = 0.0;
};

/// CSV with the fixed header above; reals carry 17 significant digits
/// except wall_seconds (3).
void writeMetrics(const std::vector<MetricsRow>& rows, const std::string& path);
std::vector<MetricsRow> readMetrics(const std::string& path);

}  // namespace hb

#endif  // HB_METRICS_HPP
