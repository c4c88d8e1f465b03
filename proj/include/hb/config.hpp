#ifndef HB_CONFIG_HPP
#define HB_CONFIG_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

#include "hb/her.hpp"

namespace hb {

/// Full experiment description. Defaults here are the documented defaults
/// of the `key = value` config file format.
struct RunConfig {
  std::string env = "reach2d";
  std::uint64_t seed = 0;
  std::uint64_t totalSteps = 50000;
  int episodesPerCycle = 2;
  int updatesPerCycle = 40;
  int batchSize = 128;
  std::uint64_t bufferCapacity = 1000000;
  HerStrategy her{HerKind::Future, 4};
  bool partialGoalRelabel = false;     // lift: relabel only the xy goal slice
  std::string liftReward = "mixed";    // mixed | sparse
  double gamma = 0.98;
  double tau = 0.05;
  double actorLr = 1e-3;
  double criticLr = 1e-3;
  double exploreNoiseStd = 0.1;
  double randomActionProb = 0.2;
  double obsNoiseStd = 0.0;
  double actionNoiseStd = 0.0;
  std::vector<Eigen::Index> hiddenSizes = {64, 64};
  int maxEpisodeSteps = 0;             // 0 keeps the environment default
  std::uint64_t evalInterval = 5000;
  int evalEpisodes = 20;
  std::string transferCheckpoint;      // empty = fresh initialization
  bool transferActor = true;
  bool transferCritic = true;
  std::string outDir = "run";

  bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` lines with `#` comments. Unknown keys and malformed
/// or out-of-range values raise ConfigError naming the line and key.
RunConfig parseConfig(const std::string& text);

/// Canonical text form; parseConfig(serializeConfig(c)) == c.
std::string serializeConfig(const RunConfig& config);

RunConfig loadConfigFile(const std::string& path);

void validateConfig(const RunConfig& config);

}  // namespace hb

#endif  // HB_CONFIG_HPP
