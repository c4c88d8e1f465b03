#include "hb/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "hb/env.hpp"
#include "hb/errors.hpp"
#include "hb/numformat.hpp"

namespace hb {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

double toDouble(const std::string& v, const std::string& key, int line) {
  double out = 0;
  if (!parseDoubleStrict(v, out)) fail(line, "invalid number for " + key + ": '" + v + "'");
  return out;
}

long long toInt(const std::string& v, const std::string& key, int line) {
  long long out = 0;
  if (!parseLongStrict(v, out)) fail(line, "invalid integer for " + key + ": '" + v + "'");
  return out;
}

std::uint64_t toU64(const std::string& v, const std::string& key, int line) {
  if (v.empty() || v[0] == '-') fail(line, "invalid unsigned integer for " + key + ": '" + v + "'");
  char* end = nullptr;
  const std::uint64_t out = std::strtoull(v.c_str(), &end, 10);
  if (end != v.c_str() + v.size())
    fail(line, "invalid unsigned integer for " + key + ": '" + v + "'");
  return out;
}

bool toBool(const std::string& v, const std::string& key, int line) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, key + " must be true or false, got '" + v + "'");
}

std::vector<std::string> splitWs(const std::string& v) {
  std::istringstream ss(v);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

RunConfig parseConfig(const std::string& text) {
  RunConfig cfg;
  std::istringstream stream(text);
  std::string raw;
  int lineNo = 0;
  while (std::getline(stream, raw)) {
    ++lineNo;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(lineNo, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(lineNo, "empty key");

    if (key == "env") cfg.env = value;
    else if (key == "seed") cfg.seed = toU64(value, key, lineNo);
    else if (key == "total_steps") cfg.totalSteps = toU64(value, key, lineNo);
    else if (key == "episodes_per_cycle") cfg.episodesPerCycle = int(toInt(value, key, lineNo));
    else if (key == "updates_per_cycle") cfg.updatesPerCycle = int(toInt(value, key, lineNo));
    else if (key == "batch_size") cfg.batchSize = int(toInt(value, key, lineNo));
    else if (key == "buffer_capacity") cfg.bufferCapacity = toU64(value, key, lineNo);
    else if (key == "her") {
      if (!herKindFromString(value, cfg.her.kind))
        fail(lineNo, "her must be none|final|future|episode, got '" + value + "'");
    } else if (key == "her_k") cfg.her.k = int(toInt(value, key, lineNo));
    else if (key == "partial_goal_relabel") cfg.partialGoalRelabel = toBool(value, key, lineNo);
    else if (key == "lift_reward") cfg.liftReward = value;
    else if (key == "gamma") cfg.gamma = toDouble(value, key, lineNo);
    else if (key == "tau") cfg.tau = toDouble(value, key, lineNo);
    else if (key == "actor_lr") cfg.actorLr = toDouble(value, key, lineNo);
    else if (key == "critic_lr") cfg.criticLr = toDouble(value, key, lineNo);
    else if (key == "explore_noise_std") cfg.exploreNoiseStd = toDouble(value, key, lineNo);
    else if (key == "random_action_prob") cfg.randomActionProb = toDouble(value, key, lineNo);
    else if (key == "obs_noise_std") cfg.obsNoiseStd = toDouble(value, key, lineNo);
    else if (key == "action_noise_std") cfg.actionNoiseStd = toDouble(value, key, lineNo);
    else if (key == "hidden_sizes") {
      cfg.hiddenSizes.clear();
      for (const std::string& tok : splitWs(value))
        cfg.hiddenSizes.push_back(Eigen::Index(toInt(tok, key, lineNo)));
    } else if (key == "max_episode_steps") cfg.maxEpisodeSteps = int(toInt(value, key, lineNo));
    else if (key == "eval_interval") cfg.evalInterval = toU64(value, key, lineNo);
    else if (key == "eval_episodes") cfg.evalEpisodes = int(toInt(value, key, lineNo));
    else if (key == "transfer_checkpoint") cfg.transferCheckpoint = value;
    else if (key == "transfer_parts") {
      cfg.transferActor = false;
      cfg.transferCritic = false;
      for (const std::string& tok : splitWs(value)) {
        if (tok == "actor") cfg.transferActor = true;
        else if (tok == "critic") cfg.transferCritic = true;
        else fail(lineNo, "transfer_parts entries must be 'actor' or 'critic', got '" + tok + "'");
      }
    } else if (key == "out_dir") cfg.outDir = value;
    else fail(lineNo, "unknown key '" + key + "'");
  }
  validateConfig(cfg);
  return cfg;
}

void validateConfig(const RunConfig& cfg) {
  auto bad = [](const std::string& key, const std::string& why) {
    throw ConfigError("config: " + key + " " + why);
  };
  const auto& names = envNames();
  if (std::find(names.begin(), names.end(), cfg.env) == names.end())
    bad("env", "must be one of reach2d|push2d|lift|rotate-z|rotate-full|rotate-decomposed");
  if (cfg.totalSteps < 1) bad("total_steps", "must be positive");
  if (cfg.episodesPerCycle < 1) bad("episodes_per_cycle", "must be positive");
  if (cfg.updatesPerCycle < 1) bad("updates_per_cycle", "must be positive");
  if (cfg.batchSize < 1) bad("batch_size", "must be positive");
  if (cfg.bufferCapacity < 1) bad("buffer_capacity", "must be positive");
  if (cfg.her.k < 1 && (cfg.her.kind == HerKind::Future || cfg.her.kind == HerKind::EpisodeWide))
    bad("her_k", "must be >= 1 for future/episode strategies");
  if (cfg.partialGoalRelabel && cfg.env.rfind("rotate", 0) == 0)
    bad("partial_goal_relabel", "slices an (x, y) goal prefix; not meaningful for rotate-* envs");
  if (cfg.liftReward != "mixed" && cfg.liftReward != "sparse")
    bad("lift_reward", "must be mixed or sparse");
  if (!(cfg.gamma >= 0.0 && cfg.gamma < 1.0)) bad("gamma", "must lie in [0, 1)");
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0)) bad("tau", "must lie in (0, 1]");
  if (!(cfg.actorLr > 0.0)) bad("actor_lr", "must be positive");
  if (!(cfg.criticLr > 0.0)) bad("critic_lr", "must be positive");
  if (cfg.exploreNoiseStd < 0.0) bad("explore_noise_std", "must be non-negative");
  if (!(cfg.randomActionProb >= 0.0 && cfg.randomActionProb <= 1.0))
    bad("random_action_prob", "must lie in [0, 1]");
  if (cfg.obsNoiseStd < 0.0) bad("obs_noise_std", "must be non-negative");
  if (cfg.actionNoiseStd < 0.0) bad("action_noise_std", "must be non-negative");
  for (Eigen::Index h : cfg.hiddenSizes)
    if (h < 1) bad("hidden_sizes", "entries must be positive");
  if (cfg.maxEpisodeSteps < 0) bad("max_episode_steps", "must be >= 0 (0 = env default)");
  if (cfg.evalInterval < 1) bad("eval_interval", "must be positive");
  if (cfg.evalEpisodes < 1) bad("eval_episodes", "must be positive");
  if (cfg.outDir.empty()) bad("out_dir", "must not be empty");
}

std::string serializeConfig(const RunConfig& cfg) {
  std::ostringstream out;
  out << "env = " << cfg.env << '\n';
  out << "seed = " << cfg.seed << '\n';
  out << "total_steps = " << cfg.totalSteps << '\n';
  out << "episodes_per_cycle = " << cfg.episodesPerCycle << '\n';
  out << "updates_per_cycle = " << cfg.updatesPerCycle << '\n';
  out << "batch_size = " << cfg.batchSize << '\n';
  out << "buffer_capacity = " << cfg.bufferCapacity << '\n';
  out << "her = " << to_string(cfg.her.kind) << '\n';
  out << "her_k = " << cfg.her.k << '\n';
  out << "partial_goal_relabel = " << (cfg.partialGoalRelabel ? "true" : "false") << '\n';
  out << "lift_reward = " << cfg.liftReward << '\n';
  out << "gamma = " << formatG17(cfg.gamma) << '\n';
  out << "tau = " << formatG17(cfg.tau) << '\n';
  out << "actor_lr = " << formatG17(cfg.actorLr) << '\n';
  out << "critic_lr = " << formatG17(cfg.criticLr) << '\n';
  out << "explore_noise_std = " << formatG17(cfg.exploreNoiseStd) << '\n';
  out << "random_action_prob = " << formatG17(cfg.randomActionProb) << '\n';
  out << "obs_noise_std = " << formatG17(cfg.obsNoiseStd) << '\n';
  out << "action_noise_std = " << formatG17(cfg.actionNoiseStd) << '\n';
  out << "hidden_sizes =";
  for (Eigen::Index h : cfg.hiddenSizes) out << ' ' << h;
  out << '\n';
  out << "max_episode_steps = " << cfg.maxEpisodeSteps << '\n';
  out << "eval_interval = " << cfg.evalInterval << '\n';
  out << "eval_episodes = " << cfg.evalEpisodes << '\n';
  out << "transfer_checkpoint = " << cfg.transferCheckpoint << '\n';
  out << "transfer_parts =" << (cfg.transferActor ? " actor" : "")
      << (cfg.transferCritic ? " critic" : "") << '\n';
  out << "out_dir = " << cfg.outDir << '\n';
  return out.str();
}

RunConfig loadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parseConfig(text.str());
}

}  // namespace hb
