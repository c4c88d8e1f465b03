#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hb/checkpoint.hpp"
#include "hb/config.hpp"
#include "hb/errors.hpp"
#include "hb/metrics.hpp"
#include "hb/plot.hpp"
#include "hb/rng.hpp"

using hb::MetricsRow;
using hb::RunConfig;

namespace {

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t countOccurrences(const std::string& haystack, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = haystack.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("config: defaults, comments, validation, round trip") {
  const RunConfig defaults = hb::parseConfig("");
  CHECK(defaults == RunConfig{});

  const RunConfig cfg = hb::parseConfig(
      "# experiment\n"
      "env = lift\n"
      "seed = 9\n"
      "gamma = 0.95   # inline comment\n"
      "her = final\n"
      "hidden_sizes = 32 16\n"
      "partial_goal_relabel = true\n"
      "transfer_parts = actor\n"
      "\n");
  CHECK(cfg.env == "lift");
  CHECK(cfg.seed == 9);
  CHECK(cfg.gamma == 0.95);
  CHECK(cfg.her.kind == hb::HerKind::Final);
  CHECK(cfg.hiddenSizes == std::vector<Eigen::Index>{32, 16});
  CHECK(cfg.partialGoalRelabel);
  CHECK(cfg.transferActor);
  CHECK(!cfg.transferCritic);

  CHECK_THROWS_WITH_AS(hb::parseConfig("gamma = 1.5\n"),
                       doctest::Contains("gamma"), hb::ConfigError);
  CHECK_THROWS_WITH_AS(hb::parseConfig("learning = 1\n"),
                       doctest::Contains("unknown key"), hb::ConfigError);
  CHECK_THROWS_WITH_AS(hb::parseConfig("tau 0.05\n"), doctest::Contains("line 1"),
                       hb::ConfigError);
  CHECK_THROWS_AS(hb::parseConfig("env = walk3d\n"), hb::ConfigError);
  CHECK_THROWS_AS(hb::parseConfig("tau = 0\n"), hb::ConfigError);
  CHECK_THROWS_AS(hb::parseConfig("her = sometimes\n"), hb::ConfigError);

  // Round trip through the canonical serialization.
  RunConfig full;
  full.env = "rotate-decomposed";
  full.seed = 1234567;
  full.gamma = 0.97;
  full.tau = 1.0 / 3.0;
  full.actorLr = 3.7e-4;
  full.her = {hb::HerKind::EpisodeWide, 7};
  full.hiddenSizes = {48};
  full.transferCheckpoint = "runs/base/checkpoint.ckpt";
  full.transferActor = true;
  full.transferCritic = false;
  full.obsNoiseStd = 0.013;
  full.outDir = "runs/exp1";
  const RunConfig reparsed = hb::parseConfig(hb::serializeConfig(full));
  CHECK(reparsed == full);
  CHECK(hb::serializeConfig(reparsed) == hb::serializeConfig(full));
}

TEST_CASE("metrics: header-only file, exact round trip") {
  const std::string path = tmp("hb_metrics_test.csv");
  hb::writeMetrics({}, path);
  CHECK(slurp(path) == std::string(hb::kMetricsHeader) + "\n");
  CHECK(hb::readMetrics(path).empty());

  hb::Rng rng(8);
  std::vector<MetricsRow> rows;
  for (int i = 1; i <= 5; ++i) {
    MetricsRow r;
    r.envStep = std::uint64_t(i) * 1000;
    r.episodes = std::uint64_t(i) * 20;
    r.successRate = rng.uniform01();
    r.meanReturn = rng.uniform(-50, 0);
    r.criticLoss = rng.uniform(0, 3);
    r.actorLoss = rng.uniform(-5, 5);
    r.bufferSize = std::uint64_t(i) * 5000;
    r.wallSeconds = rng.uniform(0, 100);
    rows.push_back(r);
  }
  hb::writeMetrics(rows, path);
  const auto back = hb::readMetrics(path);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].envStep == rows[i].envStep);
    CHECK(back[i].episodes == rows[i].episodes);
    CHECK(back[i].successRate == rows[i].successRate);  // 17 digits: bit-exact
    CHECK(back[i].meanReturn == rows[i].meanReturn);
    CHECK(back[i].criticLoss == rows[i].criticLoss);
    CHECK(back[i].actorLoss == rows[i].actorLoss);
    CHECK(back[i].bufferSize == rows[i].bufferSize);
    CHECK(back[i].successRate >= 0.0);
    CHECK(back[i].successRate <= 1.0);
  }

  std::ofstream bad(path);
  bad << "step,other\n1,2\n";
  bad.close();
  CHECK_THROWS_AS(hb::readMetrics(path), hb::IoError);
  CHECK_THROWS_AS(hb::readMetrics(tmp("hb_no_such_metrics.csv")), hb::IoError);
  std::filesystem::remove(path);
}

TEST_CASE("checkpoint: byte-identical save/load/save, malformed input") {
  const std::string p1 = tmp("hb_ckpt_1.ckpt"), p2 = tmp("hb_ckpt_2.ckpt");
  hb::Rng rng(21);
  hb::Checkpoint ckpt;
  ckpt.actor = hb::mlpInit<double>({4, 8, 2}, hb::OutputActivation::Tanh, rng.nextU64());
  ckpt.critic = hb::mlpInit<double>({6, 8, 1}, hb::OutputActivation::Linear, rng.nextU64());
  // Irregular values exercise the full 17-digit format.
  for (auto& w : ckpt.actor.weights)
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = rng.normal(0, 1e3) * 1e-7;
  ckpt.target_actor = ckpt.actor;
  ckpt.target_critic = ckpt.critic;

  hb::saveCheckpoint(ckpt, p1);
  const hb::Checkpoint loaded = hb::loadCheckpoint(p1);
  hb::saveCheckpoint(loaded, p2);
  CHECK(slurp(p1) == slurp(p2));
  for (std::size_t l = 0; l < ckpt.actor.weights.size(); ++l)
    CHECK(loaded.actor.weights[l] == ckpt.actor.weights[l]);
  CHECK(loaded.critic.output == hb::OutputActivation::Linear);

  CHECK_THROWS_AS(hb::loadCheckpoint(tmp("hb_absent.ckpt")), hb::IoError);
  std::ofstream bad(p1);
  bad << "HB-CKPT v1\nnet actor 4 8 2 tanh\n1.0\nnope\n";
  bad.close();
  CHECK_THROWS_AS(hb::loadCheckpoint(p1), hb::IoError);
  std::ofstream worse(p2);
  worse << "NOT-A-CKPT\n";
  worse.close();
  CHECK_THROWS_AS(hb::loadCheckpoint(p2), hb::IoError);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

TEST_CASE("plot: one polyline per non-empty series, axes and legend always") {
  const std::string m1 = tmp("hb_plot_a.csv"), m2 = tmp("hb_plot_b.csv"),
                    empty = tmp("hb_plot_empty.csv"), svg = tmp("hb_plot.svg");
  std::vector<MetricsRow> rows;
  for (int i = 1; i <= 4; ++i) {
    MetricsRow r;
    r.envStep = std::uint64_t(i) * 500;
    r.successRate = 0.2 * i;
    rows.push_back(r);
  }
  hb::writeMetrics(rows, m1);
  for (auto& r : rows) r.successRate = 1.0 - r.successRate;
  hb::writeMetrics(rows, m2);
  hb::writeMetrics({}, empty);

  hb::emitPlot({m1}, svg);
  std::string body = slurp(svg);
  CHECK(countOccurrences(body, "<polyline") == 1);
  CHECK(body.find("environment steps") != std::string::npos);
  CHECK(body.find("success rate") != std::string::npos);

  hb::emitPlot({m1, m2}, svg);
  body = slurp(svg);
  CHECK(countOccurrences(body, "<polyline") == 2);
  CHECK(countOccurrences(body, "stroke=\"#1f77b4\"") >= 1);
  CHECK(countOccurrences(body, "stroke=\"#d62728\"") >= 1);
  CHECK(body.find("hb_plot_a.csv") != std::string::npos);
  CHECK(body.find("hb_plot_b.csv") != std::string::npos);

  hb::emitPlot({empty}, svg);
  body = slurp(svg);
  CHECK(countOccurrences(body, "<polyline") == 0);
  CHECK(countOccurrences(body, "<line") > 0);
  CHECK(body.find("hb_plot_empty.csv") != std::string::npos);

  CHECK_THROWS_AS(hb::emitPlot({}, svg), hb::ConfigError);
  std::ofstream bad(m1);
  bad << "garbage\n";
  bad.close();
  CHECK_THROWS_AS(hb::emitPlot({m1}, svg), hb::IoError);
  for (const auto& p : {m1, m2, empty, svg}) std::filesystem::remove(p);
}
