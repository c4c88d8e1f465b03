#include "CLI11.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "hb/config.hpp"
#include "hb/errors.hpp"
#include "hb/geometry.hpp"
#include "hb/numformat.hpp"
#include "hb/plot.hpp"
#include "hb/train.hpp"

namespace {

int runTrainCmd(const std::string& configPath, bool seedSet, std::uint64_t seed,
                const std::string& outDir) {
  hb::RunConfig cfg = hb::loadConfigFile(configPath);
  if (seedSet) cfg.seed = seed;
  if (!outDir.empty()) cfg.outDir = outDir;
  hb::validateConfig(cfg);
  const hb::TrainResult result = hb::runTraining(cfg, [](const hb::MetricsRow& row) {
    std::printf("step %llu episodes %llu success_rate %.3f mean_return %.3f\n",
                static_cast<unsigned long long>(row.envStep),
                static_cast<unsigned long long>(row.episodes), row.successRate, row.meanReturn);
    std::fflush(stdout);
  });
  std::printf("checkpoint %s\nmetrics %s\n", result.checkpointPath.c_str(),
              result.metricsPath.c_str());
  return 0;
}

int runEvalCmd(const std::string& checkpoint, const std::string& env, int episodes,
               std::uint64_t seed) {
  const hb::EvalResult r = hb::evaluate(checkpoint, env, episodes, seed);
  std::printf("success_rate %s\nmean_return %s\n", hb::formatG17(r.successRate).c_str(),
              hb::formatG17(r.meanReturn).c_str());
  return 0;
}

int runDecomposeCmd(const std::vector<double>& quat, const std::string& convention) {
  hb::EulerConvention conv;
  if (convention == "zxz") conv = hb::EulerConvention::ZXZ;
  else if (convention == "zyz") conv = hb::EulerConvention::ZYZ;
  else throw hb::ConfigError("convention must be zxz or zyz");
  hb::UnitQuaterniond q;
  try {
    q = hb::UnitQuaterniond(quat[0], quat[1], quat[2], quat[3]);
  } catch (const std::invalid_argument& e) {
    throw hb::ConfigError(e.what());
  }
  const auto e = hb::decompose(q, conv);
  std::printf("%s\n%s\n%s\n", hb::formatG17(e.alpha).c_str(), hb::formatG17(e.beta).c_str(),
              hb::formatG17(e.gamma).c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hindbench: goal-conditioned DDPG+HER training harness"};
  app.require_subcommand(1);

  auto* train = app.add_subcommand("train", "run a training experiment");
  std::string configPath, outDir;
  std::uint64_t seed = 0;
  bool seedSet = false;
  train->add_option("--config", configPath, "config file (key = value lines)")->required();
  auto* seedOpt = train->add_option("--seed", seed, "override the config seed");
  train->add_option("--out", outDir, "override the config output directory");

  auto* eval = app.add_subcommand("eval", "evaluate a checkpoint greedily");
  std::string checkpoint, envName;
  int episodes = 100;
  std::uint64_t evalSeed = 0;
  eval->add_option("--checkpoint", checkpoint, "checkpoint file")->required();
  eval->add_option("--env", envName, "environment name")->required();
  eval->add_option("--episodes", episodes, "number of evaluation episodes")->required();
  eval->add_option("--seed", evalSeed, "evaluation seed");

  auto* decompose = app.add_subcommand("decompose", "Davenport angles of a quaternion");
  std::vector<double> quat;
  std::string convention = "zxz";
  decompose->add_option("--quat", quat, "w x y z components")->expected(4)->required();
  decompose->add_option("--convention", convention, "zxz or zyz");

  auto* plot = app.add_subcommand("plot", "emit an SVG learning-curve plot");
  std::string plotOut;
  std::vector<std::string> metricsFiles;
  plot->add_option("--out", plotOut, "output SVG path")->required();
  plot->add_option("metrics", metricsFiles, "metrics CSV files")->required();

  try {
    app.parse(argc, argv);
    seedSet = seedOpt->count() > 0;
    if (*train) return runTrainCmd(configPath, seedSet, seed, outDir);
    if (*eval) return runEvalCmd(checkpoint, envName, episodes, evalSeed);
    if (*decompose) return runDecomposeCmd(quat, convention);
    if (*plot) {
      hb::emitPlot(metricsFiles, plotOut);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const hb::DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return 3;
  } catch (const hb::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const hb::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 1;
}
