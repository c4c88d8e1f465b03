#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef HB_CLI_PATH
#define HB_CLI_PATH "../tools/hb"
#endif

namespace {

struct RunOut {
  int status = -1;
  std::string stdoutText;
};

RunOut runCli(const std::string& args) {
  const auto outPath = std::filesystem::temp_directory_path() / "hb_cli_out.txt";
  const std::string cmd =
      std::string(HB_CLI_PATH) + " " + args + " > " + outPath.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunOut r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(outPath);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.stdoutText = ss.str();
  return r;
}

std::string writeFile(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p);
  out << text;
  return p.string();
}

}  // namespace

TEST_CASE("decompose subcommand: output format and exit 0") {
  const auto r = runCli("decompose --quat 0.7071067811865476 0 0 0.7071067811865476 "
                        "--convention zxz");
  CHECK(r.status == 0);
  std::istringstream lines(r.stdoutText);
  double alpha = 0, beta = 99, gamma = 99;
  lines >> alpha >> beta >> gamma;
  CHECK(alpha == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(beta == 0.0);
  CHECK(gamma == 0.0);

  CHECK(runCli("decompose --quat 0 0 0 0 --convention zxz").status == 1);
  CHECK(runCli("decompose --quat 1 0 0 0 --convention abc").status == 1);
  CHECK(runCli("decompose --quat 1 0 0").status == 1);  // wrong arity
}

TEST_CASE("usage and config errors exit 1, I/O errors exit 2") {
  CHECK(runCli("").status == 1);
  CHECK(runCli("frobnicate").status == 1);
  CHECK(runCli("train").status == 1);  // missing --config

  const std::string bad = writeFile("hb_cli_bad.cfg", "gamma = 2.0\n");
  CHECK(runCli("train --config " + bad).status == 1);

  const std::string unknown = writeFile("hb_cli_unknown.cfg", "warp_speed = 9\n");
  CHECK(runCli("train --config " + unknown).status == 1);

  CHECK(runCli("train --config /nonexistent/path.cfg").status == 2);
  CHECK(runCli("eval --checkpoint /nonexistent.ckpt --env reach2d --episodes 3").status == 2);
  CHECK(runCli("plot --out /tmp/hb_cli_plot.svg /nonexistent.csv").status == 2);
}

TEST_CASE("training divergence exits 3 after flushing metrics") {
  const auto dir = std::filesystem::temp_directory_path() / "hb_cli_div";
  std::filesystem::remove_all(dir);
  const std::string cfg = writeFile("hb_cli_div.cfg",
                                    "env = reach2d\n"
                                    "total_steps = 3000\n"
                                    "eval_interval = 500\n"
                                    "eval_episodes = 3\n"
                                    "updates_per_cycle = 5\n"
                                    "batch_size = 16\n"
                                    "hidden_sizes = 8 8\n"
                                    "critic_lr = 1e120\n");
  const auto r = runCli("train --config " + cfg + " --out " + dir.string());
  CHECK(r.status == 3);
  CHECK(std::filesystem::exists(dir / "metrics.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("train then eval then plot round trip through the CLI") {
  const auto dir = std::filesystem::temp_directory_path() / "hb_cli_train";
  std::filesystem::remove_all(dir);
  const std::string cfg = writeFile("hb_cli_train.cfg",
                                    "env = reach2d\n"
                                    "total_steps = 1200\n"
                                    "eval_interval = 400\n"
                                    "eval_episodes = 3\n"
                                    "updates_per_cycle = 4\n"
                                    "batch_size = 16\n"
                                    "hidden_sizes = 8 8\n");
  const auto train = runCli("train --config " + cfg + " --seed 4 --out " + dir.string());
  CHECK(train.status == 0);
  CHECK(train.stdoutText.find("checkpoint ") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "checkpoint.ckpt"));
  CHECK(std::filesystem::exists(dir / "metrics.csv"));

  const auto eval = runCli("eval --checkpoint " + (dir / "checkpoint.ckpt").string() +
                           " --env reach2d --episodes 5 --seed 1");
  CHECK(eval.status == 0);
  CHECK(eval.stdoutText.find("success_rate ") != std::string::npos);
  CHECK(eval.stdoutText.find("mean_return ") != std::string::npos);

  const std::string svg = (dir / "curve.svg").string();
  CHECK(runCli("plot --out " + svg + " " + (dir / "metrics.csv").string()).status == 0);
  std::ifstream in(svg);
  std::ostringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str().find("<svg") != std::string::npos);
  std::filesystem::remove_all(dir);
}
