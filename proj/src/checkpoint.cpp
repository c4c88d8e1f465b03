#include "hb/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "hb/errors.hpp"
#include "hb/numformat.hpp"

namespace hb {

namespace {

constexpr const char* kMagic = "HB-CKPT v1";
constexpr const char* kNetNames[4] = {"actor", "critic", "target_actor", "target_critic"};

void writeNet(std::ostream& out, const char* name, const Mlpd& net) {
  out << "net " << name;
  for (Eigen::Index s : net.sizes) out << ' ' << s;
  out << ' ' << to_string(net.output) << '\n';
  for (const auto& w : net.weights)
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) out << formatG17(w(r, c)) << '\n';
  for (const auto& b : net.biases)
    for (Eigen::Index i = 0; i < b.size(); ++i) out << formatG17(b[i]) << '\n';
}

Mlpd readNet(std::istream& in, const char* expectedName, const std::string& path) {
  std::string line;
  if (!std::getline(in, line))
    throw IoError(path + ": truncated checkpoint, missing net " + expectedName);
  std::istringstream header(line);
  std::string tag, name;
  header >> tag >> name;
  if (tag != "net" || name != expectedName)
    throw IoError(path + ": malformed checkpoint header: " + line);

  std::vector<std::string> tokens;
  std::string tok;
  while (header >> tok) tokens.push_back(tok);
  if (tokens.size() < 3) throw IoError(path + ": net header needs two sizes and an activation");

  Mlpd net;
  const std::string& activation = tokens.back();
  if (activation == "tanh") net.output = OutputActivation::Tanh;
  else if (activation == "linear") net.output = OutputActivation::Linear;
  else throw IoError(path + ": unknown activation " + activation);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    long long v = 0;
    if (!parseLongStrict(tokens[i], v) || v < 1)
      throw IoError(path + ": bad layer size " + tokens[i]);
    net.sizes.push_back(static_cast<Eigen::Index>(v));
  }

  auto nextValue = [&]() {
    std::string valueLine;
    if (!std::getline(in, valueLine)) throw IoError(path + ": truncated checkpoint values");
    double v = 0;
    if (!parseDoubleStrict(valueLine, v)) throw IoError(path + ": bad number: " + valueLine);
    return v;
  };
  for (std::size_t l = 0; l + 1 < net.sizes.size(); ++l) {
    Eigen::MatrixXd w(net.sizes[l + 1], net.sizes[l]);
    for (Eigen::Index r = 0; r < w.rows(); ++r)
      for (Eigen::Index c = 0; c < w.cols(); ++c) w(r, c) = nextValue();
    net.weights.push_back(std::move(w));
  }
  for (std::size_t l = 0; l + 1 < net.sizes.size(); ++l) {
    Eigen::VectorXd b(net.sizes[l + 1]);
    for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = nextValue();
    net.biases.push_back(std::move(b));
  }
  return net;
}

}  // namespace

void saveCheckpoint(const Checkpoint& ckpt, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open checkpoint for writing: " + path);
  out << kMagic << '\n';
  writeNet(out, kNetNames[0], ckpt.actor);
  writeNet(out, kNetNames[1], ckpt.critic);
  writeNet(out, kNetNames[2], ckpt.target_actor);
  writeNet(out, kNetNames[3], ckpt.target_critic);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

Checkpoint loadCheckpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open checkpoint: " + path);
  std::string magic;
  if (!std::getline(in, magic) || magic != kMagic)
    throw IoError(path + ": not a HB-CKPT v1 file");
  Checkpoint ckpt;
  ckpt.actor = readNet(in, kNetNames[0], path);
  ckpt.critic = readNet(in, kNetNames[1], path);
  ckpt.target_actor = readNet(in, kNetNames[2], path);
  ckpt.target_critic = readNet(in, kNetNames[3], path);
  return ckpt;
}

}  // namespace hb
