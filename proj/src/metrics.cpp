#include "hb/metrics.hpp"

#include <fstream>
#include <sstream>

#include "hb/errors.hpp"
#include "hb/numformat.hpp"

namespace hb {

void writeMetrics(const std::vector<MetricsRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open metrics for writing: " + path);
  out << kMetricsHeader << '\n';
  for (const MetricsRow& r : rows) {
    out << r.envStep << ',' << r.episodes << ',' << formatG17(r.successRate) << ','
        << formatG17(r.meanReturn) << ',' << formatG17(r.criticLoss) << ','
        << formatG17(r.actorLoss) << ',' << r.bufferSize << ',' << formatG3(r.wallSeconds)
        << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<MetricsRow> readMetrics(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open metrics: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader)
    throw IoError(path + ": missing or wrong metrics header");

  std::vector<MetricsRow> rows;
  int lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 8)
      throw IoError(path + " line " + std::to_string(lineNo) + ": expected 8 columns");
    auto u64 = [&](int i) {
      long long v = 0;
      if (!parseLongStrict(cells[i], v) || v < 0)
        throw IoError(path + " line " + std::to_string(lineNo) + ": bad count " + cells[i]);
      return static_cast<std::uint64_t>(v);
    };
    auto real = [&](int i) {
      double v = 0;
      if (!parseDoubleStrict(cells[i], v))
        throw IoError(path + " line " + std::to_string(lineNo) + ": bad number " + cells[i]);
      return v;
    };
    MetricsRow r;
    r.envStep = u64(0);
    r.episodes = u64(1);
    r.successRate = real(2);
    r.meanReturn = real(3);
    r.criticLoss = real(4);
    r.actorLoss = real(5);
    r.bufferSize = u64(6);
    r.wallSeconds = real(7);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace hb
