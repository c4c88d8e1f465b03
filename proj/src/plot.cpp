#include "hb/plot.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hb/errors.hpp"
#include "hb/metrics.hpp"

namespace hb {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 520;
constexpr int kLeft = 70, kRight = 170, kTop = 30, kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escapeXml(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

std::string num(double v) {
  std::ostringstream ss;
  ss.precision(2);
  ss << std::fixed << v;
  return ss.str();
}

}  // namespace

void emitPlot(const std::vector<std::string>& metricsPaths, const std::string& outPath) {
  if (metricsPaths.empty()) throw ConfigError("plot: no metrics files given");

  std::vector<std::vector<MetricsRow>> series;
  double maxStep = 0;
  for (const std::string& path : metricsPaths) {
    series.push_back(readMetrics(path));
    for (const MetricsRow& r : series.back())
      maxStep = std::max(maxStep, double(r.envStep));
  }
  if (maxStep <= 0) maxStep = 1;

  const double plotW = kWidth - kLeft - kRight;
  const double plotH = kHeight - kTop - kBottom;
  auto sx = [&](double step) { return kLeft + plotW * (step / maxStep); };
  auto sy = [&](double rate) { return kTop + plotH * (1.0 - rate); };

  std::ofstream out(outPath);
  if (!out) throw IoError("cannot open plot for writing: " + outPath);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes with ticks and labels.
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plotH << "\" x2=\"" << kLeft + plotW
      << "\" y2=\"" << kTop + plotH << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plotH << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double frac = i / 5.0;
    const double x = kLeft + plotW * frac;
    const double y = kTop + plotH * (1 - frac);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << kTop + plotH << "\" x2=\"" << num(x)
        << "\" y2=\"" << kTop + plotH + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(x) << "\" y=\"" << kTop + plotH + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">" << std::uint64_t(maxStep * frac)
        << "</text>\n";
    out << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 10 << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-size=\"12\">" << num(frac) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plotW / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"14\">environment steps</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + plotH / 2
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << kTop + plotH / 2 << ")\">success rate</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    const bool dashed = s >= sizeof(kPalette) / sizeof(kPalette[0]);
    if (!series[s].empty()) {
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"";
      if (dashed) out << " stroke-dasharray=\"6 3\"";
      out << " points=\"";
      for (const MetricsRow& r : series[s])
        out << num(sx(double(r.envStep))) << ',' << num(sy(r.successRate)) << ' ';
      out << "\"/>\n";
    }
    const double ly = kTop + 18.0 * double(s);
    out << "<rect x=\"" << kLeft + plotW + 14 << "\" y=\"" << num(ly) << "\" width=\"18\""
        << " height=\"4\" fill=\"" << color << "\"/>\n";
    out << "<text x=\"" << kLeft + plotW + 38 << "\" y=\"" << num(ly + 6)
        << "\" font-size=\"11\">"
        << escapeXml(std::filesystem::path(metricsPaths[s]).filename().string()) << "</text>\n";
  }
  out << "</svg>\n";
  out.flush();
  if (!out) throw IoError("write failed: " + outPath);
}

}  // namespace hb
