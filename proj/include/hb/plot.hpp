#ifndef HB_PLOT_HPP
#define HB_PLOT_HPP

#include <string>
#include <vector>

namespace hb {

/// Self-contained SVG of success rate versus environment step: one polyline
/// per metrics file, legend from file names, labeled axes. Files with no
/// data rows contribute a legend entry but no polyline.
void emitPlot(const std::vector<std::string>& metricsPaths, const std::string& outPath);

}  // namespace hb

#endif  // HB_PLOT_HPP
