#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "apollo/analysis.hpp"
#include "apollo/gasket.hpp"
#include "apollo/parametrize.hpp"
#include "apollo/tracer.hpp"

namespace apollo::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kGasketFormat = "apollonian-gasket";
inline constexpr const char* kPathFormat = "apollonian-path";
inline constexpr const char* kPlotFormat = "apollonian-loglog";
inline constexpr int kFormatVersion = 1;

// Gasket document: the nesting hierarchy flattened into a list, interiors
// referenced by list index.
json gasket_to_json(const Gasket& g);
Gasket gasket_from_json(const json& doc);

// Path document: elements, trace tree and the outer circle for rendering.
json path_to_json(const TraceResult& trace, const Circle& outer);
struct PathDocument {
  TraceResult trace;
  Circle outer;
};
PathDocument path_from_json(const json& doc);

struct SvgOptions {
  double stroke_width = 0.0;  // zero: delta / 2
  std::string stroke = "black";
};

// A single <path> element; arcs as elliptical-arc commands.
std::string render_svg(const TracePath& path, const Circle& outer, const SvgOptions& opts = {});

std::string report_csv(const AnalysisReport& report);
json report_plot_json(const AnalysisReport& report);
std::string convergence_csv(const ConvergenceReport& report);

// Shortest round-trip representation.
std::string format_real(double v);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace apollo::io
