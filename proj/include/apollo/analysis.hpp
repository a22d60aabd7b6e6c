#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "apollo/gasket.hpp"
#include "apollo/parametrize.hpp"
#include "apollo/tracer.hpp"

namespace apollo {

// Exact length: arcs as radius * sweep, walls as segment lengths.
double path_length(const TracePath& path);

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;  // NaN with only two samples
};

struct LengthSample {
  double r_min = 0.0;
  double total_length = 0.0;
};

// Ordinary least squares on (log2 x, log2 y).
LogLogFit loglog_fit(std::span<const LengthSample> samples);

struct AnalysisReport {
  std::vector<LengthSample> samples;
  std::optional<LogLogFit> fit;  // empty with fewer than two samples

  bool slope_defined() const { return fit.has_value(); }
  double slope() const { return fit ? fit->slope : std::numeric_limits<double>::quiet_NaN(); }
  double dimension_estimate() const { return 1.0 - slope(); }
};

AnalysisReport make_report(std::vector<LengthSample> samples);

struct SweepConfig {
  double outer_radius = 1024.0;
  SeedStyle seed = SeedStyle::three_equal();
  double r_min_start = 64.0;
  double ratio = 0.5;
  int steps = 6;
  bool nested = true;
  double delta_fraction = 0.25;  // delta = fraction * r_min
  bool parallel = true;
};

struct SweepRun {
  double r_min = 0.0;
  Gasket gasket;
  TraceResult trace;
  double length = 0.0;
};

void validate(const SweepConfig& cfg);

// One build + trace per r_min = r_min_start * ratio^k, k = 0 .. steps-1,
// returned in that order.
std::vector<SweepRun> sweep_runs(const SweepConfig& cfg);

AnalysisReport sweep(const SweepConfig& cfg);

// Hausdorff distance to the previous run and density gap for each run.
ConvergenceReport convergence(std::span<const SweepRun> runs, double grid_step,
                              double sample_step = 0.0);

}  // namespace apollo
