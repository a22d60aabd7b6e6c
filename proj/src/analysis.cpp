#include "apollo/analysis.hpp"

#include <cmath>
#include <future>
#include <limits>

#include "apollo/error.hpp"

namespace apollo {

double path_length(const TracePath& path) {
  double total = 0.0;
  for (const auto& e : path.elements) total += element_length(e);
  return total;
}

LogLogFit loglog_fit(std::span<const LengthSample> samples) {
  if (samples.size() < 2) {
    throw Error(ErrorCode::DegenerateFit, "a log-log fit needs at least two samples");
  }
  const auto n = static_cast<double>(samples.size());
  double mx = 0.0, my = 0.0;
  for (const auto& s : samples) {
    if (!(s.r_min > 0.0) || !(s.total_length > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "log-log fit needs positive values");
    }
    mx += std::log2(s.r_min);
    my += std::log2(s.total_length);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : samples) {
    const double dx = std::log2(s.r_min) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log2(s.total_length) - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateFit, "all x values are equal");

  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (samples.size() > 2) {
    double ssr = 0.0;
    for (const auto& s : samples) {
      const double r = std::log2(s.total_length) - (fit.intercept + fit.slope * std::log2(s.r_min));
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / (n - 2.0) / sxx);
  } else {
    fit.slope_stderr = std::numeric_limits<double>::quiet_NaN();
  }
  return fit;
}

AnalysisReport make_report(std::vector<LengthSample> samples) {
  AnalysisReport rep;
  rep.samples = std::move(samples);
  if (rep.samples.size() >= 2) rep.fit = loglog_fit(rep.samples);
  return rep;
}

void validate(const SweepConfig& cfg) {
  if (!(cfg.outer_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "outer radius must be positive");
  if (!(cfg.r_min_start > 0.0)) throw Error(ErrorCode::InvalidArgument, "r_min must be positive");
  if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0)) throw Error(ErrorCode::InvalidArgument, "ratio must lie in (0, 1)");
  if (cfg.steps < 1) throw Error(ErrorCode::InvalidArgument, "steps must be at least 1");
  if (!(cfg.delta_fraction > 0.0 && cfg.delta_fraction <= 0.25)) {
    throw Error(ErrorCode::DeltaTooLarge, "delta must not exceed r_min / 4");
  }
  const double last = cfg.r_min_start * std::pow(cfg.ratio, cfg.steps - 1);
  if (last < 1e-6 * cfg.outer_radius) {
    throw Error(ErrorCode::InvalidArgument, "smallest r_min falls below the resolution floor");
  }
}

namespace {

SweepRun run_one(const SweepConfig& cfg, double r_min) {
  SweepRun run;
  run.r_min = r_min;
  run.gasket = build_gasket(cfg.outer_radius, cfg.seed, r_min, cfg.nested);
  const double delta = cfg.delta_fraction * r_min;
  run.trace = cfg.nested ? trace_nested(run.gasket, delta) : trace(run.gasket, delta);
  run.length = path_length(run.trace.path);
  return run;
}

}  // namespace

std::vector<SweepRun> sweep_runs(const SweepConfig& cfg) {
  validate(cfg);
  std::vector<double> r_mins;
  for (int k = 0; k < cfg.steps; ++k) r_mins.push_back(cfg.r_min_start * std::pow(cfg.ratio, k));

  std::vector<SweepRun> runs;
  runs.reserve(r_mins.size());
  if (cfg.parallel && r_mins.size() > 1) {
    std::vector<std::future<SweepRun>> jobs;
    for (double r : r_mins) jobs.push_back(std::async(std::launch::async, run_one, std::cref(cfg), r));
    for (auto& j : jobs) runs.push_back(j.get());
  } else {
    for (double r : r_mins) runs.push_back(run_one(cfg, r));
  }
  return runs;
}

AnalysisReport sweep(const SweepConfig& cfg) {
  const auto runs = sweep_runs(cfg);
  std::vector<LengthSample> samples;
  for (const auto& r : runs) samples.push_back({r.r_min, r.length});
  return make_report(std::move(samples));
}

ConvergenceReport convergence(std::span<const SweepRun> runs, double grid_step, double sample_step) {
  ConvergenceReport rep;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const auto& run = runs[i];
    ConvergenceEntry e;
    e.n = static_cast<int>(i) + 1;
    e.r_min = run.r_min;
    const double step = sample_step > 0.0 ? sample_step : run.trace.path.delta;
    e.density_gap = density_gap(run.trace.path, run.gasket.outer(), grid_step, step);
    if (i == 0) {
      e.hausdorff_prev = std::numeric_limits<double>::quiet_NaN();
    } else {
      const auto& prev = runs[i - 1];
      const double h_step = std::min({step, prev.trace.path.delta, run.trace.path.delta});
      e.hausdorff_prev = hausdorff(prev.trace.path, run.trace.path, h_step);
    }
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace apollo
