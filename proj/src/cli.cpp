#include "apollo/cli.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "apollo/analysis.hpp"
#include "apollo/error.hpp"
#include "apollo/io.hpp"
#include "apollo/parametrize.hpp"
#include "apollo/tracer.hpp"

namespace apollo::cli {

void validate(const JobConfig& cfg) {
  if (!(cfg.outer_radius > 0.0) || !std::isfinite(cfg.outer_radius)) {
    throw Error(ErrorCode::InvalidArgument, "--outer must be positive");
  }
  if (!(cfg.r_min > 0.0) || !std::isfinite(cfg.r_min)) {
    throw Error(ErrorCode::InvalidArgument, "--rmin must be positive");
  }
  if (cfg.delta) {
    if (!(*cfg.delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "--delta must be positive");
    if (*cfg.delta > 0.25 * cfg.r_min) {
      throw Error(ErrorCode::DeltaTooLarge, "--delta must not exceed rmin / 4");
    }
  }
  if (!(cfg.ratio > 0.0 && cfg.ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "--ratio must lie in (0, 1)");
  }
  if (cfg.steps < 1) throw Error(ErrorCode::InvalidArgument, "--steps must be at least 1");
  if (cfg.grid_step < 0.0) throw Error(ErrorCode::InvalidArgument, "--grid-step must be positive");
  if (cfg.sample_step < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "--sample-step must be positive");
  }
}

namespace {

struct SeedFlags {
  std::string kind;
  double r1 = 0.0;
  double r2 = 0.0;
  double placement = 180.0;
};

SeedStyle resolve_seed(const SeedFlags& f, bool nested) {
  const std::string kind = f.kind.empty() ? (nested ? "three-equal" : "two-equal") : f.kind;
  switch (parse_seed_kind(kind)) {
    case SeedKind::TwoEqual: return SeedStyle::two_equal();
    case SeedKind::ThreeEqual: return SeedStyle::three_equal();
    case SeedKind::Custom:
      if (!(f.r1 > 0.0) || !(f.r2 > 0.0)) {
        throw Error(ErrorCode::InvalidSeed, "--seed custom needs --r1 and --r2");
      }
      return SeedStyle::custom(f.r1, f.r2, f.placement);
  }
  throw Error(ErrorCode::InvalidSeed, "unknown seed style");
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

Gasket build(const JobConfig& cfg) {
  validate(cfg);
  return build_gasket(cfg.outer_radius, cfg.seed, cfg.r_min, cfg.nested);
}

Gasket load_or_build(const JobConfig& cfg) {
  if (cfg.in_path.empty()) return build(cfg);
  return io::gasket_from_json(io::read_json_file(cfg.in_path));
}

bool has_interiors(const Gasket& g) {
  for (const auto& n : g.nodes) {
    if (n.interior) return true;
  }
  return false;
}

int cmd_generate(const JobConfig& cfg, std::ostream& out) {
  const Gasket g = build(cfg);
  emit(cfg.out_path, dump(io::gasket_to_json(g)), out);
  return kExitOk;
}

int cmd_trace(JobConfig cfg, std::ostream& out) {
  const Gasket g = load_or_build(cfg);
  if (!cfg.in_path.empty()) {
    cfg.r_min = g.r_min;
    cfg.outer_radius = g.outer().radius;
    validate(cfg);
  }
  const double delta = cfg.effective_delta();
  const bool nested = cfg.nested || has_interiors(g);
  const TraceResult tr = nested ? trace_nested(g, delta) : trace(g, delta);
  emit(cfg.out_path, dump(io::path_to_json(tr, g.outer())), out);
  if (!cfg.svg_path.empty()) io::write_text_file(cfg.svg_path, io::render_svg(tr.path, g.outer()));
  return kExitOk;
}

io::PathDocument load_path(const JobConfig& cfg) {
  if (cfg.in_path.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required");
  return io::path_from_json(io::read_json_file(cfg.in_path));
}

int cmd_render(const JobConfig& cfg, std::ostream& out) {
  const auto doc = load_path(cfg);
  emit(cfg.out_path, io::render_svg(doc.trace.path, doc.outer), out);
  return kExitOk;
}

int cmd_sweep(const JobConfig& cfg, std::ostream& out) {
  validate(cfg);
  SweepConfig sc;
  sc.outer_radius = cfg.outer_radius;
  sc.seed = cfg.seed;
  sc.r_min_start = cfg.r_min;
  sc.ratio = cfg.ratio;
  sc.steps = cfg.steps;
  sc.nested = cfg.nested;
  sc.delta_fraction = cfg.delta ? *cfg.delta / cfg.r_min : 0.25;
  const auto runs = sweep_runs(sc);

  std::vector<LengthSample> samples;
  for (const auto& r : runs) samples.push_back({r.r_min, r.length});
  const AnalysisReport report = make_report(std::move(samples));

  emit(cfg.out_path, io::report_csv(report), out);
  if (!cfg.plot_path.empty()) io::write_text_file(cfg.plot_path, dump(io::report_plot_json(report)));
  if (!cfg.convergence_path.empty()) {
    const double grid = cfg.grid_step > 0.0 ? cfg.grid_step : cfg.outer_radius / 50.0;
    io::write_text_file(cfg.convergence_path,
                        io::convergence_csv(convergence(runs, grid, cfg.sample_step)));
  }
  return kExitOk;
}

int cmd_analyze(const JobConfig& cfg, std::ostream& out) {
  const auto doc = load_path(cfg);
  const TracePath& path = doc.trace.path;
  const double step = cfg.sample_step > 0.0 ? cfg.sample_step : 0.25 * path.delta;
  const double grid = cfg.grid_step > 0.0 ? cfg.grid_step : doc.outer.radius / 50.0;

  io::json j;
  j["elements"] = path.elements.size();
  j["closed"] = path.closed;
  j["delta"] = path.delta;
  j["length"] = path_length(path);
  j["sample_step"] = step;
  j["simple"] = is_simple(path, step);
  j["grid_step"] = grid;
  j["density_gap"] = density_gap(path, doc.outer, grid, path.delta);
  emit(cfg.out_path, dump(j), out);
  return kExitOk;
}

void diagnose(std::ostream& err, std::string_view code, const std::string& message) {
  std::string flat;
  for (char c : message) {
    if (c == '\n' || c == '\r') {
      flat += ' ';
    } else if (c == '"' || c == '\\') {
      flat += '\\';
      flat += c;
    } else {
      flat += c;
    }
  }
  err << "error: code=" << code << " message=\"" << flat << "\"\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Apollonian gasket single-line tracer"};
  app.require_subcommand(1);

  JobConfig cfg;
  SeedFlags seed;
  double delta = 0.0;

  auto add_build = [&](CLI::App* sub) {
    sub->add_option("--outer", cfg.outer_radius, "Outer circle radius");
    sub->add_option("--seed", seed.kind, "Seed style")
        ->check(CLI::IsMember({"two-equal", "three-equal", "custom"}));
    sub->add_option("--r1", seed.r1, "First seed radius (custom)");
    sub->add_option("--r2", seed.r2, "Second seed radius (custom)");
    sub->add_option("--placement", seed.placement, "First seed polar angle in degrees (custom)");
    sub->add_option("--rmin", cfg.r_min, "Minimum circle radius");
    sub->add_flag("--nested", cfg.nested, "Nest gaskets inside large circles");
  };

  auto* gen = app.add_subcommand("generate", "Build a gasket document");
  add_build(gen);
  gen->add_option("--out", cfg.out_path, "Output file");

  auto* tr = app.add_subcommand("trace", "Trace a gasket into a path document");
  add_build(tr);
  tr->add_option("--in", cfg.in_path, "Gasket document (instead of build flags)");
  tr->add_option("--delta", delta, "Shrink distance");
  tr->add_option("--out", cfg.out_path, "Path document output");
  tr->add_option("--svg", cfg.svg_path, "SVG output");

  auto* ren = app.add_subcommand("render", "Render a path document as SVG");
  ren->add_option("--in", cfg.in_path, "Path document")->required();
  ren->add_option("--out", cfg.out_path, "SVG output");

  auto* sw = app.add_subcommand("sweep", "Length scaling over a geometric r_min schedule");
  add_build(sw);
  bool plain = false;
  sw->add_flag("--plain", plain, "Type I traces (no nesting)");
  sw->add_option("--delta", delta, "Shrink distance at the first r_min (scaled along)");
  sw->add_option("--ratio", cfg.ratio, "r_min ratio between steps");
  sw->add_option("--steps", cfg.steps, "Number of r_min values");
  sw->add_option("--out", cfg.out_path, "CSV output");
  sw->add_option("--plot", cfg.plot_path, "Log-log plot document output");
  sw->add_option("--convergence", cfg.convergence_path, "Convergence CSV output");
  sw->add_option("--grid-step", cfg.grid_step, "Density grid step (default outer/50)");
  sw->add_option("--sample-step", cfg.sample_step, "Path sampling step (default delta)");

  auto* an = app.add_subcommand("analyze", "Length, simplicity and density of a path document");
  an->add_option("--in", cfg.in_path, "Path document")->required();
  an->add_option("--out", cfg.out_path, "Output file");
  an->add_option("--grid-step", cfg.grid_step, "Density grid step (default outer/50)");
  an->add_option("--sample-step", cfg.sample_step, "Path sampling step (default delta/4)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnose(err, "UsageError", e.what());
    return kExitValidation;
  }

  try {
    if (*sw) {
      if (sw->count("--outer") == 0) cfg.outer_radius = 1024.0;
      if (sw->count("--rmin") == 0) cfg.r_min = 64.0;
      cfg.nested = !plain;
    }
    if ((*tr && tr->count("--delta")) || (*sw && sw->count("--delta"))) {
      cfg.delta = delta;
    }
    if (*gen || *tr || *sw) cfg.seed = resolve_seed(seed, cfg.nested);
    if (*tr && !cfg.in_path.empty() && tr->count("--rmin")) {
      throw Error(ErrorCode::InvalidArgument, "--in and --rmin are mutually exclusive");
    }

    if (*gen) return cmd_generate(cfg, out);
    if (*tr) return cmd_trace(cfg, out);
    if (*ren) return cmd_render(cfg, out);
    if (*sw) return cmd_sweep(cfg, out);
    return cmd_analyze(cfg, out);
  } catch (const Error& e) {
    diagnose(err, to_string(e.code()), e.what());
    return is_validation_error(e.code()) ? kExitValidation : kExitComputation;
  } catch (const std::exception& e) {
    diagnose(err, "Internal", e.what());
    return kExitComputation;
  }
}

}  // namespace apollo::cli
