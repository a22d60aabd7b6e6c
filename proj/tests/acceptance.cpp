// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "apollo/analysis.hpp"
#include "apollo/cli.hpp"
#include "apollo/gasket.hpp"
#include "apollo/parametrize.hpp"
#include "apollo/tracer.hpp"

using namespace apollo;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0.0 && secs >= limit_s) {
    o.pass = false;
    o.detail += "; over time limit " + fmt("%.0fs", limit_s);
  }
  if (!o.pass) ++failures;
  std::printf("%s %d %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
}

Outcome descartes_identity() {
  // The plain gasket holds 169 circles at this r_min; the nested hierarchy
  // with the same parameters supplies the larger sample.
  const Gasket plain = build_gasket(1.0, SeedStyle::two_equal(), 0.01, false);
  const Gasket nested = build_gasket(1.0, SeedStyle::two_equal(), 0.01, true);
  double worst = 0.0;
  std::size_t quads = 0;
  auto scan = [&](const Gasket& g, int) {
    for (const auto& n : g.nodes) {
      if (n.parents.size() != 3) continue;
      double s = n.circle.curvature(), q = s * s;
      for (NodeId p : n.parents) {
        const double k = g.node(p).circle.curvature();
        s += k;
        q += k * k;
      }
      worst = std::max(worst, std::abs(s * s - 2.0 * q) / (s * s));
      ++quads;
    }
  };
  scan(plain, 0);
  for_each_gasket(nested, scan);
  const std::size_t circles = count_traceable_nodes(nested) + 1;
  const bool ok = circles >= 500 && worst < 1e-9;
  return {ok, "plain circles=" + std::to_string(plain.size()) + " nested circles=" +
                  std::to_string(circles) + " quadruples=" + std::to_string(quads) +
                  " max_rel_err=" + fmt("%.3g", worst)};
}

Outcome known_values() {
  const double k = descartes_curvatures(1, 1, 1).plus;
  const bool soddy = std::abs(k - 6.464) < 5e-4;

  const Gasket g = build_gasket(1.0, SeedStyle::two_equal(), 0.2, false);
  bool thirds = g.size() == 5;
  for (NodeId id = 3; id < static_cast<NodeId>(g.size()); ++id) {
    thirds = thirds && g.node(id).circle.curvature() == 3.0;
  }

  const Gasket t = initial_configuration(1.0, SeedStyle::three_equal());
  const double ratio_err = std::abs(t.node(1).circle.radius - (2.0 * std::sqrt(3.0) - 3.0));
  const bool ratio = ratio_err < 1e-12;
  return {soddy && thirds && ratio, "k(1,1,1)=" + fmt("%.6f", k) +
                                        " two-equal children k=3 exactly: " + (thirds ? "yes" : "no") +
                                        " three-equal ratio err=" + fmt("%.2g", ratio_err)};
}

Outcome completeness() {
  struct Case {
    const char* label;
    Gasket g;
    bool nested;
  };
  std::vector<Case> cases;
  cases.push_back({"desk", build_gasket(1.0, SeedStyle::two_equal(), 0.2, false), false});
  cases.push_back({"typeI", build_gasket(1.0, SeedStyle::two_equal(), 0.02, false), false});
  cases.push_back({"typeII", build_gasket(1.0, SeedStyle::three_equal(), 0.02, true), true});
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    bool frontier_ok = true;
    for_each_gasket(c.g, [&](const Gasket& gk, int) {
      for (const auto& f : gk.frontier) frontier_ok = frontier_ok && f.child_radius < gk.r_min;
    });
    const TraceResult tr = c.nested ? trace_nested(c.g, c.g.r_min / 4) : trace(c.g, c.g.r_min / 4);
    std::vector<std::vector<int>> seen;
    std::vector<const Gasket*> gaskets{&c.g};
    for (std::size_t i = 1; i < tr.tree.gasket_hosts.size(); ++i) {
      const NodeRef h = tr.tree.gasket_hosts[i];
      gaskets.push_back(gaskets[static_cast<std::size_t>(h.gasket)]->node(h.node).interior.get());
    }
    for (const Gasket* gk : gaskets) seen.emplace_back(gk->size(), 0);
    for (const auto& n : tr.tree.nodes) ++seen[static_cast<std::size_t>(n.ref.gasket)][static_cast<std::size_t>(n.ref.node)];
    bool once = gaskets.size() == [&] {
      std::size_t n = 0;
      for_each_gasket(c.g, [&](const Gasket&, int) { ++n; });
      return n;
    }();
    for (const auto& s : seen) {
      once = once && s[0] == 0;
      for (std::size_t i = 1; i < s.size(); ++i) once = once && s[i] == 1;
    }
    const std::size_t expect = count_traceable_nodes(c.g);
    const bool count_ok = tr.tree.nodes.size() == expect;
    ok = ok && frontier_ok && once && count_ok;
    detail += std::string(detail.empty() ? "" : "; ") + c.label + " nodes=" +
              std::to_string(tr.tree.nodes.size()) + "/" + std::to_string(expect) +
              (frontier_ok ? "" : " frontier-violation") + (once ? "" : " visit-mismatch");
  }
  return {ok, detail};
}

Outcome simplicity() {
  bool ok = true;
  std::string detail;
  for (bool nested : {false, true}) {
    for (double r : {0.1, 0.05, 0.02}) {
      const Gasket g = build_gasket(1.0, nested ? SeedStyle::three_equal() : SeedStyle::two_equal(), r, nested);
      const double delta = r / 4;
      const TraceResult tr = nested ? trace_nested(g, delta) : trace(g, delta);
      const bool s = tr.path.closed && is_simple(tr.path, delta / 4);
      ok = ok && s;
      if (!s) detail += std::string(nested ? " typeII" : " typeI") + "@" + fmt("%g", r) + "=self-intersecting";
    }
  }
  return {ok, ok ? "type I and II at r_min 0.1, 0.05, 0.02 are simple closed curves" : detail};
}

std::vector<SweepRun> g_runs;

Outcome length_slope() {
  SweepConfig cfg;  // outer 1024, three-equal, 64 -> 2, ratio 1/2, nested
  g_runs = sweep_runs(cfg);
  std::vector<LengthSample> samples;
  std::string lengths;
  bool increasing = true;
  for (std::size_t i = 0; i < g_runs.size(); ++i) {
    samples.push_back({g_runs[i].r_min, g_runs[i].length});
    lengths += (i ? "," : "") + fmt("%.0f", g_runs[i].length);
    if (i > 0) increasing = increasing && g_runs[i].length > g_runs[i - 1].length;
  }
  const LogLogFit fit = loglog_fit(samples);
  const bool ok = samples.size() == 6 && increasing && std::abs(fit.slope - (-1.011)) <= 0.15;
  return {ok, "slope=" + fmt("%.4f", fit.slope) + " stderr=" + fmt("%.4f", fit.slope_stderr) +
                  " dimension=" + fmt("%.4f", 1.0 - fit.slope) + " lengths=" + lengths};
}

Outcome space_filling() {
  if (g_runs.empty()) return {false, "sweep unavailable"};
  const double grid = g_runs.front().gasket.outer().radius / 50.0;
  std::vector<double> gaps;
  for (const auto& run : g_runs) gaps.push_back(density_gap(run.trace.path, run.gasket.outer(), grid));
  bool non_increasing = true;
  std::string detail = "gaps=";
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    detail += (i ? "," : "") + fmt("%.3f", gaps[i]);
    if (i > 0) non_increasing = non_increasing && gaps[i] <= gaps[i - 1];
  }
  const double bound = 4.0 * g_runs.back().r_min;
  const bool ok = non_increasing && gaps.back() < bound;
  return {ok, detail + " final<" + fmt("%g", bound)};
}

Outcome parameterization() {
  const bool loc = locate(0.23, 5) == 1;
  bool counts = true;
  int max_count = 0;
  double worst = -1e300;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (bool nested : {false, true}) {
    for (double r : {0.1, 0.05, 0.02}) {
      const Gasket g = build_gasket(1.0, nested ? SeedStyle::three_equal() : SeedStyle::two_equal(), r, nested);
      const TraceResult tr = nested ? trace_nested(g, r / 4) : trace(g, r / 4);
      const SegmentTree st = segment_split(tr.tree);
      for (std::size_t i = 0; i < st.nodes.size(); ++i) {
        const int c = st.nodes[i].count();
        max_count = std::max(max_count, c);
        counts = counts && c == 2 * static_cast<int>(tr.tree.nodes[i].excursions.size()) + 1 &&
                 c % 2 == 1 && c >= 1 && c <= 9;
      }
      if (nested && r == 0.05) {
        const ArcLengthParam p(tr.path);
        const double l = p.total_length();
        for (int k = 0; k < 10000; ++k) {
          const double a = u(rng), b = u(rng);
          worst = std::max(worst, distance(p.at(a), p.at(b)) - (l * std::abs(a - b) + 1e-9));
        }
      }
    }
  }
  const bool lip = worst <= 0.0;
  return {loc && counts && lip, std::string("locate(0.23,5)=") + std::to_string(locate(0.23, 5)) +
                                    " max_segments=" + std::to_string(max_count) +
                                    " lipschitz_margin=" + fmt("%.3g", worst)};
}

Outcome regression() {
  double worst_err = 0.0, worst_se = 0.0;
  for (double slope : {-1.0, 2.0, 0.5}) {
    std::vector<LengthSample> s;
    for (double x : {64.0, 32.0, 16.0, 8.0, 4.0, 2.0}) s.push_back({x, 5.0 * std::pow(x, slope)});
    const LogLogFit fit = loglog_fit(s);
    worst_err = std::max(worst_err, std::abs(fit.slope - slope));
    worst_se = std::max(worst_se, fit.slope_stderr);
  }
  return {worst_se < 1e-12 && worst_err < 1e-12,
          "max_slope_err=" + fmt("%.3g", worst_err) + " max_stderr=" + fmt("%.3g", worst_se)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "apollo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  const fs::path dir = fs::path(APOLLO_TEST_TMP) / "acceptance";
  fs::create_directories(dir);
  std::string docs[2][3];
  for (int i = 0; i < 2; ++i) {
    const fs::path g = dir / ("gasket" + std::to_string(i) + ".json");
    const fs::path p = dir / ("path" + std::to_string(i) + ".json");
    const fs::path s = dir / ("path" + std::to_string(i) + ".svg");
    if (run_cli({"generate", "--nested", "--rmin", "0.05", "--out", g.string()}) != 0 ||
        run_cli({"trace", "--in", g.string(), "--out", p.string(), "--svg", s.string()}) != 0) {
      return {false, "cli run failed"};
    }
    docs[i][0] = slurp(g);
    docs[i][1] = slurp(p);
    docs[i][2] = slurp(s);
  }
  const bool ok = !docs[0][1].empty() && docs[0][0] == docs[1][0] && docs[0][1] == docs[1][1] &&
                  docs[0][2] == docs[1][2];
  return {ok, "gasket " + std::to_string(docs[0][0].size()) + " bytes, path " +
                  std::to_string(docs[0][1].size()) + " bytes, svg " + std::to_string(docs[0][2].size()) +
                  " bytes"};
}

}  // namespace

int main() {
  criterion(1, "descartes-identity", 5, descartes_identity);
  criterion(2, "known-values", 0, known_values);
  criterion(3, "completeness-coverage", 0, completeness);
  criterion(4, "simplicity", 60, simplicity);
  criterion(5, "length-scaling-slope", 120, length_slope);
  criterion(6, "space-filling-density", 0, space_filling);
  criterion(7, "parameterization", 0, parameterization);
  criterion(8, "regression-self-test", 0, regression);
  criterion(9, "determinism", 0, determinism);
  std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
