#include "apollo/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "apollo/error.hpp"

namespace apollo::io {

std::string format_real(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view orientation_name(Orientation o) { return o == Orientation::Ccw ? "ccw" : "cw"; }

Orientation parse_orientation(const std::string& s) {
  if (s == "ccw") return Orientation::Ccw;
  if (s == "cw") return Orientation::Cw;
  throw Error(ErrorCode::ParseError, "unknown orientation '" + s + "'");
}

json seed_to_json(const SeedStyle& s) {
  json j;
  j["style"] = std::string(to_string(s.kind));
  j["r1"] = s.r1;
  j["r2"] = s.r2;
  j["placement_deg"] = s.placement_deg;
  j["rotation_deg"] = s.rotation_deg;
  return j;
}

SeedStyle seed_from_json(const json& j) {
  SeedStyle s;
  s.kind = parse_seed_kind(j.at("style").get<std::string>());
  s.r1 = j.at("r1").get<double>();
  s.r2 = j.at("r2").get<double>();
  s.placement_deg = j.at("placement_deg").get<double>();
  s.rotation_deg = j.at("rotation_deg").get<double>();
  return s;
}

void check_format(const json& doc, const char* format) {
  if (!doc.is_object() || doc.value("format", std::string()) != format) {
    throw Error(ErrorCode::ParseError, std::string("document is not of format '") + format + "'");
  }
  if (doc.value("version", 0) != kFormatVersion) {
    throw Error(ErrorCode::ParseError, "unsupported document version");
  }
}

template <typename F>
auto parsing(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json ref_to_json(NodeRef r) {
  if (r.gasket < 0) return nullptr;
  return json{{"gasket", r.gasket}, {"node", r.node}};
}

NodeRef ref_from_json(const json& j) {
  if (j.is_null()) return {-1, -1};
  return {j.at("gasket").get<int>(), j.at("node").get<NodeId>()};
}

}  // namespace

json gasket_to_json(const Gasket& top) {
  json list = json::array();
  // Preorder walk; every interior gets the next free index.
  struct Item {
    const Gasket* g;
    json host;
  };
  std::vector<Item> order{{&top, nullptr}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Gasket& g = *order[i].g;
    json entry;
    entry["index"] = i;
    entry["host"] = order[i].host;
    entry["r_min"] = g.r_min;
    entry["seed_count"] = g.seed_count;
    entry["seed"] = seed_to_json(g.seed);
    json nodes = json::array();
    for (const auto& n : g.nodes) {
      json jn;
      jn["id"] = n.id;
      jn["cx"] = n.circle.center.x;
      jn["cy"] = n.circle.center.y;
      jn["r"] = n.circle.radius;
      jn["enclosing"] = n.circle.enclosing;
      jn["parents"] = n.parents;
      jn["generation"] = n.generation;
      jn["neighbors"] = n.neighbors;
      if (n.interior) {
        jn["interior"] = order.size();
        order.push_back({n.interior.get(), json{{"gasket", i}, {"node", n.id}}});
      } else {
        jn["interior"] = nullptr;
      }
      nodes.push_back(std::move(jn));
    }
    entry["nodes"] = std::move(nodes);
    list.push_back(std::move(entry));
  }
  json doc;
  doc["format"] = kGasketFormat;
  doc["version"] = kFormatVersion;
  doc["gaskets"] = std::move(list);
  return doc;
}

Gasket gasket_from_json(const json& doc) {
  check_format(doc, kGasketFormat);
  return parsing([&] {
    const json& list = doc.at("gaskets");
    if (list.empty()) throw Error(ErrorCode::ParseError, "gasket document has no gaskets");
    std::vector<std::shared_ptr<Gasket>> built(list.size());
    // Interiors always carry larger indices than their hosts.
    for (std::size_t k = list.size(); k-- > 0;) {
      const json& e = list[k];
      auto g = std::make_shared<Gasket>();
      g->r_min = e.at("r_min").get<double>();
      g->seed_count = e.at("seed_count").get<int>();
      g->seed = seed_from_json(e.at("seed"));
      for (const json& jn : e.at("nodes")) {
        GasketNode n;
        n.id = jn.at("id").get<NodeId>();
        n.circle = Circle{{jn.at("cx").get<double>(), jn.at("cy").get<double>()},
                          jn.at("r").get<double>(), jn.at("enclosing").get<bool>()};
        n.parents = jn.at("parents").get<std::vector<NodeId>>();
        n.generation = jn.at("generation").get<int>();
        n.neighbors = jn.at("neighbors").get<std::vector<NodeId>>();
        if (!jn.at("interior").is_null()) {
          const auto idx = jn.at("interior").get<std::size_t>();
          if (idx <= k || idx >= built.size() || !built[idx]) {
            throw Error(ErrorCode::ParseError, "bad interior reference");
          }
          n.interior = built[idx];
        }
        if (n.id != static_cast<NodeId>(g->nodes.size())) {
          throw Error(ErrorCode::ParseError, "node ids must be consecutive");
        }
        g->nodes.push_back(std::move(n));
      }
      if (g->nodes.empty()) throw Error(ErrorCode::ParseError, "gasket without nodes");
      built[k] = std::move(g);
    }
    return Gasket(*built.front());
  });
}

json path_to_json(const TraceResult& trace, const Circle& outer) {
  json doc;
  doc["format"] = kPathFormat;
  doc["version"] = kFormatVersion;
  doc["delta"] = trace.path.delta;
  doc["closed"] = trace.path.closed;
  doc["outer"] = json{{"cx", outer.center.x}, {"cy", outer.center.y}, {"r", outer.radius}};

  json elements = json::array();
  for (const auto& e : trace.path.elements) {
    if (const auto* a = std::get_if<ArcElement>(&e)) {
      elements.push_back(json{{"kind", "arc"},
                              {"gasket", a->node.gasket},
                              {"node", a->node.node},
                              {"cx", a->center.x},
                              {"cy", a->center.y},
                              {"r", a->draw_radius},
                              {"start_deg", a->start_deg},
                              {"end_deg", a->end_deg},
                              {"orientation", orientation_name(a->orientation)}});
    } else {
      const auto& w = std::get<BridgeWall>(e);
      elements.push_back(json{{"kind", "wall"},
                              {"x0", w.start.x},
                              {"y0", w.start.y},
                              {"x1", w.end.x},
                              {"y1", w.end.y}});
    }
  }
  doc["elements"] = std::move(elements);

  json hosts = json::array();
  for (const auto& h : trace.tree.gasket_hosts) hosts.push_back(ref_to_json(h));
  json nodes = json::array();
  for (const auto& n : trace.tree.nodes) {
    json exc = json::array();
    for (const auto& x : n.excursions) {
      exc.push_back(json{{"kind", x.kind == ExcursionKind::Satellite ? "satellite" : "inward"},
                         {"child", x.child},
                         {"arrive_deg", x.arrive_deg},
                         {"leave_deg", x.leave_deg},
                         {"child_enter_deg", x.child_enter_deg},
                         {"child_exit_deg", x.child_exit_deg},
                         {"anchor_deg", x.anchor_deg}});
    }
    nodes.push_back(json{{"gasket", n.ref.gasket},
                         {"node", n.ref.node},
                         {"parent", n.parent},
                         {"depth", n.depth},
                         {"orientation", orientation_name(n.orientation)},
                         {"cx", n.center.x},
                         {"cy", n.center.y},
                         {"radius", n.radius},
                         {"draw_radius", n.draw_radius},
                         {"enter_deg", n.enter_deg},
                         {"exit_deg", n.exit_deg},
                         {"excursions", std::move(exc)}});
  }
  doc["tree"] = json{{"gasket_hosts", std::move(hosts)}, {"nodes", std::move(nodes)}};
  return doc;
}

PathDocument path_from_json(const json& doc) {
  check_format(doc, kPathFormat);
  return parsing([&] {
    PathDocument out;
    const json& o = doc.at("outer");
    out.outer = Circle{{o.at("cx").get<double>(), o.at("cy").get<double>()}, o.at("r").get<double>(), true};
    TracePath& path = out.trace.path;
    path.delta = doc.at("delta").get<double>();
    path.closed = doc.at("closed").get<bool>();
    for (const json& e : doc.at("elements")) {
      const auto kind = e.at("kind").get<std::string>();
      if (kind == "arc") {
        path.elements.push_back(ArcElement{
            {e.at("gasket").get<int>(), e.at("node").get<NodeId>()},
            {e.at("cx").get<double>(), e.at("cy").get<double>()},
            e.at("r").get<double>(),
            e.at("start_deg").get<double>(),
            e.at("end_deg").get<double>(),
            parse_orientation(e.at("orientation").get<std::string>())});
      } else if (kind == "wall") {
        path.elements.push_back(BridgeWall{{e.at("x0").get<double>(), e.at("y0").get<double>()},
                                           {e.at("x1").get<double>(), e.at("y1").get<double>()}});
      } else {
        throw Error(ErrorCode::ParseError, "unknown element kind '" + kind + "'");
      }
    }
    if (path.elements.empty()) throw Error(ErrorCode::ParseError, "path without elements");

    if (doc.contains("tree")) {
      const json& t = doc.at("tree");
      for (const json& h : t.at("gasket_hosts")) out.trace.tree.gasket_hosts.push_back(ref_from_json(h));
      for (const json& jn : t.at("nodes")) {
        TraceNode n;
        n.ref = {jn.at("gasket").get<int>(), jn.at("node").get<NodeId>()};
        n.parent = jn.at("parent").get<int>();
        n.depth = jn.at("depth").get<int>();
        n.orientation = parse_orientation(jn.at("orientation").get<std::string>());
        n.center = {jn.at("cx").get<double>(), jn.at("cy").get<double>()};
        n.radius = jn.at("radius").get<double>();
        n.draw_radius = jn.at("draw_radius").get<double>();
        n.enter_deg = jn.at("enter_deg").get<double>();
        n.exit_deg = jn.at("exit_deg").get<double>();
        for (const json& x : jn.at("excursions")) {
          Excursion ex;
          ex.kind = x.at("kind").get<std::string>() == "inward" ? ExcursionKind::Inward
                                                                : ExcursionKind::Satellite;
          ex.child = x.at("child").get<int>();
          ex.arrive_deg = x.at("arrive_deg").get<double>();
          ex.leave_deg = x.at("leave_deg").get<double>();
          ex.child_enter_deg = x.at("child_enter_deg").get<double>();
          ex.child_exit_deg = x.at("child_exit_deg").get<double>();
          ex.anchor_deg = x.at("anchor_deg").get<double>();
          n.excursions.push_back(ex);
        }
        out.trace.tree.nodes.push_back(std::move(n));
      }
    }
    return out;
  });
}

namespace {

// SVG's y axis points down; model coordinates are flipped on output.
void put(std::ostringstream& os, Point p) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.9g %.9g", p.x, -p.y);
  os << buf;
}

}  // namespace

std::string render_svg(const TracePath& path, const Circle& outer, const SvgOptions& opts) {
  if (path.elements.empty()) throw Error(ErrorCode::InvalidArgument, "empty path");
  const double stroke = opts.stroke_width > 0.0 ? opts.stroke_width : 0.5 * path.delta;
  const double r = outer.radius;

  std::ostringstream d;
  d << 'M';
  put(d, start_point(path.elements.front()));
  for (const auto& e : path.elements) {
    if (const auto* a = std::get_if<ArcElement>(&e)) {
      const double sweep = a->sweep_deg();
      if (sweep <= 0.0) continue;
      const int pieces = static_cast<int>(std::ceil(sweep / 90.0));
      const int s = sign(a->orientation);
      // Counter-clockwise in model space is the negative angle direction once
      // y is flipped.
      const int sweep_flag = a->orientation == Orientation::Ccw ? 0 : 1;
      char rad[64];
      std::snprintf(rad, sizeof rad, "%.9g %.9g", a->draw_radius, a->draw_radius);
      for (int i = 1; i <= pieces; ++i) {
        const double deg = i == pieces ? a->end_deg : a->start_deg + s * sweep * i / pieces;
        d << " A" << rad << " 0 0 " << sweep_flag << ' ';
        put(d, on_circle(a->center, a->draw_radius, deg));
      }
    } else {
      d << " L";
      put(d, std::get<BridgeWall>(e).end);
    }
  }
  if (path.closed) d << " Z";

  char header[512];
  std::snprintf(header, sizeof header,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                "viewBox=\"%.9g %.9g %.9g %.9g\">\n",
                outer.center.x - r, -outer.center.y - r, 2.0 * r, 2.0 * r);
  char stroke_buf[64];
  std::snprintf(stroke_buf, sizeof stroke_buf, "%.9g", stroke);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << header << "<path fill=\"none\" stroke=\"" << opts.stroke << "\" stroke-width=\""
     << stroke_buf << "\" stroke-linejoin=\"round\" d=\"" << d.str() << "\"/>\n</svg>\n";
  return os.str();
}

std::string report_csv(const AnalysisReport& report) {
  std::ostringstream os;
  os << "r_min,total_length,log2_r_min,log2_length,slope,slope_stderr,dimension,slope_defined\n";
  const bool defined = report.slope_defined();
  for (const auto& s : report.samples) {
    os << format_real(s.r_min) << ',' << format_real(s.total_length) << ','
       << format_real(std::log2(s.r_min)) << ',' << format_real(std::log2(s.total_length)) << ',';
    if (defined) {
      os << format_real(report.fit->slope) << ',' << format_real(report.fit->slope_stderr) << ','
         << format_real(report.dimension_estimate());
    } else {
      os << ",,";
    }
    os << ',' << (defined ? "true" : "false") << '\n';
  }
  return os.str();
}

json report_plot_json(const AnalysisReport& report) {
  json doc;
  doc["format"] = kPlotFormat;
  doc["version"] = kFormatVersion;
  doc["log_base"] = 2;
  doc["x_label"] = "log2 r_min";
  doc["y_label"] = "log2 total length";
  json pts = json::array();
  for (const auto& s : report.samples) {
    pts.push_back(json{{"r_min", s.r_min},
                       {"length", s.total_length},
                       {"x", std::log2(s.r_min)},
                       {"y", std::log2(s.total_length)}});
  }
  doc["points"] = std::move(pts);
  if (report.fit) {
    doc["fit"] = json{{"slope", report.fit->slope},
                      {"intercept", report.fit->intercept},
                      {"slope_stderr", std::isnan(report.fit->slope_stderr)
                                           ? json(nullptr)
                                           : json(report.fit->slope_stderr)}};
    doc["dimension_estimate"] = report.dimension_estimate();
  } else {
    doc["fit"] = nullptr;
    doc["dimension_estimate"] = nullptr;
  }
  return doc;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::ostringstream os;
  os << "n,r_min,hausdorff_prev,density_gap\n";
  for (const auto& e : report.entries) {
    os << e.n << ',' << format_real(e.r_min) << ',' << format_real(e.hausdorff_prev) << ','
       << format_real(e.density_gap) << '\n';
  }
  return os.str();
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace apollo::io
