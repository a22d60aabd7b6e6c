#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "apollo/analysis.hpp"
#include "apollo/error.hpp"
#include "apollo/gasket.hpp"
#include "apollo/io.hpp"
#include "apollo/parametrize.hpp"
#include "apollo/tracer.hpp"

namespace py = pybind11;
using namespace apollo;

namespace {

SeedStyle seed_from(const std::string& name) {
  switch (parse_seed_kind(name)) {
    case SeedKind::TwoEqual: return SeedStyle::two_equal();
    case SeedKind::ThreeEqual: return SeedStyle::three_equal();
    case SeedKind::Custom: break;
  }
  throw Error(ErrorCode::InvalidSeed, "custom seeds need explicit radii");
}

struct PyTrace {
  TraceResult result;
  Circle outer;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Apollonian gasket construction, single-line tracing and length scaling";

  static py::exception<Error> error(m, "ApolloError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object code = py::str(std::string(to_string(e.code())));
      PyErr_SetObject(error.ptr(), py::make_tuple(code, e.what()).ptr());
    }
  });

  m.def("descartes_curvatures", [](double k1, double k2, double k3) {
    const auto c = descartes_curvatures(k1, k2, k3);
    return std::make_tuple(c.plus, c.minus);
  });
  m.def("locate", &locate, py::arg("t"), py::arg("m"));

  py::class_<Gasket>(m, "Gasket")
      .def_property_readonly("size", &Gasket::size)
      .def_readonly("r_min", &Gasket::r_min)
      .def_property_readonly("outer_radius", [](const Gasket& g) { return g.outer().radius; })
      .def_property_readonly("traceable_nodes", [](const Gasket& g) { return count_traceable_nodes(g); })
      .def("circles",
           [](const Gasket& g) {
             std::vector<std::tuple<double, double, double, int>> out;
             for (const auto& n : g.nodes) {
               out.emplace_back(n.circle.center.x, n.circle.center.y, n.circle.radius, n.generation);
             }
             return out;
           })
      .def("to_json", [](const Gasket& g) { return io::gasket_to_json(g).dump(); })
      .def("__len__", &Gasket::size);

  m.def(
      "build_gasket",
      [](double outer, const std::string& seed, double r_min, bool nested) {
        return build_gasket(outer, seed_from(seed), r_min, nested);
      },
      py::arg("outer") = 1.0, py::arg("seed") = "two-equal", py::arg("r_min"),
      py::arg("nested") = false);
  m.def("gasket_from_json", [](const std::string& text) {
    return io::gasket_from_json(io::json::parse(text));
  });

  py::class_<PyTrace>(m, "Trace")
      .def_property_readonly("length", [](const PyTrace& t) { return path_length(t.result.path); })
      .def_property_readonly("closed", [](const PyTrace& t) { return t.result.path.closed; })
      .def_property_readonly("delta", [](const PyTrace& t) { return t.result.path.delta; })
      .def_property_readonly("element_count", [](const PyTrace& t) { return t.result.path.elements.size(); })
      .def_property_readonly("node_count", [](const PyTrace& t) { return t.result.tree.nodes.size(); })
      .def(
          "is_simple",
          [](const PyTrace& t, std::optional<double> step) {
            return is_simple(t.result.path, step ? *step : 0.25 * t.result.path.delta);
          },
          py::arg("step") = py::none())
      .def("to_json", [](const PyTrace& t) { return io::path_to_json(t.result, t.outer).dump(); })
      .def("svg", [](const PyTrace& t) { return io::render_svg(t.result.path, t.outer); });

  m.def(
      "trace",
      [](const Gasket& g, std::optional<double> delta) {
        const double d = delta ? *delta : 0.25 * g.r_min;
        bool nested = false;
        for (const auto& n : g.nodes) nested = nested || static_cast<bool>(n.interior);
        PyTrace t{nested ? trace_nested(g, d) : trace(g, d), g.outer()};
        return t;
      },
      py::arg("gasket"), py::arg("delta") = py::none());

  m.def(
      "loglog_fit",
      [](const std::vector<double>& r_min, const std::vector<double>& length) {
        if (r_min.size() != length.size()) {
          throw Error(ErrorCode::InvalidArgument, "r_min and length differ in size");
        }
        std::vector<LengthSample> s;
        for (std::size_t i = 0; i < r_min.size(); ++i) s.push_back({r_min[i], length[i]});
        const auto fit = loglog_fit(s);
        return std::make_tuple(fit.slope, fit.intercept, fit.slope_stderr);
      },
      py::arg("r_min"), py::arg("length"));

  m.def(
      "sweep",
      [](double outer, const std::string& seed, double r_min_start, double ratio, int steps,
         bool nested) {
        SweepConfig cfg;
        cfg.outer_radius = outer;
        cfg.seed = seed_from(seed);
        cfg.r_min_start = r_min_start;
        cfg.ratio = ratio;
        cfg.steps = steps;
        cfg.nested = nested;
        AnalysisReport rep;
        {
          py::gil_scoped_release release;
          rep = apollo::sweep(cfg);
        }
        py::dict d;
        py::list samples;
        for (const auto& s : rep.samples) samples.append(py::make_tuple(s.r_min, s.total_length));
        d["samples"] = samples;
        d["slope"] = rep.slope_defined() ? py::object(py::float_(rep.slope())) : py::object(py::none());
        d["dimension"] = rep.slope_defined() ? py::object(py::float_(rep.dimension_estimate()))
                                             : py::object(py::none());
        return d;
      },
      py::arg("outer") = 1024.0, py::arg("seed") = "three-equal", py::arg("r_min_start") = 64.0,
      py::arg("ratio") = 0.5, py::arg("steps") = 6, py::arg("nested") = true);
}
