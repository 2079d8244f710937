#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "eulerpath/cycles.hpp"
#include "eulerpath/density.hpp"
#include "eulerpath/lab.hpp"
#include "eulerpath/stitcher.hpp"

namespace py = pybind11;
using namespace eulerpath;

PYBIND11_MODULE(_core, m) {
  m.doc() = "long directed paths in connected Eulerian digraphs";

  py::register_exception<Error>(m, "EulerpathError");

  py::class_<Digraph>(m, "Digraph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             return Digraph::from_edges(n, edges);
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Digraph::vertex_count)
      .def_property_readonly("m", &Digraph::edge_count)
      .def("out_neighbors", &Digraph::out_neighbors)
      .def("in_neighbors", &Digraph::in_neighbors)
      .def("has_edge", &Digraph::has_edge)
      .def("edges", &Digraph::edge_list)
      .def("average_degree", &Digraph::average_degree)
      .def("__repr__", [](const Digraph& g) {
        std::ostringstream out;
        out << "Digraph(n=" << g.vertex_count() << ", m=" << g.edge_count()
            << ")";
        return out.str();
      });

  m.def("is_eulerian", &is_eulerian);
  m.def("is_strongly_connected", &is_strongly_connected);
  m.def("check_path", &check_path);
  m.def("sccs", [](const Digraph& g) { return sccs(g).components; });
  m.def("path_to_set", [](const Digraph& g, int v, const std::vector<int>& t) {
    return path_to_set(g, v, t).vertices;
  });
  m.def("decompose_into_cycles",
        [](const Digraph& g) { return decompose_into_cycles(g).cycles; });
  m.def("min_outdegree_cycle", &min_outdegree_cycle);
  m.def(
      "phi",
      [](double c, double eps, double d) { return phi({c, eps, d}); },
      py::arg("c") = 0.01, py::arg("eps") = 1.0 / 40.0, py::arg("d") = 1.0);
  m.def(
      "long_path_from",
      [](const Digraph& g, int v, double c, double eps, std::uint64_t seed) {
        PipelineConfig cfg;
        cfg.c = c;
        cfg.eps = eps;
        Rng rng(seed);
        LongPathResult res = long_path_from(g, v, cfg, rng);
        return py::make_tuple(res.path.vertices, res.certified, res.phi_d);
      },
      py::arg("g"), py::arg("v"), py::arg("c") = 0.01,
      py::arg("eps") = 1.0 / 40.0, py::arg("seed") = 0,
      "returns (path, certified, phi_d)");
  m.def(
      "generate",
      [](const std::string& spec, std::uint64_t seed, bool use_seed) {
        return generate(GeneratorSpec::parse(spec), seed, use_seed);
      },
      py::arg("spec"), py::arg("seed") = 0, py::arg("use_seed") = false);
  m.def("oracle_longest_path_from", &oracle_longest_path_from, py::arg("g"),
        py::arg("v"), py::arg("cap") = 16);
  m.def("oracle_longest_cycle", &oracle_longest_cycle, py::arg("g"),
        py::arg("cap") = 16);
  m.def("run_experiment", [](const std::string& config_text) {
    std::istringstream in(config_text);
    return experiment_csv(run_experiment(ExperimentConfig::from_stream(in)));
  });
}
