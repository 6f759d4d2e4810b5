// Python module: thin views over the library. Graphs and distance tables are
// held as opaque objects; reports cross the boundary as JSON strings and the
// package wrapper turns them into dicts.
#include "hypertree/covering.hpp"
#include "hypertree/distance.hpp"
#include "hypertree/faithful.hpp"
#include "hypertree/geodetic.hpp"
#include "hypertree/graph.hpp"
#include "hypertree/gromov.hpp"
#include "hypertree/json_io.hpp"
#include "hypertree/pipeline.hpp"
#include "hypertree/visual.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <memory>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace hypertree;

namespace {

// bundles the shared preparation: distances, products, cells, doubling
struct Workspace {
  TruncatedGraph g;
  DistanceOracle d;
  GromovTable t;
  double epsilon = 0;
  BoundaryCellSet cells;
  DoublingReport doubling;

  static Workspace make(const TruncatedGraph& graph, double epsilon_or_zero,
                        int threshold2x_or_min, int threads) {
    Workspace w;
    w.g = graph;
    w.d = all_pairs_distances(w.g, threads);
    w.t = gromov_table(w.d, w.g.root, 600, 1, threads);
    w.epsilon = epsilon_or_zero > 0
                    ? epsilon_or_zero
                    : (w.t.delta2x() > 0 ? std::log(2.0) / w.t.delta2x()
                                         : std::log(2.0) / 2);
    int thr = threshold2x_or_min == INT_MIN
                  ? default_threshold2x(w.g.depth, w.t.delta2x())
                  : threshold2x_or_min;
    w.cells = boundary_cells(w.g, w.d, w.t, w.g.depth, thr, w.epsilon, threads);

    FiniteMetric m = FiniteMetric::from_visual(w.cells.cell_metric);
    double diam = m.diameter();
    std::vector<double> radii;
    for (int i = 0; i <= 3; ++i)
      if (diam / std::pow(2.0, i) > 0) radii.push_back(diam / std::pow(2.0, i));
    if (radii.empty()) radii.push_back(1.0);
    w.doubling = doubling_kappa(m, radii);
    return w;
  }
};

TruncatedGraph build_family(const std::string& family, int depth, int branching) {
  ExperimentConfig cfg;
  cfg.family = family;
  cfg.depth = depth;
  cfg.branching = branching;
  return family_graph(cfg);
}

}  // namespace

PYBIND11_MODULE(_hypertree, m) {
  m.doc() = "finite-truncation computations on hyperbolic-like graphs";

  py::class_<TruncatedGraph>(m, "Graph")
      .def_property_readonly("family", [](const TruncatedGraph& g) { return g.family_tag; })
      .def_property_readonly("root", [](const TruncatedGraph& g) { return g.root; })
      .def_property_readonly("depth", [](const TruncatedGraph& g) { return g.depth; })
      .def_property_readonly("vertex_count",
                             [](const TruncatedGraph& g) { return g.vertex_count(); })
      .def_property_readonly("edge_count",
                             [](const TruncatedGraph& g) { return g.edge_count(); })
      .def("neighbors",
           [](const TruncatedGraph& g, int v) { return g.adjacency.at(static_cast<std::size_t>(v)); })
      .def("text", &write_graph_text)
      .def("__repr__", [](const TruncatedGraph& g) {
        return "<Graph " + g.family_tag + " V=" + std::to_string(g.vertex_count()) +
               " depth=" + std::to_string(g.depth) + ">";
      });

  m.def("generate", &build_family, py::arg("family"), py::arg("depth"),
        py::arg("branching") = 2, "build one of the generator families");
  m.def("read_graph_text", &read_graph_text, py::arg("text"));

  py::class_<DistanceOracle>(m, "Distances")
      .def("__call__", [](const DistanceOracle& d, int u, int v) { return d(u, v); })
      .def_property_readonly("size", &DistanceOracle::size);
  m.def("distances", &all_pairs_distances, py::arg("graph"), py::arg("threads") = 0);

  m.def(
      "delta_report",
      [](const TruncatedGraph& g, int base, int cap, std::uint64_t seed, int threads) {
        auto d = all_pairs_distances(g, threads);
        int b = base < 0 ? g.root : base;
        auto t = gromov_table(d, b, cap, seed, threads);
        auto bp = basepoint_transfer_check(d, t.delta2x(), cap, seed, threads);
        auto thin = thin_triangle_delta(g, d, 80, seed);
        auto pg = product_vs_geodesic_check(g, d, t, cap, seed);
        return dump_canonical(delta_report_to_json(t, bp, thin, pg));
      },
      py::arg("graph"), py::arg("base") = -1, py::arg("cap") = 600, py::arg("seed") = 1,
      py::arg("threads") = 0, "hyperbolicity constants and transfer checks as JSON");

  m.def(
      "cells_report",
      [](const TruncatedGraph& g, double epsilon, int threshold2x, int threads) {
        auto w = Workspace::make(g, epsilon, threshold2x, threads);
        return dump_canonical(cells_to_json(w.cells));
      },
      py::arg("graph"), py::arg("epsilon") = 0.0, py::arg("threshold2x") = INT_MIN,
      py::arg("threads") = 0,
      "boundary cells on the depth sphere as JSON; epsilon=0 picks the admissible cap");

  m.def(
      "dimension_report",
      [](const TruncatedGraph& g, double epsilon, int threads) {
        auto w = Workspace::make(g, epsilon, INT_MIN, threads);
        FiniteMetric cm = FiniteMetric::from_visual(w.cells.cell_metric);
        double diam = cm.diameter();
        std::vector<std::pair<double, double>> grid;
        if (diam > 0)
          for (int i = 1; i <= 4; ++i) grid.emplace_back(diam / std::pow(2.0, i), diam);
        PackingReport assouad;
        if (!grid.empty()) assouad = assouad_estimate(cm, grid);
        return dump_canonical(dimension_to_json(assouad, w.doubling));
      },
      py::arg("graph"), py::arg("epsilon") = 0.0, py::arg("threads") = 0,
      "doubling and packing exponents of the cell metric as JSON");

  m.def(
      "faithful_report",
      [](const TruncatedGraph& g, std::uint64_t seed, double epsilon, double epsilon0,
         int stage_cap, int threads) {
        auto w = Workspace::make(g, epsilon, INT_MIN, threads);
        auto res = build_faithful_tree(w.g, w.d, w.t, w.cells, w.doubling, seed, epsilon0,
                                       stage_cap);
        return dump_canonical(faithful_to_json(res));
      },
      py::arg("graph"), py::arg("seed") = 1, py::arg("epsilon") = 0.0,
      py::arg("epsilon0") = 0.0, py::arg("stage_cap") = 64, py::arg("threads") = 0,
      "staged boundary-respecting spanning tree as JSON");

  m.def(
      "geodetic_report",
      [](const TruncatedGraph& g, const std::string& tie_break, std::uint64_t seed,
         bool audit, int audit_n, double epsilon, int threads) {
        auto w = Workspace::make(g, epsilon, INT_MIN, threads);
        auto tree = build_geodetic_tree(w.g, w.d, w.g.root,
                                        tie_break_from_string(tie_break), seed);
        auto census = ray_census(tree.tree, w.d, w.cells, 0);
        nlohmann::json doc = make_envelope("geodetic");
        doc["tree"] = geodetic_tree_to_json(tree);
        doc["census"] = census_to_json(census);
        if (audit) {
          auto cover = default_cell_cover(w.cells.cell_count());
          doc["audit"] = audit_to_json(lower_bound_audit(tree, w.d, w.cells, cover, audit_n));
        }
        return dump_canonical(doc);
      },
      py::arg("graph"), py::arg("tie_break") = "least-id", py::arg("seed") = 0,
      py::arg("audit") = false, py::arg("audit_n") = 1, py::arg("epsilon") = 0.0,
      py::arg("threads") = 0, "distance-preserving tree, census and optional audit as JSON");

  m.def(
      "growth",
      [](int lo, int hi) {
        std::vector<std::pair<int, std::uint64_t>> out;
        for (const auto& row : example2_ray_growth(lo, hi))
          out.emplace_back(row.R, row.multiplicity);
        return out;
      },
      py::arg("r_min") = 1, py::arg("r_max") = 8,
      "census growth per clique-level depth as (depth, multiplicity) pairs");

  m.def(
      "pipeline",
      [](const std::string& family, int depth, int branching, std::uint64_t seed,
         const std::string& out_dir, int threads) {
        ExperimentConfig cfg;
        cfg.family = family;
        cfg.depth = depth;
        cfg.branching = branching;
        cfg.seed = seed;
        cfg.out_dir = out_dir;
        cfg.threads = threads;
        auto res = run_pipeline(cfg);
        return py::make_tuple(res.exit_code, dump_canonical(res.bundle));
      },
      py::arg("family") = "example1", py::arg("depth") = 8, py::arg("branching") = 2,
      py::arg("seed") = 1, py::arg("out_dir") = "", py::arg("threads") = 0,
      "run every stage; returns (exit_code, bundle JSON)");
}
