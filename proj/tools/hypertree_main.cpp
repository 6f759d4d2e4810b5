// hypertree: finite-truncation toolkit for hyperbolic-like graphs.
//
// Subcommands mirror the library stages: generate a graph, measure its
// hyperbolicity, build the visual boundary metric and its cells, estimate
// dimension, grow the boundary-respecting spanning tree, analyse geodetic
// trees, or run the whole pipeline and emit a bundle.
#include "hypertree/covering.hpp"
#include "hypertree/distance.hpp"
#include "hypertree/faithful.hpp"
#include "hypertree/geodetic.hpp"
#include "hypertree/graph.hpp"
#include "hypertree/gromov.hpp"
#include "hypertree/json_io.hpp"
#include "hypertree/pipeline.hpp"
#include "hypertree/util.hpp"
#include "hypertree/visual.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using hypertree::TruncatedGraph;
using nlohmann::json;

struct GraphOpts {
  std::string family = "example1";
  int depth = 8;
  int branching = 2;
  std::string in_file;

  void attach(CLI::App* cmd) {
    cmd->add_option("--family", family, "graph family: example1, example2 or tree")
        ->capture_default_str();
    cmd->add_option("--depth", depth, "truncation depth / layer count")
        ->capture_default_str();
    cmd->add_option("--branching", branching, "branching factor (tree family only)")
        ->capture_default_str();
    cmd->add_option("--in", in_file,
                    "read the graph from a text file instead of generating one");
  }

  TruncatedGraph resolve() const {
    if (!in_file.empty()) {
      std::ifstream f(in_file);
      if (!f) throw std::runtime_error("cannot open graph file: " + in_file);
      std::ostringstream buf;
      buf << f.rdbuf();
      return hypertree::read_graph_text(buf.str());
    }
    hypertree::ExperimentConfig cfg;
    cfg.family = family;
    cfg.depth = depth;
    cfg.branching = branching;
    return hypertree::family_graph(cfg);
  }
};

// "auto" or a number; auto resolves against delta2x once that is known
struct EpsilonOpt {
  std::string text = "auto";

  void attach(CLI::App* cmd) {
    cmd->add_option("--epsilon", text,
                    "visual metric scale: 'auto' (largest admissible) or a value")
        ->capture_default_str();
  }

  double resolve(int delta2x) const {
    if (text == "auto")
      return delta2x > 0 ? std::log(2.0) / delta2x : std::log(2.0) / 2;
    return std::stod(text);
  }
};

struct ThresholdOpt {
  std::string text = "default";

  void attach(CLI::App* cmd) {
    cmd->add_option("--threshold2x", text,
                    "doubled product threshold for merging sphere vertices: "
                    "'default' (2R - 4 delta) or an integer")
        ->capture_default_str();
  }

  int resolve(int R, int delta2x) const {
    if (text == "default") return hypertree::default_threshold2x(R, delta2x);
    return std::stoi(text);
  }
};

void emit(const std::string& out_file, const json& doc) {
  std::string bytes = hypertree::dump_canonical(doc);
  if (out_file.empty()) {
    std::cout << bytes;
    return;
  }
  hypertree::write_text_file(out_file, bytes);
}

json graph_summary(const TruncatedGraph& g) {
  return json{{"family", g.family_tag},
              {"vertices", g.vertex_count()},
              {"edges", g.edge_count()},
              {"root", g.root},
              {"depth", g.depth}};
}

int cmd_generate(const GraphOpts& gopt, const std::string& out_file) {
  TruncatedGraph g = gopt.resolve();
  std::string text = hypertree::write_graph_text(g);
  if (out_file.empty())
    std::cout << text;
  else
    hypertree::write_text_file(out_file, text);
  return 0;
}

int cmd_delta(const GraphOpts& gopt, int base, int cap, std::uint64_t seed, int threads,
              const std::string& out_file) {
  TruncatedGraph g = gopt.resolve();
  auto d = hypertree::all_pairs_distances(g, threads);
  int b = base < 0 ? g.root : base;
  auto t = hypertree::gromov_table(d, b, cap, seed, threads);
  auto bp = hypertree::basepoint_transfer_check(d, t.delta2x(), cap, seed, threads);
  auto thin = hypertree::thin_triangle_delta(g, d, 80, seed);
  auto pg = hypertree::product_vs_geodesic_check(g, d, t, cap, seed);
  json doc = hypertree::delta_report_to_json(t, bp, thin, pg);
  doc["graph"] = graph_summary(g);
  emit(out_file, doc);
  return bp.violations.empty() && pg.violations == 0 ? 0 : 1;
}

int cmd_visual(const GraphOpts& gopt, const EpsilonOpt& eps_opt, int cap, int threads,
               const std::string& out_file) {
  TruncatedGraph g = gopt.resolve();
  auto d = hypertree::all_pairs_distances(g, threads);
  auto t = hypertree::gromov_table(d, g.root, 600, 1, threads);
  double eps = eps_opt.resolve(t.delta2x());

  std::vector<int> points;
  if (g.vertex_count() <= cap) {
    points.resize(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) points[static_cast<std::size_t>(v)] = v;
  } else {
    for (int v = 0; v < g.vertex_count(); ++v)
      if (d(g.root, v) == g.depth) points.push_back(v);
  }
  auto vm = hypertree::chain_metric(t, eps, points, threads);
  auto sw = hypertree::sandwich_check(vm, t);
  auto ax = hypertree::check_metric_axioms(vm);

  json doc = hypertree::make_envelope("visual-metric");
  doc["graph"] = graph_summary(g);
  doc["epsilon"] = vm.epsilon;
  doc["epsilon_prime"] = vm.epsilon_prime;
  doc["points"] = vm.points;
  doc["sandwich"] = hypertree::sandwich_to_json(sw);
  doc["axioms"] = json{{"ok", ax.ok},
                       {"symmetry_violations", ax.symmetry_violations},
                       {"identity_violations", ax.identity_violations},
                       {"triangle_violations", ax.triangle_violations}};
  emit(out_file, doc);
  return sw.violation_pairs.empty() && ax.ok ? 0 : 1;
}

int cmd_cells(const GraphOpts& gopt, const EpsilonOpt& eps_opt, const ThresholdOpt& thr_opt,
              int radius, int threads, const std::string& out_file) {
  TruncatedGraph g = gopt.resolve();
  auto d = hypertree::all_pairs_distances(g, threads);
  auto t = hypertree::gromov_table(d, g.root, 600, 1, threads);
  double eps = eps_opt.resolve(t.delta2x());
  int R = radius < 0 ? g.depth : radius;
  auto cells =
      hypertree::boundary_cells(g, d, t, R, thr_opt.resolve(R, t.delta2x()), eps, threads);
  json doc = hypertree::cells_to_json(cells);
  doc["graph"] = graph_summary(g);
  emit(out_file, doc);
  return 0;
}

int cmd_dimension(const GraphOpts& gopt, const EpsilonOpt& eps_opt,
                  const ThresholdOpt& thr_opt, int packing_cap, int cover_cap, int threads,
                  const std::string& out_file) {
  TruncatedGraph g = gopt.resolve();
  auto d = hypertree::all_pairs_distances(g, threads);
  auto t = hypertree::gromov_table(d, g.root, 600, 1, threads);
  double eps = eps_opt.resolve(t.delta2x());
  int R = g.depth;
  auto cells =
      hypertree::boundary_cells(g, d, t, R, thr_opt.resolve(R, t.delta2x()), eps, threads);
  auto m = hypertree::FiniteMetric::from_visual(cells.cell_metric);

  double diam = m.diameter();
  std::vector<double> radii;
  for (int i = 0; i <= 3; ++i) {
    double r = diam / std::pow(2.0, i);
    if (r > 0) radii.push_back(r);
  }
  if (radii.empty()) radii.push_back(1.0);
  auto doubling = hypertree::doubling_kappa(m, radii, cover_cap);

  std::vector<std::pair<double, double>> grid;
  if (diam > 0)
    for (int i = 1; i <= 4; ++i) grid.emplace_back(diam / std::pow(2.0, i), diam);
  hypertree::PackingReport assouad;
  if (!grid.empty()) assouad = hypertree::assouad_estimate(m, grid, packing_cap);

  json doc = hypertree::dimension_to_json(assouad, doubling);
  doc["graph"] = graph_summary(g);
  doc["cells"] = cells.cell_count();
  emit(out_file, doc);
  return 0;
}

int cmd_faithful(const GraphOpts& gopt, const EpsilonOpt& eps_opt,
                 const ThresholdOpt& thr_opt, std::uint64_t seed, double epsilon0,
                 int stage_cap, int cover_cap, int threads, const std::string& out_file) {
  TruncatedGraph g = gopt.resolve();
  auto d = hypertree::all_pairs_distances(g, threads);
  auto t = hypertree::gromov_table(d, g.root, 600, 1, threads);
  double eps = eps_opt.resolve(t.delta2x());
  int R = g.depth;
  auto cells =
      hypertree::boundary_cells(g, d, t, R, thr_opt.resolve(R, t.delta2x()), eps, threads);
  auto m = hypertree::FiniteMetric::from_visual(cells.cell_metric);

  double diam = m.diameter();
  std::vector<double> radii;
  for (int i = 0; i <= 3; ++i)
    if (diam / std::pow(2.0, i) > 0) radii.push_back(diam / std::pow(2.0, i));
  if (radii.empty()) radii.push_back(1.0);
  auto doubling = hypertree::doubling_kappa(m, radii, cover_cap);

  auto res = hypertree::build_faithful_tree(g, d, t, cells, doubling, seed, epsilon0,
                                            stage_cap);
  json doc = hypertree::faithful_to_json(res);
  doc["graph"] = graph_summary(g);
  emit(out_file, doc);
  bool ok = res.net_complete && res.star.all_ok && res.suffixes.all_ok &&
            res.census.bound_ok &&
            res.spanning.member_count() == g.vertex_count();
  return ok ? 0 : 1;
}

int cmd_geodetic(const GraphOpts& gopt, const EpsilonOpt& eps_opt,
                 const ThresholdOpt& thr_opt, const std::string& tie_break,
                 std::uint64_t seed, const std::string& growth_range,
                 const std::string& audit_spec, int audit_n, int threads,
                 const std::string& out_file) {
  if (!growth_range.empty()) {
    auto colon = growth_range.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("--growth expects MIN:MAX, got " + growth_range);
    int lo = std::stoi(growth_range.substr(0, colon));
    int hi = std::stoi(growth_range.substr(colon + 1));
    auto rows = hypertree::example2_ray_growth(lo, hi);
    json doc = hypertree::growth_to_json(rows);
    emit(out_file, doc);
    return 0;
  }

  TruncatedGraph g = gopt.resolve();
  auto d = hypertree::all_pairs_distances(g, threads);
  auto t = hypertree::gromov_table(d, g.root, 600, 1, threads);
  double eps = eps_opt.resolve(t.delta2x());
  int R = g.depth;
  auto cells =
      hypertree::boundary_cells(g, d, t, R, thr_opt.resolve(R, t.delta2x()), eps, threads);

  auto tree = hypertree::build_geodetic_tree(g, d, g.root,
                                             hypertree::tie_break_from_string(tie_break),
                                             seed);
  auto census = hypertree::ray_census(tree.tree, d, cells, 0);

  json doc = hypertree::make_envelope("geodetic");
  doc["graph"] = graph_summary(g);
  doc["tree"] = hypertree::geodetic_tree_to_json(tree);
  doc["census"] = hypertree::census_to_json(census);

  if (!audit_spec.empty()) {
    std::vector<std::vector<int>> cover;
    if (audit_spec == "auto") {
      cover = hypertree::default_cell_cover(cells.cell_count());
    } else {
      cover = hypertree::cell_cover_from_json(hypertree::load_json_file(audit_spec));
    }
    auto audit = hypertree::lower_bound_audit(tree, d, cells, cover, audit_n);
    doc["audit"] = hypertree::audit_to_json(audit);
  }
  emit(out_file, doc);
  return tree.certificate_ok ? 0 : 1;
}

int cmd_pipeline(const hypertree::ExperimentConfig& cfg, bool quiet) {
  auto res = hypertree::run_pipeline(cfg);
  if (!quiet) std::cout << hypertree::dump_canonical(res.bundle);
  if (res.exit_code != 0)
    std::cerr << "pipeline failed at stage '" << res.failed_stage << "': " << res.error
              << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-truncation computations on hyperbolic-like graphs"};
  app.require_subcommand(1);

  GraphOpts gopt;
  EpsilonOpt eps_opt;
  ThresholdOpt thr_opt;
  std::string out_file;
  int threads = 0;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* cmd, bool with_metric) {
    gopt.attach(cmd);
    if (with_metric) {
      eps_opt.attach(cmd);
      thr_opt.attach(cmd);
    }
    cmd->add_option("--out", out_file, "write the result to this file (default stdout)");
    cmd->add_option("--threads", threads,
                    "worker threads; 0 = HYPERTREE_THREADS env var, then hardware")
        ->capture_default_str();
  };

  auto* c_gen = app.add_subcommand("generate", "emit a graph in text form");
  add_common(c_gen, false);

  auto* c_delta = app.add_subcommand(
      "delta", "four-point and thin-triangle hyperbolicity with transfer checks");
  int base = -1;
  int cap = 600;
  c_delta->add_option("--base", base, "Gromov product basepoint; -1 = root")
      ->capture_default_str();
  c_delta->add_option("--exhaustive-cap", cap,
                      "scan every triple up to this many vertices, sample beyond")
      ->capture_default_str();
  c_delta->add_option("--seed", seed, "sampling seed")->capture_default_str();
  add_common(c_delta, false);

  auto* c_visual = app.add_subcommand("visual", "chain visual metric and sandwich check");
  int visual_cap = 700;
  c_visual->add_option("--cap", visual_cap,
                       "build on all vertices up to this size, else on the depth sphere")
      ->capture_default_str();
  add_common(c_visual, true);

  auto* c_cells = app.add_subcommand("cells", "boundary cells on a sphere");
  int radius = -1;
  c_cells->add_option("--radius", radius, "sphere radius; -1 = graph depth")
      ->capture_default_str();
  add_common(c_cells, true);

  auto* c_dim =
      app.add_subcommand("dimension", "doubling and packing exponents of the cell metric");
  int packing_cap = 64;
  int cover_cap = 24;
  c_dim->add_option("--packing-cap", packing_cap, "exact packing search up to this size")
      ->capture_default_str();
  c_dim->add_option("--cover-cap", cover_cap, "exact cover search up to this size")
      ->capture_default_str();
  add_common(c_dim, true);

  auto* c_faithful =
      app.add_subcommand("faithful", "staged boundary-respecting spanning tree");
  double epsilon0 = 0;
  int stage_cap = 64;
  c_faithful->add_option("--seed", seed, "tie-break seed; 0 = plain least-id order")
      ->capture_default_str();
  c_faithful
      ->add_option("--epsilon0", epsilon0,
                   "initial net radius; 0 = twice the cell metric diameter")
      ->capture_default_str();
  c_faithful->add_option("--stage-cap", stage_cap, "maximum number of stages")
      ->capture_default_str();
  c_faithful
      ->add_option("--cover-cap", cover_cap, "exact cover search up to this size")
      ->capture_default_str();
  add_common(c_faithful, true);

  auto* c_geo = app.add_subcommand("geodetic", "distance-preserving tree and ray census");
  std::string tie_break = "least-id";
  std::string growth_range;
  std::string audit_spec;
  int audit_n = 1;
  c_geo->add_option("--tie-break", tie_break, "parent choice: least-id, greatest-id, random")
      ->capture_default_str();
  c_geo->add_option("--seed", seed, "seed for --tie-break random")->capture_default_str();
  c_geo->add_option("--growth", growth_range,
                    "MIN:MAX, census growth per clique-level depth, ignores --family");
  c_geo->add_option("--audit", audit_spec,
                    "run the separator lower-bound audit: 'auto' or a cell-cover JSON file");
  c_geo->add_option("--audit-n", audit_n, "multiplicity parameter n for the audit")
      ->capture_default_str();
  add_common(c_geo, true);

  auto* c_pipe = app.add_subcommand("pipeline", "run every stage and emit one bundle");
  hypertree::ExperimentConfig cfg;
  std::string pipe_eps = "auto";
  std::string pipe_thr = "default";
  bool quiet = false;
  c_pipe->add_option("--family", cfg.family, "example1, example2 or tree")
      ->capture_default_str();
  c_pipe->add_option("--depth", cfg.depth, "truncation depth")->capture_default_str();
  c_pipe->add_option("--branching", cfg.branching, "tree family branching")
      ->capture_default_str();
  c_pipe->add_option("--base", cfg.base, "product basepoint; -1 = root")
      ->capture_default_str();
  c_pipe->add_option("--epsilon", pipe_eps, "'auto' or an explicit scale")
      ->capture_default_str();
  c_pipe->add_option("--threshold2x", pipe_thr, "'default' or an explicit doubled threshold")
      ->capture_default_str();
  c_pipe->add_option("--seed", cfg.seed, "tie-break seed")->capture_default_str();
  c_pipe->add_option("--threads", cfg.threads,
                     "worker threads; 0 = HYPERTREE_THREADS env var, then hardware")
      ->capture_default_str();
  c_pipe->add_option("--exhaustive-cap", cfg.exhaustive_cap, "triple scan cap")
      ->capture_default_str();
  c_pipe->add_option("--visual-cap", cfg.visual_cap, "full-vertex visual metric cap")
      ->capture_default_str();
  c_pipe->add_option("--stage-cap", cfg.stage_cap, "faithful stage cap")
      ->capture_default_str();
  c_pipe->add_option("--out-dir", cfg.out_dir,
                     "write bundle.json, cell_metric.csv and census.csv here");
  c_pipe->add_flag("--quiet", quiet, "suppress the bundle on stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_gen->parsed()) return cmd_generate(gopt, out_file);
    if (c_delta->parsed()) return cmd_delta(gopt, base, cap, seed, threads, out_file);
    if (c_visual->parsed())
      return cmd_visual(gopt, eps_opt, visual_cap, threads, out_file);
    if (c_cells->parsed())
      return cmd_cells(gopt, eps_opt, thr_opt, radius, threads, out_file);
    if (c_dim->parsed())
      return cmd_dimension(gopt, eps_opt, thr_opt, packing_cap, cover_cap, threads,
                           out_file);
    if (c_faithful->parsed())
      return cmd_faithful(gopt, eps_opt, thr_opt, seed, epsilon0, stage_cap, cover_cap,
                          threads, out_file);
    if (c_geo->parsed())
      return cmd_geodetic(gopt, eps_opt, thr_opt, tie_break, seed, growth_range,
                          audit_spec, audit_n, threads, out_file);
    if (c_pipe->parsed()) {
      if (pipe_eps == "auto") {
        cfg.epsilon_policy = "auto";
      } else {
        cfg.epsilon_policy = "explicit";
        cfg.epsilon_value = std::stod(pipe_eps);
      }
      if (pipe_thr == "default") {
        cfg.threshold_policy = "default";
      } else {
        cfg.threshold_policy = "explicit";
        cfg.threshold2x = std::stoi(pipe_thr);
      }
      return cmd_pipeline(cfg, quiet);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
