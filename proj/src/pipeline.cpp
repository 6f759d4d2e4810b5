#include "hypertree/pipeline.hpp"

#include "hypertree/covering.hpp"
#include "hypertree/distance.hpp"
#include "hypertree/faithful.hpp"
#include "hypertree/geodetic.hpp"
#include "hypertree/graph.hpp"
#include "hypertree/gromov.hpp"
#include "hypertree/util.hpp"
#include "hypertree/visual.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace hypertree {

using nlohmann::json;

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["family"] = cfg.family;
  j["depth"] = cfg.depth;
  j["branching"] = cfg.branching;
  j["base"] = cfg.base;
  j["epsilon_policy"] = cfg.epsilon_policy;
  j["epsilon_value"] = cfg.epsilon_value;
  j["threshold_policy"] = cfg.threshold_policy;
  j["threshold2x"] = cfg.threshold2x;
  j["seed"] = cfg.seed;
  j["caps"] = caps_to_json(cfg);
  return j;  // out_dir and threads never influence results, so they stay out
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  return fnv1a64(dump_canonical(config_to_json(cfg)));
}

json caps_to_json(const ExperimentConfig& cfg) {
  return json{{"cover_exact_cap", cfg.cover_exact_cap},
              {"exhaustive_cap", cfg.exhaustive_cap},
              {"packing_exact_cap", cfg.packing_exact_cap},
              {"stage_cap", cfg.stage_cap},
              {"visual_cap", cfg.visual_cap}};
}

double effective_epsilon(const ExperimentConfig& cfg, int delta2x) {
  if (cfg.epsilon_policy == "explicit") return cfg.epsilon_value;
  if (cfg.epsilon_policy != "auto")
    throw std::invalid_argument("epsilon policy must be 'auto' or 'explicit', got '" +
                                cfg.epsilon_policy + "'");
  // auto: the largest admissible value, log(2)/delta2x; any epsilon works for
  // delta = 0, where the same formula at delta2x = 2 is used
  return delta2x > 0 ? std::log(2.0) / delta2x : std::log(2.0) / 2;
}

TruncatedGraph family_graph(const ExperimentConfig& cfg) {
  if (cfg.family == "example1") return generate_example1(cfg.depth);
  if (cfg.family == "example2") return generate_example2(cfg.depth);
  if (cfg.family == "tree") return generate_tree(cfg.branching, cfg.depth);
  throw std::invalid_argument("unknown family '" + cfg.family +
                              "' (expected example1, example2 or tree)");
}

std::vector<std::vector<int>> default_cell_cover(int k) {
  if (k <= 1) return {{0}, {0}};
  int lo = k / 3;
  int hi = std::min(k, (2 * k) / 3 + 1);
  std::vector<int> a, b;
  for (int c = 0; c < hi; ++c) a.push_back(c);
  for (int c = lo; c < k; ++c) b.push_back(c);
  return {a, b};
}

PipelineResult run_pipeline(const ExperimentConfig& cfg) {
  PipelineResult res;
  res.bundle = make_envelope("bundle");
  res.bundle["config"] = config_to_json(cfg);
  res.bundle["config_hash"] = hex64(config_hash(cfg));
  res.bundle["caps"] = caps_to_json(cfg);

  auto hard = [&](const std::string& name, bool ok) {
    res.invariants.emplace_back(name, ok);
  };
  std::string stage;
  try {
    stage = "generate";
    TruncatedGraph g = family_graph(cfg);
    int base = cfg.base < 0 ? g.root : cfg.base;
    if (base < 0 || base >= g.vertex_count())
      throw std::invalid_argument("base vertex out of range");
    res.bundle["graph"] = json{{"depth", g.depth},
                               {"edges", g.edge_count()},
                               {"family", g.family_tag},
                               {"root", g.root},
                               {"vertices", g.vertex_count()}};

    stage = "distances";
    DistanceOracle d = all_pairs_distances(g, cfg.threads);

    stage = "gromov-table";
    GromovTable t = gromov_table(d, base, cfg.exhaustive_cap, cfg.seed, cfg.threads);

    stage = "delta-checks";
    BasepointReport bp =
        basepoint_transfer_check(d, t.delta2x(), cfg.exhaustive_cap, cfg.seed,
                                 cfg.threads);
    ThinTriangleReport tt = thin_triangle_delta(g, d, 80, cfg.seed);
    ProductGeodesicReport pg =
        product_vs_geodesic_check(g, d, t, cfg.exhaustive_cap, cfg.seed);
    res.bundle["delta"] = delta_report_to_json(t, bp, tt, pg);
    bool scans_exhaustive = t.scan().exhaustive && bp.scan.exhaustive;
    if (scans_exhaustive) hard("basepoint-violations-zero", bp.violations.empty());
    hard("product-geodesic-violations-zero", pg.violations == 0);

    stage = "visual-boundary";
    double eps = effective_epsilon(cfg, t.delta2x());
    int R = g.depth;
    std::vector<int> points;
    std::string scope;
    if (g.vertex_count() <= cfg.visual_cap) {
      scope = "full-vertex";
      for (int v = 0; v < g.vertex_count(); ++v) points.push_back(v);
    } else {
      scope = "sphere";
      const std::uint16_t* dr = d.row(g.root);
      for (int v = 0; v < g.vertex_count(); ++v)
        if (dr[v] == R) points.push_back(v);
    }
    VisualMetric vm = chain_metric(t, eps, points, cfg.threads);
    SandwichReport sw = sandwich_check(vm, t);
    MetricAxiomReport ax = check_metric_axioms(vm);
    res.bundle["visual"] = json{{"axioms_ok", ax.ok},
                                {"epsilon", vm.epsilon},
                                {"epsilon_prime", vm.epsilon_prime},
                                {"points", vm.size()},
                                {"sandwich", sandwich_to_json(sw)},
                                {"scope", scope}};
    hard("sandwich-violations-zero", sw.violations == 0);
    hard("metric-axioms", ax.ok);

    stage = "cells";
    int threshold2x = cfg.threshold_policy == "explicit"
                          ? cfg.threshold2x
                          : default_threshold2x(R, t.delta2x());
    BoundaryCellSet cells = boundary_cells(g, d, t, R, threshold2x, eps, cfg.threads);
    res.bundle["cells"] = cells_to_json(cells);
    std::size_t member_total = 0;
    for (const auto& members : cells.cells) member_total += members.size();
    hard("cells-partition", member_total == cells.sphere.size());

    stage = "dimension";
    FiniteMetric cm = FiniteMetric::from_visual(cells.cell_metric);
    double diam = cm.diameter();
    std::vector<double> radii;
    for (int i = 0; i < 4; ++i) {
      double r = diam / std::pow(2.0, i);
      if (r > 0) radii.push_back(r);
    }
    if (radii.empty()) radii.push_back(1.0);
    DoublingReport doubling = doubling_kappa(cm, radii, cfg.cover_exact_cap);
    PackingReport assouad;
    bool assouad_ran = false;
    if (diam > 0) {
      std::vector<std::pair<double, double>> grid;
      for (int i = 1; i <= 4; ++i) grid.emplace_back(diam / std::pow(2.0, i), diam);
      assouad = assouad_estimate(cm, grid, cfg.packing_exact_cap);
      assouad_ran = true;
    }
    res.bundle["dimension"] = dimension_to_json(assouad, doubling);
    res.bundle["dimension"]["assouad_ran"] = assouad_ran;

    stage = "faithful";
    FaithfulResult faithful =
        build_faithful_tree(g, d, t, cells, doubling, cfg.seed, 0, cfg.stage_cap);
    res.bundle["faithful"] = faithful_to_json(faithful);
    hard("faithful-spanning", faithful.spanning.member_count() == g.vertex_count());
    hard("faithful-net-complete", faithful.net_complete);
    hard("faithful-star", faithful.star.all_ok);
    hard("faithful-suffixes", faithful.suffixes.all_ok);
    hard("faithful-census-bound", faithful.census.bound_ok);

    stage = "geodetic";
    GeodeticTree geo = build_geodetic_tree(g, d, g.root, TieBreak::kLeastId, cfg.seed);
    RayCensus geo_census = ray_census(geo.tree, d, cells);
    std::vector<std::vector<int>> cover = default_cell_cover(cells.cell_count());
    LowerBoundAudit audit = lower_bound_audit(geo, d, cells, cover, 1);
    res.bundle["geodetic"] = geodetic_tree_to_json(geo);
    res.bundle["geodetic"]["census"] = audit_to_json(audit)["census"];
    res.bundle["geodetic_census_max"] = geo_census.max_multiplicity;
    res.bundle["audit"] = audit_to_json(audit);
    hard("geodetic-certificate", geo.certificate_ok);
    bool structural = true;
    for (const auto& link : audit.links)
      if (link.applicable && link.name != "cover-multiplicity" &&
          link.name != "v-multiplicity-lower" && link.name != "conclusion" &&
          link.name != "separator")
        structural = structural && link.ok;
    hard("audit-structural", structural);
  } catch (const std::exception& e) {
    res.exit_code = 2;
    res.failed_stage = stage;
    res.error = e.what();
    res.bundle["failed_stage"] = stage;
    res.bundle["error"] = e.what();
    return res;
  }

  bool pass = true;
  json inv;
  for (const auto& [name, ok] : res.invariants) {
    inv[name] = ok;
    pass = pass && ok;
  }
  res.bundle["invariants"] = inv;
  res.bundle["pass"] = pass;
  res.exit_code = pass ? 0 : 1;

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    CellsDocument doc;  // reparse to keep the CSV consistent with the bundle
    doc = cells_from_json(res.bundle["cells"]);
    write_text_file(cfg.out_dir + "/bundle.json", dump_canonical(res.bundle));
    std::ostringstream metric_csv;
    metric_csv << "cell_i,cell_j,distance\n";
    metric_csv.precision(17);
    for (std::size_t i = 0; i < doc.metric_lower.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        metric_csv << j << ',' << i << ',' << doc.metric_lower[i][j] << '\n';
    write_text_file(cfg.out_dir + "/cell_metric.csv", metric_csv.str());
    std::ostringstream census_csv;
    census_csv << "cell,trunks\n";
    const auto per_cell =
        res.bundle["faithful"]["census"]["per_cell"].get<std::vector<int>>();
    for (std::size_t c = 0; c < per_cell.size(); ++c)
      census_csv << c << ',' << per_cell[c] << '\n';
    write_text_file(cfg.out_dir + "/census.csv", census_csv.str());
  }
  return res;
}

}  // namespace hypertree
