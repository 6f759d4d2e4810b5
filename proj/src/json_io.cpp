#include "hypertree/json_io.hpp"

#include "hypertree/util.hpp"

#include <fstream>
#include <sstream>

namespace hypertree {

using nlohmann::json;

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": json parse error at byte " + std::to_string(e.byte) +
                     ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

json make_envelope(const std::string& kind) {
  json j;
  j["version"] = kDocumentVersion;
  j["kind"] = kind;
  return j;
}

void check_envelope(const json& j, const std::string& kind) {
  if (!j.is_object()) throw ParseError("document is not a json object");
  if (!j.contains("version") || !j["version"].is_number_integer())
    throw ParseError("document has no integer 'version'");
  int v = j["version"].get<int>();
  if (v != kDocumentVersion)
    throw ParseError("unsupported document version " + std::to_string(v) +
                     " (expected " + std::to_string(kDocumentVersion) + ")");
  std::string k = j.value("kind", "");
  if (k != kind)
    throw ParseError("expected document kind '" + kind + "', found '" + k + "'");
}

namespace {

json triple_json(const TripleWitness& t) {
  return json{{"x", t.x}, {"y", t.y}, {"z", t.z}};
}

json claim_json(const ClaimCheck& c) {
  return json{{"fail", c.fail},
              {"pass", c.pass},
              {"pass_with_slack", c.pass_with_slack},
              {"worst_ratio", c.worst_ratio}};
}

ClaimCheck claim_from(const json& j) {
  ClaimCheck c;
  c.pass = j.at("pass").get<std::uint64_t>();
  c.pass_with_slack = j.at("pass_with_slack").get<std::uint64_t>();
  c.fail = j.at("fail").get<std::uint64_t>();
  c.worst_ratio = j.at("worst_ratio").get<double>();
  return c;
}

json pairs_json(const std::vector<std::pair<int, int>>& pairs) {
  json arr = json::array();
  for (const auto& [a, b] : pairs) arr.push_back(json::array({a, b}));
  return arr;
}

}  // namespace

json scan_to_json(const ScanInfo& s) {
  return json{{"description", s.description},
              {"exhaustive", s.exhaustive},
              {"sample_size", s.sample_size},
              {"seed", s.seed}};
}

json delta_report_to_json(const GromovTable& t, const BasepointReport& basepoint,
                          const ThinTriangleReport& thin,
                          const ProductGeodesicReport& product) {
  json j = make_envelope("delta-report");
  j["base"] = t.base();
  j["delta2x"] = t.delta2x();
  json wits = json::array();
  for (const auto& w : t.witnesses()) wits.push_back(triple_json(w));
  j["witnesses"] = wits;

  json bp;
  bp["delta2x"] = basepoint.delta2x;
  bp["max_slack2x"] = basepoint.max_slack2x;
  bp["worst_base"] = basepoint.worst_base;
  bp["worst_triple"] = triple_json(basepoint.worst_triple);
  bp["bases_scanned"] = basepoint.bases_scanned;
  json viols = json::array();
  for (const auto& v : basepoint.violations) {
    json e = triple_json(v.triple);
    e["w"] = v.w;
    e["slack2x"] = v.slack2x;
    viols.push_back(e);
  }
  bp["violations"] = viols;
  bp["scan"] = scan_to_json(basepoint.scan);

  json tt;
  tt["delta_hops"] = thin.delta_hops;
  tt["worst"] = triple_json(thin.worst);
  tt["worst_vertex"] = thin.worst_vertex;
  tt["scan"] = scan_to_json(thin.scan);

  json pg;
  pg["delta2x"] = product.delta2x;
  pg["pairs_checked"] = product.pairs_checked;
  pg["violations"] = product.violations;
  pg["violation_pairs"] = pairs_json(product.violation_pairs);
  json hist;
  for (const auto& [slack, count] : product.slack_histogram2x)
    hist[std::to_string(slack)] = count;
  pg["slack_histogram2x"] = hist;
  pg["scan"] = scan_to_json(product.scan);

  j["checks"] = json{{"basepoint", bp}, {"product_geodesic", pg}, {"thin_triangle", tt}};
  return j;
}

json sandwich_to_json(const SandwichReport& r) {
  return json{{"pairs_checked", r.pairs_checked},
              {"ratio_histogram", r.ratio_histogram},
              {"violation_pairs", pairs_json(r.violation_pairs)},
              {"violations", r.violations},
              {"worst_lower_margin", r.worst_lower_margin},
              {"worst_upper_margin", r.worst_upper_margin}};
}

json cells_to_json(const BoundaryCellSet& c) {
  json j = make_envelope("cells");
  j["R"] = c.R;
  j["threshold2x"] = c.threshold2x;
  j["epsilon"] = c.epsilon;
  json arr = json::array();
  for (int i = 0; i < c.cell_count(); ++i)
    arr.push_back(json{{"id", i},
                       {"members", c.cells[static_cast<std::size_t>(i)]},
                       {"representative", c.representative[static_cast<std::size_t>(i)]}});
  j["cells"] = arr;
  json metric = json::array();
  for (int i = 0; i < c.cell_count(); ++i) {
    json row = json::array();
    for (int k = 0; k <= i; ++k) row.push_back(c.cell_metric.dist(i, k));
    metric.push_back(row);
  }
  j["metric"] = metric;
  return j;
}

CellsDocument cells_from_json(const json& j) {
  check_envelope(j, "cells");
  CellsDocument d;
  d.R = j.at("R").get<int>();
  d.threshold2x = j.at("threshold2x").get<int>();
  d.epsilon = j.at("epsilon").get<double>();
  for (const auto& cell : j.at("cells")) {
    int id = cell.at("id").get<int>();
    if (id != static_cast<int>(d.members.size()))
      throw ParseError("cells document: ids must be 0..k-1 in order");
    d.members.push_back(cell.at("members").get<std::vector<int>>());
    d.representative.push_back(cell.at("representative").get<int>());
  }
  d.metric_lower = j.at("metric").get<std::vector<std::vector<double>>>();
  if (d.metric_lower.size() != d.members.size())
    throw ParseError("cells document: metric rows do not match cell count");
  for (std::size_t i = 0; i < d.metric_lower.size(); ++i)
    if (d.metric_lower[i].size() != i + 1)
      throw ParseError("cells document: metric is not lower-triangular");
  d.extra = json::object();
  for (const auto& [key, value] : j.items())
    if (key != "version" && key != "kind" && key != "R" && key != "threshold2x" &&
        key != "epsilon" && key != "cells" && key != "metric")
      d.extra[key] = value;
  return d;
}

json cover_to_json(const BallCover& c) {
  json j = make_envelope("cover");
  j["r"] = c.r;
  j["kappa"] = c.kappa;
  j["centers"] = c.centers;
  j["colors"] = c.color;
  j["certificates"] = json{{"cover", c.cert.cover_ok},
                           {"per_color_mult", c.cert.per_color_multiplicity},
                           {"seed_included", c.cert.seed_included},
                           {"separation", c.cert.separation_ok},
                           {"total_mult", c.cert.total_multiplicity}};
  return j;
}

CoverDocument cover_from_json(const json& j) {
  check_envelope(j, "cover");
  CoverDocument d;
  d.cover.r = j.at("r").get<double>();
  d.cover.kappa = j.at("kappa").get<int>();
  d.cover.centers = j.at("centers").get<std::vector<int>>();
  d.cover.color = j.at("colors").get<std::vector<int>>();
  const json& cert = j.at("certificates");
  d.cover.cert.cover_ok = cert.at("cover").get<bool>();
  d.cover.cert.separation_ok = cert.at("separation").get<bool>();
  d.cover.cert.seed_included = cert.at("seed_included").get<bool>();
  d.cover.cert.per_color_multiplicity =
      cert.at("per_color_mult").get<std::vector<int>>();
  d.cover.cert.total_multiplicity = cert.at("total_mult").get<int>();
  d.extra = json::object();
  for (const auto& [key, value] : j.items())
    if (key != "version" && key != "kind" && key != "r" && key != "kappa" &&
        key != "centers" && key != "colors" && key != "certificates")
      d.extra[key] = value;
  return d;
}

json cell_cover_to_json(const std::vector<std::vector<int>>& sets) {
  json j = make_envelope("cell-cover");
  j["sets"] = sets;
  return j;
}

std::vector<std::vector<int>> cell_cover_from_json(const json& j) {
  check_envelope(j, "cell-cover");
  return j.at("sets").get<std::vector<std::vector<int>>>();
}

json dimension_to_json(const PackingReport& assouad, const DoublingReport& doubling) {
  json j = make_envelope("dimension");
  json rows = json::array();
  for (const auto& r : assouad.rows)
    rows.push_back(json{
        {"alpha", r.alpha}, {"beta", r.beta}, {"count", r.count}, {"exact", r.exact}});
  j["assouad"] = json{{"fit_constant", assouad.fit_constant},
                      {"fitted_exponent", assouad.fitted_exponent},
                      {"residuals", assouad.residuals},
                      {"rows", rows}};
  json scales = json::array();
  for (const auto& s : doubling.per_scale)
    scales.push_back(
        json{{"exact", s.exact}, {"r", s.r}, {"worst_cover", s.worst_cover}});
  j["doubling"] = json{{"N", doubling.N},
                       {"kappa", doubling.kappa},
                       {"per_scale", scales},
                       {"worst", json{{"center", doubling.worst.center},
                                      {"cover_centers", doubling.worst.cover_centers},
                                      {"cover_size", doubling.worst.cover_size},
                                      {"exact", doubling.worst.exact},
                                      {"r", doubling.worst.r}}}};
  return j;
}

namespace {

json stage_json(const StageReport& s) {
  return json{{"bprime_bound", s.bprime_bound},
              {"bprime_max", s.bprime_max},
              {"bprime_ok", s.bprime_ok},
              {"claim1", claim_json(s.claim1)},
              {"claim2", claim_json(s.claim2)},
              {"claim2_eventual", claim_json(s.claim2_eventual)},
              {"class_anomalies", s.class_anomalies},
              {"collisions", s.collisions},
              {"cover_radius", s.cover_radius},
              {"ec_cycle", s.ec_cycle},
              {"eps_j", s.eps_j},
              {"eps_prev", s.eps_prev},
              {"j", s.j},
              {"net_multiplicity", s.net_multiplicity},
              {"net_multiplicity_bound", s.net_multiplicity_bound},
              {"net_multiplicity_ok", s.net_multiplicity_ok},
              {"net_size", s.net_size},
              {"new_cells", s.new_cells}};
}

StageReport stage_from(const json& j) {
  StageReport s;
  s.j = j.at("j").get<int>();
  s.eps_prev = j.at("eps_prev").get<double>();
  s.eps_j = j.at("eps_j").get<double>();
  s.cover_radius = j.at("cover_radius").get<double>();
  s.new_cells = j.at("new_cells").get<std::vector<int>>();
  s.net_size = j.at("net_size").get<int>();
  s.collisions = j.at("collisions").get<int>();
  s.ec_cycle = j.at("ec_cycle").get<bool>();
  s.claim1 = claim_from(j.at("claim1"));
  s.claim2 = claim_from(j.at("claim2"));
  s.claim2_eventual = claim_from(j.at("claim2_eventual"));
  s.class_anomalies = j.at("class_anomalies").get<int>();
  s.net_multiplicity = j.at("net_multiplicity").get<int>();
  s.net_multiplicity_bound = j.at("net_multiplicity_bound").get<double>();
  s.net_multiplicity_ok = j.at("net_multiplicity_ok").get<bool>();
  s.bprime_max = j.at("bprime_max").get<int>();
  s.bprime_bound = j.at("bprime_bound").get<double>();
  s.bprime_ok = j.at("bprime_ok").get<bool>();
  return s;
}

json census_json(const RayCensus& c) {
  return json{{"argmax_cell", c.argmax_cell},
              {"bound", c.bound},
              {"bound_ok", c.bound_ok},
              {"max_multiplicity", c.max_multiplicity},
              {"per_cell", c.per_cell},
              {"total_trunks", c.total_trunks}};
}

RayCensus census_from(const json& j) {
  RayCensus c;
  c.per_cell = j.at("per_cell").get<std::vector<int>>();
  c.max_multiplicity = j.at("max_multiplicity").get<int>();
  c.argmax_cell = j.at("argmax_cell").get<int>();
  c.total_trunks = j.at("total_trunks").get<int>();
  c.bound = j.at("bound").get<double>();
  c.bound_ok = j.at("bound_ok").get<bool>();
  return c;
}

}  // namespace

json census_to_json(const RayCensus& c) {
  json j = make_envelope("census");
  j.update(census_json(c));
  return j;
}

json faithful_to_json(const FaithfulResult& r) {
  json j = make_envelope("faithful-tree");
  j["root"] = r.spanning.root;
  j["parents"] = r.spanning.parent;
  j["edge_ray"] = r.state.edge_ray;
  j["staged"] = json{{"eps_prev", r.state.eps_prev},
                     {"eps_prev2", r.state.eps_prev2},
                     {"j", r.state.j},
                     {"parents", r.state.tree.parent},
                     {"connected_to", r.state.connected_to},
                     {"eventually_connected_to", r.state.eventually_connected_to},
                     {"net", r.state.S}};
  json rays = json::array();
  for (const auto& ray : r.state.rays)
    rays.push_back(
        json{{"cell_a", ray.cell_a}, {"cell_b", ray.cell_b}, {"path", ray.path}});
  j["rays"] = rays;
  json stages = json::array();
  for (const auto& s : r.state.reports) stages.push_back(stage_json(s));
  j["stages"] = stages;
  j["params"] = json{{"N", r.params.N},
                     {"claim_slack_factor", r.params.claim_slack_factor},
                     {"delta_prime", r.params.delta_prime},
                     {"epsilon0", r.params.epsilon0},
                     {"kappa", r.params.kappa},
                     {"stage_cap", r.params.stage_cap},
                     {"visual_epsilon", r.params.visual_epsilon}};
  j["completion"] = json{{"component_attached", r.completion.component_attached},
                         {"path_attached", r.completion.path_attached},
                         {"relaxations", r.completion.relaxations},
                         {"rounds", r.completion.rounds}};
  j["star"] = json{{"all_ok", r.star.all_ok},
                   {"edges_checked", r.star.edges_checked},
                   {"edges_ok", r.star.edges_ok}};
  j["suffixes"] = json{{"all_ok", r.suffixes.all_ok},
                       {"leaves_checked", r.suffixes.leaves_checked},
                       {"leaves_ok", r.suffixes.leaves_ok},
                       {"leaves_within_4delta", r.suffixes.leaves_within_4delta},
                       {"worst_defect", r.suffixes.worst_defect}};
  j["census"] = census_json(r.census);
  j["net_complete"] = r.net_complete;
  return j;
}

FaithfulDocument faithful_from_json(const json& j) {
  check_envelope(j, "faithful-tree");
  FaithfulDocument d;
  FaithfulResult& r = d.result;
  r.spanning.root = j.at("root").get<int>();
  r.spanning.parent = j.at("parents").get<std::vector<int>>();
  r.state.edge_ray = j.at("edge_ray").get<std::vector<int>>();
  const json& st = j.at("staged");
  r.state.tree.root = r.spanning.root;
  r.state.tree.parent = st.at("parents").get<std::vector<int>>();
  r.state.j = st.at("j").get<int>();
  r.state.eps_prev = st.at("eps_prev").get<double>();
  r.state.eps_prev2 = st.at("eps_prev2").get<double>();
  r.state.S = st.at("net").get<std::vector<int>>();
  r.state.connected_to = st.at("connected_to").get<std::vector<int>>();
  r.state.eventually_connected_to =
      st.at("eventually_connected_to").get<std::vector<int>>();
  for (const auto& ray : j.at("rays")) {
    DoubleRayRecord rec;
    rec.cell_a = ray.at("cell_a").get<int>();
    rec.cell_b = ray.at("cell_b").get<int>();
    rec.path = ray.at("path").get<std::vector<int>>();
    r.state.rays.push_back(std::move(rec));
  }
  for (const auto& s : j.at("stages")) r.state.reports.push_back(stage_from(s));
  const json& p = j.at("params");
  r.params.epsilon0 = p.at("epsilon0").get<double>();
  r.params.kappa = p.at("kappa").get<int>();
  r.params.N = p.at("N").get<int>();
  r.params.delta_prime = p.at("delta_prime").get<double>();
  r.params.visual_epsilon = p.at("visual_epsilon").get<double>();
  r.params.stage_cap = p.at("stage_cap").get<int>();
  r.params.claim_slack_factor = p.at("claim_slack_factor").get<double>();
  const json& c = j.at("completion");
  r.completion.rounds = c.at("rounds").get<int>();
  r.completion.component_attached = c.at("component_attached").get<int>();
  r.completion.path_attached = c.at("path_attached").get<int>();
  r.completion.relaxations = c.at("relaxations").get<int>();
  const json& star = j.at("star");
  r.star.edges_checked = star.at("edges_checked").get<int>();
  r.star.edges_ok = star.at("edges_ok").get<int>();
  r.star.all_ok = star.at("all_ok").get<bool>();
  const json& suf = j.at("suffixes");
  r.suffixes.leaves_checked = suf.at("leaves_checked").get<int>();
  r.suffixes.leaves_ok = suf.at("leaves_ok").get<int>();
  r.suffixes.leaves_within_4delta = suf.at("leaves_within_4delta").get<int>();
  r.suffixes.worst_defect = suf.at("worst_defect").get<int>();
  r.suffixes.all_ok = suf.at("all_ok").get<bool>();
  r.census = census_from(j.at("census"));
  r.net_complete = j.at("net_complete").get<bool>();
  d.extra = json::object();
  static const char* known[] = {"version",  "kind",   "root",   "parents",
                                "edge_ray", "staged", "rays",   "stages",
                                "params",   "completion", "star",
                                "suffixes", "census", "net_complete"};
  for (const auto& [key, value] : j.items()) {
    bool is_known = false;
    for (const char* k : known) is_known |= key == k;
    if (!is_known) d.extra[key] = value;
  }
  return d;
}

json geodetic_tree_to_json(const GeodeticTree& t) {
  json j = make_envelope("geodetic-tree");
  j["root"] = t.tree.root;
  j["parents"] = t.tree.parent;
  j["policy"] = to_string(t.policy);
  j["seed"] = t.seed;
  j["certificate_ok"] = t.certificate_ok;
  j["certificate_checked"] = t.certificate_checked;
  return j;
}

json growth_to_json(const std::vector<RayGrowthRow>& rows) {
  json j = make_envelope("ray-growth");
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back(
        json{{"R", r.R}, {"cells", r.cells}, {"multiplicity", r.multiplicity}});
  j["rows"] = arr;
  return j;
}

json limit_sets_to_json(const LimitSetFamily& f) {
  json j = make_envelope("limit-sets");
  j["separator"] = f.separator;
  json comps = json::array();
  for (std::size_t i = 0; i < f.components.size(); ++i)
    comps.push_back(json{{"infinite", f.infinite_direction[i] != 0},
                         {"size", f.components[i].size()},
                         {"z", f.Z[i]}});
  j["components"] = comps;
  j["z_count"] = f.z_count;
  j["m"] = f.m;
  j["epsilon_star"] = f.epsilon_star;
  j["epsilon_unbounded"] = f.epsilon_unbounded;
  j["closed_shadow_ok"] = f.closed_shadow_ok;
  return j;
}

json audit_to_json(const LowerBoundAudit& a) {
  json j = make_envelope("lower-bound-audit");
  j["n"] = a.n;
  j["criticality_established"] = a.criticality_established;
  j["critical_cell"] = a.critical_cell;
  j["m"] = a.m;
  j["refinement"] = a.refinement;
  j["vmult_max"] = a.vmult_max;
  j["vmult_argmax"] = a.vmult_argmax;
  j["vmult_worst_allowed"] = a.vmult_worst_allowed;
  j["rays_required"] = a.rays_required;
  j["census_max"] = a.census_max;
  j["separator"] = json{{"found", a.separator.found},
                        {"radius", a.separator.radius},
                        {"depth_cutoff", a.separator.depth_cutoff},
                        {"vertices", a.separator.separator},
                        {"assignment", a.separator.assignment}};
  j["family"] = limit_sets_to_json(a.separator.family);
  j["census"] = census_json(a.census);
  json links = json::array();
  for (const auto& l : a.links)
    links.push_back(json{{"applicable", l.applicable},
                         {"name", l.name},
                         {"ok", l.ok},
                         {"witness", l.witness}});
  j["links"] = links;
  j["chain_ok"] = a.chain_ok;
  return j;
}

}  // namespace hypertree
