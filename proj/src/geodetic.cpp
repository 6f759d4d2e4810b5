#include "hypertree/geodetic.hpp"

#include "hypertree/covering.hpp"
#include "hypertree/gromov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypertree {

namespace {

std::vector<std::vector<int>> tree_adjacency(const RootedTree& t) {
  std::vector<std::vector<int>> adj(t.parent.size());
  for (std::size_t v = 0; v < t.parent.size(); ++v) {
    int p = t.parent[v];
    if (p < 0 || static_cast<int>(v) == t.root) continue;
    adj[v].push_back(p);
    adj[static_cast<std::size_t>(p)].push_back(static_cast<int>(v));
  }
  for (auto& row : adj) std::sort(row.begin(), row.end());
  return adj;
}

std::vector<int> tree_depths(const RootedTree& t) {
  std::vector<int> depth(t.parent.size(), -1);
  auto adj = tree_adjacency(t);
  depth[static_cast<std::size_t>(t.root)] = 0;
  std::vector<int> queue{t.root};
  for (std::size_t h = 0; h < queue.size(); ++h) {
    int u = queue[h];
    for (int v : adj[static_cast<std::size_t>(u)])
      if (depth[static_cast<std::size_t>(v)] < 0) {
        depth[static_cast<std::size_t>(v)] = depth[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
  }
  return depth;
}

void validate_cover(const std::vector<std::vector<int>>& cover, int cell_count) {
  std::vector<char> hit(static_cast<std::size_t>(cell_count), 0);
  for (const auto& u : cover)
    for (int c : u) {
      if (c < 0 || c >= cell_count)
        throw std::invalid_argument("cover names cell " + std::to_string(c) +
                                    " outside [0, " + std::to_string(cell_count) + ")");
      hit[static_cast<std::size_t>(c)] = 1;
    }
  for (int c = 0; c < cell_count; ++c)
    if (!hit[static_cast<std::size_t>(c)])
      throw std::invalid_argument("cover misses cell " + std::to_string(c));
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& sorted_b) {
  for (int x : a)
    if (!std::binary_search(sorted_b.begin(), sorted_b.end(), x)) return false;
  return true;
}

}  // namespace

TieBreak tie_break_from_string(const std::string& s) {
  if (s == "least-id") return TieBreak::kLeastId;
  if (s == "greatest-id") return TieBreak::kGreatestId;
  if (s == "random") return TieBreak::kRandom;
  throw std::invalid_argument("unknown tie-break policy '" + s +
                              "' (expected least-id, greatest-id or random)");
}

std::string to_string(TieBreak policy) {
  switch (policy) {
    case TieBreak::kLeastId: return "least-id";
    case TieBreak::kGreatestId: return "greatest-id";
    case TieBreak::kRandom: return "random";
  }
  return "?";
}

GeodeticTree build_geodetic_tree(const TruncatedGraph& g, const DistanceOracle& d,
                                 int root, TieBreak policy, std::uint64_t seed) {
  int n = g.vertex_count();
  if (root < 0 || root >= n)
    throw std::invalid_argument("build_geodetic_tree: root out of range");

  GeodeticTree out;
  out.policy = policy;
  out.seed = seed;
  out.tree.root = root;
  out.tree.parent.assign(static_cast<std::size_t>(n), -1);
  out.tree.parent[static_cast<std::size_t>(root)] = root;

  const std::uint16_t* dr = d.row(root);
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    std::vector<int> cand;
    for (int nb : g.adjacency[static_cast<std::size_t>(v)])
      if (dr[nb] + 1 == dr[v]) cand.push_back(nb);
    if (cand.empty())
      throw std::logic_error("build_geodetic_tree: vertex " + std::to_string(v) +
                             " has no parent candidate");
    int pick;
    switch (policy) {
      case TieBreak::kLeastId: pick = cand.front(); break;
      case TieBreak::kGreatestId: pick = cand.back(); break;
      case TieBreak::kRandom:
        pick = cand[mix64(seed ^ (0x9e3779b97f4a7c15ull *
                                  static_cast<std::uint64_t>(v + 1))) %
                    cand.size()];
        break;
      default: pick = cand.front();
    }
    out.tree.parent[static_cast<std::size_t>(v)] = pick;
  }

  std::vector<int> depth = tree_depths(out.tree);
  out.certificate_checked = n;
  out.certificate_ok = true;
  for (int v = 0; v < n; ++v)
    if (depth[static_cast<std::size_t>(v)] != dr[v]) {
      out.certificate_ok = false;
      break;
    }
  return out;
}

std::vector<RayGrowthRow> example2_ray_growth(int r_min, int r_max) {
  if (r_min < 1 || r_max < r_min)
    throw std::invalid_argument("example2_ray_growth: need 1 <= r_min <= r_max");
  std::vector<RayGrowthRow> rows;
  for (int R = r_min; R <= r_max; ++R) {
    TruncatedGraph g = generate_example2(R);
    DistanceOracle d = all_pairs_distances(g);
    GromovTable t = gromov_table(d, g.root);
    double cap = max_admissible_epsilon(t.delta2x());
    double eps = std::isfinite(cap) ? cap : std::log(2.0) / 2;
    BoundaryCellSet cells =
        boundary_cells(g, d, t, R, default_threshold2x(R, t.delta2x()), eps);
    GeodeticTree tree = build_geodetic_tree(g, d, g.root, TieBreak::kLeastId);
    RayCensus census = ray_census(tree.tree, d, cells);
    rows.push_back(RayGrowthRow{R, cells.cell_count(),
                                static_cast<std::uint64_t>(census.total_trunks)});
  }
  return rows;
}

LimitSetFamily limit_sets(const GeodeticTree& t, const std::vector<int>& S,
                          const BoundaryCellSet& cells) {
  int n = static_cast<int>(t.tree.parent.size());
  LimitSetFamily out;
  out.separator = S;
  std::sort(out.separator.begin(), out.separator.end());
  out.separator.erase(std::unique(out.separator.begin(), out.separator.end()),
                      out.separator.end());
  for (int v : out.separator)
    if (v < 0 || v >= n)
      throw std::invalid_argument("limit_sets: separator vertex out of range");

  std::vector<char> blocked(static_cast<std::size_t>(n), 0);
  for (int v : out.separator) blocked[static_cast<std::size_t>(v)] = 1;

  auto adj = tree_adjacency(t.tree);
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (blocked[static_cast<std::size_t>(v)] || comp[static_cast<std::size_t>(v)] >= 0 ||
        !t.tree.contains(v))
      continue;
    int id = static_cast<int>(out.components.size());
    out.components.emplace_back();
    std::vector<int> queue{v};
    comp[static_cast<std::size_t>(v)] = id;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      int u = queue[h];
      out.components[static_cast<std::size_t>(id)].push_back(u);
      for (int w : adj[static_cast<std::size_t>(u)])
        if (!blocked[static_cast<std::size_t>(w)] &&
            comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = id;
          queue.push_back(w);
        }
    }
  }
  for (auto& members : out.components) std::sort(members.begin(), members.end());

  int k = cells.cell_count();
  out.Z.resize(out.components.size());
  out.infinite_direction.assign(out.components.size(), 0);
  out.z_count.assign(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < out.components.size(); ++i) {
    std::vector<int>& z = out.Z[i];
    for (int v : out.components[i]) {
      int c = cells.cell_of[static_cast<std::size_t>(v)];
      if (c >= 0) z.push_back(c);
    }
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());
    out.infinite_direction[i] = z.empty() ? 0 : 1;
    for (int c : z) ++out.z_count[static_cast<std::size_t>(c)];
  }

  bool any_infinite = false;
  for (char f : out.infinite_direction) any_infinite |= f != 0;
  if (!any_infinite)
    throw std::invalid_argument(
        "limit_sets: no component reaches the sphere (separator swallows it)");
  out.m = *std::max_element(out.z_count.begin(), out.z_count.end());

  // largest certified radius: distances from every cell to every Z_i only
  // change the ball counts at finitely many values, so searching those values
  // is exact
  FiniteMetric metric = FiniteMetric::from_visual(cells.cell_metric);
  std::vector<std::size_t> infinite_ids;
  for (std::size_t i = 0; i < out.components.size(); ++i)
    if (out.infinite_direction[i]) infinite_ids.push_back(i);
  std::vector<std::vector<double>> dist_to_z(
      static_cast<std::size_t>(k), std::vector<double>(infinite_ids.size(), 0));
  std::vector<double> candidates{0.0};
  for (int c = 0; c < k; ++c)
    for (std::size_t a = 0; a < infinite_ids.size(); ++a) {
      double best = std::numeric_limits<double>::infinity();
      for (int z : out.Z[infinite_ids[a]]) best = std::min(best, metric(c, z));
      dist_to_z[static_cast<std::size_t>(c)][a] = best;
      candidates.push_back(best);
    }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  auto passes = [&](double r) {
    for (int c = 0; c < k; ++c) {
      int hit = 0;
      for (double v : dist_to_z[static_cast<std::size_t>(c)])
        if (v <= r + kMetricTol) ++hit;
      if (hit > out.m) return false;
    }
    return true;
  };

  std::size_t lo = 0, hi = candidates.size() - 1;
  if (passes(candidates[hi])) {
    out.epsilon_star = candidates[hi];
    out.epsilon_unbounded = true;
  } else {
    while (lo < hi) {  // candidates[lo] passes, candidates[hi] fails
      std::size_t mid = (lo + hi + 1) / 2;
      if (passes(candidates[mid]))
        lo = mid;
      else
        hi = mid - 1;
    }
    out.epsilon_star = candidates[lo];
    if (out.epsilon_star == 0.0 && candidates.size() > lo + 1) {
      double half = candidates[lo + 1] / 2;
      if (passes(half)) out.epsilon_star = half;
    }
  }

  // closedness of the Z_i is vacuous for finite sets; named so audits can
  // point at the check
  out.closed_shadow_ok = true;
  return out;
}

SeparatorResult find_separator(const GeodeticTree& t, const BoundaryCellSet& cells,
                               const std::vector<std::vector<int>>& cover) {
  validate_cover(cover, cells.cell_count());
  SeparatorResult res;
  res.depth_cutoff = cells.R;

  std::vector<int> depth = tree_depths(t.tree);
  std::vector<std::vector<int>> sorted_cover = cover;
  for (auto& u : sorted_cover) std::sort(u.begin(), u.end());

  for (int radius = -1; radius < cells.R; ++radius) {
    std::vector<int> S;
    for (std::size_t v = 0; v < depth.size(); ++v)
      if (depth[v] >= 0 && depth[v] <= radius) S.push_back(static_cast<int>(v));
    LimitSetFamily fam = limit_sets(t, S, cells);

    std::vector<int> assign(fam.components.size(), -1);
    bool all_covered = true;
    for (std::size_t i = 0; i < fam.components.size(); ++i) {
      if (!fam.infinite_direction[i]) continue;
      int pick = -1;
      for (std::size_t u = 0; u < sorted_cover.size(); ++u)
        if (subset_of(fam.Z[i], sorted_cover[u])) {
          pick = static_cast<int>(u);
          break;
        }
      assign[i] = pick;
      if (pick < 0) all_covered = false;
    }
    res.separator = std::move(S);
    res.radius = radius;
    res.assignment = std::move(assign);
    res.family = std::move(fam);
    if (all_covered) {
      res.found = true;
      return res;
    }
  }
  res.found = false;  // inconclusive at this truncation depth
  return res;
}

LowerBoundAudit lower_bound_audit(const GeodeticTree& t, const DistanceOracle& d,
                                  const BoundaryCellSet& cells,
                                  const std::vector<std::vector<int>>& cover, int n) {
  if (n < 0) throw std::invalid_argument("lower_bound_audit: n must be >= 0");
  validate_cover(cover, cells.cell_count());
  int k = cells.cell_count();

  LowerBoundAudit audit;
  audit.n = n;
  auto link = [&](const std::string& name, bool applicable, bool ok,
                  const std::string& witness) {
    audit.links.push_back(AuditLink{name, applicable, ok, witness});
  };

  // criticality stand-in: some cell must lie in at least n+1 cover elements
  {
    int best = -1, best_count = 0;
    for (int c = 0; c < k; ++c) {
      int count = 0;
      for (const auto& u : cover)
        if (std::find(u.begin(), u.end(), c) != u.end()) ++count;
      if (count > best_count) {
        best_count = count;
        best = c;
      }
    }
    audit.criticality_established = best_count >= n + 1;
    audit.critical_cell = audit.criticality_established ? best : -1;
    link("cover-multiplicity", true, audit.criticality_established,
         audit.criticality_established
             ? "cell " + std::to_string(best) + " lies in " + std::to_string(best_count) +
                   " cover elements, needs " + std::to_string(n + 1)
             : "no cell reaches cover multiplicity " + std::to_string(n + 1) +
                   "; criticality not established at this depth");
  }

  audit.separator = find_separator(t, cells, cover);
  link("separator", true, audit.separator.found,
       audit.separator.found
           ? "root ball radius " + std::to_string(audit.separator.radius) + ", " +
                 std::to_string(audit.separator.separator.size()) + " vertices"
           : "no root ball below radius " + std::to_string(audit.separator.depth_cutoff) +
                 " separates; inconclusive at this depth");
  bool go = audit.separator.found;

  const LimitSetFamily& fam = audit.separator.family;
  audit.m = go ? fam.m : 0;
  link("limit-sets", go, go && (fam.epsilon_star > 0 || fam.epsilon_unbounded),
       go ? "m = " + std::to_string(fam.m) + ", epsilon* = " +
                std::to_string(fam.epsilon_star) +
                (fam.epsilon_unbounded ? " (every radius passes)" : "")
          : "skipped");

  audit.census = ray_census(t.tree, d, cells);
  for (int c : audit.census.per_cell) audit.census_max = std::max(audit.census_max, c);

  // each component containing a cell contributes a distinct tree ray to it
  if (go) {
    bool ok = true;
    std::string witness = "per-cell tree rays dominate per-cell component counts";
    for (int c = 0; c < k; ++c)
      if (audit.census.per_cell[static_cast<std::size_t>(c)] <
          fam.z_count[static_cast<std::size_t>(c)]) {
        ok = false;
        witness = "cell " + std::to_string(c) + " has " +
                  std::to_string(audit.census.per_cell[static_cast<std::size_t>(c)]) +
                  " rays but " + std::to_string(fam.z_count[static_cast<std::size_t>(c)]) +
                  " components";
        break;
      }
    link("rays-dominate-z", true, ok, witness);
    go = go && ok;
  } else {
    link("rays-dominate-z", false, false, "skipped");
  }

  // refinement V: fatten each Z_i by epsilon*, intersect with its cover set
  bool lower_observed = false;
  if (go) {
    FiniteMetric metric = FiniteMetric::from_visual(cells.cell_metric);
    bool refines = true;
    std::string refine_witness;
    for (std::size_t i = 0; i < fam.components.size(); ++i) {
      if (!fam.infinite_direction[i]) continue;
      const std::vector<int>& u = cover[static_cast<std::size_t>(
          audit.separator.assignment[i])];
      std::vector<int> zpp;
      for (int c = 0; c < k; ++c) {
        double dist = std::numeric_limits<double>::infinity();
        for (int z : fam.Z[i]) dist = std::min(dist, metric(c, z));
        if (dist > fam.epsilon_star + kMetricTol) continue;
        if (std::find(u.begin(), u.end(), c) == u.end()) continue;
        zpp.push_back(c);
      }
      for (int c : zpp)
        if (std::find(u.begin(), u.end(), c) == u.end()) {
          refines = false;
          refine_witness = "set " + std::to_string(audit.refinement.size()) +
                           " leaks cell " + std::to_string(c);
        }
      audit.refinement.push_back(std::move(zpp));
    }
    link("refinement-refines", true, refines,
         refines ? std::to_string(audit.refinement.size()) +
                       " sets, each inside its cover element"
                 : refine_witness);

    std::vector<int> vmult(static_cast<std::size_t>(k), 0);
    for (const auto& zpp : audit.refinement)
      for (int c : zpp) ++vmult[static_cast<std::size_t>(c)];
    bool covers = true;
    std::string cover_witness = "every cell lies in some refinement set";
    for (int c = 0; c < k; ++c)
      if (vmult[static_cast<std::size_t>(c)] == 0) {
        covers = false;
        cover_witness = "cell " + std::to_string(c) + " lies in no refinement set";
        break;
      }
    link("refinement-covers", true, covers, cover_witness);

    for (int c = 0; c < k; ++c)
      if (vmult[static_cast<std::size_t>(c)] > audit.vmult_max) {
        audit.vmult_max = vmult[static_cast<std::size_t>(c)];
        audit.vmult_argmax = c;
      }
    audit.vmult_worst_allowed = 2 * audit.m;

    lower_observed = audit.vmult_max >= n + 1;
    link("v-multiplicity-lower", audit.criticality_established, lower_observed,
         "cell " + std::to_string(audit.vmult_argmax) + " lies in " +
             std::to_string(audit.vmult_max) + " refinement sets, needs " +
             std::to_string(n + 1));
    bool upper = audit.vmult_max <= audit.vmult_worst_allowed;
    link("v-multiplicity-upper", true, upper,
         "max refinement multiplicity " + std::to_string(audit.vmult_max) +
             " against 2m = " + std::to_string(audit.vmult_worst_allowed));

    go = go && refines && covers && upper;
  } else {
    link("refinement-refines", false, false, "skipped");
    link("refinement-covers", false, false, "skipped");
    link("v-multiplicity-lower", false, false, "skipped");
    link("v-multiplicity-upper", false, false, "skipped");
  }

  // the conclusion is conditional on the criticality stand-in; the refinement
  // multiplicity observation is recorded but a shallow truncation can miss it
  // without voiding the counting inequality
  audit.rays_required = (n + 2) / 2;  // ceil((n+1)/2)
  if (go && audit.criticality_established) {
    bool counting = 2 * audit.m >= n + 1;
    bool witnessed = audit.census_max >= audit.rays_required;
    int argmax = -1;
    for (int c = 0; c < k; ++c)
      if (audit.census.per_cell[static_cast<std::size_t>(c)] == audit.census_max) {
        argmax = c;
        break;
      }
    link("conclusion", true, counting && witnessed,
         "2m = " + std::to_string(2 * audit.m) + " >= n+1 = " + std::to_string(n + 1) +
             (counting ? " holds" : " fails") + "; cell " + std::to_string(argmax) +
             " carries " + std::to_string(audit.census_max) + " rays, needs " +
             std::to_string(audit.rays_required) +
             (lower_observed ? "" : "; refinement multiplicity not observed at this depth"));
    audit.chain_ok = counting && witnessed && go && lower_observed;
  } else {
    link("conclusion", false, false,
         audit.criticality_established ? "skipped: an earlier link failed"
                                       : "criticality not established at this depth");
    audit.chain_ok = false;
  }
  return audit;
}

}  // namespace hypertree
