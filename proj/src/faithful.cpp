#include "hypertree/faithful.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypertree {

namespace {

constexpr double kTol = 1e-12;

void claim_bucket(ClaimCheck& c, double value, double bound, double slack) {
  double ratio = bound > 0 ? value / bound
                           : (value > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  c.worst_ratio = std::max(c.worst_ratio, ratio);
  if (value <= bound + kTol)
    ++c.pass;
  else if (value <= bound * slack + kTol)
    ++c.pass_with_slack;
  else
    ++c.fail;
}

double set_distance(const FiniteMetric& m, int point, const std::vector<int>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (int p : set) best = std::min(best, m(point, p));
  return best;
}

double set_set_distance(const FiniteMetric& m, const std::vector<int>& a,
                        const std::vector<int>& b) {
  double best = std::numeric_limits<double>::infinity();
  for (int p : a)
    for (int q : b) best = std::min(best, m(p, q));
  return best;
}

// tie-ranked descend: walk from `from` toward `to` along distance-decreasing
// neighbours, preferring least rank
std::vector<int> ranked_descent(const TruncatedGraph& g, const DistanceOracle& d,
                                const TieOrder& order, int from, int to) {
  std::vector<int> path{from};
  const std::uint16_t* dt = d.row(to);
  int cur = from;
  while (cur != to) {
    int next = -1;
    for (int nb : g.adjacency[static_cast<std::size_t>(cur)])
      if (dt[nb] + 1 == dt[cur] && (next < 0 || order.less(nb, next))) next = nb;
    if (next < 0) throw std::logic_error("ranked_descent: no descending neighbour");
    path.push_back(next);
    cur = next;
  }
  return path;
}

}  // namespace

int RootedTree::member_count() const {
  int c = 0;
  for (int p : parent)
    if (p >= 0) ++c;
  return c;
}

std::vector<int> RootedTree::root_path(int v) const {
  if (!contains(v)) throw std::invalid_argument("root_path: vertex not in tree");
  std::vector<int> back{v};
  while (v != root) {
    v = parent[static_cast<std::size_t>(v)];
    back.push_back(v);
  }
  return {back.rbegin(), back.rend()};
}

std::vector<std::vector<int>> RootedTree::children() const {
  std::vector<std::vector<int>> ch(parent.size());
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (parent[v] >= 0 && static_cast<int>(v) != root)
      ch[static_cast<std::size_t>(parent[v])].push_back(static_cast<int>(v));
  return ch;
}

FaithfulParams make_faithful_params(const GromovTable& t, const BoundaryCellSet& cells,
                                    const DoublingReport& doubling, double epsilon0,
                                    int stage_cap) {
  FaithfulParams p;
  p.kappa = doubling.kappa;
  p.N = static_cast<int>(doubling.N);
  p.visual_epsilon = cells.epsilon;
  double delta = t.delta2x() / 2.0;
  p.delta_prime = std::exp(5.0 * cells.epsilon * delta);
  if (!(p.delta_prime < 8.0))
    throw std::invalid_argument(
        "make_faithful_params: exp(5*epsilon*delta) must stay below 8; epsilon is "
        "inadmissible");
  p.claim_slack_factor = std::exp(4.0 * cells.epsilon * delta);
  p.stage_cap = stage_cap;
  if (epsilon0 > 0) {
    p.epsilon0 = epsilon0;
  } else {
    FiniteMetric m = FiniteMetric::from_visual(cells.cell_metric);
    double diam = m.diameter();
    p.epsilon0 = diam > 0 ? 2.0 * diam : 1.0;
  }
  return p;
}

StageState init_stage0(const TruncatedGraph& g, const DistanceOracle& d,
                       const BoundaryCellSet& cells, const FaithfulParams& params,
                       const TieOrder& order) {
  StageState st;
  int k = cells.cell_count();
  int n = g.vertex_count();

  std::vector<int> ids(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) ids[static_cast<std::size_t>(c)] = c;
  int start = order.least(ids);

  FiniteMetric m = FiniteMetric::from_visual(cells.cell_metric);
  for (int c = 0; c < k; ++c)
    if (m(start, c) > params.epsilon0 + kTol)
      throw std::invalid_argument(
          "init_stage0: epsilon0 " + std::to_string(params.epsilon0) +
          " does not cover the cell metric from the start cell (need at least " +
          std::to_string(m(start, c)) + ")");

  st.tree.root = g.root;
  st.tree.parent.assign(static_cast<std::size_t>(n), -1);
  st.tree.parent[static_cast<std::size_t>(g.root)] = g.root;
  st.edge_ray.assign(static_cast<std::size_t>(n), -1);

  std::vector<int> ray0 =
      ranked_descent(g, d, order, g.root, cells.representative[static_cast<std::size_t>(start)]);
  for (std::size_t i = 1; i < ray0.size(); ++i) {
    st.tree.parent[static_cast<std::size_t>(ray0[i])] = ray0[i - 1];
    st.edge_ray[static_cast<std::size_t>(ray0[i])] = 0;
  }
  st.rays.push_back(DoubleRayRecord{start, start, ray0});

  st.S = {start};
  st.connected_to.assign(static_cast<std::size_t>(k), -1);
  st.eventually_connected_to.assign(static_cast<std::size_t>(k), -1);
  st.connected_to[static_cast<std::size_t>(start)] = start;
  st.eventually_connected_to[static_cast<std::size_t>(start)] = start;
  st.eps_prev = params.epsilon0;
  st.eps_prev2 = 0;
  st.j = 0;
  return st;
}

namespace {

struct SpliceOutcome {
  int connected_cell = -1;
  bool collision = false;
};

// joins the representative of cell mu to the tree along a geodesic double-ray
// analogue that rides the existing ray to target_cell as long as possible
SpliceOutcome splice_ray(StageState& st, const TruncatedGraph& g, const DistanceOracle& d,
                         const BoundaryCellSet& cells, const FiniteMetric& m,
                         const TieOrder& order, int mu, int target_cell) {
  int u = cells.representative[static_cast<std::size_t>(mu)];
  int w = cells.representative[static_cast<std::size_t>(target_cell)];
  const std::uint16_t* du = d.row(u);

  std::vector<int> P = st.tree.root_path(w);
  // ride the target ray backwards from w while it descends toward u
  std::size_t k = P.size() - 1;
  while (k > 0 && du[P[k - 1]] + 1 == du[P[k]]) --k;

  std::vector<int> D;  // w .. a .. u, a geodesic from w to u
  for (std::size_t i = P.size(); i-- > k;) D.push_back(P[i]);
  std::size_t ride_end = D.size() - 1;  // index of a
  {
    int cur = D.back();
    while (cur != u) {
      int next = -1;
      for (int nb : g.adjacency[static_cast<std::size_t>(cur)])
        if (du[nb] + 1 == du[cur] && (next < 0 || order.less(nb, next))) next = nb;
      if (next < 0) throw std::logic_error("splice_ray: no descending neighbour");
      D.push_back(next);
      cur = next;
    }
  }

  std::size_t q_idx = 0;
  for (std::size_t i = 0; i < D.size(); ++i)
    if (st.tree.contains(D[i])) q_idx = i;

  int ray_id = static_cast<int>(st.rays.size());
  DoubleRayRecord rec;
  rec.cell_a = mu;
  rec.cell_b = target_cell;
  rec.path.assign(D.rbegin(), D.rend());  // rep(mu) .. rep(target)
  st.rays.push_back(std::move(rec));

  for (std::size_t i = q_idx + 1; i < D.size(); ++i) {
    st.tree.parent[static_cast<std::size_t>(D[i])] = D[i - 1];
    st.edge_ray[static_cast<std::size_t>(D[i])] = ray_id;
  }

  SpliceOutcome out;
  out.collision = q_idx > ride_end;
  if (!out.collision) {
    out.connected_cell = target_cell;
    return out;
  }

  // the splice path met the tree beyond the shared ray segment: resolve which
  // recorded double ray owns that vertex and connect to its nearer endpoint
  int q = D[q_idx];
  int rid = q == st.tree.root ? 0 : st.edge_ray[static_cast<std::size_t>(q)];
  if (rid < 0) throw std::logic_error("splice_ray: collision vertex has no ray record");
  const DoubleRayRecord& hit = st.rays[static_cast<std::size_t>(rid)];
  int ca = hit.cell_a, cb = hit.cell_b;
  double da = m(mu, ca), db = m(mu, cb);
  if (da < db - kTol)
    out.connected_cell = ca;
  else if (db < da - kTol)
    out.connected_cell = cb;
  else
    out.connected_cell = order.less(ca, cb) ? ca : cb;
  return out;
}

}  // namespace

bool advance_stage(StageState& st, const TruncatedGraph& g, const DistanceOracle& d,
                   const BoundaryCellSet& cells, const FaithfulParams& params,
                   const TieOrder& order) {
  int k = cells.cell_count();
  if (static_cast<int>(st.S.size()) >= k) return false;

  FiniteMetric m = FiniteMetric::from_visual(cells.cell_metric);
  StageReport rep;
  rep.j = st.j + 1;
  rep.eps_prev = st.eps_prev;
  rep.cover_radius = st.eps_prev / 16.0;
  rep.eps_j = st.eps_prev / (128.0 * static_cast<double>(params.N));

  BallCover fresh = ls23_cover(m, rep.cover_radius, params.kappa, st.S, order);
  if (!fresh.cert.cover_ok || !fresh.cert.separation_ok || !fresh.cert.seed_included)
    throw std::logic_error("advance_stage: stage " + std::to_string(rep.j) +
                           " ball cover failed its own certificates");

  // refine the net: keep the cover centers, then greedily add every cell that
  // stays separated at the new radius, in tie order
  std::vector<int> net = fresh.centers;
  std::vector<char> in_net(static_cast<std::size_t>(k), 0);
  for (int c : net) in_net[static_cast<std::size_t>(c)] = 1;
  std::vector<int> scan(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) scan[static_cast<std::size_t>(c)] = c;
  order.sort_ids(scan);
  for (int c : scan) {
    if (in_net[static_cast<std::size_t>(c)]) continue;
    bool separated = true;
    for (int s : net)
      if (m(c, s) <= rep.eps_j + kTol) {
        separated = false;
        break;
      }
    if (separated) {
      net.push_back(c);
      in_net[static_cast<std::size_t>(c)] = 1;
    }
  }

  std::vector<char> in_old(static_cast<std::size_t>(k), 0);
  for (int c : st.S) in_old[static_cast<std::size_t>(c)] = 1;
  std::vector<int> fresh_cells;
  for (int c : net)
    if (!in_old[static_cast<std::size_t>(c)]) fresh_cells.push_back(c);

  // multiplicity class of each new cell against the previous stage's cover
  std::vector<int> cls(static_cast<std::size_t>(k), 1);
  if (st.have_cover) {
    for (int c : fresh_cells) {
      int found = -1;
      for (int n = 1; n <= params.N; ++n)
        if (point_multiplicity(m, st.cover.balls, n * 8.0 * st.eps_prev, c) <= n) {
          found = n;
          break;
        }
      if (found < 0) {
        found = params.N + 1;
        ++rep.class_anomalies;
      }
      cls[static_cast<std::size_t>(c)] = found;
    }
    std::stable_sort(fresh_cells.begin(), fresh_cells.end(), [&](int a, int b) {
      if (cls[static_cast<std::size_t>(a)] != cls[static_cast<std::size_t>(b)])
        return cls[static_cast<std::size_t>(a)] < cls[static_cast<std::size_t>(b)];
      return order.less(a, b);
    });
  }
  rep.new_cells = fresh_cells;

  // splice one ray per new cell, nearest existing net cell first as target
  for (int mu : fresh_cells) {
    int target = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int s : st.S) {
      double ds = m(mu, s);
      if (ds < best - kTol || (ds <= best + kTol && (target < 0 || order.less(s, target)))) {
        best = ds;
        target = s;
      }
    }
    if (target < 0 || best > st.eps_prev + kTol)
      throw std::logic_error("advance_stage: net cover invariant broken (cell " +
                             std::to_string(mu) + " is " + std::to_string(best) +
                             " away from the net, radius " + std::to_string(st.eps_prev) +
                             ")");
    SpliceOutcome sp = splice_ray(st, g, d, cells, m, order, mu, target);
    if (sp.collision) ++rep.collisions;
    st.connected_to[static_cast<std::size_t>(mu)] = sp.connected_cell;
    claim_bucket(rep.claim2, m(mu, sp.connected_cell),
                 8.0 * params.N * st.eps_prev, params.claim_slack_factor);

    // resolve the eventual connection along this stage's chain
    int hops = 0, cur = sp.connected_cell;
    while (!in_old[static_cast<std::size_t>(cur)] && cur != mu && hops <= k) {
      int nxt = st.eventually_connected_to[static_cast<std::size_t>(cur)];
      if (nxt < 0 || nxt == cur) break;
      cur = nxt;
      ++hops;
    }
    if (hops > k || (!in_old[static_cast<std::size_t>(cur)] &&
                     st.eventually_connected_to[static_cast<std::size_t>(cur)] < 0 &&
                     cur != mu)) {
      rep.ec_cycle = true;
      st.eventually_connected_to[static_cast<std::size_t>(mu)] = sp.connected_cell;
    } else {
      st.eventually_connected_to[static_cast<std::size_t>(mu)] = cur;
    }
  }

  // claim 1: new cells of the same class within 8*eps_prev meet the same
  // previous-stage balls at their class radius
  if (st.have_cover) {
    for (std::size_t a = 0; a < fresh_cells.size(); ++a)
      for (std::size_t b = a + 1; b < fresh_cells.size(); ++b) {
        int m1 = fresh_cells[a], m2 = fresh_cells[b];
        int n = cls[static_cast<std::size_t>(m1)];
        if (n != cls[static_cast<std::size_t>(m2)] || n > params.N) continue;
        if (m(m1, m2) > 8.0 * st.eps_prev + kTol) continue;
        double bound = n * 8.0 * st.eps_prev;
        for (const auto& ball : st.cover.balls) {
          double d1 = set_distance(m, m1, ball);
          double d2 = set_distance(m, m2, ball);
          bool near1 = d1 <= bound + kTol, near2 = d2 <= bound + kTol;
          if (near1 == near2) {
            if (near1) claim_bucket(rep.claim1, std::max(d1, d2), bound,
                                    params.claim_slack_factor);
            continue;
          }
          claim_bucket(rep.claim1, std::max(d1, d2), bound, params.claim_slack_factor);
        }
      }
  }

  // claim 2, eventual form, over the previous net
  if (st.eps_prev2 > 0) {
    double bound = 0.5 * params.N * st.eps_prev * st.eps_prev2;
    for (int s : st.S) {
      int ec = st.eventually_connected_to[static_cast<std::size_t>(s)];
      if (ec < 0) continue;
      claim_bucket(rep.claim2_eventual, m(s, ec), bound, params.claim_slack_factor);
    }
  }

  // net multiplicity certificate at the cover radius
  {
    std::vector<std::vector<int>> singletons;
    singletons.reserve(net.size());
    for (int c : net) singletons.push_back({c});
    rep.net_multiplicity = r_multiplicity(m, singletons, rep.cover_radius).value;
    rep.net_multiplicity_bound =
        std::pow(static_cast<double>(params.N), std::log2(8.0 * params.N));
    rep.net_multiplicity_ok =
        static_cast<double>(rep.net_multiplicity) <= rep.net_multiplicity_bound + 0.5;
  }

  // neighbourhood crowding of the fresh cover at the new scale
  {
    rep.bprime_bound = std::pow(static_cast<double>(params.N), 8.0);
    for (std::size_t a = 0; a < fresh.balls.size(); ++a) {
      int close = 0;
      for (std::size_t b = 0; b < fresh.balls.size(); ++b) {
        if (a == b) continue;
        if (set_set_distance(m, fresh.balls[a], fresh.balls[b]) <=
            8.0 * params.N * rep.eps_j + kTol)
          ++close;
      }
      rep.bprime_max = std::max(rep.bprime_max, close);
    }
    rep.bprime_ok = static_cast<double>(rep.bprime_max) <= rep.bprime_bound + 0.5;
  }

  std::sort(net.begin(), net.end());
  st.S = std::move(net);
  st.cover = std::move(fresh);
  st.have_cover = true;
  st.eps_prev2 = st.eps_prev;
  st.eps_prev = rep.eps_j;
  st.j = rep.j;
  rep.net_size = static_cast<int>(st.S.size());
  st.reports.push_back(std::move(rep));
  return true;
}

CompletionReport complete_spanning_tree(const TruncatedGraph& g, const DistanceOracle& d,
                                        RootedTree& tree, const TieOrder& order,
                                        int interior_radius) {
  CompletionReport rep;
  int n = g.vertex_count();
  const std::uint16_t* dr = d.row(tree.root);

  auto pick_parent = [&](const std::vector<int>& candidates) {
    int best = -1;
    for (int c : candidates) {
      if (best < 0) {
        best = c;
        continue;
      }
      if (dr[c] > dr[best] || (dr[c] == dr[best] && order.less(c, best))) best = c;
    }
    return best;
  };

  int rho = -1;  // deepest vertex added by path rounds so far
  while (true) {
    std::vector<int> unattached;
    for (int v = 0; v < n; ++v)
      if (!tree.contains(v)) unattached.push_back(v);
    if (unattached.empty()) break;
    ++rep.rounds;

    // interior components (never reaching the sphere) attach freely
    {
      std::vector<int> comp(static_cast<std::size_t>(n), -1);
      std::vector<std::vector<int>> comps;
      for (int v : unattached) {
        if (comp[static_cast<std::size_t>(v)] >= 0) continue;
        int id = static_cast<int>(comps.size());
        comps.emplace_back();
        std::vector<int> queue{v};
        comp[static_cast<std::size_t>(v)] = id;
        for (std::size_t h = 0; h < queue.size(); ++h) {
          int u = queue[h];
          comps[static_cast<std::size_t>(id)].push_back(u);
          for (int nb : g.adjacency[static_cast<std::size_t>(u)])
            if (!tree.contains(nb) && comp[static_cast<std::size_t>(nb)] < 0) {
              comp[static_cast<std::size_t>(nb)] = id;
              queue.push_back(nb);
            }
        }
      }
      bool attached_any = false;
      for (auto& members : comps) {
        bool interior = true;
        for (int v : members)
          if (dr[v] >= interior_radius) {
            interior = false;
            break;
          }
        if (!interior) continue;
        // BFS from the tree boundary into the component, preferring deep parents
        std::sort(members.begin(), members.end());
        std::vector<int> layer(static_cast<std::size_t>(n), -1);
        std::vector<int> frontier;
        for (int v : members) {
          std::vector<int> ports;
          for (int nb : g.adjacency[static_cast<std::size_t>(v)])
            if (tree.contains(nb)) ports.push_back(nb);
          if (!ports.empty()) {
            tree.parent[static_cast<std::size_t>(v)] = pick_parent(ports);
            layer[static_cast<std::size_t>(v)] = 0;
            frontier.push_back(v);
            ++rep.component_attached;
            attached_any = true;
          }
        }
        while (!frontier.empty()) {
          std::vector<int> next;
          for (int u : frontier)
            for (int nb : g.adjacency[static_cast<std::size_t>(u)])
              if (!tree.contains(nb) && comp[static_cast<std::size_t>(nb)] ==
                                            comp[static_cast<std::size_t>(u)] &&
                  layer[static_cast<std::size_t>(nb)] < 0)
                layer[static_cast<std::size_t>(nb)] = layer[static_cast<std::size_t>(u)] + 1;
          for (int v : members)
            if (layer[static_cast<std::size_t>(v)] >= 0 && !tree.contains(v)) {
              std::vector<int> cand;
              for (int nb : g.adjacency[static_cast<std::size_t>(v)])
                if (layer[static_cast<std::size_t>(nb)] ==
                        layer[static_cast<std::size_t>(v)] - 1 &&
                    tree.contains(nb))
                  cand.push_back(nb);
              if (!cand.empty()) {
                tree.parent[static_cast<std::size_t>(v)] = pick_parent(cand);
                next.push_back(v);
                ++rep.component_attached;
              }
            }
          frontier = std::move(next);
        }
      }
      if (attached_any) continue;  // re-evaluate components before path rounds
    }

    // path round: attach the closest unattached shell through the region that
    // stays outside the root ball of radius rho
    int d_min = std::numeric_limits<int>::max();
    for (int v : unattached) d_min = std::min(d_min, static_cast<int>(dr[v]));
    if (rho < 0) rho = d_min;

    auto bfs_layers = [&](int region_min) {
      std::vector<int> layer(static_cast<std::size_t>(n), -1);
      std::vector<int> frontier;
      for (int v = 0; v < n; ++v)
        if (tree.contains(v) && dr[v] >= region_min) {
          layer[static_cast<std::size_t>(v)] = 0;
          frontier.push_back(v);
        }
      int cur = 0;
      while (!frontier.empty()) {
        std::vector<int> next;
        for (int u : frontier)
          for (int nb : g.adjacency[static_cast<std::size_t>(u)])
            if (dr[nb] >= region_min && layer[static_cast<std::size_t>(nb)] < 0 &&
                !tree.contains(nb)) {
              layer[static_cast<std::size_t>(nb)] = cur + 1;
              next.push_back(nb);
            }
        frontier = std::move(next);
        ++cur;
      }
      return layer;
    };

    int region_min = rho;
    std::vector<int> layer = bfs_layers(region_min);
    std::vector<int> targets;
    for (int v : unattached)
      if (dr[v] == d_min && layer[static_cast<std::size_t>(v)] > 0) targets.push_back(v);
    if (targets.empty()) {
      ++rep.relaxations;
      region_min = 0;
      layer = bfs_layers(region_min);
      for (int v : unattached)
        if (dr[v] == d_min && layer[static_cast<std::size_t>(v)] > 0) targets.push_back(v);
      if (targets.empty())
        throw std::logic_error("complete_spanning_tree: frontier unreachable");
    }
    order.sort_ids(targets);

    int deepest_added = rho;
    for (int v : targets) {
      int cur = v;
      while (!tree.contains(cur)) {
        std::vector<int> cand;
        for (int nb : g.adjacency[static_cast<std::size_t>(cur)])
          if (layer[static_cast<std::size_t>(nb)] ==
              layer[static_cast<std::size_t>(cur)] - 1)
            cand.push_back(nb);
        int pr = pick_parent(cand);
        if (pr < 0) throw std::logic_error("complete_spanning_tree: broken layer chain");
        tree.parent[static_cast<std::size_t>(cur)] = pr;
        ++rep.path_attached;
        deepest_added = std::max(deepest_added, static_cast<int>(dr[cur]));
        cur = pr;
      }
    }
    rho = deepest_added;
  }
  return rep;
}

RayCensus ray_census(const RootedTree& tree, const DistanceOracle& d,
                     const BoundaryCellSet& cells, int N) {
  RayCensus out;
  out.per_cell.assign(static_cast<std::size_t>(cells.cell_count()), 0);
  int n = d.size();
  const std::uint16_t* dr = d.row(tree.root);

  // first sphere vertex on each root path, memoised top-down
  std::vector<int> first_cross(static_cast<std::size_t>(n), -2);  // -2 unknown, -1 none
  auto cross_of = [&](auto&& self, int v) -> int {
    int& memo = first_cross[static_cast<std::size_t>(v)];
    if (memo != -2) return memo;
    if (v == tree.root)
      return memo = dr[v] == cells.R ? v : -1;
    int up = self(self, tree.parent[static_cast<std::size_t>(v)]);
    if (up >= 0) return memo = up;
    return memo = dr[v] == cells.R ? v : -1;
  };

  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : cells.sphere) {
    if (!tree.contains(v)) continue;
    int e = cross_of(cross_of, v);
    if (e < 0 || seen[static_cast<std::size_t>(e)]) continue;
    seen[static_cast<std::size_t>(e)] = 1;
    ++out.per_cell[static_cast<std::size_t>(cells.cell_of[static_cast<std::size_t>(e)])];
    ++out.total_trunks;
  }
  for (std::size_t c = 0; c < out.per_cell.size(); ++c)
    if (out.per_cell[c] > out.max_multiplicity) {
      out.max_multiplicity = out.per_cell[c];
      out.argmax_cell = static_cast<int>(c);
    }

  if (N > 0) {
    int kappa = 0;
    while ((1 << kappa) < N) ++kappa;
    out.bound = std::pow(2.0, static_cast<double>(kappa) * (11.0 + kappa));
    out.bound_ok = static_cast<double>(out.max_multiplicity) <= out.bound + 0.5;
  }
  return out;
}

PropertyStarReport verify_property_star(const StageState& st, const TruncatedGraph& g,
                                        const DistanceOracle& d,
                                        const BoundaryCellSet& cells) {
  PropertyStarReport rep;
  std::vector<char> in_net(static_cast<std::size_t>(cells.cell_count()), 0);
  for (int c : st.S) in_net[static_cast<std::size_t>(c)] = 1;

  for (int v = 0; v < static_cast<int>(st.tree.parent.size()); ++v) {
    if (!st.tree.contains(v) || v == st.tree.root) continue;
    ++rep.edges_checked;
    int rid = st.edge_ray[static_cast<std::size_t>(v)];
    if (rid < 0 || rid >= static_cast<int>(st.rays.size())) continue;
    const DoubleRayRecord& rec = st.rays[static_cast<std::size_t>(rid)];

    PathInGraph p{rec.path};
    if (!is_geodesic(g, d, p)) continue;
    if (rid == 0) {
      // initial root ray: runs from the root to the start cell representative
      if (rec.path.front() != st.tree.root ||
          rec.path.back() != cells.representative[static_cast<std::size_t>(rec.cell_b)])
        continue;
    } else if (rec.path.front() !=
                   cells.representative[static_cast<std::size_t>(rec.cell_a)] ||
               rec.path.back() != cells.representative[static_cast<std::size_t>(rec.cell_b)]) {
      continue;
    }
    if (!in_net[static_cast<std::size_t>(rec.cell_a)] ||
        !in_net[static_cast<std::size_t>(rec.cell_b)])
      continue;
    int pv = st.tree.parent[static_cast<std::size_t>(v)];
    bool on_path = false;
    for (std::size_t i = 0; i + 1 < rec.path.size(); ++i) {
      int a = rec.path[i], b = rec.path[i + 1];
      if ((a == pv && b == v) || (a == v && b == pv)) {
        on_path = true;
        break;
      }
    }
    if (!on_path) continue;
    ++rep.edges_ok;
  }
  rep.all_ok = rep.edges_checked == rep.edges_ok;
  return rep;
}

GeodesicSuffixReport verify_geodesic_suffixes(const StageState& st,
                                              const TruncatedGraph&,
                                              const DistanceOracle& d, int delta2x) {
  GeodesicSuffixReport rep;
  auto kids = st.tree.children();
  for (int v = 0; v < static_cast<int>(st.tree.parent.size()); ++v) {
    if (!st.tree.contains(v) || v == st.tree.root) continue;
    if (!kids[static_cast<std::size_t>(v)].empty()) continue;
    ++rep.leaves_checked;
    std::vector<int> path = st.tree.root_path(v);
    const std::uint16_t* dv = d.row(v);
    int end = static_cast<int>(path.size()) - 1;
    int i = end;
    while (i > 0 && dv[path[static_cast<std::size_t>(i - 1)]] == end - (i - 1)) --i;
    int suffix_len = end - i;
    int defect = static_cast<int>(dv[st.tree.root]) - suffix_len;
    rep.worst_defect = std::max(rep.worst_defect, defect);
    if (defect <= 2 * delta2x) ++rep.leaves_within_4delta;
    if (2 * suffix_len >= end) ++rep.leaves_ok;
  }
  rep.all_ok = rep.leaves_checked == rep.leaves_ok;
  return rep;
}

FaithfulResult build_faithful_tree(const TruncatedGraph& g, const DistanceOracle& d,
                                   const GromovTable& t, const BoundaryCellSet& cells,
                                   const DoublingReport& doubling, std::uint64_t seed,
                                   double epsilon0, int stage_cap) {
  TieOrder order(g.vertex_count(), seed);
  FaithfulResult res;
  res.params = make_faithful_params(t, cells, doubling, epsilon0, stage_cap);
  res.state = init_stage0(g, d, cells, res.params, order);
  while (res.state.j < stage_cap) {
    if (!advance_stage(res.state, g, d, cells, res.params, order)) break;
  }
  res.net_complete = static_cast<int>(res.state.S.size()) == cells.cell_count();
  res.star = verify_property_star(res.state, g, d, cells);
  res.suffixes = verify_geodesic_suffixes(res.state, g, d, t.delta2x());
  res.spanning = res.state.tree;
  res.completion = complete_spanning_tree(g, d, res.spanning, order, cells.R);
  res.census = ray_census(res.spanning, d, cells, res.params.N);
  return res;
}

}  // namespace hypertree
