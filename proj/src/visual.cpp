#include "hypertree/visual.hpp"

#include "hypertree/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hypertree {

namespace {

constexpr double kAdmissibleBound = 0.41421356237309515;  // sqrt(2) - 1

}  // namespace

int VisualMetric::index_of(int vertex) const {
  // points are usually ascending but restricted metrics (e.g. one point per
  // cell) need not be, so search linearly
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i] == vertex) return static_cast<int>(i);
  return -1;
}

double max_admissible_epsilon(int delta2x) {
  if (delta2x == 0) return std::numeric_limits<double>::infinity();
  // epsilon * delta <= log(sqrt(2)), delta = delta2x / 2
  return std::log(2.0) / static_cast<double>(delta2x);
}

VisualMetric chain_metric(const GromovTable& t, double epsilon,
                          const std::vector<int>& points, int threads) {
  if (points.empty()) throw std::invalid_argument("chain_metric: empty point set");
  if (!(epsilon > 0)) throw std::invalid_argument("chain_metric: epsilon must be positive");
  for (std::size_t i = 0; i < points.size(); ++i) {
    int v = points[i];
    if (v < 0 || v >= t.size())
      throw std::invalid_argument("chain_metric: point out of range");
    if (i > 0 && points[i - 1] >= v)
      throw std::invalid_argument("chain_metric: points must be ascending");
  }

  double delta = t.delta2x() / 2.0;
  double eps_prime = std::exp(epsilon * delta) - 1.0;
  if (eps_prime > kAdmissibleBound + 1e-12)
    throw std::invalid_argument(
        "chain_metric: epsilon " + std::to_string(epsilon) +
        " is inadmissible for delta " + std::to_string(delta) +
        " (largest admissible epsilon is " +
        std::to_string(max_admissible_epsilon(t.delta2x())) + ")");

  VisualMetric vm;
  vm.epsilon = epsilon;
  vm.epsilon_prime = eps_prime;
  vm.base = t.base();
  vm.points = points;

  int m = static_cast<int>(points.size());
  vm.dmat.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    double* row = vm.dmat.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
    const std::int16_t* prow = t.row(points[static_cast<std::size_t>(i)]);
    for (int j = 0; j < m; ++j)
      row[j] = i == j ? 0.0
                      : std::exp(-epsilon *
                                 static_cast<double>(prow[points[static_cast<std::size_t>(j)]]) /
                                 2.0);
  }

  // Floyd-Warshall; the relaxation order is fixed, so results are exact
  // reproductions run to run regardless of the thread count.
  threads = effective_threads(threads);
  for (int k = 0; k < m; ++k) {
    const double* rk = vm.dmat.data() + static_cast<std::size_t>(k) * static_cast<std::size_t>(m);
    parallel_for(m, threads, [&](int lo, int hi) {
      for (int i = lo; i < hi; ++i) {
        double* ri = vm.dmat.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(m);
        double dik = ri[k];
        for (int j = 0; j < m; ++j) {
          double via = dik + rk[j];
          if (via < ri[j]) ri[j] = via;
        }
      }
    });
  }
  return vm;
}

SandwichReport sandwich_check(const VisualMetric& vm, const GromovTable& t, double tol) {
  SandwichReport rep;
  rep.ratio_histogram.assign(16, 0);
  int m = vm.size();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double rho = std::exp(-vm.epsilon * t.prod(vm.points[static_cast<std::size_t>(i)],
                                                 vm.points[static_cast<std::size_t>(j)]));
      double dij = vm.dist(i, j);
      double lower_margin = dij - vm.epsilon_prime * rho;
      double upper_margin = rho - dij;
      rep.worst_lower_margin = std::min(rep.worst_lower_margin, lower_margin);
      rep.worst_upper_margin = std::min(rep.worst_upper_margin, upper_margin);
      ++rep.pairs_checked;
      if (lower_margin < -tol || upper_margin < -tol) {
        ++rep.violations;
        if (rep.violation_pairs.size() < 32)
          rep.violation_pairs.emplace_back(vm.points[static_cast<std::size_t>(i)],
                                           vm.points[static_cast<std::size_t>(j)]);
      }
      double ratio = rho > 0 ? dij / rho : 1.0;
      int bucket = std::min(15, std::max(0, static_cast<int>(ratio * 16.0)));
      ++rep.ratio_histogram[static_cast<std::size_t>(bucket)];
    }
  return rep;
}

MetricAxiomReport check_metric_axioms(const VisualMetric& vm, double tol) {
  MetricAxiomReport rep;
  int m = vm.size();
  for (int i = 0; i < m; ++i) {
    if (std::abs(vm.dist(i, i)) > tol) ++rep.identity_violations;
    for (int j = 0; j < m; ++j) {
      if (std::abs(vm.dist(i, j) - vm.dist(j, i)) > tol) ++rep.symmetry_violations;
      if (i != j && vm.dist(i, j) <= tol) ++rep.identity_violations;
    }
  }
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      for (int j = 0; j < m; ++j)
        if (vm.dist(i, j) > vm.dist(i, k) + vm.dist(k, j) + tol) ++rep.triangle_violations;
  rep.ok = rep.symmetry_violations == 0 && rep.identity_violations == 0 &&
           rep.triangle_violations == 0;
  return rep;
}

int default_threshold2x(int R, int delta2x) {
  return std::max(0, 2 * R - 4 * delta2x);
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // keep the least id as the class root
    parent[static_cast<std::size_t>(b)] = a;
  }
};

}  // namespace

BoundaryCellSet boundary_cells(const TruncatedGraph& g, const DistanceOracle& d,
                               const GromovTable& t, int R, int threshold2x,
                               double epsilon, int threads) {
  if (R > g.depth) throw std::invalid_argument("boundary_cells: R exceeds graph depth");
  if (threshold2x < 0) throw std::invalid_argument("boundary_cells: negative threshold");

  BoundaryCellSet out;
  out.R = R;
  out.threshold2x = threshold2x;
  out.epsilon = epsilon;

  const std::uint16_t* dr = d.row(g.root);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (dr[v] == R) out.sphere.push_back(v);
  if (out.sphere.empty())
    throw std::invalid_argument("boundary_cells: no vertices at distance " +
                                std::to_string(R));

  int s = static_cast<int>(out.sphere.size());
  UnionFind uf(s);
  for (int i = 0; i < s; ++i) {
    const std::int16_t* pi = t.row(out.sphere[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < s; ++j)
      if (pi[out.sphere[static_cast<std::size_t>(j)]] >= threshold2x) uf.unite(i, j);
  }

  out.cell_of.assign(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> cell_id(static_cast<std::size_t>(s), -1);
  for (int i = 0; i < s; ++i) {
    int r = uf.find(i);
    if (cell_id[static_cast<std::size_t>(r)] < 0) {
      cell_id[static_cast<std::size_t>(r)] = static_cast<int>(out.cells.size());
      out.cells.emplace_back();
    }
    int c = cell_id[static_cast<std::size_t>(r)];
    out.cells[static_cast<std::size_t>(c)].push_back(out.sphere[static_cast<std::size_t>(i)]);
    out.cell_of[static_cast<std::size_t>(out.sphere[static_cast<std::size_t>(i)])] = c;
  }
  // sphere ids ascend and the union-find root is the least index, so cells
  // are already ordered by least member and members ascend

  out.representative.assign(out.cells.size(), -1);
  for (std::size_t c = 0; c < out.cells.size(); ++c) {
    const auto& members = out.cells[c];
    int best_v = members.front();
    int best_key = std::numeric_limits<int>::max();
    if (members.size() > 1) {
      best_key = std::numeric_limits<int>::min();
      for (int u : members) {
        const std::int16_t* pu = t.row(u);
        int key = std::numeric_limits<int>::max();
        for (int v : members)
          if (v != u) key = std::min(key, static_cast<int>(pu[v]));
        if (key > best_key) {
          best_key = key;
          best_v = u;
        }
      }
    }
    out.representative[c] = best_v;
  }

  // chain metric over the whole sphere, then restrict to representatives
  VisualMetric sphere_metric = chain_metric(t, epsilon, out.sphere, threads);
  VisualMetric cm;
  cm.epsilon = epsilon;
  cm.epsilon_prime = sphere_metric.epsilon_prime;
  cm.base = t.base();
  cm.points = out.representative;
  int k = static_cast<int>(out.cells.size());
  cm.dmat.assign(static_cast<std::size_t>(k) * static_cast<std::size_t>(k), 0.0);
  for (int a = 0; a < k; ++a) {
    int ia = sphere_metric.index_of(out.representative[static_cast<std::size_t>(a)]);
    for (int b = 0; b < k; ++b) {
      int ib = sphere_metric.index_of(out.representative[static_cast<std::size_t>(b)]);
      cm.dmat[static_cast<std::size_t>(a) * static_cast<std::size_t>(k) +
              static_cast<std::size_t>(b)] = sphere_metric.dist(ia, ib);
    }
  }
  out.cell_metric = std::move(cm);
  return out;
}

int ray_limit_cell(const BoundaryCellSet& cells, const PathInGraph& ray) {
  if (ray.vertices.empty()) throw std::invalid_argument("ray_limit_cell: empty ray");
  int tip = ray.vertices.back();
  int c = cells.cell_of[static_cast<std::size_t>(tip)];
  if (c < 0)
    throw std::invalid_argument("ray_limit_cell: ray endpoint " + std::to_string(tip) +
                                " is not on the sphere");
  return c;
}

}  // namespace hypertree
