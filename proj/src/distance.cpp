#include "hypertree/distance.hpp"

#include "hypertree/util.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hypertree {

namespace {

constexpr std::uint16_t kUnset = std::numeric_limits<std::uint16_t>::max();

void bfs_into(const TruncatedGraph& g, int source, std::uint16_t* out,
              std::vector<int>& queue) {
  int n = g.vertex_count();
  std::fill(out, out + n, kUnset);
  queue.clear();
  queue.push_back(source);
  out[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    std::uint16_t du = out[u];
    for (int v : g.adjacency[static_cast<std::size_t>(u)]) {
      if (out[v] != kUnset) continue;
      out[v] = static_cast<std::uint16_t>(du + 1);
      queue.push_back(v);
    }
  }
}

}  // namespace

int DistanceOracle::eccentricity(int u) const {
  const std::uint16_t* r = row(u);
  return *std::max_element(r, r + n_);
}

DistanceOracle all_pairs_distances(const TruncatedGraph& g, int threads) {
  int n = g.vertex_count();
  DistanceOracle oracle;
  oracle.n_ = n;
  oracle.d_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kUnset);

  threads = effective_threads(threads);
  parallel_for(n, threads, [&](int lo, int hi) {
    std::vector<int> queue;
    queue.reserve(static_cast<std::size_t>(n));
    for (int s = lo; s < hi; ++s)
      bfs_into(g, s, oracle.d_.data() + static_cast<std::size_t>(s) * static_cast<std::size_t>(n),
               queue);
  });

  for (std::size_t i = 0; i < oracle.d_.size(); ++i)
    if (oracle.d_[i] == kUnset)
      throw std::runtime_error("all_pairs_distances: unreachable pair (" +
                               std::to_string(i / static_cast<std::size_t>(n)) + ", " +
                               std::to_string(i % static_cast<std::size_t>(n)) + ")");
  return oracle;
}

bool is_path(const TruncatedGraph& g, const PathInGraph& p) {
  if (p.vertices.empty()) return false;
  for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
    if (!g.has_edge(p.vertices[i], p.vertices[i + 1])) return false;
  return true;
}

bool is_geodesic(const TruncatedGraph& g, const DistanceOracle& d, const PathInGraph& p) {
  if (!is_path(g, p)) return false;
  return p.length() == d(p.vertices.front(), p.vertices.back());
}

PathInGraph one_geodesic(const TruncatedGraph& g, const DistanceOracle& d, int x, int y) {
  PathInGraph p;
  p.vertices.reserve(static_cast<std::size_t>(d(x, y)) + 1);
  p.vertices.push_back(x);
  int cur = x;
  const std::uint16_t* to_y = d.row(y);
  while (cur != y) {
    int next = -1;
    for (int nb : g.adjacency[static_cast<std::size_t>(cur)]) {
      if (to_y[nb] + 1 == to_y[cur]) {
        next = nb;  // adjacency is sorted, first hit is the least id
        break;
      }
    }
    if (next < 0) throw std::logic_error("one_geodesic: no descending neighbour");
    p.vertices.push_back(next);
    cur = next;
  }
  return p;
}

GeodesicEnumeration all_geodesics(const TruncatedGraph& g, const DistanceOracle& d,
                                  int x, int y, std::size_t cap) {
  GeodesicEnumeration out;
  const std::uint16_t* to_y = d.row(y);

  // exact count by dynamic programming over the descending DAG
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(g.vertex_count()),
                                  std::uint64_t{0});
  std::vector<char> known(static_cast<std::size_t>(g.vertex_count()), 0);
  bool saturated = false;
  auto count_from = [&](auto&& self, int v) -> std::uint64_t {
    if (v == y) return 1;
    if (known[static_cast<std::size_t>(v)]) return ways[static_cast<std::size_t>(v)];
    std::uint64_t total = 0;
    for (int nb : g.adjacency[static_cast<std::size_t>(v)]) {
      if (to_y[nb] + 1 != to_y[v]) continue;
      std::uint64_t w = self(self, nb);
      if (total > std::numeric_limits<std::uint64_t>::max() - w) {
        total = std::numeric_limits<std::uint64_t>::max();
        saturated = true;
      } else {
        total += w;
      }
    }
    known[static_cast<std::size_t>(v)] = 1;
    ways[static_cast<std::size_t>(v)] = total;
    return total;
  };
  out.count = count_from(count_from, x);
  out.count_saturated = saturated;

  // lexicographic DFS, materialising at most `cap` paths
  std::vector<int> stack{x};
  auto dfs = [&](auto&& self, int v) -> bool {  // false = cap reached
    if (v == y) {
      out.paths.push_back(PathInGraph{stack});
      return out.paths.size() < cap;
    }
    for (int nb : g.adjacency[static_cast<std::size_t>(v)]) {
      if (to_y[nb] + 1 != to_y[v]) continue;
      stack.push_back(nb);
      bool keep_going = self(self, nb);
      stack.pop_back();
      if (!keep_going) return false;
    }
    return true;
  };
  if (cap > 0) dfs(dfs, x);
  out.truncated = out.paths.size() < out.count;
  return out;
}

PathInGraph koenig_ray(const std::vector<std::vector<int>>& levels,
                       const std::vector<int>& pred) {
  if (levels.empty()) throw std::invalid_argument("koenig_ray: no levels");
  for (std::size_t k = 0; k < levels.size(); ++k)
    if (levels[k].empty())
      throw std::invalid_argument("koenig_ray: level " + std::to_string(k) + " is empty");

  int deepest = *std::min_element(levels.back().begin(), levels.back().end());
  std::vector<int> back{deepest};
  for (std::size_t k = levels.size(); k-- > 1;) {
    int v = back.back();
    if (v < 0 || static_cast<std::size_t>(v) >= pred.size() || pred[static_cast<std::size_t>(v)] < 0)
      throw std::invalid_argument("koenig_ray: predecessor missing for vertex " +
                                  std::to_string(v));
    int p = pred[static_cast<std::size_t>(v)];
    const auto& prev = levels[k - 1];
    if (std::find(prev.begin(), prev.end(), p) == prev.end())
      throw std::invalid_argument("koenig_ray: predecessor of " + std::to_string(v) +
                                  " is not in the previous level");
    back.push_back(p);
  }
  PathInGraph ray;
  ray.vertices.assign(back.rbegin(), back.rend());
  return ray;
}

std::vector<std::vector<int>> bfs_levels(const TruncatedGraph& g, int root) {
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  std::vector<int> queue{root};
  dist[static_cast<std::size_t>(root)] = 0;
  int max_d = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (int v : g.adjacency[static_cast<std::size_t>(u)])
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        max_d = std::max(max_d, dist[static_cast<std::size_t>(v)]);
        queue.push_back(v);
      }
  }
  std::vector<std::vector<int>> levels(static_cast<std::size_t>(max_d) + 1);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (dist[static_cast<std::size_t>(v)] >= 0)
      levels[static_cast<std::size_t>(dist[static_cast<std::size_t>(v)])].push_back(v);
  for (auto& level : levels) std::sort(level.begin(), level.end());
  return levels;
}

std::vector<int> bfs_least_parent(const TruncatedGraph& g, int root) {
  auto levels = bfs_levels(g, root);
  std::vector<int> dist(static_cast<std::size_t>(g.vertex_count()), -1);
  for (std::size_t k = 0; k < levels.size(); ++k)
    for (int v : levels[k]) dist[static_cast<std::size_t>(v)] = static_cast<int>(k);
  std::vector<int> pred(static_cast<std::size_t>(g.vertex_count()), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (v == root) continue;
    for (int nb : g.adjacency[static_cast<std::size_t>(v)])
      if (dist[static_cast<std::size_t>(nb)] == dist[static_cast<std::size_t>(v)] - 1) {
        pred[static_cast<std::size_t>(v)] = nb;  // sorted adjacency: least id first
        break;
      }
  }
  return pred;
}

}  // namespace hypertree
