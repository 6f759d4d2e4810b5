#include "hypertree/distance.hpp"
#include "hypertree/graph.hpp"

#include "doctest.h"

#include <algorithm>
#include <vector>

using namespace hypertree;

namespace {

// independent oracle: Floyd-Warshall over the adjacency matrix
std::vector<std::vector<int>> fw_distances(const TruncatedGraph& g) {
  int n = g.vertex_count();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n), inf));
  for (int v = 0; v < n; ++v) {
    d[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = 0;
    for (int w : g.adjacency[static_cast<std::size_t>(v)])
      d[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::min(
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
            d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] +
                d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
  return d;
}

TruncatedGraph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return make_graph("cycle", n, edges, 0, std::vector<int>(static_cast<std::size_t>(n), 0));
}

}  // namespace

TEST_CASE("BFS table matches Floyd-Warshall") {
  for (const auto& g : {generate_example2(4), generate_example1(6), cycle(9),
                        generate_tree(3, 3)}) {
    auto d = all_pairs_distances(g);
    auto ref = fw_distances(g);
    REQUIRE(d.size() == g.vertex_count());
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = 0; v < g.vertex_count(); ++v)
        CHECK(d(u, v) == ref[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]);
  }
}

TEST_CASE("depth is the root eccentricity") {
  for (const auto& g : {generate_example1(7), generate_example2(5)}) {
    auto d = all_pairs_distances(g);
    int worst = 0;
    for (int v = 0; v < g.vertex_count(); ++v) worst = std::max(worst, d(g.root, v));
    CHECK(worst == g.depth);
    CHECK(d.eccentricity(g.root) == g.depth);
  }
}

TEST_CASE("one geodesic is geodesic and lexicographically least") {
  auto g = cycle(6);
  auto d = all_pairs_distances(g);

  auto p = one_geodesic(g, d, 0, 3);
  CHECK(p.vertices == std::vector<int>{0, 1, 2, 3});
  CHECK(is_geodesic(g, d, p));

  auto q = one_geodesic(g, d, 3, 0);
  CHECK(q.vertices == std::vector<int>{3, 2, 1, 0});

  auto g2 = generate_example2(4);
  auto d2 = all_pairs_distances(g2);
  for (int v : {7, 16, 30}) {
    auto r = one_geodesic(g2, d2, g2.root, v);
    CHECK(is_geodesic(g2, d2, r));
    CHECK(r.vertices.front() == g2.root);
    CHECK(r.vertices.back() == v);
  }
}

TEST_CASE("geodesic enumeration counts every choice") {
  auto g = cycle(6);
  auto d = all_pairs_distances(g);

  auto antipodal = all_geodesics(g, d, 0, 3, 10);
  CHECK(antipodal.count == 2);
  CHECK(antipodal.paths.size() == 2);
  CHECK_FALSE(antipodal.truncated);

  auto adjacent = all_geodesics(g, d, 1, 2, 10);
  CHECK(adjacent.count == 1);

  auto capped = all_geodesics(g, d, 0, 3, 1);
  CHECK(capped.count == 2);
  CHECK(capped.paths.size() == 1);
  CHECK(capped.truncated);

  for (const auto& p : antipodal.paths) CHECK(is_geodesic(g, d, p));
}

TEST_CASE("path predicates") {
  auto g = cycle(5);
  auto d = all_pairs_distances(g);
  CHECK(is_path(g, PathInGraph{{2}}));
  CHECK(is_path(g, PathInGraph{{0, 1, 2}}));
  CHECK_FALSE(is_path(g, PathInGraph{{0, 2}}));
  CHECK(is_geodesic(g, d, PathInGraph{{0, 1, 2}}));
  CHECK_FALSE(is_geodesic(g, d, PathInGraph{{0, 1, 2, 3}}));  // 0..3 has distance 2
}
