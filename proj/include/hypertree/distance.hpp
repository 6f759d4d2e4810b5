#pragma once

#include "hypertree/graph.hpp"

#include <cstdint>
#include <vector>

namespace hypertree {

/// Dense all-pairs hop-distance table. Distances are stored as uint16 which
/// comfortably covers the graphs this library targets.
class DistanceOracle {
 public:
  DistanceOracle() = default;

  int size() const { return n_; }
  int operator()(int u, int v) const {
    return d_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(v)];
  }
  const std::uint16_t* row(int u) const {
    return d_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(n_);
  }
  int eccentricity(int u) const;

 private:
  int n_ = 0;
  std::vector<std::uint16_t> d_;

  friend DistanceOracle all_pairs_distances(const TruncatedGraph&, int);
};

/// BFS from every vertex. Throws if any pair is unreachable.
DistanceOracle all_pairs_distances(const TruncatedGraph& g, int threads = 0);

struct PathInGraph {
  std::vector<int> vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

/// True iff consecutive vertices are adjacent (single vertex counts as a path).
bool is_path(const TruncatedGraph& g, const PathInGraph& p);
/// True iff p is a path whose hop length equals the endpoint distance.
bool is_geodesic(const TruncatedGraph& g, const DistanceOracle& d, const PathInGraph& p);

/// The lexicographically least geodesic from x to y: among all geodesics,
/// the one whose vertex-id sequence is smallest. Deterministic.
PathInGraph one_geodesic(const TruncatedGraph& g, const DistanceOracle& d, int x, int y);

struct GeodesicEnumeration {
  std::vector<PathInGraph> paths;  // lexicographic order, possibly truncated
  std::uint64_t count = 0;         // exact count (saturating)
  bool truncated = false;          // fewer paths materialised than exist
  bool count_saturated = false;
};

/// Enumerates geodesics from x to y in lexicographic order, materialising at
/// most `cap` of them; `count` is the exact number regardless.
GeodesicEnumeration all_geodesics(const TruncatedGraph& g, const DistanceOracle& d,
                                  int x, int y, std::size_t cap);

/// Finite Koenig step: given nonempty levels V_0..V_R and a predecessor map
/// sending each vertex of V_k (k>=1) to a neighbour in V_{k-1}, returns a
/// path v_0...v_R with v_k in V_k, built by walking predecessors back from
/// the least-id vertex of the deepest level.
PathInGraph koenig_ray(const std::vector<std::vector<int>>& levels,
                       const std::vector<int>& pred);

/// Vertices grouped by BFS distance from `root`.
std::vector<std::vector<int>> bfs_levels(const TruncatedGraph& g, int root);
/// For each vertex, its least-id neighbour one BFS level closer to the root
/// (-1 for the root itself).
std::vector<int> bfs_least_parent(const TruncatedGraph& g, int root);

}  // namespace hypertree
