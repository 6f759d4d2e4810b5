#pragma once

#include "hypertree/covering.hpp"
#include "hypertree/distance.hpp"
#include "hypertree/graph.hpp"
#include "hypertree/gromov.hpp"
#include "hypertree/util.hpp"
#include "hypertree/visual.hpp"

#include <cstdint>
#include <vector>

namespace hypertree {

/// Rooted spanning forest slice: parent[v] = -1 while v is unattached,
/// parent[root] = root.
struct RootedTree {
  int root = 0;
  std::vector<int> parent;

  bool contains(int v) const { return parent[static_cast<std::size_t>(v)] >= 0; }
  int member_count() const;
  /// Path root..v through parent pointers; throws if v is unattached.
  std::vector<int> root_path(int v) const;
  /// Children lists (only attached vertices appear).
  std::vector<std::vector<int>> children() const;
};

/// Scale parameters of the staged construction. Each stage divides the net
/// radius by exactly 128*N (a power of two, so the division is exact in
/// binary floating point).
struct FaithfulParams {
  double epsilon0 = 0;     // stage-0 cover radius over the cell metric
  int kappa = 0;           // doubling exponent of the cell metric
  int N = 1;               // 2^kappa
  double delta_prime = 0;  // exp(5*epsilon*delta) < 8
  double visual_epsilon = 0;
  int stage_cap = 64;
  // claim checks tolerate a multiplicative slack of exp(4*epsilon*delta),
  // the product-level 4*delta ambiguity of finite truncation
  double claim_slack_factor = 1;
};

FaithfulParams make_faithful_params(const GromovTable& t, const BoundaryCellSet& cells,
                                    const DoublingReport& doubling, double epsilon0 = 0,
                                    int stage_cap = 64);

struct ClaimCheck {
  std::uint64_t pass = 0;
  std::uint64_t pass_with_slack = 0;
  std::uint64_t fail = 0;
  double worst_ratio = 0;  // observed distance / allowed bound
};

/// One geodesic rep-to-rep path backing a spliced ray. Record 0 is the
/// stage-0 root ray (cell_a == cell_b).
struct DoubleRayRecord {
  int cell_a = -1;
  int cell_b = -1;
  std::vector<int> path;  // rep(cell_a) .. rep(cell_b)
};

struct StageReport {
  int j = 0;
  double eps_prev = 0;      // net radius entering the stage
  double eps_j = 0;         // net radius after the stage
  double cover_radius = 0;  // eps_prev / 16
  std::vector<int> new_cells;  // splice order
  int net_size = 0;
  int collisions = 0;          // splices whose path met the tree off the target ray
  bool ec_cycle = false;       // eventual-connection chain failed to resolve
  ClaimCheck claim1;           // same-class neighbours meet the same balls
  ClaimCheck claim2;           // connect-time distance <= 8*N*eps_prev
  ClaimCheck claim2_eventual;  // eventual distance <= N/2 * eps_prev * eps_prevprev
  int class_anomalies = 0;     // cells with no multiplicity class <= N
  int net_multiplicity = 0;    // (eps_prev/16)-multiplicity of the new net
  double net_multiplicity_bound = 0;  // N^(log2(8N))
  bool net_multiplicity_ok = true;
  int bprime_max = 0;          // most balls within 8*N*eps_j of one ball
  double bprime_bound = 0;     // N^8
  bool bprime_ok = true;
};

struct StageState {
  int j = 0;
  double eps_prev = 0;   // current net radius (epsilon_j of the last stage)
  double eps_prev2 = 0;  // previous net radius (epsilon_{j-1}), 0 before stage 1
  std::vector<int> S;    // cells in the net, ascending
  BallCover cover;       // ball cover built by the latest stage
  bool have_cover = false;
  RootedTree tree;
  std::vector<DoubleRayRecord> rays;
  std::vector<int> edge_ray;               // per vertex: ray record of (parent,v)
  std::vector<int> connected_to;           // per cell, -1 until spliced
  std::vector<int> eventually_connected_to;
  std::vector<StageReport> reports;
};

/// Seeds the construction: picks the starting cell (least tie rank), lays the
/// root ray to its representative and records it.
StageState init_stage0(const TruncatedGraph& g, const DistanceOracle& d,
                       const BoundaryCellSet& cells, const FaithfulParams& params,
                       const TieOrder& order);

/// Runs one stage: ball cover at radius eps_prev/16 seeded by the current
/// net, refines the net at radius eps_prev/(128*N), splices one new ray per
/// new net cell, and appends a StageReport. Returns false once every cell is
/// already in the net (no stage was run).
bool advance_stage(StageState& state, const TruncatedGraph& g, const DistanceOracle& d,
                   const BoundaryCellSet& cells, const FaithfulParams& params,
                   const TieOrder& order);

/// Extends the staged tree to a spanning tree. Vertices join in rounds by
/// distance from the root; components that never reach the sphere attach
/// freely, everything else attaches along paths that stay outside the ball
/// whose radius is the deepest vertex added so far. Attachment prefers
/// parents far from the root, so sphere vertices chain along the sphere
/// instead of opening new root rays. `interior_radius` is the sphere radius
/// R; `relaxations` counts rounds that had to ignore the ball constraint to
/// make progress (zero on the stock families).
struct CompletionReport {
  int rounds = 0;
  int component_attached = 0;  // vertices attached via interior components
  int path_attached = 0;       // vertices attached via outside-ball paths
  int relaxations = 0;
};

CompletionReport complete_spanning_tree(const TruncatedGraph& g, const DistanceOracle& d,
                                        RootedTree& tree, const TieOrder& order,
                                        int interior_radius);

/// Ray census per boundary cell. The trunk of a sphere vertex v is its root
/// path cut at the first sphere vertex; distinct trunks witness distinct root
/// rays at the truncation depth. Counts are grouped by the cell of the
/// trunk's sphere endpoint. `N` > 0 enables the N^(8+log2(8N)) bound check.
struct RayCensus {
  std::vector<int> per_cell;
  int max_multiplicity = 0;
  int argmax_cell = -1;
  int total_trunks = 0;
  double bound = 0;  // 0 when no bound was requested
  bool bound_ok = true;
};

RayCensus ray_census(const RootedTree& tree, const DistanceOracle& d,
                     const BoundaryCellSet& cells, int N = 0);

/// Checks that every tree edge of the staged tree lies on its recorded
/// geodesic double ray (or on the stage-0 ray): the record's path must be a
/// geodesic between the representatives of its endpoint cells and contain the
/// edge.
struct PropertyStarReport {
  int edges_checked = 0;
  int edges_ok = 0;
  bool all_ok = false;
};

PropertyStarReport verify_property_star(const StageState& state, const TruncatedGraph& g,
                                        const DistanceOracle& d,
                                        const BoundaryCellSet& cells);

/// Finite reading of "rays are eventually geodetic": for every leaf of the
/// staged tree, the longest geodesic suffix of its root path must cover at
/// least half the path. The defect against a full root geodesic is also
/// reported, with a 4*delta-hop tally as a diagnostic.
struct GeodesicSuffixReport {
  int leaves_checked = 0;
  int leaves_ok = 0;             // suffix covers at least half the root path
  int leaves_within_4delta = 0;  // dist(root,leaf) - suffix <= 4*delta hops
  int worst_defect = 0;          // dist(root, leaf) - suffix length, worst case
  bool all_ok = false;
};

GeodesicSuffixReport verify_geodesic_suffixes(const StageState& state,
                                              const TruncatedGraph& g,
                                              const DistanceOracle& d, int delta2x);

struct FaithfulResult {
  FaithfulParams params;
  StageState state;          // staged tree and per-stage reports
  RootedTree spanning;       // staged tree after completion
  CompletionReport completion;
  PropertyStarReport star;
  GeodesicSuffixReport suffixes;
  RayCensus census;          // census of the completed tree
  bool net_complete = false;  // every cell entered the net before stage_cap
};

/// End-to-end staged construction, completion and census.
FaithfulResult build_faithful_tree(const TruncatedGraph& g, const DistanceOracle& d,
                                   const GromovTable& t, const BoundaryCellSet& cells,
                                   const DoublingReport& doubling, std::uint64_t seed,
                                   double epsilon0 = 0, int stage_cap = 64);

}  // namespace hypertree
