#pragma once

#include "hypertree/distance.hpp"
#include "hypertree/graph.hpp"
#include "hypertree/gromov.hpp"

#include <vector>

namespace hypertree {

/// Chain-infimum visual metric on a chosen point set. weight(x,y) =
/// exp(-epsilon * (x,y)_o); dist is the minimum total weight over chains
/// through the point set (all-pairs shortest paths on the complete weighted
/// graph).
struct VisualMetric {
  double epsilon = 0;
  double epsilon_prime = 0;  // exp(epsilon*delta) - 1
  int base = 0;
  std::vector<int> points;   // vertex ids (ascending when built by chain_metric)
  std::vector<double> dmat;  // size m*m

  int size() const { return static_cast<int>(points.size()); }
  double dist(int i, int j) const {
    return dmat[static_cast<std::size_t>(i) * points.size() + static_cast<std::size_t>(j)];
  }
  int index_of(int vertex) const;  // -1 if the vertex is not a point
};

/// Largest admissible epsilon for the given doubled hyperbolicity constant:
/// the scaling parameter must satisfy exp(epsilon*delta) - 1 <= sqrt(2) - 1.
/// Unbounded (returns +inf) when delta is zero.
double max_admissible_epsilon(int delta2x);

/// Builds the chain metric; throws std::invalid_argument when epsilon is
/// inadmissible for t.delta2x(), naming the largest admissible value.
VisualMetric chain_metric(const GromovTable& t, double epsilon,
                          const std::vector<int>& points, int threads = 0);

/// Two-sided comparison of the chain metric against the raw weight rho:
/// epsilon_prime * rho <= dist <= rho for every pair, up to `tol`.
struct SandwichReport {
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
  std::vector<std::pair<int, int>> violation_pairs;  // capped at 32
  double worst_lower_margin = 0;  // most negative (dist - eps'*rho) seen
  double worst_upper_margin = 0;  // most negative (rho - dist) seen
  std::vector<std::uint64_t> ratio_histogram;  // dist/rho in 16 buckets over [0,1]
};

SandwichReport sandwich_check(const VisualMetric& vm, const GromovTable& t,
                              double tol = 1e-9);

struct MetricAxiomReport {
  bool ok = true;
  std::uint64_t symmetry_violations = 0;
  std::uint64_t identity_violations = 0;
  std::uint64_t triangle_violations = 0;
};

MetricAxiomReport check_metric_axioms(const VisualMetric& vm, double tol = 1e-12);

/// Partition of the distance-R sphere into boundary cells: the transitive
/// closure of "Gromov product at the root >= threshold". Cell ids are dense,
/// ordered by least member vertex. The representative of a cell is the least
/// id among members maximising the minimum product to the rest of the cell.
/// cell_metric is the chain metric over sphere vertices restricted to the
/// representatives (chains may pass through any sphere vertex).
struct BoundaryCellSet {
  int R = 0;
  int threshold2x = 0;
  double epsilon = 0;
  std::vector<int> sphere;              // ascending vertex ids
  std::vector<int> cell_of;             // per vertex, -1 off the sphere
  std::vector<std::vector<int>> cells;  // ascending members
  std::vector<int> representative;      // per cell
  VisualMetric cell_metric;

  int cell_count() const { return static_cast<int>(cells.size()); }
};

/// Default merge threshold 2R - 4*delta2x (doubled units, clamped at 0).
int default_threshold2x(int R, int delta2x);

BoundaryCellSet boundary_cells(const TruncatedGraph& g, const DistanceOracle& d,
                               const GromovTable& t, int R, int threshold2x,
                               double epsilon, int threads = 0);

/// The cell containing the endpoint of a root ray; throws if the endpoint is
/// not a sphere vertex.
int ray_limit_cell(const BoundaryCellSet& cells, const PathInGraph& ray);

}  // namespace hypertree
