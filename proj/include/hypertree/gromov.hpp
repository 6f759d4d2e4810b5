#pragma once

#include "hypertree/distance.hpp"
#include "hypertree/graph.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hypertree {

struct TripleWitness {
  int x = -1, y = -1, z = -1;
};

/// How a quantifier over vertices/pairs/triples was evaluated: exhaustively,
/// or on a deterministic stratified sample (recorded seed + size).
struct ScanInfo {
  bool exhaustive = true;
  int sample_size = 0;  // vertices in the scanned subset (0 = all)
  std::uint64_t seed = 0;
  std::string description;
};

/// Pairwise Gromov products at a fixed base vertex, stored as doubled
/// integers so half-integral values stay exact: prod2x(x,y) =
/// d(x,o)+d(y,o)-d(x,y). Also carries the four-point hyperbolicity constant
/// delta2x (doubled), tight over the scanned triples.
class GromovTable {
 public:
  int base() const { return base_; }
  int size() const { return n_; }
  int prod2x(int x, int y) const {
    return p_[static_cast<std::size_t>(x) * static_cast<std::size_t>(n_) +
              static_cast<std::size_t>(y)];
  }
  double prod(int x, int y) const { return prod2x(x, y) / 2.0; }
  const std::int16_t* row(int x) const {
    return p_.data() + static_cast<std::size_t>(x) * static_cast<std::size_t>(n_);
  }
  int delta2x() const { return delta2x_; }
  double delta() const { return delta2x_ / 2.0; }
  const std::vector<TripleWitness>& witnesses() const { return witnesses_; }
  const ScanInfo& scan() const { return scan_; }

 private:
  int base_ = 0;
  int n_ = 0;
  std::vector<std::int16_t> p_;
  int delta2x_ = 0;
  std::vector<TripleWitness> witnesses_;
  ScanInfo scan_;

  friend GromovTable gromov_table(const DistanceOracle&, int, int, std::uint64_t, int);
};

/// Builds the product table and the four-point constant. Triples are scanned
/// exhaustively up to `exhaustive_cap` vertices; beyond that a stratified
/// sample of `exhaustive_cap` vertices (sorted by distance from the base,
/// stride-selected, offset seeded) is used and recorded in scan().
GromovTable gromov_table(const DistanceOracle& d, int base, int exhaustive_cap = 600,
                         std::uint64_t seed = 1, int threads = 0);

struct BasepointViolation {
  int w = -1;
  TripleWitness triple;
  int slack2x = 0;
};

/// Base-change inequality audit: for every base w and triple (x,y,z),
///   (x,y)_w >= min((x,z)_w, (y,z)_w) - 2*delta.
/// max_slack2x is the worst observed doubled slack min(..)-(x,y)_w; the
/// inequality above caps it at 2*delta2x.
struct BasepointReport {
  int delta2x = 0;  // the constant the audit was run against
  int max_slack2x = 0;
  int worst_base = -1;
  TripleWitness worst_triple;
  std::vector<BasepointViolation> violations;  // capped at 32 entries
  std::uint64_t bases_scanned = 0;
  ScanInfo scan;
};

BasepointReport basepoint_transfer_check(const DistanceOracle& d, int delta2x,
                                         int exhaustive_cap = 600, std::uint64_t seed = 1,
                                         int threads = 0);

/// Thin-triangle constant over corner triples with one fixed geodesic per
/// pair (the lexicographically least one): max over side vertices of the hop
/// distance to the union of the other two sides.
struct ThinTriangleReport {
  int delta_hops = 0;
  TripleWitness worst;
  int worst_vertex = -1;
  ScanInfo scan;
};

ThinTriangleReport thin_triangle_delta(const TruncatedGraph& g, const DistanceOracle& d,
                                       int exhaustive_cutoff = 80, std::uint64_t seed = 1);

/// Product-versus-geodesic audit: for each pair (x,y) and the fixed geodesic
/// between them, (x,y)_o <= d(o, [x,y]) <= (x,y)_o + 2*delta. The histogram
/// counts the doubled slack 2*d(o,[x,y]) - prod2x(x,y). Distances to the
/// geodesic range over its vertices while products are half-integers, so a
/// graph with a 3-cycle can report slack2x = 1 against delta2x = 0; on trees
/// the slack is exactly zero.
struct ProductGeodesicReport {
  int delta2x = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
  std::vector<std::pair<int, int>> violation_pairs;  // capped at 32
  std::map<int, std::uint64_t> slack_histogram2x;
  ScanInfo scan;
};

ProductGeodesicReport product_vs_geodesic_check(const TruncatedGraph& g,
                                                const DistanceOracle& d,
                                                const GromovTable& t,
                                                int exhaustive_cap = 600,
                                                std::uint64_t seed = 1);

/// Deterministic stratified vertex sample: vertices sorted by (distance from
/// base, id), then a fixed-stride selection with seeded offset. Returns all
/// vertices when n <= cap.
std::vector<int> stratified_vertex_sample(const DistanceOracle& d, int base, int cap,
                                          std::uint64_t seed);

}  // namespace hypertree
