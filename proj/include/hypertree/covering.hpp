#pragma once

#include "hypertree/util.hpp"
#include "hypertree/visual.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hypertree {

/// A finite metric space on points 0..n-1 with a dense distance matrix.
struct FiniteMetric {
  int n = 0;
  std::vector<double> d;

  double operator()(int i, int j) const {
    return d[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  }
  double diameter() const;
  double min_positive() const;  // least nonzero pairwise distance, 0 if none

  static FiniteMetric from_visual(const VisualMetric& vm);
};

/// Largest subset with pairwise distances in [alpha, beta]. Exact (branch and
/// bound over the compatibility graph) up to `exact_cap` candidate points;
/// greedy beyond that, with `exact` recording which route ran.
struct PackingResult {
  int size = 0;
  std::vector<int> witness;
  bool exact = true;
};

PackingResult packing_count(const FiniteMetric& m, double alpha, double beta,
                            int exact_cap = 64);

/// Least-squares fit of log S(alpha, beta) against log(beta/alpha), the
/// finite Assouad reading of the packing grid.
struct PackingReport {
  struct Row {
    double alpha = 0, beta = 0;
    int count = 0;
    bool exact = true;
  };
  std::vector<Row> rows;
  double fitted_exponent = 0;
  double fit_constant = 0;  // multiplicative constant C in S <= C*(beta/alpha)^s
  std::vector<double> residuals;  // in log space, one per row
};

PackingReport assouad_estimate(const FiniteMetric& m,
                               const std::vector<std::pair<double, double>>& grid,
                               int exact_cap = 64);

/// Doubling constant: every ball of radius r must be covered by at most 2^kappa
/// balls of radius r/2. Cover minimisation is exact (set cover branch and
/// bound) up to `exact_cover_cap` distinct candidate half-balls, greedy beyond.
struct DoublingReport {
  int kappa = 0;
  std::uint64_t N = 1;  // 2^kappa
  struct Worst {
    double r = 0;
    int center = -1;
    int cover_size = 0;
    std::vector<int> cover_centers;
    bool exact = true;
  };
  Worst worst;
  struct ScaleRow {
    double r = 0;
    int worst_cover = 0;
    bool exact = true;
  };
  std::vector<ScaleRow> per_scale;
};

DoublingReport doubling_kappa(const FiniteMetric& m, const std::vector<double>& radii,
                              int exact_cover_cap = 24);

/// Maximal r-separated net seeded by `seed_set`, greedily coloured so that
/// same-coloured centers are more than 3r apart. Fails loudly when more than
/// 2^kappa colours would be needed. Certificates are recomputed from scratch
/// after construction.
struct BallCover {
  double r = 0;
  int kappa = 0;
  std::vector<int> centers;              // seed set first, then greedy additions
  std::vector<int> color;                // per center, in [0, 2^kappa)
  std::vector<std::vector<int>> balls;   // closed-ball members per center
  struct Certificates {
    bool cover_ok = false;
    bool separation_ok = false;
    bool seed_included = false;
    std::vector<int> per_color_multiplicity;
    int total_multiplicity = 0;
  } cert;
};

BallCover ls23_cover(const FiniteMetric& m, double r, int kappa,
                     const std::vector<int>& seed_set, const TieOrder& order = {});

/// r-multiplicity of a family of point sets: the largest number of members
/// meeting a common set of diameter <= r. Computed over maximal cliques of
/// the "distance <= r" graph.
struct RMultiplicityResult {
  int value = 0;
  std::vector<int> witness_points;   // a diameter-<=r set realising the value
  std::vector<int> witness_members;  // indices of the family members it meets
};

RMultiplicityResult r_multiplicity(const FiniteMetric& m,
                                   const std::vector<std::vector<int>>& family, double r);

/// Number of family members whose set comes within distance r of the point.
int point_multiplicity(const FiniteMetric& m, const std::vector<std::vector<int>>& family,
                       double r, int point);

/// Comparison tolerance shared by the covering routines.
inline constexpr double kMetricTol = 1e-12;

}  // namespace hypertree
