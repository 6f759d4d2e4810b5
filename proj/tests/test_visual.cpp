#include "hypertree/visual.hpp"

#include "hypertree/distance.hpp"
#include "hypertree/graph.hpp"
#include "hypertree/gromov.hpp"

#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

using namespace hypertree;

TEST_CASE("admissible epsilon cap") {
  CHECK(max_admissible_epsilon(0) == std::numeric_limits<double>::infinity());
  CHECK(max_admissible_epsilon(1) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(max_admissible_epsilon(4) == doctest::Approx(std::log(2.0) / 4.0).epsilon(1e-12));
  // the cap is exactly where exp(eps*delta) - 1 hits sqrt(2) - 1
  double eps = max_admissible_epsilon(3);
  CHECK(std::exp(eps * 1.5) - 1.0 == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
}

TEST_CASE("inadmissible epsilon is rejected with the cap in the message") {
  auto g = generate_example2(4);
  auto d = all_pairs_distances(g);
  auto t = gromov_table(d, g.root);
  REQUIRE(t.delta2x() == 1);
  double cap = max_admissible_epsilon(1);
  std::vector<int> pts = {1, 2, 3};
  CHECK_NOTHROW(chain_metric(t, cap, pts));
  try {
    chain_metric(t, cap * 1.01, pts);
    FAIL("expected std::invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("admissible") != std::string::npos);
  }
}

TEST_CASE("chain metric is sandwiched and is a metric") {
  auto g = generate_example2(5);
  auto d = all_pairs_distances(g);
  auto t = gromov_table(d, g.root);
  double eps = max_admissible_epsilon(t.delta2x());
  std::vector<int> pts;
  for (int v = 0; v < g.vertex_count(); ++v) pts.push_back(v);
  auto vm = chain_metric(t, eps, pts);

  CHECK(vm.epsilon == doctest::Approx(eps));
  CHECK(vm.epsilon_prime ==
        doctest::Approx(std::exp(eps * t.delta2x() / 2.0) - 1.0).epsilon(1e-12));
  CHECK(vm.size() == g.vertex_count());

  auto sw = sandwich_check(vm, t);
  CHECK(sw.violations == 0);
  CHECK(sw.pairs_checked ==
        static_cast<std::uint64_t>(g.vertex_count()) * (g.vertex_count() - 1) / 2);

  auto ax = check_metric_axioms(vm);
  CHECK(ax.ok);
  CHECK(ax.symmetry_violations == 0);
  CHECK(ax.identity_violations == 0);
  CHECK(ax.triangle_violations == 0);
}

TEST_CASE("chain distance never exceeds the direct weight") {
  auto g = generate_example1(6);
  auto d = all_pairs_distances(g);
  auto t = gromov_table(d, g.root);
  double eps = max_admissible_epsilon(t.delta2x());
  std::vector<int> pts;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (d(g.root, v) == g.depth) pts.push_back(v);
  REQUIRE(pts.size() >= 2);
  auto vm = chain_metric(t, eps, pts);
  for (int i = 0; i < vm.size(); ++i)
    for (int j = 0; j < vm.size(); ++j) {
      double rho = i == j ? 0.0
                          : std::exp(-eps * t.prod2x(vm.points[static_cast<std::size_t>(i)],
                                                     vm.points[static_cast<std::size_t>(j)]) /
                                     2.0);
      CHECK(vm.dist(i, j) <= rho + 1e-12);
    }
  CHECK(vm.index_of(pts[1]) == 1);
  CHECK(vm.index_of(g.root) == -1);
}

TEST_CASE("default cell threshold") {
  CHECK(default_threshold2x(4, 1) == 4);   // 2R - 4*delta2x = 8 - 4
  CHECK(default_threshold2x(2, 1) == 0);
  CHECK(default_threshold2x(1, 1) == 0);   // clamped
  CHECK(default_threshold2x(5, 0) == 10);
}

TEST_CASE("boundary cells on the clique-level family") {
  auto g = generate_example2(4);
  auto d = all_pairs_distances(g);
  auto t = gromov_table(d, g.root);
  double eps = max_admissible_epsilon(t.delta2x());
  auto cells = boundary_cells(g, d, t, g.depth, default_threshold2x(g.depth, t.delta2x()), eps);

  CHECK(cells.R == 4);
  CHECK(cells.threshold2x == 4);
  CHECK(cells.sphere.size() == 16);
  CHECK(cells.cell_count() == 1);
  CHECK(cells.cells[0].size() == 16);
  CHECK(cells.cell_of[cells.representative[0]] == 0);
  CHECK(cells.cell_of[g.root] == -1);
  CHECK(cells.cell_metric.size() == 1);
}

TEST_CASE("boundary cells on the layered family split") {
  auto g = generate_example1(10);
  auto d = all_pairs_distances(g);
  auto t = gromov_table(d, g.root);
  double eps = max_admissible_epsilon(t.delta2x());
  auto cells = boundary_cells(g, d, t, g.depth, default_threshold2x(g.depth, t.delta2x()), eps);

  CHECK(cells.sphere.size() == 56);
  CHECK(cells.cell_count() == 2);
  std::size_t total = 0;
  for (const auto& c : cells.cells) total += c.size();
  CHECK(total == cells.sphere.size());
  // cells are ordered by least member, representatives belong to their cell
  CHECK(cells.cells[0].front() < cells.cells[1].front());
  for (int c = 0; c < cells.cell_count(); ++c)
    CHECK(cells.cell_of[cells.representative[static_cast<std::size_t>(c)]] == c);
  CHECK(cells.cell_metric.size() == 2);
  CHECK(cells.cell_metric.dist(0, 1) > 0);
}

TEST_CASE("ray limit cell") {
  auto g = generate_example2(4);
  auto d = all_pairs_distances(g);
  auto t = gromov_table(d, g.root);
  auto cells = boundary_cells(g, d, t, g.depth, default_threshold2x(g.depth, t.delta2x()),
                              max_admissible_epsilon(t.delta2x()));
  int far = cells.sphere.front();
  auto ray = one_geodesic(g, d, g.root, far);
  CHECK(ray_limit_cell(cells, ray) == cells.cell_of[far]);
  auto short_ray = one_geodesic(g, d, g.root, 1);
  CHECK_THROWS_AS(ray_limit_cell(cells, short_ray), std::invalid_argument);
}
