#include "hypertree/json_io.hpp"

#include "hypertree/covering.hpp"
#include "hypertree/distance.hpp"
#include "hypertree/faithful.hpp"
#include "hypertree/geodetic.hpp"
#include "hypertree/graph.hpp"
#include "hypertree/gromov.hpp"
#include "hypertree/util.hpp"
#include "hypertree/visual.hpp"

#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

using namespace hypertree;

namespace {

struct Fixture {
  TruncatedGraph g;
  DistanceOracle d;
  GromovTable t;
  BoundaryCellSet cells;
  DoublingReport doubling;
};

Fixture make_fixture(const TruncatedGraph& graph) {
  Fixture f;
  f.g = graph;
  f.d = all_pairs_distances(f.g);
  f.t = gromov_table(f.d, f.g.root);
  double eps = max_admissible_epsilon(f.t.delta2x());
  if (!std::isfinite(eps)) eps = std::log(2.0) / 2.0;
  f.cells = boundary_cells(f.g, f.d, f.t, f.g.depth,
                           default_threshold2x(f.g.depth, f.t.delta2x()), eps);
  auto m = FiniteMetric::from_visual(f.cells.cell_metric);
  std::vector<double> radii;
  double diam = m.diameter();
  for (int i = 0; i < 4 && diam > 0; ++i) radii.push_back(diam / (1 << i));
  if (radii.empty()) radii.push_back(1.0);
  f.doubling = doubling_kappa(m, radii);
  return f;
}

std::string temp_path(const char* name) {
  return std::string("io_test_") + name + ".json";
}

}  // namespace

TEST_CASE("canonical dumps are stable and newline terminated") {
  nlohmann::json a = {{"b", 1}, {"a", 2}};
  nlohmann::json b = {{"a", 2}, {"b", 1}};
  auto da = dump_canonical(a);
  CHECK(da == dump_canonical(b));
  CHECK(da.back() == '\n');
}

TEST_CASE("envelope versioning") {
  auto env = make_envelope("cells");
  CHECK(env.at("version") == kDocumentVersion);
  CHECK(env.at("kind") == "cells");
  CHECK_NOTHROW(check_envelope(env, "cells"));
  CHECK_THROWS_AS(check_envelope(env, "cover"), ParseError);

  auto wrong = env;
  wrong["version"] = 2;
  CHECK_THROWS_WITH_AS(check_envelope(wrong, "cells"),
                       doctest::Contains("unsupported document version"), ParseError);

  nlohmann::json missing = {{"kind", "cells"}};
  CHECK_THROWS_AS(check_envelope(missing, "cells"), ParseError);
}

TEST_CASE("malformed files raise errors naming the byte") {
  auto path = temp_path("truncated");
  {
    std::ofstream out(path);
    out << "{\"version\": 1, \"kind\": ";
  }
  try {
    load_json_file(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_json_file("definitely_not_here.json"), ParseError);
}

TEST_CASE("cells documents round trip") {
  auto f = make_fixture(generate_example1(10));
  auto j = cells_to_json(f.cells);
  auto bytes = dump_canonical(j);
  auto doc = cells_from_json(nlohmann::json::parse(bytes));
  CHECK(doc.R == f.cells.R);
  CHECK(doc.threshold2x == f.cells.threshold2x);
  CHECK(doc.epsilon == f.cells.epsilon);
  CHECK(doc.members == f.cells.cells);
  CHECK(doc.representative == f.cells.representative);
  REQUIRE(doc.metric_lower.size() == static_cast<std::size_t>(f.cells.cell_count()));
  for (int a = 0; a < f.cells.cell_count(); ++a)
    for (int b = 0; b < a; ++b)
      CHECK(doc.metric_lower[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
            f.cells.cell_metric.dist(a, b));
}

TEST_CASE("cover documents round trip") {
  auto f = make_fixture(generate_example1(10));
  auto m = FiniteMetric::from_visual(f.cells.cell_metric);
  auto cover = ls23_cover(m, m.diameter() / 2, f.doubling.kappa, {0});
  auto doc = cover_from_json(nlohmann::json::parse(dump_canonical(cover_to_json(cover))));
  CHECK(doc.cover.r == cover.r);
  CHECK(doc.cover.kappa == cover.kappa);
  CHECK(doc.cover.centers == cover.centers);
  CHECK(doc.cover.color == cover.color);
  CHECK(doc.cover.cert.cover_ok == cover.cert.cover_ok);
  CHECK(doc.cover.cert.total_multiplicity == cover.cert.total_multiplicity);
}

TEST_CASE("cell cover lists round trip") {
  std::vector<std::vector<int>> sets = {{0, 2}, {1}, {0}};
  auto back = cell_cover_from_json(nlohmann::json::parse(dump_canonical(cell_cover_to_json(sets))));
  CHECK(back == sets);
}

TEST_CASE("faithful documents round trip bit-exactly") {
  auto f = make_fixture(generate_example1(10));
  auto r = build_faithful_tree(f.g, f.d, f.t, f.cells, f.doubling, 1);
  auto j = faithful_to_json(r);
  auto bytes = dump_canonical(j);
  auto doc = faithful_from_json(nlohmann::json::parse(bytes));
  auto bytes2 = dump_canonical(faithful_to_json(doc.result));
  CHECK(bytes == bytes2);
  CHECK(doc.result.spanning.parent == r.spanning.parent);
  CHECK(doc.result.census.max_multiplicity == r.census.max_multiplicity);
  CHECK(doc.result.params.epsilon0 == r.params.epsilon0);
}

TEST_CASE("version 2 faithful documents are refused") {
  auto f = make_fixture(generate_example2(3));
  auto r = build_faithful_tree(f.g, f.d, f.t, f.cells, f.doubling, 1);
  auto j = faithful_to_json(r);
  j["version"] = 2;
  CHECK_THROWS_AS(faithful_from_json(j), ParseError);
}

TEST_CASE("geodetic documents serialise the certificate") {
  auto f = make_fixture(generate_example2(4));
  auto gt = build_geodetic_tree(f.g, f.d, f.g.root, TieBreak::kLeastId);
  auto j = geodetic_tree_to_json(gt);
  CHECK(j.at("certificate_ok") == true);
  CHECK(j.at("policy") == "least-id");
  CHECK(j.at("parents").size() == static_cast<std::size_t>(f.g.vertex_count()));

  auto census = ray_census(gt.tree, f.d, f.cells);
  auto cj = census_to_json(census);
  CHECK(cj.at("total_trunks") == census.total_trunks);

  auto rows = example2_ray_growth(1, 3);
  auto gj = growth_to_json(rows);
  CHECK(gj.at("rows").size() == 3);
}

TEST_CASE("text files write and read back") {
  auto path = temp_path("roundtrip");
  write_text_file(path, "payload\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "payload");
  in.close();
  std::remove(path.c_str());
}
