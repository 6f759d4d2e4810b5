#include "hypertree/graph.hpp"

#include "hypertree/util.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace hypertree {

std::size_t TruncatedGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adjacency) twice += nb.size();
  return twice / 2;
}

bool TruncatedGraph::has_edge(int u, int v) const {
  const auto& nb = adjacency[static_cast<std::size_t>(u)];
  return std::binary_search(nb.begin(), nb.end(), v);
}

TruncatedGraph make_graph(std::string family_tag, int n,
                          const std::vector<std::pair<int, int>>& edges,
                          int root, std::vector<int> layer_of) {
  if (n <= 0) throw std::invalid_argument("make_graph: empty vertex set");
  if (root < 0 || root >= n) throw std::invalid_argument("make_graph: root out of range");
  if (static_cast<int>(layer_of.size()) != n)
    throw std::invalid_argument("make_graph: layer_of size mismatch");

  TruncatedGraph g;
  g.family_tag = std::move(family_tag);
  g.root = root;
  g.layer_of = std::move(layer_of);
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("make_graph: edge endpoint out of range");
    if (u == v) throw std::invalid_argument("make_graph: self loop");
    g.adjacency[static_cast<std::size_t>(u)].push_back(v);
    g.adjacency[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& nb : g.adjacency) {
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw std::invalid_argument("make_graph: duplicate edge");
  }

  // connectivity + depth by BFS from the root
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::deque<int> queue{root};
  dist[static_cast<std::size_t>(root)] = 0;
  int depth = 0, seen = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.adjacency[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] >= 0) continue;
      dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
      depth = std::max(depth, dist[static_cast<std::size_t>(v)]);
      ++seen;
      queue.push_back(v);
    }
  }
  if (seen != n) throw std::invalid_argument("make_graph: graph is not connected");
  g.depth = depth;
  return g;
}

TruncatedGraph generate_example1(int layers) {
  if (layers < 1) throw std::invalid_argument("generate_example1: layers must be >= 1");
  if (layers > 24) throw std::invalid_argument("generate_example1: layers too large");

  // layer k (1-based) holds 2^(k-1)+1 vertices
  std::vector<std::int64_t> size(static_cast<std::size_t>(layers) + 1, 0);
  std::vector<std::int64_t> offset(static_cast<std::size_t>(layers) + 2, 0);
  for (int k = 1; k <= layers; ++k) {
    size[static_cast<std::size_t>(k)] = (1ll << (k - 1)) + 1;
    offset[static_cast<std::size_t>(k) + 1] =
        offset[static_cast<std::size_t>(k)] + size[static_cast<std::size_t>(k)];
  }
  std::int64_t n64 = offset[static_cast<std::size_t>(layers) + 1];
  if (n64 > (1 << 30)) throw std::invalid_argument("generate_example1: too many vertices");
  int n = static_cast<int>(n64);

  auto id = [&](int k, int i) {  // i is 1-based within layer k
    return static_cast<int>(offset[static_cast<std::size_t>(k)] + i - 1);
  };

  std::vector<std::pair<int, int>> edges;
  std::vector<int> layer(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= layers; ++k) {
    int mk = static_cast<int>(size[static_cast<std::size_t>(k)]);
    for (int i = 1; i <= mk; ++i) layer[static_cast<std::size_t>(id(k, i))] = k;
    for (int i = 1; i < mk; ++i) edges.emplace_back(id(k, i), id(k, i + 1));
    if (k < layers)
      for (int i = 1; i <= mk; ++i) edges.emplace_back(id(k, i), id(k + 1, 2 * (i - 1) + 1));
  }
  return make_graph("example1", n, edges, id(1, 1), std::move(layer));
}

TruncatedGraph generate_example2(int levels) {
  if (levels < 0) throw std::invalid_argument("generate_example2: levels must be >= 0");
  if (levels > 13)
    throw std::invalid_argument("generate_example2: levels too large (clique edges grow 4^k)");

  // level k holds a clique on 2^k vertices, offset 2^k - 1
  auto id = [](int k, int i) { return (1 << k) - 1 + i; };  // i 0-based
  int n = (1 << (levels + 1)) - 1;

  std::vector<std::pair<int, int>> edges;
  std::vector<int> layer(static_cast<std::size_t>(n), 0);
  for (int k = 0; k <= levels; ++k) {
    int mk = 1 << k;
    for (int i = 0; i < mk; ++i) layer[static_cast<std::size_t>(id(k, i))] = k;
    for (int i = 0; i < mk; ++i)
      for (int j = i + 1; j < mk; ++j) edges.emplace_back(id(k, i), id(k, j));
    if (k > 0)
      for (int i = 0; i < mk; ++i) edges.emplace_back(id(k - 1, i / 2), id(k, i));
  }
  return make_graph("example2", n, edges, 0, std::move(layer));
}

TruncatedGraph generate_tree(int branching, int levels) {
  if (branching < 1) throw std::invalid_argument("generate_tree: branching must be >= 1");
  if (levels < 0) throw std::invalid_argument("generate_tree: levels must be >= 0");

  std::vector<std::int64_t> offset{0};
  std::int64_t level_size = 1;
  for (int k = 0; k <= levels; ++k) {
    offset.push_back(offset.back() + level_size);
    level_size *= branching;
    if (offset.back() > (1 << 30)) throw std::invalid_argument("generate_tree: too many vertices");
  }
  int n = static_cast<int>(offset.back());

  std::vector<std::pair<int, int>> edges;
  std::vector<int> layer(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= levels; ++k) {
    std::int64_t mk = offset[static_cast<std::size_t>(k) + 1] - offset[static_cast<std::size_t>(k)];
    for (std::int64_t i = 0; i < mk; ++i) {
      int v = static_cast<int>(offset[static_cast<std::size_t>(k)] + i);
      int p = static_cast<int>(offset[static_cast<std::size_t>(k) - 1] + i / branching);
      layer[static_cast<std::size_t>(v)] = k;
      edges.emplace_back(p, v);
    }
  }
  return make_graph("tree" + std::to_string(branching), n, edges, 0, std::move(layer));
}

std::string write_graph_text(const TruncatedGraph& g) {
  std::ostringstream out;
  out << "graph " << g.family_tag << ' ' << g.vertex_count() << ' ' << g.edge_count()
      << " root=" << g.root << " depth=" << g.depth << '\n';
  for (int v = 0; v < g.vertex_count(); ++v)
    out << "l " << v << ' ' << g.layer_of[static_cast<std::size_t>(v)] << '\n';
  for (int u = 0; u < g.vertex_count(); ++u)
    for (int v : g.adjacency[static_cast<std::size_t>(u)])
      if (u < v) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

namespace {

[[noreturn]] void parse_fail(int line_no, const std::string& why) {
  throw ParseError("graph text, line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

TruncatedGraph read_graph_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError("graph text: empty input");
  ++line_no;
  std::istringstream head(line);
  std::string kw, tag, root_field, depth_field;
  int n = 0;
  std::size_t m = 0;
  if (!(head >> kw >> tag >> n >> m >> root_field >> depth_field) || kw != "graph")
    parse_fail(line_no, "expected 'graph <tag> <n> <m> root=<id> depth=<d>'");
  if (root_field.rfind("root=", 0) != 0 || depth_field.rfind("depth=", 0) != 0)
    parse_fail(line_no, "malformed root=/depth= fields");
  int root = std::stoi(root_field.substr(5));
  int depth = std::stoi(depth_field.substr(6));
  if (n <= 0) parse_fail(line_no, "vertex count must be positive");

  std::vector<int> layer(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) parse_fail(line_no + 1, "missing layer line");
    ++line_no;
    std::istringstream ls(line);
    std::string l;
    int v = -1, lv = -1;
    if (!(ls >> l >> v >> lv) || l != "l") parse_fail(line_no, "expected 'l <v> <layer>'");
    if (v != i) parse_fail(line_no, "layer lines must list vertices in order");
    layer[static_cast<std::size_t>(v)] = lv;
  }

  std::vector<std::pair<int, int>> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::getline(in, line)) parse_fail(line_no + 1, "missing edge line");
    ++line_no;
    std::istringstream es(line);
    std::string e;
    int u = -1, v = -1;
    if (!(es >> e >> u >> v) || e != "e") parse_fail(line_no, "expected 'e <u> <v>'");
    if (u >= v) parse_fail(line_no, "edges must satisfy u < v");
    if (u < 0 || v >= n) parse_fail(line_no, "edge endpoint out of range");
    edges.emplace_back(u, v);
  }
  if (std::getline(in, line) && !line.empty()) parse_fail(line_no + 1, "trailing content");

  TruncatedGraph g = make_graph(tag, n, edges, root, std::move(layer));
  if (g.depth != depth)
    throw ParseError("graph text: declared depth " + std::to_string(depth) +
                     " does not match computed depth " + std::to_string(g.depth));
  return g;
}

}  // namespace hypertree
