#pragma once

#include <string>
#include <utility>
#include <vector>

namespace hypertree {

/// A finite connected graph obtained by truncating one of the generator
/// families at a given layer. Vertex ids are dense in [0, n). `depth` is the
/// largest BFS distance from the root actually realised in the graph (for
/// layered families this can exceed the layer count).
struct TruncatedGraph {
  std::string family_tag;
  int root = 0;
  int depth = 0;
  std::vector<std::vector<int>> adjacency;  // sorted, symmetric, loop-free
  std::vector<int> layer_of;                // generator layer of each vertex

  int vertex_count() const { return static_cast<int>(adjacency.size()); }
  std::size_t edge_count() const;
  bool has_edge(int u, int v) const;
};

/// Builds a graph from an undirected edge list, validating that it is simple
/// and connected, and computes `depth` by BFS from the root.
TruncatedGraph make_graph(std::string family_tag, int n,
                          const std::vector<std::pair<int, int>>& edges,
                          int root, std::vector<int> layer_of);

/// Layered half-plane analogue: layer k (1-based) is a path on 2^(k-1)+1
/// vertices; vertex i of layer k is joined to vertex 2(i-1)+1 of layer k+1.
/// `layers` >= 1 is the number of layers kept.
TruncatedGraph generate_example1(int layers);

/// Clique levels: level k (0-based) is a clique on 2^k vertices; vertex i of
/// level k+1 hangs under vertex i/2 of level k. `levels` >= 0 is the last
/// level kept.
TruncatedGraph generate_example2(int levels);

/// Rooted complete `branching`-ary tree with the given number of levels below
/// the root.
TruncatedGraph generate_tree(int branching, int levels);

/// Plain text serialisation:
///   graph <family_tag> <n> <m> root=<id> depth=<d>
///   l <v> <layer>          (one per vertex)
///   e <u> <v>              (one per edge, u < v, ascending)
/// Reading then writing reproduces the bytes exactly.
std::string write_graph_text(const TruncatedGraph& g);
TruncatedGraph read_graph_text(const std::string& text);

}  // namespace hypertree
