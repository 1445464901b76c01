#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chowliu {

// Undirected edge between nodes u and v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Same edge with the smaller endpoint first.
inline Edge normalized(Edge e) { return e.u <= e.v ? e : Edge{e.v, e.u}; }

struct DirectedEdge {
  int parent = 0;
  int child = 0;

  friend bool operator==(const DirectedEdge&, const DirectedEdge&) = default;
};

class UnionFind {
 public:
  explicit UnionFind(int n);

  int find(int x);
  // Returns false when x and y were already joined.
  bool unite(int x, int y);
  bool connected(int x, int y) { return find(x) == find(y); }
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int components_;
};

// Adjacency lists of an undirected edge set; neighbors appear in edge order.
std::vector<std::vector<int>> adjacency(int n, std::span<const Edge> edges);

// True when the edges form a spanning tree on n nodes.
bool is_spanning_tree(int n, std::span<const Edge> edges);

// Orients a spanning tree away from `root` in breadth-first order; every
// parent appears as a child of an earlier edge (or is the root).
std::vector<DirectedEdge> orient_tree(int n, std::span<const Edge> edges, int root = 0);

// Node sequence of the unique path from a to b (both ends included).
std::vector<int> tree_path(int n, std::span<const Edge> edges, int a, int b);

// True when the node subset induces a connected subgraph of the tree.
bool is_tree_connected(int n, std::span<const Edge> edges, std::span<const int> nodes);

}  // namespace chowliu
