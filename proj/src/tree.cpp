#include "chowliu/tree.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "chowliu/error.hpp"

namespace chowliu {

UnionFind::UnionFind(int n) : parent_(n), rank_(n, 0), components_(n) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int UnionFind::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(int x, int y) {
  int rx = find(x);
  int ry = find(y);
  if (rx == ry) return false;
  if (rank_[rx] < rank_[ry]) std::swap(rx, ry);
  parent_[ry] = rx;
  if (rank_[rx] == rank_[ry]) ++rank_[rx];
  --components_;
  return true;
}

std::vector<std::vector<int>> adjacency(int n, std::span<const Edge> edges) {
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

bool is_spanning_tree(int n, std::span<const Edge> edges) {
  if (n < 1 || static_cast<int>(edges.size()) != n - 1) return false;
  UnionFind uf(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) return false;
    if (!uf.unite(e.u, e.v)) return false;
  }
  return uf.components() == 1;
}

std::vector<DirectedEdge> orient_tree(int n, std::span<const Edge> edges, int root) {
  if (!is_spanning_tree(n, edges)) {
    throw Error(ErrorCode::InvalidArgument, "edge list is not a spanning tree");
  }
  const auto adj = adjacency(n, edges);
  std::vector<char> seen(n, 0);
  std::vector<DirectedEdge> out;
  out.reserve(edges.size());
  std::queue<int> frontier;
  frontier.push(root);
  seen[root] = 1;
  while (!frontier.empty()) {
    const int a = frontier.front();
    frontier.pop();
    for (int b : adj[a]) {
      if (seen[b]) continue;
      seen[b] = 1;
      out.push_back({a, b});
      frontier.push(b);
    }
  }
  return out;
}

std::vector<int> tree_path(int n, std::span<const Edge> edges, int a, int b) {
  const auto adj = adjacency(n, edges);
  std::vector<int> prev(n, -1);
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(a);
  seen[a] = 1;
  while (!frontier.empty() && !seen[b]) {
    const int x = frontier.front();
    frontier.pop();
    for (int y : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      prev[y] = x;
      frontier.push(y);
    }
  }
  if (!seen[b]) throw Error(ErrorCode::Disconnected, "no path between nodes");
  std::vector<int> path;
  for (int x = b; x != -1; x = prev[x]) path.push_back(x);
  std::reverse(path.begin(), path.end());
  return path;
}

bool is_tree_connected(int n, std::span<const Edge> edges, std::span<const int> nodes) {
  if (nodes.empty()) return true;
  std::vector<char> in(n, 0);
  for (int x : nodes) in[x] = 1;
  UnionFind uf(n);
  for (const Edge& e : edges) {
    if (in[e.u] && in[e.v]) uf.unite(e.u, e.v);
  }
  const int root = uf.find(nodes.front());
  for (int x : nodes) {
    if (uf.find(x) != root) return false;
  }
  return true;
}

}  // namespace chowliu
