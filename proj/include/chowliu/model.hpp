#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chowliu/error.hpp"
#include "chowliu/tree.hpp"

namespace chowliu {

// A full assignment over {+1, -1}^n.
using Assignment = std::vector<std::int8_t>;

// Index of a binary outcome in a 2x2 table: (+1,+1), (+1,-1), (-1,+1), (-1,-1).
constexpr int cell(int xa, int xb) { return (xa < 0 ? 2 : 0) + (xb < 0 ? 1 : 0); }

// Joint distribution of an ordered pair (X_a, X_b).
struct PairwiseMarginal {
  std::array<double, 4> p{0.25, 0.25, 0.25, 0.25};

  double at(int xa, int xb) const { return p[cell(xa, xb)]; }
  // P(X_a = x) and P(X_b = x).
  double first(int x) const { return x > 0 ? p[0] + p[1] : p[2] + p[3]; }
  double second(int x) const { return x > 0 ? p[0] + p[2] : p[1] + p[3]; }
  double agree() const { return p[0] + p[3]; }
  double disagree() const { return p[1] + p[2]; }
  // Same distribution with the roles of a and b exchanged.
  PairwiseMarginal transposed() const { return {{p[0], p[2], p[1], p[3]}}; }

  // Symmetric pair with P(X_a = X_b) = (1 + alpha) / 2.
  static PairwiseMarginal symmetric(double alpha);
};

// Throws InvalidArgument unless entries are nonnegative and sum to 1 within 1e-12.
void check_pairwise(const PairwiseMarginal& m);

struct EdgeConditional {
  double q_pp = 0.5;  // P(child = +1 | parent = +1)
  double q_pm = 0.5;  // P(child = +1 | parent = -1)

  double prob(int parent_value, int child_value) const {
    const double q = parent_value > 0 ? q_pp : q_pm;
    return child_value > 0 ? q : 1.0 - q;
  }
};

// Returns the first invariant violation, if any: cycle, disconnection, an edge
// not oriented away from node 0, an out-of-range node, or a probability
// outside [0, 1].
std::optional<Error> validate_tree_model(int n, double root_prob, std::span<const DirectedEdge> edges,
                                         std::span<const EdgeConditional> cond);

// Binary tree-structured Bayesnet rooted at node 0: a root marginal plus one
// conditional per directed edge. Immutable after construction.
class TreeModel {
 public:
  // Throws the error reported by validate_tree_model.
  TreeModel(int n, double root_prob, std::vector<DirectedEdge> edges, std::vector<EdgeConditional> cond);

  int size() const { return n_; }
  double root_prob() const { return root_prob_; }
  const std::vector<DirectedEdge>& edges() const { return edges_; }
  const std::vector<EdgeConditional>& conditionals() const { return cond_; }
  // Undirected view of the tree, in edge order.
  std::vector<Edge> undirected_edges() const;

  // Parent of a node, or -1 for the root.
  int parent(int node) const { return parent_[node]; }
  // Conditional attached to the edge entering `node` (undefined for the root).
  const EdgeConditional& conditional_of(int node) const { return cond_[edge_of_child_[node]]; }
  // Root first; every node after its parent.
  const std::vector<int>& topological_order() const { return order_; }

  // Natural log of P(x); -infinity off the support.
  double log_density(std::span<const std::int8_t> x) const;

 private:
  int n_;
  double root_prob_;
  std::vector<DirectedEdge> edges_;
  std::vector<EdgeConditional> cond_;
  std::vector<int> parent_;
  std::vector<int> edge_of_child_;
  std::vector<int> order_;
  // log_table_[node][cell(parent value, node value)]; the root row uses only
  // the parent = +1 half.
  std::vector<std::array<double, 4>> log_table_;
};

// Row-major m x n matrix of +/-1 values.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  SampleMatrix(int n, std::size_t m) : n_(n), m_(m), data_(static_cast<std::size_t>(n) * m, 1) {}

  // Throws RaggedRows when rows differ in length and InvalidArgument on
  // entries other than +1/-1.
  static SampleMatrix from_rows(std::span<const Assignment> rows);

  int nodes() const { return n_; }
  std::size_t samples() const { return m_; }
  std::span<const std::int8_t> row(std::size_t t) const { return {data_.data() + t * n_, static_cast<std::size_t>(n_)}; }
  std::span<std::int8_t> row(std::size_t t) { return {data_.data() + t * n_, static_cast<std::size_t>(n_)}; }
  std::int8_t at(std::size_t t, int i) const { return data_[t * n_ + i]; }

  // Rows of `other` appended below these rows; widths must agree.
  void append(const SampleMatrix& other);

  friend bool operator==(const SampleMatrix&, const SampleMatrix&) = default;

 private:
  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::int8_t> data_;
};

// Draws `count` i.i.d. samples root-first in topological order.
SampleMatrix sample(const TreeModel& model, std::uint64_t seed, std::size_t count);

// P(X_i = +1) for every node.
std::vector<double> node_marginals(const TreeModel& model);

// Exact joint of (X_i, X_j) by propagation along the tree path from i to j.
PairwiseMarginal pair_marginal(const TreeModel& model, int i, int j);

// Exact joint of the listed nodes as a 2^k table. Index bit (k-1-s) is set
// when nodes[s] = -1, so the first node is the most significant.
std::vector<double> joint_marginal(const TreeModel& model, std::span<const int> nodes);

// Node count above which full enumeration is refused.
inline constexpr int kMaxExactNodes = 22;

// Full joint over all 2^n assignments, indexed with node 0 most significant.
std::vector<double> full_joint(const TreeModel& model);

// Symmetric (uniform-marginal) tree Ising model in alpha-value parametrization.
struct SymmetricTreeModel {
  int n = 1;
  std::vector<Edge> edges;
  std::vector<double> alpha;
};

std::optional<Error> validate_symmetric(const SymmetricTreeModel& sym);

// Root at node 0 with probability 1/2; q_pp = (1 + alpha) / 2, q_pm = (1 - alpha) / 2.
TreeModel from_symmetric(const SymmetricTreeModel& sym);

// Builds a tree model on `edges` whose edge pair marginals are `marginals`
// (aligned with `edges`, each oriented (u, v)), rooted at node 0. Conditionals
// whose conditioning mass is zero are set to 0. The root marginal is read off
// an incident edge unless given (needed when n = 1).
TreeModel from_edge_marginals(int n, std::span<const Edge> edges, std::span<const PairwiseMarginal> marginals,
                              std::optional<double> root_prob = std::nullopt);

// Decodes the canonical index used by joint tables into an assignment.
Assignment assignment_from_index(std::size_t index, int k);

}  // namespace chowliu
