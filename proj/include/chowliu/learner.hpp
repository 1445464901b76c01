#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "chowliu/model.hpp"

namespace chowliu {

// 2x2 co-occurrence counts for every unordered node pair. Only the (+1,+1)
// cell is stored per pair; the other three follow from the node counts.
class PairCountTable {
 public:
  PairCountTable(int n, std::uint64_t m, std::vector<std::uint64_t> node_plus, std::vector<std::uint64_t> n11);

  int nodes() const { return n_; }
  std::uint64_t samples() const { return m_; }
  // Number of samples with X_i = +1.
  std::uint64_t node_plus(int i) const { return node_plus_[i]; }
  // Counts for (X_i, X_j) in cell order (+,+), (+,-), (-,+), (-,-).
  std::array<std::uint64_t, 4> counts(int i, int j) const;
  // Normalized empirical pair distribution.
  PairwiseMarginal marginal(int i, int j) const;

 private:
  std::size_t index(int i, int j) const;

  int n_;
  std::uint64_t m_;
  std::vector<std::uint64_t> node_plus_;
  std::vector<std::uint64_t> n11_;  // upper triangle, row-major, i < j
};

// Throws EmptySample when there are no samples.
PairCountTable count_pairs(const SampleMatrix& samples);

// Plug-in mutual information (nats) of a 2x2 count table.
double plugin_mi(const std::array<std::uint64_t, 4>& counts);
double plugin_mi(const PairCountTable& table, int i, int j);
// 2 * P^(X_i = X_j) - 1.
double alpha_hat(const PairCountTable& table, int i, int j);

// Maximum-weight spanning tree by Kruskal. Candidate pairs are ranked by
// (-weight, i, j), so ties resolve to the lexicographically smallest pair.
// Edges are returned normalized (u < v) in acceptance order.
std::vector<Edge> kruskal_max_st(int n, const std::function<double(int, int)>& weight);

enum class LearnMode { General, Symmetric };

struct LearnedModel {
  LearnMode mode = LearnMode::General;
  int n = 0;
  std::uint64_t m = 0;
  std::vector<Edge> tree;                        // acceptance order
  std::vector<PairwiseMarginal> edge_marginals;  // oriented (u, v) per tree edge
  std::vector<double> edge_alpha;                // alpha-hat per tree edge
  std::vector<double> node_plus;                 // empirical P(X_i = +1)
  std::vector<double> weights;                   // n x n, symmetric, zero diagonal

  double weight(int i, int j) const { return weights[static_cast<std::size_t>(i) * n + j]; }
};

// Chow-Liu with plug-in mutual information weights.
LearnedModel chow_liu(const SampleMatrix& samples);
LearnedModel chow_liu(const PairCountTable& table);
// Same tree search with |alpha-hat| weights; output alpha-values are alpha-hat.
LearnedModel chow_liu_symmetric(const SampleMatrix& samples);
LearnedModel chow_liu_symmetric(const PairCountTable& table);

// General: rooted at node 0 with conditionals derived from edge marginals.
// Symmetric: root 1/2 and q = (1 +/- alpha-hat) / 2.
TreeModel to_tree_model(const LearnedModel& learned);
// Throws NotSymmetricModel for general-mode output.
SymmetricTreeModel to_symmetric_model(const LearnedModel& learned);

}  // namespace chowliu
