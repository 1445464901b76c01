#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chowliu/model.hpp"

namespace chowliu {

// Uniform (0,1) weight on every pair of the complete graph, then the
// maximum-weight spanning tree. Weights are drawn in (i, j) order.
std::vector<Edge> random_tree(int n, std::uint64_t seed);

enum class EdgeType { Normal, Strong, Weak };
const char* to_string(EdgeType type);

struct HardInstanceConfig {
  int n = 100;
  std::uint64_t m = 1000;
  std::uint64_t seed = 0;
  // Overrides the Dirichlet(1,1,1) draw of (normal, strong, weak) proportions.
  std::optional<std::array<double, 3>> proportions;
};

struct HardInstance {
  TreeModel model;
  std::array<double, 3> proportions{};  // p1, p2, p3
  std::vector<EdgeType> types;          // aligned with model.edges()
  int clamped = 0;                      // conditionals pushed back into [0, 1]

  // One-line summaries suitable for model-file comments.
  std::vector<std::string> describe(const HardInstanceConfig& config) const;
};

// Hard instance: random tree rooted at 0, root marginal U(0,1), and each edge
// (in spanning-tree acceptance order) normal, strong or weak with the drawn
// proportions. Strong edges sit ln(n)/m from determinism, weak edges
// sqrt(ln(n)/m) from independence, scaled by standard log-normals.
//
// Streams: tree from derive_seed(seed, {0}), root and proportions from
// derive_seed(seed, {1}), edge k from derive_seed(seed, {2, k}).
HardInstance generate_hard(const HardInstanceConfig& config);

struct AlphaLaw {
  enum class Kind { Uniform, Banded, Constant } kind = Kind::Uniform;
  double lo = 0.0;  // Banded: |alpha| in [lo, hi] with a random sign
  double hi = 1.0;
  double value = 0.0;  // Constant

  static AlphaLaw uniform() { return {}; }
  static AlphaLaw banded(double lo, double hi) { return {Kind::Banded, lo, hi, 0.0}; }
  static AlphaLaw constant(double v) { return {Kind::Constant, 0.0, 1.0, v}; }
};

SymmetricTreeModel random_symmetric(int n, std::uint64_t seed, const AlphaLaw& law = AlphaLaw::uniform());

// Random tree with root marginal and every conditional uniform on [lo, hi].
TreeModel random_general(int n, std::uint64_t seed, double lo = 0.0, double hi = 1.0);

// Path 0 - 1 - ... - (n-1) with the given alpha-values.
SymmetricTreeModel symmetric_chain(std::span<const double> alpha);

}  // namespace chowliu
