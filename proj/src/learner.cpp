#include "chowliu/learner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "chowliu/measures.hpp"

namespace chowliu {

PairCountTable::PairCountTable(int n, std::uint64_t m, std::vector<std::uint64_t> node_plus,
                               std::vector<std::uint64_t> n11)
    : n_(n), m_(m), node_plus_(std::move(node_plus)), n11_(std::move(n11)) {
  const std::size_t pairs = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (n < 1 || node_plus_.size() != static_cast<std::size_t>(n) || n11_.size() != pairs) {
    throw Error(ErrorCode::DimensionMismatch, "pair count table has inconsistent sizes");
  }
}

std::size_t PairCountTable::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // Row i of the strict upper triangle starts after sum_{r<i} (n-1-r) entries.
  return static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2 + (j - i - 1);
}

std::array<std::uint64_t, 4> PairCountTable::counts(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
    throw Error(ErrorCode::NodeOutOfRange, "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  const std::uint64_t pp = n11_[index(i, j)];
  const std::uint64_t ci = node_plus_[i], cj = node_plus_[j];
  return {pp, ci - pp, cj - pp, m_ - ci - cj + pp};
}

PairwiseMarginal PairCountTable::marginal(int i, int j) const {
  const auto c = counts(i, j);
  const double m = static_cast<double>(m_);
  return {{c[0] / m, c[1] / m, c[2] / m, c[3] / m}};
}

PairCountTable count_pairs(const SampleMatrix& samples) {
  const int n = samples.nodes();
  const std::size_t m = samples.samples();
  if (m == 0 || n == 0) throw Error(ErrorCode::EmptySample, "no samples to count");

  // One bit per sample per node, set when the value is +1.
  const std::size_t words = (m + 63) / 64;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * words, 0);
  for (std::size_t t = 0; t < m; ++t) {
    const auto row = samples.row(t);
    const std::uint64_t bit = std::uint64_t{1} << (t & 63);
    const std::size_t w = t >> 6;
    for (int i = 0; i < n; ++i) {
      if (row[i] > 0) bits[static_cast<std::size_t>(i) * words + w] |= bit;
    }
  }

  std::vector<std::uint64_t> node_plus(n, 0);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t* a = &bits[static_cast<std::size_t>(i) * words];
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w]);
    node_plus[i] = c;
  }

  std::vector<std::uint64_t> n11(static_cast<std::size_t>(n) * (n - 1) / 2);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t* a = &bits[static_cast<std::size_t>(i) * words];
    for (int j = i + 1; j < n; ++j) {
      const std::uint64_t* b = &bits[static_cast<std::size_t>(j) * words];
      std::uint64_t c = 0;
      for (std::size_t w = 0; w < words; ++w) c += std::popcount(a[w] & b[w]);
      n11[k++] = c;
    }
  }
  return PairCountTable(n, m, std::move(node_plus), std::move(n11));
}

double plugin_mi(const std::array<std::uint64_t, 4>& c) {
  const double m = static_cast<double>(c[0] + c[1] + c[2] + c[3]);
  if (m == 0) return 0.0;
  const double row[2] = {static_cast<double>(c[0] + c[1]), static_cast<double>(c[2] + c[3])};
  const double col[2] = {static_cast<double>(c[0] + c[2]), static_cast<double>(c[1] + c[3])};
  double s = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const double x = static_cast<double>(c[2 * a + b]);
      // (x/m) ln( x m / (row col) )
      if (x > 0) s += x * std::log(x * m / (row[a] * col[b]));
    }
  }
  return std::max(0.0, s / m);
}

double plugin_mi(const PairCountTable& table, int i, int j) { return plugin_mi(table.counts(i, j)); }

double alpha_hat(const PairCountTable& table, int i, int j) {
  const auto c = table.counts(i, j);
  const double agree = static_cast<double>(c[0] + c[3]);
  return 2.0 * agree / static_cast<double>(table.samples()) - 1.0;
}

std::vector<Edge> kruskal_max_st(int n, const std::function<double(int, int)>& weight) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "spanning tree needs at least one node");
  struct Candidate {
    double w;
    int i, j;
  };
  std::vector<Candidate> cand;
  cand.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) cand.push_back({weight(i, j), i, j});
  }
  std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  UnionFind uf(n);
  std::vector<Edge> tree;
  tree.reserve(n - 1);
  for (const auto& c : cand) {
    if (uf.unite(c.i, c.j)) {
      tree.push_back({c.i, c.j});
      if (static_cast<int>(tree.size()) == n - 1) break;
    }
  }
  return tree;
}

namespace {

LearnedModel learn(const PairCountTable& table, LearnMode mode) {
  const int n = table.nodes();
  LearnedModel out;
  out.mode = mode;
  out.n = n;
  out.m = table.samples();
  out.weights.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = mode == LearnMode::General ? plugin_mi(table, i, j) : std::abs(alpha_hat(table, i, j));
      out.weights[static_cast<std::size_t>(i) * n + j] = w;
      out.weights[static_cast<std::size_t>(j) * n + i] = w;
    }
  }
  out.tree = kruskal_max_st(n, [&](int i, int j) { return out.weight(i, j); });
  for (const auto& e : out.tree) {
    out.edge_marginals.push_back(table.marginal(e.u, e.v));
    out.edge_alpha.push_back(alpha_hat(table, e.u, e.v));
  }
  out.node_plus.resize(n);
  for (int i = 0; i < n; ++i) out.node_plus[i] = static_cast<double>(table.node_plus(i)) / table.samples();
  return out;
}

}  // namespace

LearnedModel chow_liu(const PairCountTable& table) { return learn(table, LearnMode::General); }
LearnedModel chow_liu(const SampleMatrix& samples) { return chow_liu(count_pairs(samples)); }
LearnedModel chow_liu_symmetric(const PairCountTable& table) { return learn(table, LearnMode::Symmetric); }
LearnedModel chow_liu_symmetric(const SampleMatrix& samples) { return chow_liu_symmetric(count_pairs(samples)); }

SymmetricTreeModel to_symmetric_model(const LearnedModel& learned) {
  if (learned.mode != LearnMode::Symmetric) {
    throw Error(ErrorCode::NotSymmetricModel, "learned model was fitted in general mode");
  }
  return {learned.n, learned.tree, learned.edge_alpha};
}

TreeModel to_tree_model(const LearnedModel& learned) {
  if (learned.mode == LearnMode::Symmetric) return from_symmetric(to_symmetric_model(learned));
  return from_edge_marginals(learned.n, learned.tree, learned.edge_marginals, learned.node_plus.at(0));
}

}  // namespace chowliu
