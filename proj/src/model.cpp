#include "chowliu/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chowliu/rng.hpp"

namespace chowliu {
namespace {

std::string edge_name(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

bool in_unit(double p) { return p >= 0.0 && p <= 1.0; }

double safe_log(double p) { return p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity(); }

}  // namespace

PairwiseMarginal PairwiseMarginal::symmetric(double alpha) {
  const double same = 0.25 * (1.0 + alpha);
  const double diff = 0.25 * (1.0 - alpha);
  return {{same, diff, diff, same}};
}

void check_pairwise(const PairwiseMarginal& m) {
  double total = 0.0;
  for (double v : m.p) {
    if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, "pairwise marginal has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "pairwise marginal sums to " + std::to_string(total));
  }
}

std::optional<Error> validate_tree_model(int n, double root_prob, std::span<const DirectedEdge> edges,
                                         std::span<const EdgeConditional> cond) {
  if (n < 1) return Error(ErrorCode::InvalidArgument, "node count must be at least 1");
  if (cond.size() != edges.size()) {
    return Error(ErrorCode::DimensionMismatch, "one conditional is required per edge");
  }
  UnionFind uf(n);
  for (const DirectedEdge& e : edges) {
    if (e.parent < 0 || e.parent >= n || e.child < 0 || e.child >= n) {
      return Error(ErrorCode::NodeOutOfRange, "edge " + edge_name(e.parent, e.child));
    }
    if (!uf.unite(e.parent, e.child)) {
      return Error(ErrorCode::CycleDetected, "edge " + edge_name(e.parent, e.child) + " closes a cycle");
    }
  }
  if (uf.components() != 1) {
    return Error(ErrorCode::Disconnected,
                 std::to_string(uf.components()) + " components for " + std::to_string(n) + " nodes");
  }
  std::vector<int> parent_count(n, 0);
  for (const DirectedEdge& e : edges) ++parent_count[e.child];
  for (const DirectedEdge& e : edges) {
    if (e.child == 0 || parent_count[e.child] != 1) {
      return Error(ErrorCode::InvalidArgument,
                   "edge " + edge_name(e.parent, e.child) + " is not oriented away from root 0");
    }
  }
  if (!in_unit(root_prob)) {
    return Error(ErrorCode::ProbabilityOutOfRange, "root probability " + std::to_string(root_prob));
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (!in_unit(cond[k].q_pp)) {
      return Error(ErrorCode::ProbabilityOutOfRange,
                   "q_pp on edge " + edge_name(edges[k].parent, edges[k].child) + " = " + std::to_string(cond[k].q_pp));
    }
    if (!in_unit(cond[k].q_pm)) {
      return Error(ErrorCode::ProbabilityOutOfRange,
                   "q_pm on edge " + edge_name(edges[k].parent, edges[k].child) + " = " + std::to_string(cond[k].q_pm));
    }
  }
  return std::nullopt;
}

TreeModel::TreeModel(int n, double root_prob, std::vector<DirectedEdge> edges, std::vector<EdgeConditional> cond)
    : n_(n), root_prob_(root_prob), edges_(std::move(edges)), cond_(std::move(cond)) {
  if (auto err = validate_tree_model(n_, root_prob_, edges_, cond_)) throw *err;

  parent_.assign(n_, -1);
  edge_of_child_.assign(n_, -1);
  std::vector<std::vector<int>> children(n_);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    parent_[edges_[k].child] = edges_[k].parent;
    edge_of_child_[edges_[k].child] = static_cast<int>(k);
    children[edges_[k].parent].push_back(edges_[k].child);
  }
  order_.reserve(n_);
  order_.push_back(0);
  for (std::size_t head = 0; head < order_.size(); ++head) {
    for (int c : children[order_[head]]) order_.push_back(c);
  }

  log_table_.resize(n_);
  log_table_[0] = {safe_log(root_prob_), safe_log(1.0 - root_prob_), 0.0, 0.0};
  for (int v = 1; v < n_; ++v) {
    const EdgeConditional& c = conditional_of(v);
    log_table_[v] = {safe_log(c.q_pp), safe_log(1.0 - c.q_pp), safe_log(c.q_pm), safe_log(1.0 - c.q_pm)};
  }
}

std::vector<Edge> TreeModel::undirected_edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const DirectedEdge& e : edges_) out.push_back({e.parent, e.child});
  return out;
}

double TreeModel::log_density(std::span<const std::int8_t> x) const {
  if (static_cast<int>(x.size()) != n_) {
    throw Error(ErrorCode::DimensionMismatch,
                "assignment has " + std::to_string(x.size()) + " entries, model has " + std::to_string(n_));
  }
  double total = log_table_[0][x[0] > 0 ? 0 : 1];
  for (int v = 1; v < n_; ++v) total += log_table_[v][cell(x[parent_[v]], x[v])];
  return total;
}

SampleMatrix SampleMatrix::from_rows(std::span<const Assignment> rows) {
  if (rows.empty()) return SampleMatrix();
  const int n = static_cast<int>(rows.front().size());
  SampleMatrix out(n, rows.size());
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (static_cast<int>(rows[t].size()) != n) {
      throw Error(ErrorCode::RaggedRows, "row " + std::to_string(t) + " has " + std::to_string(rows[t].size()) +
                                             " entries, expected " + std::to_string(n));
    }
    for (int i = 0; i < n; ++i) {
      const std::int8_t v = rows[t][i];
      if (v != 1 && v != -1) throw Error(ErrorCode::InvalidArgument, "sample entries must be +1 or -1");
      out.data_[t * n + i] = v;
    }
  }
  return out;
}

void SampleMatrix::append(const SampleMatrix& other) {
  if (m_ == 0) {
    *this = other;
    return;
  }
  if (other.m_ == 0) return;
  if (other.n_ != n_) throw Error(ErrorCode::RaggedRows, "appended samples have a different width");
  data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  m_ += other.m_;
}

SampleMatrix sample(const TreeModel& model, std::uint64_t seed, std::size_t count) {
  const int n = model.size();
  SampleMatrix out(n, count);
  Rng rng(seed);
  const auto& order = model.topological_order();
  for (std::size_t t = 0; t < count; ++t) {
    auto x = out.row(t);
    x[0] = rng.uniform() < model.root_prob() ? 1 : -1;
    for (std::size_t k = 1; k < order.size(); ++k) {
      const int v = order[k];
      const EdgeConditional& c = model.conditional_of(v);
      const double q = x[model.parent(v)] > 0 ? c.q_pp : c.q_pm;
      x[v] = rng.uniform() < q ? 1 : -1;
    }
  }
  return out;
}

std::vector<double> node_marginals(const TreeModel& model) {
  std::vector<double> plus(model.size(), 0.0);
  plus[0] = model.root_prob();
  const auto& order = model.topological_order();
  for (std::size_t k = 1; k < order.size(); ++k) {
    const int v = order[k];
    const EdgeConditional& c = model.conditional_of(v);
    const double pp = plus[model.parent(v)];
    plus[v] = pp * c.q_pp + (1.0 - pp) * c.q_pm;
  }
  return plus;
}

PairwiseMarginal pair_marginal(const TreeModel& model, int i, int j) {
  const int n = model.size();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw Error(ErrorCode::NodeOutOfRange, "pair " + edge_name(i, j) + " outside 0.." + std::to_string(n - 1));
  }
  if (i == j) throw Error(ErrorCode::InvalidArgument, "pair marginal needs distinct nodes");

  const auto plus = node_marginals(model);
  const auto edges = model.undirected_edges();
  const auto path = tree_path(n, edges, i, j);

  // joint[cell(x_i, x_cur)], advanced one path step at a time.
  PairwiseMarginal joint{{plus[i], 0.0, 0.0, 1.0 - plus[i]}};
  for (std::size_t s = 1; s < path.size(); ++s) {
    const int a = path[s - 1];
    const int b = path[s];
    // step[cell(x_a, x_b)] = P(X_b = x_b | X_a = x_a)
    std::array<double, 4> step{};
    if (model.parent(b) == a) {
      const EdgeConditional& c = model.conditional_of(b);
      for (int xa : {1, -1})
        for (int xb : {1, -1}) step[cell(xa, xb)] = c.prob(xa, xb);
    } else {
      // b is the parent of a: invert with Bayes' rule.
      const EdgeConditional& c = model.conditional_of(a);
      for (int xa : {1, -1}) {
        const double pa = xa > 0 ? plus[a] : 1.0 - plus[a];
        for (int xb : {1, -1}) {
          const double pb = xb > 0 ? plus[b] : 1.0 - plus[b];
          step[cell(xa, xb)] = pa > 0.0 ? c.prob(xb, xa) * pb / pa : 0.0;
        }
      }
    }
    PairwiseMarginal next{{0.0, 0.0, 0.0, 0.0}};
    for (int xi : {1, -1})
      for (int xa : {1, -1})
        for (int xb : {1, -1}) next.p[cell(xi, xb)] += joint.at(xi, xa) * step[cell(xa, xb)];
    joint = next;
  }
  return joint;
}

std::vector<double> joint_marginal(const TreeModel& model, std::span<const int> nodes) {
  const int n = model.size();
  const int k = static_cast<int>(nodes.size());
  if (k > 20) throw Error(ErrorCode::TooLargeForExact, "joint marginal over more than 20 nodes");
  std::vector<int> slot(n, -1);
  for (int s = 0; s < k; ++s) {
    if (nodes[s] < 0 || nodes[s] >= n) throw Error(ErrorCode::NodeOutOfRange, "node " + std::to_string(nodes[s]));
    if (slot[nodes[s]] != -1) throw Error(ErrorCode::InvalidArgument, "repeated node in joint marginal");
    slot[nodes[s]] = s;
  }
  const auto& order = model.topological_order();
  std::vector<double> table(std::size_t{1} << k, 0.0);
  // For each evidence pattern, an upward pass computes
  // lambda[v][x] = P(evidence in subtree(v) | X_v = x).
  std::vector<std::array<double, 2>> lambda(n);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    for (int v = 0; v < n; ++v) {
      lambda[v] = {1.0, 1.0};
      if (slot[v] >= 0) {
        const bool minus = (idx >> (k - 1 - slot[v])) & 1U;
        lambda[v][minus ? 0 : 1] = 0.0;  // [0] is +1, [1] is -1
      }
    }
    for (std::size_t r = order.size(); r-- > 1;) {
      const int v = order[r];
      const EdgeConditional& c = model.conditional_of(v);
      const int p = model.parent(v);
      for (int xp : {1, -1}) {
        const double msg = c.prob(xp, 1) * lambda[v][0] + c.prob(xp, -1) * lambda[v][1];
        lambda[p][xp > 0 ? 0 : 1] *= msg;
      }
    }
    table[idx] = model.root_prob() * lambda[0][0] + (1.0 - model.root_prob()) * lambda[0][1];
  }
  return table;
}

std::vector<double> full_joint(const TreeModel& model) {
  const int n = model.size();
  if (n > kMaxExactNodes) {
    throw Error(ErrorCode::TooLargeForExact, std::to_string(n) + " nodes exceeds the enumeration cap");
  }
  std::vector<double> out(std::size_t{1} << n);
  Assignment x(n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    for (int v = 0; v < n; ++v) x[v] = ((idx >> (n - 1 - v)) & 1U) ? -1 : 1;
    out[idx] = std::exp(model.log_density(x));
  }
  return out;
}

std::optional<Error> validate_symmetric(const SymmetricTreeModel& sym) {
  if (sym.n < 1) return Error(ErrorCode::InvalidArgument, "node count must be at least 1");
  if (sym.alpha.size() != sym.edges.size()) {
    return Error(ErrorCode::DimensionMismatch, "one alpha-value is required per edge");
  }
  UnionFind uf(sym.n);
  for (const Edge& e : sym.edges) {
    if (e.u < 0 || e.u >= sym.n || e.v < 0 || e.v >= sym.n) {
      return Error(ErrorCode::NodeOutOfRange, "edge " + edge_name(e.u, e.v));
    }
    if (!uf.unite(e.u, e.v)) return Error(ErrorCode::CycleDetected, "edge " + edge_name(e.u, e.v) + " closes a cycle");
  }
  if (uf.components() != 1) return Error(ErrorCode::Disconnected, "symmetric model edges do not span all nodes");
  for (std::size_t k = 0; k < sym.alpha.size(); ++k) {
    if (!(sym.alpha[k] >= -1.0 && sym.alpha[k] <= 1.0)) {
      return Error(ErrorCode::ProbabilityOutOfRange,
                   "alpha on edge " + edge_name(sym.edges[k].u, sym.edges[k].v) + " = " + std::to_string(sym.alpha[k]));
    }
  }
  return std::nullopt;
}

TreeModel from_symmetric(const SymmetricTreeModel& sym) {
  if (auto err = validate_symmetric(sym)) throw *err;
  std::vector<PairwiseMarginal> marginals;
  marginals.reserve(sym.alpha.size());
  for (double a : sym.alpha) marginals.push_back(PairwiseMarginal::symmetric(a));
  return from_edge_marginals(sym.n, sym.edges, marginals);
}

TreeModel from_edge_marginals(int n, std::span<const Edge> edges, std::span<const PairwiseMarginal> marginals,
                              std::optional<double> root_prob) {
  if (marginals.size() != edges.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one marginal is required per edge");
  }
  const auto directed = orient_tree(n, edges, 0);
  std::vector<EdgeConditional> cond;
  cond.reserve(directed.size());
  double root_plus = 0.5;
  bool root_set = false;
  for (const DirectedEdge& d : directed) {
    // Locate the source edge and view its marginal as (parent, child).
    PairwiseMarginal m;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (edges[k].u == d.parent && edges[k].v == d.child) {
        m = marginals[k];
        break;
      }
      if (edges[k].v == d.parent && edges[k].u == d.child) {
        m = marginals[k].transposed();
        break;
      }
    }
    if (d.parent == 0 && !root_set) {
      root_plus = m.first(1);
      root_set = true;
    }
    const double pp = m.first(1);
    const double pm = m.first(-1);
    cond.push_back({pp > 0.0 ? std::clamp(m.at(1, 1) / pp, 0.0, 1.0) : 0.0,
                    pm > 0.0 ? std::clamp(m.at(-1, 1) / pm, 0.0, 1.0) : 0.0});
  }
  if (root_prob) root_plus = *root_prob;
  return TreeModel(n, std::clamp(root_plus, 0.0, 1.0), directed, std::move(cond));
}

Assignment assignment_from_index(std::size_t index, int k) {
  Assignment x(k);
  for (int v = 0; v < k; ++v) x[v] = ((index >> (k - 1 - v)) & 1U) ? -1 : 1;
  return x;
}

}  // namespace chowliu
