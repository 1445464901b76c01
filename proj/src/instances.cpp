#include "chowliu/instances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "chowliu/learner.hpp"
#include "chowliu/model_io.hpp"
#include "chowliu/rng.hpp"

namespace chowliu {

std::vector<Edge> random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "tree needs at least one node");
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) w[static_cast<std::size_t>(i) * n + j] = rng.uniform_open();
  }
  return kruskal_max_st(n, [&](int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; });
}

const char* to_string(EdgeType type) {
  switch (type) {
    case EdgeType::Normal: return "normal";
    case EdgeType::Strong: return "strong";
    case EdgeType::Weak: return "weak";
  }
  return "?";
}

std::vector<std::string> HardInstance::describe(const HardInstanceConfig& config) const {
  char buf[160];
  std::snprintf(buf, sizeof buf, "hard instance n=%d m=%llu seed=%llu", config.n,
                static_cast<unsigned long long>(config.m), static_cast<unsigned long long>(config.seed));
  std::vector<std::string> out{buf};
  out.push_back("proportions p1=" + format_real(proportions[0]) + " p2=" + format_real(proportions[1]) +
                " p3=" + format_real(proportions[2]) + " clamped=" + std::to_string(clamped));
  std::string line = "edge types:";
  for (EdgeType t : types) {
    line += ' ';
    line += to_string(t)[0];
  }
  out.push_back(line);
  return out;
}

HardInstance generate_hard(const HardInstanceConfig& config) {
  if (config.n < 2) throw Error(ErrorCode::InvalidArgument, "hard instances need n >= 2");
  if (config.m < 1) throw Error(ErrorCode::InvalidArgument, "hard instances need m >= 1");
  const int n = config.n;
  const auto tree = random_tree(n, derive_seed(config.seed, {0}));

  // Orientation away from node 0, but edges keep the spanning-tree order.
  std::vector<int> parent(n, -1);
  for (const auto& d : orient_tree(n, tree, 0)) parent[d.child] = d.parent;

  Rng top(derive_seed(config.seed, {1}));
  const double root = top.uniform_open();
  std::array<double, 3> p{};
  if (config.proportions) {
    p = *config.proportions;
    const double s = p[0] + p[1] + p[2];
    if (!(s > 0.0) || p[0] < 0.0 || p[1] < 0.0 || p[2] < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "edge-type proportions must be nonnegative with positive sum");
    }
    for (double& x : p) x /= s;
  } else {
    for (double& x : p) x = top.exponential();
    const double s = p[0] + p[1] + p[2];
    for (double& x : p) x /= s;
  }

  const double strong_scale = std::log(static_cast<double>(n)) / static_cast<double>(config.m);
  const double weak_scale = std::sqrt(strong_scale);

  int clamped = 0;
  auto clamp01 = [&](double x) {
    if (x < 0.0 || x > 1.0) {
      ++clamped;
      return std::clamp(x, 0.0, 1.0);
    }
    return x;
  };

  std::vector<DirectedEdge> edges;
  std::vector<EdgeConditional> cond;
  std::vector<EdgeType> types;
  for (std::size_t k = 0; k < tree.size(); ++k) {
    const Edge e = tree[k];
    const int child = parent[e.v] == e.u ? e.v : e.u;
    edges.push_back({parent[child], child});

    Rng rng(derive_seed(config.seed, {2, k}));
    const double u = rng.uniform();
    const EdgeType type = u < p[0] ? EdgeType::Normal : (u < p[0] + p[1] ? EdgeType::Strong : EdgeType::Weak);
    EdgeConditional c;
    switch (type) {
      case EdgeType::Normal:
        c.q_pp = rng.uniform_open();
        c.q_pm = rng.uniform_open();
        break;
      case EdgeType::Strong: {
        const bool flip = rng.bernoulli(0.5);
        const double z1 = std::exp(rng.normal());
        const double zm = std::exp(rng.normal());
        if (!flip) {
          c.q_pp = clamp01(z1 * strong_scale);
          c.q_pm = clamp01(1.0 - zm * strong_scale);
        } else {
          c.q_pp = clamp01(1.0 - z1 * strong_scale);
          c.q_pm = clamp01(zm * strong_scale);
        }
        break;
      }
      case EdgeType::Weak: {
        c.q_pp = rng.uniform_open();
        const double z = std::exp(rng.normal());
        c.q_pm = clamp01(rng.bernoulli(0.5) ? c.q_pp + z * weak_scale : c.q_pp - z * weak_scale);
        break;
      }
    }
    cond.push_back(c);
    types.push_back(type);
  }
  return {TreeModel(n, root, std::move(edges), std::move(cond)), p, std::move(types), clamped};
}

SymmetricTreeModel random_symmetric(int n, std::uint64_t seed, const AlphaLaw& law) {
  SymmetricTreeModel sym;
  sym.n = n;
  sym.edges = random_tree(n, derive_seed(seed, {0}));
  Rng rng(derive_seed(seed, {1}));
  for (std::size_t k = 0; k < sym.edges.size(); ++k) {
    double a = 0.0;
    switch (law.kind) {
      case AlphaLaw::Kind::Uniform:
        a = rng.uniform(-1.0, 1.0);
        break;
      case AlphaLaw::Kind::Banded: {
        const double mag = rng.uniform(law.lo, law.hi);
        a = rng.bernoulli(0.5) ? mag : -mag;
        break;
      }
      case AlphaLaw::Kind::Constant:
        a = law.value;
        break;
    }
    sym.alpha.push_back(a);
  }
  if (auto err = validate_symmetric(sym)) throw *err;
  return sym;
}

TreeModel random_general(int n, std::uint64_t seed, double lo, double hi) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) throw Error(ErrorCode::InvalidArgument, "need 0 <= lo <= hi <= 1");
  const auto tree = random_tree(n, derive_seed(seed, {0}));
  Rng rng(derive_seed(seed, {1}));
  const double root = rng.uniform(lo, hi);
  std::vector<EdgeConditional> cond;
  const auto directed = orient_tree(n, tree, 0);
  for (std::size_t k = 0; k < directed.size(); ++k) {
    const double a = rng.uniform(lo, hi);
    const double b = rng.uniform(lo, hi);
    cond.push_back({a, b});
  }
  return TreeModel(n, root, directed, std::move(cond));
}

SymmetricTreeModel symmetric_chain(std::span<const double> alpha) {
  SymmetricTreeModel sym;
  sym.n = static_cast<int>(alpha.size()) + 1;
  for (int k = 0; k + 1 < sym.n; ++k) sym.edges.push_back({k, k + 1});
  sym.alpha.assign(alpha.begin(), alpha.end());
  if (auto err = validate_symmetric(sym)) throw *err;
  return sym;
}

}  // namespace chowliu
