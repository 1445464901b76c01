#include "chowliu/consistency.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>

#include "chowliu/rng.hpp"

namespace chowliu {

JointSource empirical_source(const SampleMatrix& samples) {
  auto shared = std::make_shared<const SampleMatrix>(samples);
  return {samples.nodes(), [shared](std::span<const int> nodes) {
            const int k = static_cast<int>(nodes.size());
            std::vector<double> table(std::size_t{1} << k, 0.0);
            const std::size_t m = shared->samples();
            if (m == 0) throw Error(ErrorCode::EmptySample, "no samples");
            for (std::size_t t = 0; t < m; ++t) {
              std::size_t idx = 0;
              for (int s = 0; s < k; ++s) idx = (idx << 1) | (shared->at(t, nodes[s]) < 0 ? 1u : 0u);
              table[idx] += 1.0;
            }
            for (double& x : table) x /= static_cast<double>(m);
            return table;
          }};
}

JointSource exact_source(const TreeModel& model) {
  auto shared = std::make_shared<const TreeModel>(model);
  return {model.size(), [shared](std::span<const int> nodes) { return joint_marginal(*shared, nodes); }};
}

namespace {

struct Checker {
  ConsistencyOrder order;
  double e;  // eps^2 / n
  ConsistencyReport& report;

  void check(std::span<const int> subset, std::uint32_t event, double p, double p_hat) {
    ++report.events_checked;
    const double c = order == ConsistencyOrder::Three ? 0.1 : 1e-20;
    const double bound = c * std::max(std::sqrt(std::max(p, 0.0) * e), e);
    const double dev = std::abs(p_hat - p);
    if (dev > bound) record(subset, event, p, p_hat, bound, bound - dev, false);
    if (order == ConsistencyOrder::StrongFour && p < e) {
      double lhs;
      if (p_hat <= 0.0) {
        lhs = 0.0;
      } else if (p <= 0.0) {
        lhs = std::numeric_limits<double>::infinity();
      } else {
        lhs = p_hat * std::log(e / p);
      }
      if (lhs > e) record(subset, event, p, p_hat, e, e - lhs, true);
    }
  }

  void record(std::span<const int> subset, std::uint32_t event, double p, double p_hat, double bound, double slack,
              bool small) {
    ++report.violation_count;
    if (report.violations.size() < ConsistencyReport::kMaxListed) {
      report.violations.push_back({{subset.begin(), subset.end()}, event, p, p_hat, bound, slack, small});
    }
  }
};

// Sums of table entries over every event mask, built one bit at a time.
std::vector<double> subset_sums(const std::vector<double>& table) {
  const std::size_t events = std::size_t{1} << table.size();
  std::vector<double> sums(events, 0.0);
  for (std::size_t w = 1; w < events; ++w) {
    sums[w] = sums[w & (w - 1)] + table[std::countr_zero(w)];
  }
  return sums;
}

double event_mass(const std::vector<double>& table, std::uint32_t event) {
  double s = 0.0;
  for (std::size_t t = 0; t < table.size(); ++t) {
    if ((event >> t) & 1u) s += table[t];
  }
  return s;
}

}  // namespace

ConsistencyReport check_consistency(const TreeModel& model, const JointSource& source, ConsistencyOrder order,
                                    double eps, std::uint64_t seed) {
  const int n = model.size();
  if (source.n != n) {
    throw Error(ErrorCode::ModelDimensionMismatch,
                "model has " + std::to_string(n) + " nodes, samples have " + std::to_string(source.n));
  }
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 1]");
  const int k = order == ConsistencyOrder::Three ? 3 : 4;
  ConsistencyReport report;
  Checker checker{order, eps * eps / n, report};
  if (n < k) return report;

  if (n <= kMaxExhaustiveConsistency) {
    std::vector<int> subset(k);
    std::vector<bool> pick(n, false);
    std::fill(pick.end() - k, pick.end(), true);
    // Lexicographic enumeration of k-subsets via permutations of the mask.
    do {
      int s = 0;
      for (int v = 0; v < n; ++v) {
        if (pick[v]) subset[s++] = v;
      }
      const auto p = subset_sums(joint_marginal(model, subset));
      const auto q = subset_sums(source.joint(subset));
      for (std::size_t w = 1; w < p.size(); ++w) checker.check(subset, static_cast<std::uint32_t>(w), p[w], q[w]);
    } while (std::next_permutation(pick.begin(), pick.end()));
    return report;
  }

  report.exhaustive = false;
  Rng rng(seed);
  const std::uint64_t outcomes = std::uint64_t{1} << k;
  for (int draw = 0; draw < kConsistencySamples; ++draw) {
    std::vector<int> subset;
    while (static_cast<int>(subset.size()) < k) {
      const int v = static_cast<int>(rng.below(n));
      if (std::find(subset.begin(), subset.end(), v) == subset.end()) subset.push_back(v);
    }
    std::sort(subset.begin(), subset.end());
    const auto event = static_cast<std::uint32_t>(1 + rng.below((std::uint64_t{1} << outcomes) - 1));
    checker.check(subset, event, event_mass(joint_marginal(model, subset), event),
                  event_mass(source.joint(subset), event));
  }
  return report;
}

}  // namespace chowliu
