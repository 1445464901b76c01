#include "chowliu/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chowliu/rng.hpp"

namespace chowliu {
namespace {

void check_sizes(const TreeModel& p, const TreeModel& q, bool exact) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "models have " + std::to_string(p.size()) + " and " + std::to_string(q.size()) + " nodes");
  }
  if (exact && p.size() > kMaxExactNodes) {
    throw Error(ErrorCode::TooLargeForExact,
                std::to_string(p.size()) + " nodes exceeds the exact cap of " + std::to_string(kMaxExactNodes));
  }
}

}  // namespace

double tv_exact(const TreeModel& p, const TreeModel& q) {
  check_sizes(p, q, true);
  const auto a = full_joint(p);
  const auto b = full_joint(q);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return std::min(1.0, 0.5 * s);
}

HellingerValue hellinger_exact(const TreeModel& p, const TreeModel& q) {
  check_sizes(p, q, true);
  const auto a = full_joint(p);
  const auto b = full_joint(q);
  double bc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) bc += std::sqrt(a[k] * b[k]);
  const double h2 = std::clamp(1.0 - bc, 0.0, 1.0);
  return {std::sqrt(h2), h2};
}

TvEstimate tv_mc(const TreeModel& p, const TreeModel& q, std::uint64_t mc_samples, std::uint64_t seed) {
  check_sizes(p, q, false);
  if (mc_samples == 0) throw Error(ErrorCode::InvalidArgument, "mc_samples must be positive");
  const int n = p.size();
  const auto& order = p.topological_order();
  Rng rng(seed);
  Assignment x(n);
  // Welford running mean and variance of the per-sample term |1 - Q/P|.
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t t = 0; t < mc_samples; ++t) {
    x[0] = rng.uniform() < p.root_prob() ? 1 : -1;
    for (std::size_t k = 1; k < order.size(); ++k) {
      const int v = order[k];
      const EdgeConditional& c = p.conditional_of(v);
      x[v] = rng.uniform() < (x[p.parent(v)] > 0 ? c.q_pp : c.q_pm) ? 1 : -1;
    }
    const double lq = q.log_density(x);
    const double term = std::isinf(lq) ? 1.0 : std::abs(1.0 - std::exp(lq - p.log_density(x)));
    const double delta = term - mean;
    mean += delta / static_cast<double>(t + 1);
    m2 += delta * (term - mean);
  }
  TvEstimate est;
  est.samples_used = mc_samples;
  est.value = 0.5 * mean;
  if (mc_samples > 1) est.std_error = 0.5 * std::sqrt(m2 / static_cast<double>(mc_samples - 1) / mc_samples);
  return est;
}

}  // namespace chowliu
