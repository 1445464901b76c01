#pragma once

#include <cstdint>

#include "chowliu/model.hpp"

namespace chowliu {

struct TvEstimate {
  double value = 0.0;
  double std_error = 0.0;  // standard error of the mean
  std::uint64_t samples_used = 0;
};

struct HellingerValue {
  double h = 0.0;
  double h2 = 0.0;
};

// Exact distances by enumerating all 2^n assignments. Throws
// DimensionMismatch on differing sizes and TooLargeForExact above
// kMaxExactNodes.
double tv_exact(const TreeModel& p, const TreeModel& q);
HellingerValue hellinger_exact(const TreeModel& p, const TreeModel& q);

// (1/2) mean |1 - Q(x)/P(x)| over x ~ P, the ratio taken in log space.
// Q(x) = 0 contributes a full 1 to the mean.
TvEstimate tv_mc(const TreeModel& p, const TreeModel& q, std::uint64_t mc_samples, std::uint64_t seed);

}  // namespace chowliu
