#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "chowliu/model.hpp"

namespace chowliu {

// Joint table (canonical order) of P^ over a node subset.
struct JointSource {
  int n = 0;
  std::function<std::vector<double>(std::span<const int>)> joint;
};

// Empirical frequencies of the given samples (copied).
JointSource empirical_source(const SampleMatrix& samples);
// The model's own exact probabilities.
JointSource exact_source(const TreeModel& model);

enum class ConsistencyOrder { Three, StrongFour };

struct ConsistencyViolation {
  std::vector<int> subset;
  std::uint32_t event = 0;  // bit t set when outcome t (canonical order) is in W
  double p = 0.0;
  double p_hat = 0.0;
  double bound = 0.0;  // allowed deviation, or eps^2/n for the small-probability clause
  double slack = 0.0;  // bound minus the achieved value; negative on violation
  bool small_probability_clause = false;
};

struct ConsistencyReport {
  std::vector<ConsistencyViolation> violations;  // first kMaxListed only
  std::uint64_t violation_count = 0;
  std::uint64_t events_checked = 0;
  bool exhaustive = true;

  bool satisfied() const { return violation_count == 0; }
  static constexpr std::size_t kMaxListed = 1000;
};

// Largest n for which every subset and event is enumerated.
inline constexpr int kMaxExhaustiveConsistency = 12;
// Random (subset, event) draws above that size.
inline constexpr int kConsistencySamples = 10000;

// Checks every |S| = 3 (or 4) subset and every event W against the true
// model. Order Three: |P^(W) - P(W)| <= (1/10) max(sqrt(P(W) e), e) with
// e = eps^2 / n. Order StrongFour: the same with constant 1e-20, plus
// P^(W) ln(e / P(W)) <= e whenever P(W) < e. Throws ModelDimensionMismatch
// when the source and model disagree on n.
ConsistencyReport check_consistency(const TreeModel& model, const JointSource& source, ConsistencyOrder order,
                                    double eps, std::uint64_t seed = 0);

}  // namespace chowliu
