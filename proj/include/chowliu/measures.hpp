#pragma once

#include <span>
#include <vector>

#include "chowliu/model.hpp"

namespace chowliu {

// Finite distribution over explicit +/-1 outcome tuples.
struct DiscreteDist {
  std::vector<Assignment> labels;
  std::vector<double> probs;

  std::size_t size() const { return probs.size(); }
  // Number of variables per outcome (0 for an empty distribution).
  int arity() const { return labels.empty() ? 0 : static_cast<int>(labels.front().size()); }

  // Distribution over {+1,-1}^k with probs in canonical joint-table order
  // (first variable most significant, +1 before -1).
  static DiscreteDist binary(int k, std::vector<double> probs);
};

// Throws InvalidArgument on negative entries, sums off 1 by more than 1e-12,
// duplicate labels, or label/prob length disagreement.
void check_dist(const DiscreteDist& d);

// Distances. Outcome sets must coincide (order may differ); OutcomeMismatch otherwise.
double tv(const DiscreteDist& p, const DiscreteDist& q);
double hellinger_sq(const DiscreteDist& p, const DiscreteDist& q);
double hellinger(const DiscreteDist& p, const DiscreteDist& q);
// KL(p || q) in nats; +infinity when p puts mass where q has none.
double kl(const DiscreteDist& p, const DiscreteDist& q);

DiscreteDist to_dist(const PairwiseMarginal& m);
// Inverse of to_dist for canonical two-variable distributions.
PairwiseMarginal to_pairwise(const DiscreteDist& d);

// Variable s of the result is variable order[s] of d. d must be canonical binary.
DiscreteDist permute(const DiscreteDist& d, std::span<const int> order);
// Marginal on the listed variables (in that order). d must be canonical binary.
DiscreteDist marginalize(const DiscreteDist& d, std::span<const int> keep);

double mutual_information(const PairwiseMarginal& m);
// I(X_0; X_1 | X_2) of a canonical 8-outcome joint.
double conditional_mi(const DiscreteDist& joint3);

// Markov chain a - b - c from the (a,b) and (b,c) marginals, as a canonical
// joint over (a, b, c). Throws SharedMarginalMismatch when the two disagree on
// X_b by more than 1e-9. Conditionals on zero-mass events are 0.
DiscreteDist chain3(const PairwiseMarginal& m_ab, const PairwiseMarginal& m_bc);
// Markov chain a - b - c - d, canonical joint over (a, b, c, d).
DiscreteDist chain4(const PairwiseMarginal& m_ab, const PairwiseMarginal& m_bc, const PairwiseMarginal& m_cd);

// Product of m's node marginals.
PairwiseMarginal make_independent(const PairwiseMarginal& m);

double minmrg(const PairwiseMarginal& m);
double minmrg_node(double p_plus);
double mindiag(const PairwiseMarginal& m);
double mindisc(const PairwiseMarginal& m);
double i_h2(const PairwiseMarginal& m);
double alpha_of(const PairwiseMarginal& m);

struct PairMeasures {
  double minmrg = 0.5;
  double mindiag = 0.5;
  double mindisc = 0.0;
  double i_h2 = 0.0;
  double alpha = 0.0;
  double mi = 0.0;
};

PairMeasures pair_measures(const PairwiseMarginal& m);

struct SymmetricComparisons {
  PairwiseMarginal ind;  // alpha 0
  PairwiseMarginal det;  // alpha sign(alpha), sign(0) = +1
  PairwiseMarginal est;  // alpha alpha_hat
};

SymmetricComparisons symmetric_constructions(double alpha, double alpha_hat);

}  // namespace chowliu
