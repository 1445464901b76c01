#include "chowliu/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace chowliu {
namespace {

constexpr double kSharedTol = 1e-9;

// Position of each of q's labels inside p, or OutcomeMismatch.
std::vector<std::size_t> align(const DiscreteDist& p, const DiscreteDist& q) {
  if (p.size() != q.size() || p.labels.size() != p.size() || q.labels.size() != q.size()) {
    throw Error(ErrorCode::OutcomeMismatch, "outcome sets differ in size");
  }
  std::vector<std::size_t> idx(p.size());
  bool same = true;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.labels[k] != q.labels[k]) {
      same = false;
      break;
    }
    idx[k] = k;
  }
  if (same) return idx;
  std::map<Assignment, std::size_t> where;
  for (std::size_t k = 0; k < q.size(); ++k) where.emplace(q.labels[k], k);
  for (std::size_t k = 0; k < p.size(); ++k) {
    auto it = where.find(p.labels[k]);
    if (it == where.end()) throw Error(ErrorCode::OutcomeMismatch, "outcome missing from second distribution");
    idx[k] = it->second;
  }
  return idx;
}

void require_canonical(const DiscreteDist& d) {
  const int k = d.arity();
  if (d.size() != (std::size_t{1} << k)) throw Error(ErrorCode::InvalidArgument, "not a full binary distribution");
  for (std::size_t t = 0; t < d.size(); ++t) {
    if (d.labels[t] != assignment_from_index(t, k)) {
      throw Error(ErrorCode::InvalidArgument, "labels not in canonical order");
    }
  }
}

double cond_plus(double joint_plus, double mass) { return mass > 0.0 ? joint_plus / mass : 0.0; }

void check_shared(double a, double b) {
  if (std::abs(a - b) > kSharedTol) {
    throw Error(ErrorCode::SharedMarginalMismatch,
                "shared node marginal " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

double xlogy_ratio(double p, double q) {
  if (p <= 0.0) return 0.0;
  if (q <= 0.0) return std::numeric_limits<double>::infinity();
  return p * std::log(p / q);
}

}  // namespace

DiscreteDist DiscreteDist::binary(int k, std::vector<double> probs) {
  if (probs.size() != (std::size_t{1} << k)) throw Error(ErrorCode::InvalidArgument, "expected 2^k probabilities");
  DiscreteDist d;
  d.labels.reserve(probs.size());
  for (std::size_t t = 0; t < probs.size(); ++t) d.labels.push_back(assignment_from_index(t, k));
  d.probs = std::move(probs);
  return d;
}

void check_dist(const DiscreteDist& d) {
  if (d.labels.size() != d.probs.size()) throw Error(ErrorCode::InvalidArgument, "labels and probs differ in length");
  double total = 0.0;
  for (double p : d.probs) {
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidArgument, "negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "probabilities sum to " + std::to_string(total));
  std::vector<Assignment> sorted = d.labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(ErrorCode::InvalidArgument, "duplicate outcome label");
  }
}

double tv(const DiscreteDist& p, const DiscreteDist& q) {
  const auto idx = align(p, q);
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += std::abs(p.probs[k] - q.probs[idx[k]]);
  return 0.5 * s;
}

double hellinger_sq(const DiscreteDist& p, const DiscreteDist& q) {
  const auto idx = align(p, q);
  double bc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) bc += std::sqrt(p.probs[k] * q.probs[idx[k]]);
  return std::max(0.0, 1.0 - bc);
}

double hellinger(const DiscreteDist& p, const DiscreteDist& q) { return std::sqrt(hellinger_sq(p, q)); }

double kl(const DiscreteDist& p, const DiscreteDist& q) {
  const auto idx = align(p, q);
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += xlogy_ratio(p.probs[k], q.probs[idx[k]]);
  return std::max(0.0, s);
}

DiscreteDist to_dist(const PairwiseMarginal& m) { return DiscreteDist::binary(2, {m.p.begin(), m.p.end()}); }

PairwiseMarginal to_pairwise(const DiscreteDist& d) {
  if (d.arity() != 2) throw Error(ErrorCode::InvalidArgument, "expected a two-variable distribution");
  require_canonical(d);
  return {{d.probs[0], d.probs[1], d.probs[2], d.probs[3]}};
}

DiscreteDist permute(const DiscreteDist& d, std::span<const int> order) {
  require_canonical(d);
  const int k = d.arity();
  if (static_cast<int>(order.size()) != k) throw Error(ErrorCode::InvalidArgument, "permutation length mismatch");
  std::vector<double> out(d.size(), 0.0);
  for (std::size_t t = 0; t < d.size(); ++t) {
    std::size_t u = 0;
    for (int s = 0; s < k; ++s) {
      const bool minus = (t >> (k - 1 - order[s])) & 1u;
      if (minus) u |= std::size_t{1} << (k - 1 - s);
    }
    out[u] = d.probs[t];
  }
  return DiscreteDist::binary(k, std::move(out));
}

DiscreteDist marginalize(const DiscreteDist& d, std::span<const int> keep) {
  require_canonical(d);
  const int k = d.arity();
  const int r = static_cast<int>(keep.size());
  std::vector<double> out(std::size_t{1} << r, 0.0);
  for (std::size_t t = 0; t < d.size(); ++t) {
    std::size_t u = 0;
    for (int s = 0; s < r; ++s) {
      if (keep[s] < 0 || keep[s] >= k) throw Error(ErrorCode::InvalidArgument, "variable out of range");
      if ((t >> (k - 1 - keep[s])) & 1u) u |= std::size_t{1} << (r - 1 - s);
    }
    out[u] += d.probs[t];
  }
  return DiscreteDist::binary(r, std::move(out));
}

double mutual_information(const PairwiseMarginal& m) {
  double s = 0.0;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      const double pab = m.at(a, b);
      if (pab > 0.0) s += pab * std::log(pab / (m.first(a) * m.second(b)));
    }
  }
  return std::max(0.0, s);
}

double conditional_mi(const DiscreteDist& joint3) {
  if (joint3.arity() != 3) throw Error(ErrorCode::InvalidArgument, "expected a three-variable distribution");
  require_canonical(joint3);
  const auto& p = joint3.probs;
  // p index = 4*u + 2*v + w with bit set meaning -1.
  double s = 0.0;
  for (int w = 0; w < 2; ++w) {
    double pw = 0.0, pu[2] = {0, 0}, pv[2] = {0, 0};
    for (int u = 0; u < 2; ++u) {
      for (int v = 0; v < 2; ++v) {
        const double x = p[4 * u + 2 * v + w];
        pw += x;
        pu[u] += x;
        pv[v] += x;
      }
    }
    for (int u = 0; u < 2; ++u) {
      for (int v = 0; v < 2; ++v) {
        const double x = p[4 * u + 2 * v + w];
        if (x > 0.0) s += x * std::log(x * pw / (pu[u] * pv[v]));
      }
    }
  }
  return std::max(0.0, s);
}

DiscreteDist chain3(const PairwiseMarginal& m_ab, const PairwiseMarginal& m_bc) {
  check_shared(m_ab.second(1), m_bc.first(1));
  std::vector<double> out(8);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const int xb = b ? -1 : 1;
      const double mass = m_bc.first(xb);
      for (int c = 0; c < 2; ++c) {
        const double cond = mass > 0.0 ? m_bc.at(xb, c ? -1 : 1) / mass : 0.0;
        out[4 * a + 2 * b + c] = m_ab.at(a ? -1 : 1, xb) * cond;
      }
    }
  }
  return DiscreteDist::binary(3, std::move(out));
}

DiscreteDist chain4(const PairwiseMarginal& m_ab, const PairwiseMarginal& m_bc, const PairwiseMarginal& m_cd) {
  check_shared(m_bc.second(1), m_cd.first(1));
  const DiscreteDist abc = chain3(m_ab, m_bc);
  std::vector<double> out(16);
  for (std::size_t t = 0; t < 8; ++t) {
    const int xc = (t & 1u) ? -1 : 1;
    const double mass = m_cd.first(xc);
    for (int d = 0; d < 2; ++d) {
      const double cond = mass > 0.0 ? m_cd.at(xc, d ? -1 : 1) / mass : 0.0;
      out[2 * t + d] = abc.probs[t] * cond;
    }
  }
  return DiscreteDist::binary(4, std::move(out));
}

PairwiseMarginal make_independent(const PairwiseMarginal& m) {
  PairwiseMarginal r;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) r.p[cell(a, b)] = m.first(a) * m.second(b);
  }
  return r;
}

double minmrg_node(double p_plus) { return std::min(p_plus, 1.0 - p_plus); }

double minmrg(const PairwiseMarginal& m) {
  return std::min({m.first(1), m.first(-1), m.second(1), m.second(-1)});
}

double mindiag(const PairwiseMarginal& m) { return std::min(m.agree(), m.disagree()); }

double mindisc(const PairwiseMarginal& m) {
  // |P(a=+1 | b=+1) - P(a=+1 | b=-1)| and the same with roles exchanged.
  const double a_given_b = std::abs(cond_plus(m.at(1, 1), m.second(1)) - cond_plus(m.at(1, -1), m.second(-1)));
  const double b_given_a = std::abs(cond_plus(m.at(1, 1), m.first(1)) - cond_plus(m.at(-1, 1), m.first(-1)));
  return std::min(a_given_b, b_given_a);
}

double i_h2(const PairwiseMarginal& m) { return hellinger_sq(to_dist(m), to_dist(make_independent(m))); }

double alpha_of(const PairwiseMarginal& m) { return 2.0 * m.agree() - 1.0; }

PairMeasures pair_measures(const PairwiseMarginal& m) {
  return {minmrg(m), mindiag(m), mindisc(m), i_h2(m), alpha_of(m), mutual_information(m)};
}

SymmetricComparisons symmetric_constructions(double alpha, double alpha_hat) {
  return {PairwiseMarginal::symmetric(0.0), PairwiseMarginal::symmetric(alpha >= 0.0 ? 1.0 : -1.0),
          PairwiseMarginal::symmetric(alpha_hat)};
}

}  // namespace chowliu
