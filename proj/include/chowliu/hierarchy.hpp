#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chowliu/learner.hpp"
#include "chowliu/measures.hpp"

namespace chowliu {

enum class EdgeLabel { Road, Highway, Railway, Airway, Avenue, Tunnel };
const char* to_string(EdgeLabel label);

// Strength rank: 0 for the strongest band (road / avenue) up to 3.
int band(EdgeLabel label);

enum class PartitionLevel { BrokenCity, City, BrokenCountry, Country, BrokenContinent, Continent };
const char* to_string(PartitionLevel level);

// Multipliers of eps^2/n (or eps/sqrt(n)) for the band boundaries. The
// defaults are the proof constants; at desk scale they put nearly every
// edge into one band, so callers may override them.
struct SymmetricThresholds {
  double road = 10.0;     // road:    |a| >= 1 - road * eps^2/n
  double highway = 0.5;   // highway: |a| >= highway
  double railway = 2.0;   // railway: |a| >= railway * eps/sqrt(n)
};

struct GeneralThresholds {
  double avenue_minmrg = 1e6;   // minmrg  >= avenue_minmrg * eps^2/n
  double avenue_mindiag = 1e5;  // mindiag <= avenue_mindiag * eps^2/n
  double highway_minmrg = 1e8;  // minmrg  >= highway_minmrg * eps^2/n
  double highway_mindisc = 0.5; // mindisc >= highway_mindisc
  double railway_ih2 = 1e10;    // I_H2    >= railway_ih2 * eps^2/n
  double biased = 1e7;          // biased node: minmrg(P_i) < biased * eps^2/n
};

struct EdgeLayer {
  Edge edge;
  EdgeLabel label = EdgeLabel::Airway;
  PairMeasures measures;  // of the learned pair marginal; alpha is alpha-hat
  std::string trigger;    // measure that decided the band
  double trigger_value = 0.0;
  double threshold = 0.0;  // boundary the trigger was compared against
};

struct NodePartition {
  PartitionLevel level = PartitionLevel::City;
  std::vector<std::vector<int>> groups;  // sorted, ordered by smallest member
  std::vector<int> group_of;

  std::size_t size() const { return groups.size(); }
};

// A straddling pair of groups with the T edges and T^ edges of one band
// that run between them.
struct ParallelMatch {
  EdgeLabel band = EdgeLabel::Highway;
  int group_a = 0;
  int group_b = 0;
  std::vector<Edge> true_edges;
  std::vector<Edge> learned_edges;
  bool matched = false;
  std::string reason;  // empty when matched
};

struct Threshold {
  std::string name;
  double value = 0.0;
};

struct HierarchyReport {
  bool symmetric = false;
  int n = 0;
  double eps = 0.0;
  std::vector<Threshold> thresholds;  // absolute boundary values
  std::vector<EdgeLayer> edge_layers;
  std::vector<NodePartition> partitions;

  // Present only when the true model was supplied.
  bool diagnostic = false;
  std::vector<int> biased_nodes;
  std::vector<std::pair<Edge, EdgeLabel>> true_edge_layers;
  std::vector<Edge> t_trails;
  std::vector<ParallelMatch> parallel;

  const NodePartition* partition(PartitionLevel level) const;
  std::size_t band_count(EdgeLabel label) const;
  std::size_t mismatch_count() const;
};

// Symmetric bands on |alpha-hat|. Throws NotSymmetricModel for general-mode input.
HierarchyReport classify_symmetric(const LearnedModel& learned, double eps, const SymmetricThresholds& th = {});
// General bands in priority order avenue, highway, railway, tunnel.
HierarchyReport classify_general(const LearnedModel& learned, double eps, const GeneralThresholds& th = {});

// Adds true-tree information: merged cities (general), countries and
// continents, T-edge labels, T-trails, biased nodes, and parallel matching.
// Throws ModelDimensionMismatch when sizes differ.
void add_diagnostics(HierarchyReport& report, const TreeModel& truth, const GeneralThresholds& th = {});

// s plus every node on a tree path between two members of s.
std::vector<int> convex_hull(int n, std::span<const Edge> tree, std::span<const int> s);

// Transitive closure of hull-intersection merging.
NodePartition merge_cities(int n, std::span<const Edge> true_tree, const NodePartition& broken_cities);

// Greedy scan of the T edges inside the city in (i, j) order. Throws
// CityNotConnected when avenues plus selected trails do not span the city.
std::vector<Edge> select_t_trails(int n, std::span<const Edge> true_tree, std::span<const int> city,
                                  std::span<const Edge> avenues_in_city);

std::vector<int> biased_nodes(const TreeModel& model, double eps, double multiplier = 1e7);

// Connected components of the given edges, canonically ordered.
NodePartition components(int n, std::span<const Edge> edges, PartitionLevel level);

// Pairs up T edges and T^ edges of `band` that cross between groups of
// `groups`; a group pair matches when each side has exactly one such edge
// and, if `broken` is given, both run between the same pair of its groups.
std::vector<ParallelMatch> match_parallel(EdgeLabel band, std::span<const std::pair<Edge, EdgeLabel>> true_layers,
                                          std::span<const EdgeLayer> learned_layers, const NodePartition& groups,
                                          const NodePartition* broken);

void write_report_text(std::ostream& out, const HierarchyReport& report);
// Header: u,v,label,measure,value,threshold,alpha,minmrg,mindiag,mindisc,i_h2,mi
void write_report_csv(std::ostream& out, const HierarchyReport& report);

}  // namespace chowliu
