#include "chowliu/hierarchy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <ostream>
#include <queue>

#include "chowliu/model_io.hpp"

namespace chowliu {

const char* to_string(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::Road: return "road";
    case EdgeLabel::Highway: return "highway";
    case EdgeLabel::Railway: return "railway";
    case EdgeLabel::Airway: return "airway";
    case EdgeLabel::Avenue: return "avenue";
    case EdgeLabel::Tunnel: return "tunnel";
  }
  return "?";
}

int band(EdgeLabel label) {
  switch (label) {
    case EdgeLabel::Road:
    case EdgeLabel::Avenue: return 0;
    case EdgeLabel::Highway: return 1;
    case EdgeLabel::Railway: return 2;
    case EdgeLabel::Airway:
    case EdgeLabel::Tunnel: return 3;
  }
  return 3;
}

const char* to_string(PartitionLevel level) {
  switch (level) {
    case PartitionLevel::BrokenCity: return "broken-city";
    case PartitionLevel::City: return "city";
    case PartitionLevel::BrokenCountry: return "broken-country";
    case PartitionLevel::Country: return "country";
    case PartitionLevel::BrokenContinent: return "broken-continent";
    case PartitionLevel::Continent: return "continent";
  }
  return "?";
}

const NodePartition* HierarchyReport::partition(PartitionLevel level) const {
  for (const auto& p : partitions) {
    if (p.level == level) return &p;
  }
  return nullptr;
}

std::size_t HierarchyReport::band_count(EdgeLabel label) const {
  return static_cast<std::size_t>(
      std::count_if(edge_layers.begin(), edge_layers.end(), [&](const EdgeLayer& e) { return e.label == label; }));
}

std::size_t HierarchyReport::mismatch_count() const {
  return static_cast<std::size_t>(
      std::count_if(parallel.begin(), parallel.end(), [](const ParallelMatch& p) { return !p.matched; }));
}

namespace {

NodePartition from_union_find(int n, UnionFind& uf, PartitionLevel level) {
  NodePartition out;
  out.level = level;
  out.group_of.assign(n, -1);
  std::vector<int> root_group(n, -1);
  for (int v = 0; v < n; ++v) {
    const int r = uf.find(v);
    if (root_group[r] < 0) {
      root_group[r] = static_cast<int>(out.groups.size());
      out.groups.emplace_back();
    }
    out.group_of[v] = root_group[r];
    out.groups[root_group[r]].push_back(v);
  }
  return out;
}

// Components of the partition's groups joined further by `edges`.
NodePartition coarsen(int n, const NodePartition& base, std::span<const Edge> edges, PartitionLevel level) {
  UnionFind uf(n);
  for (const auto& g : base.groups) {
    for (std::size_t k = 1; k < g.size(); ++k) uf.unite(g[0], g[k]);
  }
  for (const auto& e : edges) uf.unite(e.u, e.v);
  return from_union_find(n, uf, level);
}

std::vector<Edge> edges_in_bands(std::span<const EdgeLayer> layers, int max_band) {
  std::vector<Edge> out;
  for (const auto& l : layers) {
    if (band(l.label) <= max_band) out.push_back(l.edge);
  }
  return out;
}

std::vector<Edge> edges_with(std::span<const EdgeLayer> layers, EdgeLabel label) {
  std::vector<Edge> out;
  for (const auto& l : layers) {
    if (l.label == label) out.push_back(l.edge);
  }
  return out;
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0, 1]");
}

void add_partitions(HierarchyReport& r, const std::array<PartitionLevel, 3>& levels) {
  for (int b = 0; b < 3; ++b) {
    r.partitions.push_back(components(r.n, edges_in_bands(r.edge_layers, b), levels[b]));
  }
}

}  // namespace

NodePartition components(int n, std::span<const Edge> edges, PartitionLevel level) {
  UnionFind uf(n);
  for (const auto& e : edges) uf.unite(e.u, e.v);
  return from_union_find(n, uf, level);
}

HierarchyReport classify_symmetric(const LearnedModel& learned, double eps, const SymmetricThresholds& th) {
  if (learned.mode != LearnMode::Symmetric) {
    throw Error(ErrorCode::NotSymmetricModel, "symmetric layering needs a symmetric-mode learned model");
  }
  check_eps(eps);
  HierarchyReport r;
  r.symmetric = true;
  r.n = learned.n;
  r.eps = eps;
  const double e2n = eps * eps / learned.n;
  const double road = 1.0 - th.road * e2n;
  const double highway = th.highway;
  const double railway = th.railway * eps / std::sqrt(static_cast<double>(learned.n));
  r.thresholds = {{"road_min_abs_alpha", road}, {"highway_min_abs_alpha", highway}, {"railway_min_abs_alpha", railway}};
  for (std::size_t k = 0; k < learned.tree.size(); ++k) {
    EdgeLayer l;
    l.edge = learned.tree[k];
    l.measures = pair_measures(learned.edge_marginals[k]);
    l.measures.alpha = learned.edge_alpha[k];
    const double a = std::abs(learned.edge_alpha[k]);
    l.trigger = "abs_alpha";
    l.trigger_value = a;
    if (a >= road) {
      l.label = EdgeLabel::Road;
      l.threshold = road;
    } else if (a >= highway) {
      l.label = EdgeLabel::Highway;
      l.threshold = highway;
    } else if (a >= railway) {
      l.label = EdgeLabel::Railway;
      l.threshold = railway;
    } else {
      l.label = EdgeLabel::Airway;
      l.threshold = railway;
    }
    r.edge_layers.push_back(std::move(l));
  }
  add_partitions(r, {PartitionLevel::City, PartitionLevel::Country, PartitionLevel::Continent});
  return r;
}

HierarchyReport classify_general(const LearnedModel& learned, double eps, const GeneralThresholds& th) {
  check_eps(eps);
  HierarchyReport r;
  r.n = learned.n;
  r.eps = eps;
  const double e2n = eps * eps / learned.n;
  const double av_mrg = th.avenue_minmrg * e2n;
  const double av_diag = th.avenue_mindiag * e2n;
  const double hw_mrg = th.highway_minmrg * e2n;
  const double hw_disc = th.highway_mindisc;
  const double rw_ih2 = th.railway_ih2 * e2n;
  r.thresholds = {{"avenue_min_minmrg", av_mrg},   {"avenue_max_mindiag", av_diag},
                  {"highway_min_minmrg", hw_mrg},  {"highway_min_mindisc", hw_disc},
                  {"railway_min_i_h2", rw_ih2}};
  for (std::size_t k = 0; k < learned.tree.size(); ++k) {
    EdgeLayer l;
    l.edge = learned.tree[k];
    l.measures = pair_measures(learned.edge_marginals[k]);
    const auto& m = l.measures;
    if (m.minmrg >= av_mrg && m.mindiag <= av_diag) {
      l.label = EdgeLabel::Avenue;
      l.trigger = "mindiag";
      l.trigger_value = m.mindiag;
      l.threshold = av_diag;
    } else if (m.minmrg >= hw_mrg && m.mindisc >= hw_disc) {
      l.label = EdgeLabel::Highway;
      l.trigger = "mindisc";
      l.trigger_value = m.mindisc;
      l.threshold = hw_disc;
    } else if (m.i_h2 >= rw_ih2) {
      l.label = EdgeLabel::Railway;
      l.trigger = "i_h2";
      l.trigger_value = m.i_h2;
      l.threshold = rw_ih2;
    } else {
      l.label = EdgeLabel::Tunnel;
      l.trigger = "i_h2";
      l.trigger_value = m.i_h2;
      l.threshold = rw_ih2;
    }
    r.edge_layers.push_back(std::move(l));
  }
  add_partitions(r, {PartitionLevel::BrokenCity, PartitionLevel::BrokenCountry, PartitionLevel::BrokenContinent});
  return r;
}

std::vector<int> convex_hull(int n, std::span<const Edge> tree, std::span<const int> s) {
  if (s.empty()) return {};
  // Parent pointers from s[0]; the hull is the union of paths from each member to s[0].
  const auto adj = adjacency(n, tree);
  std::vector<int> parent(n, -2);
  std::queue<int> q;
  parent[s[0]] = -1;
  q.push(s[0]);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v]) {
      if (parent[w] == -2) {
        parent[w] = v;
        q.push(w);
      }
    }
  }
  std::vector<char> in(n, 0);
  in[s[0]] = 1;
  for (int v : s) {
    if (v < 0 || v >= n) throw Error(ErrorCode::NodeOutOfRange, "node " + std::to_string(v));
    if (parent[v] == -2) throw Error(ErrorCode::Disconnected, "tree does not reach node " + std::to_string(v));
    for (int x = v; !in[x]; x = parent[x]) in[x] = 1;
  }
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (in[v]) out.push_back(v);
  }
  return out;
}

NodePartition merge_cities(int n, std::span<const Edge> true_tree, const NodePartition& broken_cities) {
  // Hulls intersect exactly when they share a node, so uniting every
  // broken-city with the first broken-city seen at each hull node yields the
  // transitive closure.
  UnionFind uf(n);
  std::vector<int> owner(n, -1);
  for (const auto& g : broken_cities.groups) {
    for (std::size_t k = 1; k < g.size(); ++k) uf.unite(g[0], g[k]);
    for (int v : convex_hull(n, true_tree, g)) {
      if (owner[v] < 0) {
        owner[v] = g[0];
      } else {
        uf.unite(owner[v], g[0]);
      }
    }
  }
  return from_union_find(n, uf, PartitionLevel::City);
}

std::vector<Edge> select_t_trails(int n, std::span<const Edge> true_tree, std::span<const int> city,
                                  std::span<const Edge> avenues_in_city) {
  std::vector<char> in(n, 0);
  for (int v : city) in[v] = 1;
  UnionFind uf(n);
  std::vector<Edge> avenues;
  for (const auto& a : avenues_in_city) {
    uf.unite(a.u, a.v);
    avenues.push_back(normalized(a));
  }
  std::vector<Edge> roads;
  for (const auto& e : true_tree) {
    if (in[e.u] && in[e.v]) roads.push_back(normalized(e));
  }
  std::sort(roads.begin(), roads.end());
  std::vector<Edge> selected;
  for (const auto& e : roads) {
    if (std::find(avenues.begin(), avenues.end(), e) != avenues.end()) continue;
    if (uf.unite(e.u, e.v)) selected.push_back(e);
  }
  for (int v : city) {
    if (!uf.connected(v, city[0])) {
      throw Error(ErrorCode::CityNotConnected,
                  "node " + std::to_string(v) + " is not reached from " + std::to_string(city[0]) + " inside its city");
    }
  }
  return selected;
}

std::vector<int> biased_nodes(const TreeModel& model, double eps, double multiplier) {
  const double threshold = multiplier * eps * eps / model.size();
  const auto plus = node_marginals(model);
  std::vector<int> out;
  for (int v = 0; v < model.size(); ++v) {
    if (minmrg_node(plus[v]) < threshold) out.push_back(v);
  }
  return out;
}

std::vector<ParallelMatch> match_parallel(EdgeLabel which, std::span<const std::pair<Edge, EdgeLabel>> true_layers,
                                          std::span<const EdgeLayer> learned_layers, const NodePartition& groups,
                                          const NodePartition* broken) {
  std::map<std::pair<int, int>, ParallelMatch> by_pair;
  auto slot = [&](const Edge& e) -> ParallelMatch* {
    int a = groups.group_of[e.u];
    int b = groups.group_of[e.v];
    if (a == b) return nullptr;
    if (a > b) std::swap(a, b);
    auto& pm = by_pair[{a, b}];
    pm.band = which;
    pm.group_a = a;
    pm.group_b = b;
    return &pm;
  };
  for (const auto& [e, label] : true_layers) {
    if (label != which) continue;
    if (auto* pm = slot(e)) pm->true_edges.push_back(e);
  }
  for (const auto& l : learned_layers) {
    if (l.label != which) continue;
    if (auto* pm = slot(l.edge)) pm->learned_edges.push_back(l.edge);
  }
  auto broken_pair = [&](const Edge& e) {
    const int a = broken->group_of[e.u];
    const int b = broken->group_of[e.v];
    return std::minmax(a, b);
  };
  std::vector<ParallelMatch> out;
  for (auto& [key, pm] : by_pair) {
    if (pm.true_edges.size() != 1 || pm.learned_edges.size() != 1) {
      pm.reason = std::to_string(pm.true_edges.size()) + " true vs " + std::to_string(pm.learned_edges.size()) +
                  " learned " + to_string(which) + "s";
    } else if (broken && broken_pair(pm.true_edges[0]) != broken_pair(pm.learned_edges[0])) {
      pm.reason = "edges join different broken groups";
    } else {
      pm.matched = true;
    }
    out.push_back(std::move(pm));
  }
  return out;
}

void add_diagnostics(HierarchyReport& r, const TreeModel& truth, const GeneralThresholds& th) {
  if (truth.size() != r.n) {
    throw Error(ErrorCode::ModelDimensionMismatch,
                "true model has " + std::to_string(truth.size()) + " nodes, report has " + std::to_string(r.n));
  }
  const int n = r.n;
  const auto tree = truth.undirected_edges();
  r.diagnostic = true;

  const NodePartition* cities;
  const NodePartition* countries;
  const NodePartition* continents;
  const NodePartition* broken_cities = nullptr;
  const NodePartition* broken_countries = nullptr;
  if (r.symmetric) {
    cities = r.partition(PartitionLevel::City);
    countries = r.partition(PartitionLevel::Country);
    continents = r.partition(PartitionLevel::Continent);
  } else {
    const NodePartition city_part = merge_cities(n, tree, *r.partition(PartitionLevel::BrokenCity));
    NodePartition country_part =
        coarsen(n, city_part, edges_with(r.edge_layers, EdgeLabel::Highway), PartitionLevel::Country);
    NodePartition continent_part =
        coarsen(n, country_part, edges_with(r.edge_layers, EdgeLabel::Railway), PartitionLevel::Continent);
    r.partitions.push_back(city_part);
    r.partitions.push_back(std::move(country_part));
    r.partitions.push_back(std::move(continent_part));
    cities = r.partition(PartitionLevel::City);
    countries = r.partition(PartitionLevel::Country);
    continents = r.partition(PartitionLevel::Continent);
    broken_cities = r.partition(PartitionLevel::BrokenCity);
    broken_countries = r.partition(PartitionLevel::BrokenCountry);
  }

  r.true_edge_layers.clear();
  for (const auto& e : tree) {
    EdgeLabel label;
    if (cities->group_of[e.u] == cities->group_of[e.v]) {
      label = EdgeLabel::Road;
    } else if (countries->group_of[e.u] == countries->group_of[e.v]) {
      label = EdgeLabel::Highway;
    } else if (continents->group_of[e.u] == continents->group_of[e.v]) {
      label = EdgeLabel::Railway;
    } else {
      label = EdgeLabel::Airway;
    }
    r.true_edge_layers.emplace_back(normalized(e), label);
  }

  r.t_trails.clear();
  r.biased_nodes.clear();
  if (!r.symmetric) {
    const auto avenues = edges_with(r.edge_layers, EdgeLabel::Avenue);
    for (const auto& city : cities->groups) {
      std::vector<Edge> inside;
      const int g = cities->group_of[city[0]];
      for (const auto& a : avenues) {
        if (cities->group_of[a.u] == g && cities->group_of[a.v] == g) inside.push_back(a);
      }
      for (const auto& t : select_t_trails(n, tree, city, inside)) r.t_trails.push_back(t);
    }
    std::sort(r.t_trails.begin(), r.t_trails.end());
    r.biased_nodes = biased_nodes(truth, r.eps, th.biased);
  }

  r.parallel = match_parallel(EdgeLabel::Highway, r.true_edge_layers, r.edge_layers, *cities, broken_cities);
  auto rail = match_parallel(EdgeLabel::Railway, r.true_edge_layers, r.edge_layers, *countries, broken_countries);
  r.parallel.insert(r.parallel.end(), rail.begin(), rail.end());
}

namespace {

void write_groups(std::ostream& out, const NodePartition& p) {
  out << to_string(p.level) << " (" << p.size() << "):";
  for (const auto& g : p.groups) {
    out << " {";
    for (std::size_t k = 0; k < g.size(); ++k) out << (k ? "," : "") << g[k];
    out << '}';
  }
  out << '\n';
}

std::string edge_text(const Edge& e) { return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")"; }

}  // namespace

void write_report_text(std::ostream& out, const HierarchyReport& r) {
  out << "layering " << (r.symmetric ? "symmetric" : "general") << " n=" << r.n << " eps=" << format_real(r.eps)
      << '\n';
  out << "thresholds:\n";
  for (const auto& t : r.thresholds) out << "  " << t.name << " = " << format_real(t.value) << '\n';
  const std::vector<EdgeLabel> labels =
      r.symmetric ? std::vector<EdgeLabel>{EdgeLabel::Road, EdgeLabel::Highway, EdgeLabel::Railway, EdgeLabel::Airway}
                  : std::vector<EdgeLabel>{EdgeLabel::Avenue, EdgeLabel::Highway, EdgeLabel::Railway, EdgeLabel::Tunnel};
  out << "bands:\n";
  for (EdgeLabel label : labels) {
    const std::size_t count = r.band_count(label);
    out << "  " << to_string(label) << ": ";
    if (count == 0) {
      out << "empty\n";
      continue;
    }
    out << count << " edge" << (count == 1 ? "" : "s") << ':';
    for (const auto& l : r.edge_layers) {
      if (l.label == label) out << ' ' << edge_text(l.edge);
    }
    out << '\n';
  }
  out << "partitions:\n";
  for (const auto& p : r.partitions) {
    out << "  ";
    write_groups(out, p);
  }
  if (!r.diagnostic) return;
  out << "true-tree edges:\n";
  for (const auto& [e, label] : r.true_edge_layers) out << "  " << edge_text(e) << ' ' << to_string(label) << '\n';
  if (!r.symmetric) {
    out << "biased nodes:";
    if (r.biased_nodes.empty()) out << " none";
    for (int v : r.biased_nodes) out << ' ' << v;
    out << "\nT-trails:";
    if (r.t_trails.empty()) out << " none";
    for (const auto& e : r.t_trails) out << ' ' << edge_text(e);
    out << '\n';
  }
  out << "parallel matching: " << r.parallel.size() - r.mismatch_count() << " matched, " << r.mismatch_count()
      << " mismatched\n";
  for (const auto& pm : r.parallel) {
    out << "  " << to_string(pm.band) << " groups " << pm.group_a << '-' << pm.group_b << ": ";
    out << (pm.matched ? "matched" : "MISMATCH (" + pm.reason + ")");
    out << " true[";
    for (std::size_t k = 0; k < pm.true_edges.size(); ++k) out << (k ? " " : "") << edge_text(pm.true_edges[k]);
    out << "] learned[";
    for (std::size_t k = 0; k < pm.learned_edges.size(); ++k) out << (k ? " " : "") << edge_text(pm.learned_edges[k]);
    out << "]\n";
  }
}

void write_report_csv(std::ostream& out, const HierarchyReport& r) {
  out << "u,v,label,measure,value,threshold,alpha,minmrg,mindiag,mindisc,i_h2,mi\n";
  for (const auto& l : r.edge_layers) {
    const auto& m = l.measures;
    out << l.edge.u << ',' << l.edge.v << ',' << to_string(l.label) << ',' << l.trigger << ','
        << format_real(l.trigger_value) << ',' << format_real(l.threshold) << ',' << format_real(m.alpha) << ','
        << format_real(m.minmrg) << ',' << format_real(m.mindiag) << ',' << format_real(m.mindisc) << ','
        << format_real(m.i_h2) << ',' << format_real(m.mi) << '\n';
  }
}

}  // namespace chowliu
