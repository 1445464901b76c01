#include "chowliu/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "chowliu/evaluate.hpp"
#include "chowliu/experiment.hpp"
#include "chowliu/hierarchy.hpp"
#include "chowliu/measures.hpp"

namespace chowliu {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoError, "cannot write " + path);
  return f;
}

// Writes through `fn` to a file, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  auto f = open_out(path);
  fn(f);
  if (!f) throw Error(ErrorCode::IoError, "write failed for " + path);
}

LearnMode parse_mode(const std::string& mode) {
  if (mode == "general") return LearnMode::General;
  if (mode == "symmetric") return LearnMode::Symmetric;
  throw Error(ErrorCode::InvalidArgument, "mode must be general or symmetric, got '" + mode + "'");
}

}  // namespace

void write_weights_csv(std::ostream& out, const LearnedModel& learned) {
  std::set<std::pair<int, int>> in_tree;
  for (const auto& e : learned.tree) in_tree.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  out << "i,j,weight,tree\n";
  for (int i = 0; i < learned.n; ++i) {
    for (int j = i + 1; j < learned.n; ++j) {
      out << i << ',' << j << ',' << format_real(learned.weight(i, j)) << ',' << (in_tree.count({i, j}) ? 1 : 0)
          << '\n';
    }
  }
}

int cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream&) {
  const TreeModel model = load_model_file(opt.model_file).tree_model();
  const SampleMatrix data = sample(model, opt.seed, opt.count);
  emit(opt.out, out, [&](std::ostream& o) { write_samples(o, data); });
  return kExitOk;
}

int cmd_learn(const LearnOptions& opt, std::ostream& out, std::ostream& err) {
  const LearnMode mode = parse_mode(opt.mode);
  const SampleMatrix data = load_sample_file(opt.sample_file);
  const PairCountTable table = count_pairs(data);
  const LearnedModel learned = mode == LearnMode::General ? chow_liu(table) : chow_liu_symmetric(table);

  if (mode == LearnMode::Symmetric) {
    for (int i = 0; i < learned.n; ++i) {
      const double f = learned.node_plus[i];
      if (f > 0.55 || f < 0.45) {
        err << "warning: node " << i << " has P(+1) = " << format_real(f)
            << " in symmetric mode; marginals look biased\n";
      }
    }
  }

  const std::vector<std::string> comments{
      std::string("learned ") + (mode == LearnMode::General ? "general" : "symmetric") + " from " +
      std::to_string(learned.m) + " samples"};
  emit(opt.out, out, [&](std::ostream& o) {
    if (mode == LearnMode::General) {
      write_model(o, to_tree_model(learned), comments);
    } else {
      write_model(o, to_symmetric_model(learned), comments);
    }
  });
  std::string weights = opt.weights_out;
  if (weights.empty() && !opt.out.empty()) weights = opt.out + ".weights.csv";
  if (!weights.empty()) emit(weights, out, [&](std::ostream& o) { write_weights_csv(o, learned); });
  return kExitOk;
}

int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream&) {
  const TreeModel p = load_model_file(opt.true_model).tree_model();
  const TreeModel q = load_model_file(opt.learned_model).tree_model();
  if (p.size() != q.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "true model has " + std::to_string(p.size()) + " nodes, learned has " + std::to_string(q.size()));
  }
  emit(opt.out, out, [&](std::ostream& o) {
    o << "n=" << p.size() << '\n';
    if (opt.method == "exact") {
      const double tv = tv_exact(p, q);
      const HellingerValue h = hellinger_exact(p, q);
      o << "method=exact\n";
      o << "tv=" << format_real(tv) << '\n';
      o << "hellinger=" << format_real(h.h) << '\n';
      o << "hellinger_sq=" << format_real(h.h2) << '\n';
    } else if (opt.method == "mc") {
      const TvEstimate est = tv_mc(p, q, opt.mc_samples, opt.seed);
      o << "method=mc\n";
      o << "mc_samples=" << est.samples_used << '\n';
      o << "seed=" << opt.seed << '\n';
      o << "tv=" << format_real(est.value) << '\n';
      o << "stderr=" << format_real(est.std_error) << '\n';
    } else {
      throw Error(ErrorCode::InvalidArgument, "method must be exact or mc");
    }
  });
  return kExitOk;
}

LearnedModel learned_from_file(const ModelFile& file) {
  LearnedModel out;
  if (file.symmetric()) {
    const auto& sym = std::get<SymmetricTreeModel>(file.model);
    out.mode = LearnMode::Symmetric;
    out.n = sym.n;
    out.tree = sym.edges;
    out.edge_alpha = sym.alpha;
    for (double a : sym.alpha) out.edge_marginals.push_back(PairwiseMarginal::symmetric(a));
    out.node_plus.assign(sym.n, 0.5);
  } else {
    const auto& model = std::get<TreeModel>(file.model);
    out.mode = LearnMode::General;
    out.n = model.size();
    out.tree = model.undirected_edges();
    for (const auto& e : out.tree) {
      const auto m = pair_marginal(model, e.u, e.v);
      out.edge_marginals.push_back(m);
      out.edge_alpha.push_back(alpha_of(m));
    }
    out.node_plus = node_marginals(model);
  }
  out.weights.assign(static_cast<std::size_t>(out.n) * out.n, 0.0);
  return out;
}

int cmd_layering(const LayeringOptions& opt, std::ostream& out, std::ostream&) {
  const ModelFile file = load_model_file(opt.learned_model);
  const std::string mode = opt.mode.empty() ? (file.symmetric() ? "symmetric" : "general") : opt.mode;
  LearnedModel learned = learned_from_file(file);

  auto take = [&](const char* key, double& slot) {
    if (auto it = opt.thresholds.find(key); it != opt.thresholds.end()) slot = it->second;
  };
  std::set<std::string> known;
  HierarchyReport report;
  GeneralThresholds gt;
  if (parse_mode(mode) == LearnMode::Symmetric) {
    if (!file.symmetric()) {
      throw Error(ErrorCode::NotSymmetricModel, opt.learned_model + " is a general model");
    }
    SymmetricThresholds st;
    take("road", st.road);
    take("highway", st.highway);
    take("railway", st.railway);
    known = {"road", "highway", "railway"};
    report = classify_symmetric(learned, opt.eps, st);
  } else {
    learned.mode = LearnMode::General;
    take("avenue_minmrg", gt.avenue_minmrg);
    take("avenue_mindiag", gt.avenue_mindiag);
    take("highway_minmrg", gt.highway_minmrg);
    take("highway_mindisc", gt.highway_mindisc);
    take("railway_ih2", gt.railway_ih2);
    take("biased", gt.biased);
    known = {"avenue_minmrg", "avenue_mindiag", "highway_minmrg", "highway_mindisc", "railway_ih2", "biased"};
    report = classify_general(learned, opt.eps, gt);
  }
  for (const auto& [key, value] : opt.thresholds) {
    if (!known.count(key)) throw Error(ErrorCode::InvalidArgument, "unknown threshold '" + key + "' for mode " + mode);
  }
  if (!opt.true_model.empty()) {
    add_diagnostics(report, load_model_file(opt.true_model).tree_model(), gt);
  }
  if (opt.out.empty()) {
    write_report_text(out, report);
  } else {
    emit(opt.out + ".txt", out, [&](std::ostream& o) { write_report_text(o, report); });
    emit(opt.out + ".csv", out, [&](std::ostream& o) { write_report_csv(o, report); });
  }
  return kExitOk;
}

int cmd_experiment(const ExperimentOptions& opt, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = load_experiment_config(opt.config_file);
  if (opt.jobs) cfg.jobs = *opt.jobs;
  if (opt.seed) cfg.seed = *opt.seed;
  if (cfg.jobs < 1) throw Error(ErrorCode::ConfigError, "jobs must be positive");
  const ExperimentResult result = run_experiment(cfg, &err);

  if (!opt.out.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(opt.out, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + opt.out + ": " + ec.message());
    const std::filesystem::path dir(opt.out);
    emit((dir / "records.csv").string(), out, [&](std::ostream& o) { write_records_csv(o, result); });
    emit((dir / "instances.csv").string(), out, [&](std::ostream& o) { write_instances_csv(o, result); });
    emit((dir / "summary.csv").string(), out, [&](std::ostream& o) { write_summary_csv(o, result); });
    emit((dir / "fit.txt").string(), out, [&](std::ostream& o) { write_fit(o, result); });
  }
  write_summary_csv(out, result);
  out << "c=" << format_real(result.c) << '\n';
  return kExitOk;
}

}  // namespace chowliu
