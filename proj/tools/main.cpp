#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chowliu/commands.hpp"

using namespace chowliu;

namespace {

std::map<std::string, double> parse_thresholds(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--threshold", "expected name=value, got " + item);
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      out[item.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--threshold", "bad number in " + item);
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learn tree-structured binary Bayesnets with Chow-Liu"};
  app.require_subcommand(1);

  SampleOptions so;
  auto* sample_cmd = app.add_subcommand("sample", "draw samples from a model file");
  sample_cmd->add_option("model", so.model_file, "model file")->required();
  sample_cmd->add_option("--count,-n", so.count, "number of samples")->required();
  sample_cmd->add_option("--seed", so.seed, "RNG seed");
  sample_cmd->add_option("--out,-o", so.out, "output sample file (default: stdout)");

  LearnOptions lo;
  auto* learn_cmd = app.add_subcommand("learn", "fit a tree model to a sample file");
  learn_cmd->add_option("samples", lo.sample_file, "sample file")->required();
  learn_cmd->add_option("--mode", lo.mode, "general (mutual information) or symmetric (|alpha|)")
      ->check(CLI::IsMember({"general", "symmetric"}));
  learn_cmd->add_option("--out,-o", lo.out, "output model file (default: stdout)");
  learn_cmd->add_option("--weights", lo.weights_out, "all-pairs weight CSV (default: <out>.weights.csv)");

  EvalOptions eo;
  auto* eval_cmd = app.add_subcommand("eval", "distance between a true and a learned model");
  eval_cmd->add_option("true_model", eo.true_model, "true model file")->required();
  eval_cmd->add_option("learned_model", eo.learned_model, "learned model file")->required();
  eval_cmd->add_option("--method", eo.method, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
  eval_cmd->add_option("--mc-samples", eo.mc_samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--seed", eo.seed, "RNG seed for mc");
  eval_cmd->add_option("--out,-o", eo.out, "report file (default: stdout)");

  LayeringOptions yo;
  std::vector<std::string> threshold_items;
  auto* layer_cmd = app.add_subcommand("layering", "edge-layering report for a learned model");
  layer_cmd->add_option("learned_model", yo.learned_model, "learned model file")->required();
  layer_cmd->add_option("--eps", yo.eps, "accuracy parameter in (0, 1]")->check(CLI::Range(1e-300, 1.0));
  layer_cmd->add_option("--mode", yo.mode, "general or symmetric (default: follow the file)")
      ->check(CLI::IsMember({"general", "symmetric"}));
  layer_cmd->add_option("--true", yo.true_model, "true model file; enables diagnostic mode");
  layer_cmd->add_option("--threshold", threshold_items, "override a band multiplier, name=value (repeatable)");
  layer_cmd->add_option("--out,-o", yo.out, "output prefix for <out>.txt and <out>.csv (default: text to stdout)");

  ExperimentOptions xo;
  auto* exp_cmd = app.add_subcommand("experiment", "hard-instance sample-complexity experiment");
  exp_cmd->add_option("config", xo.config_file, "key=value configuration file")->required();
  exp_cmd->add_option("--out,-o", xo.out, "output directory for CSV files");
  exp_cmd->add_option("--jobs,-j", xo.jobs, "worker threads")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", xo.seed, "override the master seed");

  try {
    app.parse(argc, argv);
    yo.thresholds = parse_thresholds(threshold_items);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample_cmd) return cmd_sample(so, std::cout, std::cerr);
    if (*learn_cmd) return cmd_learn(lo, std::cout, std::cerr);
    if (*eval_cmd) return cmd_eval(eo, std::cout, std::cerr);
    if (*layer_cmd) return cmd_layering(yo, std::cout, std::cerr);
    if (*exp_cmd) return cmd_experiment(xo, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
