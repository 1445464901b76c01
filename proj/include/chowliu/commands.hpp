#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "chowliu/learner.hpp"
#include "chowliu/model_io.hpp"

namespace chowliu {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;

struct SampleOptions {
  std::string model_file;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::string out;  // empty: standard output
};

struct LearnOptions {
  std::string sample_file;
  std::string mode = "general";  // general | symmetric
  std::string out;               // learned model; empty: standard output
  std::string weights_out;       // all-pairs weight CSV; empty: <out>.weights.csv, none for stdout
};

struct EvalOptions {
  std::string true_model;
  std::string learned_model;
  std::string method = "exact";  // exact | mc
  std::uint64_t mc_samples = 40000;
  std::uint64_t seed = 0;
  std::string out;
};

struct LayeringOptions {
  std::string learned_model;
  double eps = 0.1;
  std::string mode;  // general | symmetric; empty: follow the file kind
  std::string true_model;
  std::string out;  // prefix: <out>.txt and <out>.csv; empty: text to standard output
  std::map<std::string, double> thresholds;
};

struct ExperimentOptions {
  std::string config_file;
  std::string out;  // directory
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
};

// Each returns an exit code; library errors propagate as chowliu::Error.
int cmd_sample(const SampleOptions& opt, std::ostream& out, std::ostream& err);
int cmd_learn(const LearnOptions& opt, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opt, std::ostream& out, std::ostream& err);
int cmd_layering(const LayeringOptions& opt, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentOptions& opt, std::ostream& out, std::ostream& err);

// Learned-model view of a model file: tree edges with their exact pair
// marginals (and alpha-values for the symmetric kind).
LearnedModel learned_from_file(const ModelFile& file);

// Weight table CSV: i,j,weight,tree (1 for tree edges).
void write_weights_csv(std::ostream& out, const LearnedModel& learned);

}  // namespace chowliu
