#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace chowliu {

// floor(1000 * 100^(t/9)) for t = 0..9.
std::vector<std::uint64_t> default_schedule();

struct ExperimentConfig {
  int n = 100;
  std::vector<std::uint64_t> m = default_schedule();
  int instances = 25;
  int runs = 7;
  std::uint64_t mc_samples = 40000;
  std::uint64_t seed = 1;
  int jobs = 1;
};

// Flat key=value lines; '#' starts a comment. Keys: n, m (comma list or
// "default"), instances, runs, mc_samples, seed, jobs. Throws ConfigError.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::string& path);

// Seed scheme, all from the master seed:
//   instance  derive_seed(master, {1, m, instance})
//   samples   derive_seed(instance_seed, {1, run})
//   MC        derive_seed(instance_seed, {2, run})
std::uint64_t instance_seed(std::uint64_t master, std::uint64_t m, int instance);

struct InstanceRecord {
  int n = 0;
  std::uint64_t m = 0;
  int instance = 0;
  std::uint64_t seed = 0;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  std::vector<double> run_tv;  // one MC estimate per run
  double eps_hat_p = 0.0;      // second largest of run_tv
};

struct SizeSummary {
  std::uint64_t m = 0;
  double eps_hat = 0.0;  // max of eps_hat_p over instances
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<InstanceRecord> records;  // m-major, then instance
  std::vector<SizeSummary> summary;
  double c = 0.0;  // smallest c with eps_hat <= c sqrt(n ln n / m) for every m
};

// Second largest value (the largest when there is only one).
double second_largest(std::span<const double> values);
double fit_constant(int n, std::span<const SizeSummary> summary);
double reference_curve(int n, std::uint64_t m, double c);

// Runs every (m, instance, run) task on config.jobs worker threads. Progress
// lines go to `progress` when non-null.
ExperimentResult run_experiment(const ExperimentConfig& config, std::ostream* progress = nullptr);

// Header: n,m,instance,seed,run,tv_estimate
void write_records_csv(std::ostream& out, const ExperimentResult& result);
// Header: n,m,instance,seed,p1,p2,p3,eps_hat_p
void write_instances_csv(std::ostream& out, const ExperimentResult& result);
// Header: m,eps_hat,reference
void write_summary_csv(std::ostream& out, const ExperimentResult& result);
// key=value lines starting with schema_version.
void write_fit(std::ostream& out, const ExperimentResult& result);

}  // namespace chowliu
