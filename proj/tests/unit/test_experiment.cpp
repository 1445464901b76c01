#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chowliu/error.hpp"
#include "chowliu/experiment.hpp"

using namespace chowliu;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_experiment_config(in);
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "accepted: " << text;
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Schedule, TenSizes) {
  EXPECT_EQ(default_schedule(), (std::vector<std::uint64_t>{1000, 1668, 2782, 4641, 7742, 12915, 21544, 35938, 59948,
                                                          100000}));
}

TEST(Config, DefaultsAndOverrides) {
  const auto d = parse("");
  EXPECT_EQ(d.n, 100);
  EXPECT_EQ(d.instances, 25);
  EXPECT_EQ(d.runs, 7);
  EXPECT_EQ(d.mc_samples, 40000u);
  EXPECT_EQ(d.m, default_schedule());
  const auto c = parse("# scaled\nn = 20\nm=100, 200,300  # sizes\ninstances=3\nruns=2\nmc_samples=500\nseed=9\njobs=4\n");
  EXPECT_EQ(c.n, 20);
  EXPECT_EQ(c.m, (std::vector<std::uint64_t>{100, 200, 300}));
  EXPECT_EQ(c.instances, 3);
  EXPECT_EQ(c.runs, 2);
  EXPECT_EQ(c.mc_samples, 500u);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.jobs, 4);
  EXPECT_EQ(parse("m=100\nm=default\n").m, default_schedule());
}

TEST(Config, Errors) {
  EXPECT_EQ(parse_code("bogus=1\n"), ErrorCode::ConfigError);
  EXPECT_EQ(parse_code("n=abc\n"), ErrorCode::ConfigError);
  EXPECT_EQ(parse_code("n=1\n"), ErrorCode::ConfigError);
  EXPECT_EQ(parse_code("m=100,0\n"), ErrorCode::ConfigError);
  EXPECT_EQ(parse_code("runs=0\n"), ErrorCode::ConfigError);
  EXPECT_EQ(parse_code("just text\n"), ErrorCode::ConfigError);
  EXPECT_EQ(parse_code("seed=-3\n"), ErrorCode::ConfigError);
}

TEST(Aggregates, SecondLargestAndFit) {
  const double v[] = {0.1, 0.5, 0.3, 0.5, 0.2};
  EXPECT_EQ(second_largest(v), 0.5);
  const double w[] = {0.1, 0.4, 0.3};
  EXPECT_EQ(second_largest(w), 0.3);
  const double one[] = {0.7};
  EXPECT_EQ(second_largest(one), 0.7);
  EXPECT_THROW(second_largest(std::span<const double>{}), Error);

  const std::vector<SizeSummary> s{{1000, 0.3}, {10000, 0.12}, {100000, 0.02}};
  const double c = fit_constant(100, s);
  for (const auto& x : s) EXPECT_GE(c + 1e-15, x.eps_hat * std::sqrt(x.m / (100 * std::log(100.0))));
  EXPECT_NEAR(c, 0.12 * std::sqrt(10000 / (100 * std::log(100.0))), 1e-15);
  EXPECT_NEAR(reference_curve(100, 1000, 1.0), std::sqrt(100 * std::log(100.0) / 1000), 1e-15);
}

TEST(Run, LargeSampleGivesSmallError) {
  ExperimentConfig cfg;
  cfg.n = 5;
  cfg.m = {200000};
  cfg.instances = 1;
  cfg.runs = 7;
  cfg.mc_samples = 20000;
  const auto r = run_experiment(cfg);
  ASSERT_EQ(r.summary.size(), 1u);
  EXPECT_LT(r.summary[0].eps_hat, 0.02);
}

TEST(Run, IndependentOfJobsAndRecomputable) {
  ExperimentConfig cfg;
  cfg.n = 12;
  cfg.m = {100, 1000};
  cfg.instances = 3;
  cfg.runs = 4;
  cfg.mc_samples = 3000;
  cfg.seed = 5;
  const auto a = run_experiment(cfg);
  cfg.jobs = 3;
  const auto b = run_experiment(cfg);
  std::ostringstream ra, rb, sa, sb;
  write_records_csv(ra, a);
  write_records_csv(rb, b);
  write_summary_csv(sa, a);
  write_summary_csv(sb, b);
  EXPECT_EQ(ra.str(), rb.str());
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(a.c, b.c);
  EXPECT_EQ(ra.str().substr(0, ra.str().find('\n')), "n,m,instance,seed,run,tv_estimate");

  ASSERT_EQ(a.records.size(), 6u);
  for (std::size_t k = 0; k < a.summary.size(); ++k) {
    double mx = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto& rec = a.records[k * 3 + i];
      EXPECT_EQ(rec.m, cfg.m[k]);
      EXPECT_EQ(rec.seed, instance_seed(5, cfg.m[k], i));
      EXPECT_EQ(rec.eps_hat_p, second_largest(rec.run_tv));
      mx = std::max(mx, rec.eps_hat_p);
    }
    EXPECT_EQ(a.summary[k].eps_hat, mx);
  }
  EXPECT_EQ(a.c, fit_constant(cfg.n, a.summary));
}

TEST(Run, RejectsBadConfig) {
  ExperimentConfig cfg;
  cfg.m.clear();
  EXPECT_THROW(run_experiment(cfg), Error);
}
