#include "chowliu/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "chowliu/evaluate.hpp"
#include "chowliu/instances.hpp"
#include "chowliu/learner.hpp"
#include "chowliu/model_io.hpp"
#include "chowliu/rng.hpp"

namespace chowliu {

std::vector<std::uint64_t> default_schedule() {
  std::vector<std::uint64_t> out;
  for (int t = 0; t <= 9; ++t) {
    out.push_back(static_cast<std::uint64_t>(std::floor(1000.0 * std::pow(100.0, t / 9.0))));
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void config_error(int line, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, "line " + std::to_string(line) + ": " + msg);
}

std::uint64_t parse_u64(const std::string& v, int line, const std::string& key) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos) {
    config_error(line, key + " expects a nonnegative integer, got '" + v + "'");
  }
  try {
    return std::stoull(v);
  } catch (const std::out_of_range&) {
    config_error(line, key + " out of range");
  }
}

int parse_positive(const std::string& v, int line, const std::string& key) {
  const auto x = parse_u64(v, line, key);
  if (x < 1 || x > 1000000000ULL) config_error(line, key + " must be a positive integer");
  return static_cast<int>(x);
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) config_error(line, "expected key=value");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "n") {
      cfg.n = parse_positive(value, line, key);
      if (cfg.n < 2) config_error(line, "n must be at least 2");
    } else if (key == "m") {
      if (value == "default") {
        cfg.m = default_schedule();
      } else {
        cfg.m.clear();
        std::stringstream list(value);
        std::string item;
        while (std::getline(list, item, ',')) {
          const auto x = parse_u64(trim(item), line, key);
          if (x < 1) config_error(line, "sample sizes must be positive");
          cfg.m.push_back(x);
        }
        if (cfg.m.empty()) config_error(line, "empty m list");
      }
    } else if (key == "instances") {
      cfg.instances = parse_positive(value, line, key);
    } else if (key == "runs") {
      cfg.runs = parse_positive(value, line, key);
    } else if (key == "mc_samples") {
      cfg.mc_samples = parse_u64(value, line, key);
      if (cfg.mc_samples < 1) config_error(line, "mc_samples must be positive");
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, line, key);
    } else if (key == "jobs") {
      cfg.jobs = parse_positive(value, line, key);
    } else {
      config_error(line, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_experiment_config(in);
}

std::uint64_t instance_seed(std::uint64_t master, std::uint64_t m, int instance) {
  return derive_seed(master, {1, m, static_cast<std::uint64_t>(instance)});
}

double second_largest(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "no values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v.size() > 1 ? v[1] : v[0];
}

double fit_constant(int n, std::span<const SizeSummary> summary) {
  double c = 0.0;
  for (const auto& s : summary) {
    c = std::max(c, s.eps_hat / reference_curve(n, s.m, 1.0));
  }
  return c;
}

double reference_curve(int n, std::uint64_t m, double c) {
  return c * std::sqrt(n * std::log(static_cast<double>(n)) / static_cast<double>(m));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* progress) {
  if (cfg.n < 2 || cfg.m.empty() || cfg.instances < 1 || cfg.runs < 1 || cfg.mc_samples < 1 || cfg.jobs < 1) {
    throw Error(ErrorCode::ConfigError, "experiment configuration out of range");
  }
  ExperimentResult result;
  result.config = cfg;
  const std::size_t per_m = static_cast<std::size_t>(cfg.instances);
  result.records.resize(cfg.m.size() * per_m);
  for (std::size_t a = 0; a < cfg.m.size(); ++a) {
    for (int i = 0; i < cfg.instances; ++i) {
      auto& r = result.records[a * per_m + i];
      r.n = cfg.n;
      r.m = cfg.m[a];
      r.instance = i;
      r.seed = instance_seed(cfg.seed, cfg.m[a], i);
      r.run_tv.assign(cfg.runs, 0.0);
    }
  }

  // One task per (record, run); each task regenerates its instance from the
  // seed so that workers share nothing mutable except their output slot.
  const std::size_t tasks = result.records.size() * static_cast<std::size_t>(cfg.runs);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        InstanceRecord& rec = result.records[t / cfg.runs];
        const int run = static_cast<int>(t % cfg.runs);
        HardInstanceConfig hc{cfg.n, rec.m, rec.seed, std::nullopt};
        const HardInstance inst = generate_hard(hc);
        if (run == 0) {
          rec.p1 = inst.proportions[0];
          rec.p2 = inst.proportions[1];
          rec.p3 = inst.proportions[2];
        }
        const SampleMatrix data = sample(inst.model, derive_seed(rec.seed, {1, static_cast<std::uint64_t>(run)}), rec.m);
        const TreeModel q = to_tree_model(chow_liu(data));
        rec.run_tv[run] =
            tv_mc(inst.model, q, cfg.mc_samples, derive_seed(rec.seed, {2, static_cast<std::uint64_t>(run)})).value;
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress && (finished % cfg.runs == 0 || finished == tasks)) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        *progress << "experiment: " << finished << "/" << tasks << " runs\n" << std::flush;
      }
    }
  };

  const int threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t a = 0; a < cfg.m.size(); ++a) {
    SizeSummary s{cfg.m[a], 0.0};
    for (std::size_t i = 0; i < per_m; ++i) {
      auto& rec = result.records[a * per_m + i];
      rec.eps_hat_p = second_largest(rec.run_tv);
      s.eps_hat = std::max(s.eps_hat, rec.eps_hat_p);
    }
    result.summary.push_back(s);
  }
  result.c = fit_constant(cfg.n, result.summary);
  return result;
}

void write_records_csv(std::ostream& out, const ExperimentResult& r) {
  out << "n,m,instance,seed,run,tv_estimate\n";
  for (const auto& rec : r.records) {
    for (std::size_t k = 0; k < rec.run_tv.size(); ++k) {
      out << rec.n << ',' << rec.m << ',' << rec.instance << ',' << rec.seed << ',' << k << ','
          << format_real(rec.run_tv[k]) << '\n';
    }
  }
}

void write_instances_csv(std::ostream& out, const ExperimentResult& r) {
  out << "n,m,instance,seed,p1,p2,p3,eps_hat_p\n";
  for (const auto& rec : r.records) {
    out << rec.n << ',' << rec.m << ',' << rec.instance << ',' << rec.seed << ',' << format_real(rec.p1) << ','
        << format_real(rec.p2) << ',' << format_real(rec.p3) << ',' << format_real(rec.eps_hat_p) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const ExperimentResult& r) {
  out << "m,eps_hat,reference\n";
  for (const auto& s : r.summary) {
    out << s.m << ',' << format_real(s.eps_hat) << ',' << format_real(reference_curve(r.config.n, s.m, r.c)) << '\n';
  }
}

void write_fit(std::ostream& out, const ExperimentResult& r) {
  out << "schema_version=1\n";
  out << "n=" << r.config.n << '\n';
  out << "instances=" << r.config.instances << '\n';
  out << "runs=" << r.config.runs << '\n';
  out << "mc_samples=" << r.config.mc_samples << '\n';
  out << "seed=" << r.config.seed << '\n';
  out << "c=" << format_real(r.c) << '\n';
}

}  // namespace chowliu
