#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "chowliu/commands.hpp"
#include "chowliu/instances.hpp"

using namespace chowliu;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("chowliu_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  int run(const std::string& args) const {
    const std::string cmd = std::string(CHOWLIU_CLI) + " " + args + " > " + path("stdout") + " 2> " + path("stderr");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SampleDeterministicModel) {
  save_model_file(path("det.txt"), TreeModel(3, 1.0, {{0, 1}, {1, 2}}, {{1, 0}, {1, 0}}));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_sample({path("det.txt"), 4, 1, ""}, out, err), kExitOk);
  EXPECT_EQ(out.str(), "tree-samples v1 n=3 m=4\n1 1 1\n1 1 1\n1 1 1\n1 1 1\n");
  std::ostringstream none;
  cmd_sample({path("det.txt"), 0, 1, ""}, none, err);
  EXPECT_EQ(none.str(), "tree-samples v1 n=3 m=0\n");
}

TEST_F(Cli, LearnOneSampleAndWarn) {
  {
    std::ofstream f(path("one.txt"));
    f << "1 -1 1\n";
  }
  std::ostringstream out, err;
  LearnOptions lo;
  lo.sample_file = path("one.txt");
  lo.out = path("learned.txt");
  EXPECT_EQ(cmd_learn(lo, out, err), kExitOk);
  const auto m = load_model_file(path("learned.txt")).tree_model();
  EXPECT_EQ(m.undirected_edges(), (std::vector<Edge>{{0, 1}, {0, 2}}));
  EXPECT_EQ(slurp(path("learned.txt.weights.csv")).substr(0, 15), "i,j,weight,tree");
  EXPECT_TRUE(err.str().empty());

  lo.mode = "symmetric";
  lo.out = path("sym.txt");
  EXPECT_EQ(cmd_learn(lo, out, err), kExitOk);
  EXPECT_NE(err.str().find("warning"), std::string::npos);
  EXPECT_TRUE(load_model_file(path("sym.txt")).symmetric());
}

TEST_F(Cli, EvalIdenticalFiles) {
  save_model_file(path("p.txt"), random_general(6, 1));
  std::ostringstream out, err;
  EvalOptions eo;
  eo.true_model = path("p.txt");
  eo.learned_model = path("p.txt");
  EXPECT_EQ(cmd_eval(eo, out, err), kExitOk);
  EXPECT_NE(out.str().find("tv=0\n"), std::string::npos);
  eo.method = "mc";
  std::ostringstream mc;
  EXPECT_EQ(cmd_eval(eo, mc, err), kExitOk);
  EXPECT_NE(mc.str().find("tv=0\n"), std::string::npos);
}

TEST_F(Cli, LayeringIndependentModelAllTunnels) {
  save_model_file(path("ind.txt"), TreeModel(3, 0.5, {{0, 1}, {1, 2}}, {{0.5, 0.5}, {0.5, 0.5}}));
  std::ostringstream out, err;
  LayeringOptions yo;
  yo.learned_model = path("ind.txt");
  EXPECT_EQ(cmd_layering(yo, out, err), kExitOk);
  EXPECT_NE(out.str().find("tunnel: 2 edges"), std::string::npos);
  EXPECT_NE(out.str().find("avenue: empty"), std::string::npos);
  yo.thresholds["nonsense"] = 1.0;
  EXPECT_THROW(cmd_layering(yo, out, err), Error);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(""), kExitUsage);
  EXPECT_EQ(run("frobnicate"), kExitUsage);
  EXPECT_EQ(run("sample"), kExitUsage);
  EXPECT_EQ(run("sample " + path("missing.txt") + " -n 3"), kExitData);
  EXPECT_EQ(run("learn x --mode sideways"), kExitUsage);
  EXPECT_EQ(run("layering x --threshold road"), kExitUsage);
  EXPECT_EQ(run("--help"), kExitOk);

  save_model_file(path("m.txt"), random_general(4, 2));
  EXPECT_EQ(run("sample " + path("m.txt") + " -n 20 --seed 3 --out " + path("s.txt")), kExitOk);
  EXPECT_EQ(run("learn " + path("s.txt") + " --out " + path("l.txt")), kExitOk);
  EXPECT_EQ(run("eval " + path("m.txt") + " " + path("l.txt")), kExitOk);
  EXPECT_NE(slurp(path("stdout")).find("method=exact"), std::string::npos);
  EXPECT_EQ(run("layering " + path("l.txt") + " --threshold road=3"), kExitData);
  EXPECT_EQ(run("eval " + path("m.txt") + " " + path("s.txt")), kExitData);
  {
    std::ofstream f(path("bad.cfg"));
    f << "n=5\nwhat=1\n";
  }
  EXPECT_EQ(run("experiment " + path("bad.cfg")), kExitData);
}
