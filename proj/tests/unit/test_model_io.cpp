#include <gtest/gtest.h>

#include <sstream>

#include "chowliu/instances.hpp"
#include "chowliu/model_io.hpp"

using namespace chowliu;

namespace {

ErrorCode parse_error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_model(in);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << text;
  return ErrorCode::IoError;
}

}  // namespace

TEST(ModelIo, GeneralRoundTripIsExact) {
  const TreeModel m = random_general(9, 77);
  std::ostringstream out;
  write_model(out, m, {"hello"});
  std::istringstream in(out.str());
  const ModelFile f = read_model(in);
  ASSERT_FALSE(f.symmetric());
  const TreeModel& back = std::get<TreeModel>(f.model);
  EXPECT_EQ(back.root_prob(), m.root_prob());
  ASSERT_EQ(back.edges().size(), m.edges().size());
  for (std::size_t k = 0; k < m.edges().size(); ++k) {
    EXPECT_EQ(back.edges()[k], m.edges()[k]);
    EXPECT_EQ(back.conditionals()[k].q_pp, m.conditionals()[k].q_pp);
    EXPECT_EQ(back.conditionals()[k].q_pm, m.conditionals()[k].q_pm);
  }
  EXPECT_EQ(f.comments, std::vector<std::string>{"hello"});
  std::ostringstream again;
  write_model(again, back, f.comments);
  EXPECT_EQ(again.str(), out.str());
}

TEST(ModelIo, SymmetricRoundTrip) {
  const auto s = random_symmetric(6, 3);
  std::ostringstream out;
  write_model(out, s);
  std::istringstream in(out.str());
  const ModelFile f = read_model(in);
  ASSERT_TRUE(f.symmetric());
  const auto& back = std::get<SymmetricTreeModel>(f.model);
  EXPECT_EQ(back.edges, s.edges);
  EXPECT_EQ(back.alpha, s.alpha);
  EXPECT_EQ(f.tree_model().size(), 6);
}

TEST(ModelIo, ParseErrors) {
  EXPECT_EQ(parse_error_of(""), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_of("tree-bayesnet v2 n=2\nroot 0.5\nedge 0 1 0.5 0.5\n"), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_of("tree-bayesnet v1 n=3\nroot 0.5\nedge 0 1 0.5 0.5\n"), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_of("tree-bayesnet v1 n=2\nroot 0.5\nedge 0 1 abc 0.5\n"), ErrorCode::ParseError);
  EXPECT_EQ(parse_error_of("tree-bayesnet v1 n=2\nroot 0.5\nedge 0 1 1.5 0.5\n"), ErrorCode::ProbabilityOutOfRange);
  EXPECT_EQ(parse_error_of("tree-ising-sym v1 n=3\nedge 0 1 0.5\nedge 1 0 0.5\n"), ErrorCode::CycleDetected);
}

TEST(ModelIo, CommentsAndBlankLinesIgnored) {
  std::istringstream in("# a comment\ntree-bayesnet v1 n=2\n\n# another\nroot 0.25\nedge 0 1 0.5 0.75\n");
  const auto f = read_model(in);
  EXPECT_EQ(std::get<TreeModel>(f.model).root_prob(), 0.25);
}

TEST(SampleIo, RoundTripAndHeader) {
  const auto s = sample(random_general(5, 2), 1, 50);
  std::ostringstream out;
  write_samples(out, s);
  EXPECT_EQ(out.str().rfind("tree-samples v1 n=5 m=50\n", 0), 0u);
  std::istringstream in(out.str());
  EXPECT_EQ(read_samples(in), s);
}

TEST(SampleIo, EmptyBodyHeaderOnly) {
  const SampleMatrix empty(3, 0);
  std::ostringstream out;
  write_samples(out, empty);
  EXPECT_EQ(out.str(), "tree-samples v1 n=3 m=0\n");
  std::istringstream in(out.str());
  const auto back = read_samples(in);
  EXPECT_EQ(back.nodes(), 3);
  EXPECT_EQ(back.samples(), 0u);
}

TEST(SampleIo, HeaderlessAndErrors) {
  std::istringstream plain("1 -1\n-1 -1\n");
  EXPECT_EQ(read_samples(plain).samples(), 2u);
  std::istringstream ragged("1 -1\n1\n");
  EXPECT_THROW(read_samples(ragged), Error);
  std::istringstream bad_count("tree-samples v1 n=2 m=3\n1 1\n");
  EXPECT_THROW(read_samples(bad_count), Error);
  std::istringstream bad_value("1 2\n");
  EXPECT_THROW(read_samples(bad_value), Error);
}

TEST(FileIo, MissingFileIsIoError) {
  try {
    load_model_file("/nonexistent/model.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}
