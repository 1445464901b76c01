#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "chowliu/model.hpp"

namespace chowliu {

// Line-oriented model files.
//
//   tree-bayesnet v1 n=<n>
//   root <p>
//   edge <parent> <child> <q_pp> <q_pm>     (n-1 lines)
//
//   tree-ising-sym v1 n=<n>
//   edge <i> <j> <alpha>                    (n-1 lines)
//
// Lines starting with '#' are comments. Reals are written with 17
// significant digits so files round-trip exactly.
struct ModelFile {
  std::variant<TreeModel, SymmetricTreeModel> model;
  std::vector<std::string> comments;

  bool symmetric() const { return std::holds_alternative<SymmetricTreeModel>(model); }
  // The general parametrization of either variant.
  TreeModel tree_model() const;
};

std::string format_real(double x);

void write_model(std::ostream& out, const TreeModel& model, const std::vector<std::string>& comments = {});
void write_model(std::ostream& out, const SymmetricTreeModel& model, const std::vector<std::string>& comments = {});
ModelFile read_model(std::istream& in);

ModelFile load_model_file(const std::string& path);
void save_model_file(const std::string& path, const TreeModel& model, const std::vector<std::string>& comments = {});
void save_model_file(const std::string& path, const SymmetricTreeModel& model,
                     const std::vector<std::string>& comments = {});

// Sample files: optional header `tree-samples v1 n=<n> m=<m>`, then one
// assignment per line as space-separated +1/-1 integers.
void write_samples(std::ostream& out, const SampleMatrix& samples);
SampleMatrix read_samples(std::istream& in);

SampleMatrix load_sample_file(const std::string& path);
void save_sample_file(const std::string& path, const SampleMatrix& samples);

}  // namespace chowliu
