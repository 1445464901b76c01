#include "chowliu/model_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace chowliu {
namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;
  std::vector<std::string>* comments = nullptr;

  // Next non-blank, non-comment line; false at end of input.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '#') {
        if (comments) {
          const auto text = line.find_first_not_of(" \t", first + 1);
          comments->push_back(text == std::string::npos ? std::string() : line.substr(text));
        }
        continue;
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + msg);
  }
};

int parse_node_count(const std::string& token, const LineReader& reader) {
  if (token.rfind("n=", 0) != 0) reader.fail("expected n=<count> in header");
  try {
    std::size_t used = 0;
    const int n = std::stoi(token.substr(2), &used);
    if (used != token.size() - 2 || n < 1) reader.fail("bad node count '" + token + "'");
    return n;
  } catch (const std::logic_error&) {
    reader.fail("bad node count '" + token + "'");
  }
}

template <typename T>
T read_field(std::istringstream& fields, const LineReader& reader, const char* what) {
  T value{};
  if (!(fields >> value)) reader.fail(std::string("missing or malformed ") + what);
  return value;
}

void expect_end(std::istringstream& fields, const LineReader& reader) {
  std::string extra;
  if (fields >> extra) reader.fail("unexpected trailing token '" + extra + "'");
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

TreeModel ModelFile::tree_model() const {
  if (const auto* sym = std::get_if<SymmetricTreeModel>(&model)) return from_symmetric(*sym);
  return std::get<TreeModel>(model);
}

void write_model(std::ostream& out, const TreeModel& model, const std::vector<std::string>& comments) {
  out << "tree-bayesnet v1 n=" << model.size() << '\n';
  write_comments(out, comments);
  out << "root " << format_real(model.root_prob()) << '\n';
  for (std::size_t k = 0; k < model.edges().size(); ++k) {
    const auto& e = model.edges()[k];
    const auto& c = model.conditionals()[k];
    out << "edge " << e.parent << ' ' << e.child << ' ' << format_real(c.q_pp) << ' ' << format_real(c.q_pm) << '\n';
  }
}

void write_model(std::ostream& out, const SymmetricTreeModel& model, const std::vector<std::string>& comments) {
  out << "tree-ising-sym v1 n=" << model.n << '\n';
  write_comments(out, comments);
  for (std::size_t k = 0; k < model.edges.size(); ++k) {
    out << "edge " << model.edges[k].u << ' ' << model.edges[k].v << ' ' << format_real(model.alpha[k]) << '\n';
  }
}

ModelFile read_model(std::istream& in) {
  std::vector<std::string> comments;
  LineReader reader{in, 0, &comments};
  std::string line;
  if (!reader.next(line)) throw Error(ErrorCode::ParseError, "empty model file");

  std::istringstream header(line);
  std::string kind, version, count;
  header >> kind >> version >> count;
  if (version != "v1") reader.fail("unsupported version '" + version + "'");
  const int n = parse_node_count(count, reader);

  if (kind == "tree-bayesnet") {
    double root = -1.0;
    bool have_root = false;
    std::vector<DirectedEdge> edges;
    std::vector<EdgeConditional> cond;
    while (reader.next(line)) {
      std::istringstream fields(line);
      std::string tag;
      fields >> tag;
      if (tag == "root") {
        if (have_root) reader.fail("duplicate root line");
        root = read_field<double>(fields, reader, "root probability");
        have_root = true;
      } else if (tag == "edge") {
        const int parent = read_field<int>(fields, reader, "parent");
        const int child = read_field<int>(fields, reader, "child");
        const double q_pp = read_field<double>(fields, reader, "q_pp");
        const double q_pm = read_field<double>(fields, reader, "q_pm");
        edges.push_back({parent, child});
        cond.push_back({q_pp, q_pm});
      } else {
        reader.fail("unknown record '" + tag + "'");
      }
      expect_end(fields, reader);
    }
    if (!have_root) throw Error(ErrorCode::ParseError, "missing root line");
    if (static_cast<int>(edges.size()) != n - 1) {
      throw Error(ErrorCode::ParseError,
                  "expected " + std::to_string(n - 1) + " edges, found " + std::to_string(edges.size()));
    }
    return {TreeModel(n, root, std::move(edges), std::move(cond)), std::move(comments)};
  }

  if (kind == "tree-ising-sym") {
    SymmetricTreeModel sym;
    sym.n = n;
    while (reader.next(line)) {
      std::istringstream fields(line);
      std::string tag;
      fields >> tag;
      if (tag != "edge") reader.fail("unknown record '" + tag + "'");
      const int a = read_field<int>(fields, reader, "endpoint");
      const int b = read_field<int>(fields, reader, "endpoint");
      const double alpha = read_field<double>(fields, reader, "alpha");
      expect_end(fields, reader);
      sym.edges.push_back({a, b});
      sym.alpha.push_back(alpha);
    }
    if (static_cast<int>(sym.edges.size()) != n - 1) {
      throw Error(ErrorCode::ParseError,
                  "expected " + std::to_string(n - 1) + " edges, found " + std::to_string(sym.edges.size()));
    }
    if (auto err = validate_symmetric(sym)) throw *err;
    return {std::move(sym), std::move(comments)};
  }

  reader.fail("unknown model kind '" + kind + "'");
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_model(in);
}

namespace {

template <typename Model>
void save_any(const std::string& path, const Model& model, const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_model(out, model, comments);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace

void save_model_file(const std::string& path, const TreeModel& model, const std::vector<std::string>& comments) {
  save_any(path, model, comments);
}

void save_model_file(const std::string& path, const SymmetricTreeModel& model,
                     const std::vector<std::string>& comments) {
  save_any(path, model, comments);
}

void write_samples(std::ostream& out, const SampleMatrix& samples) {
  out << "tree-samples v1 n=" << samples.nodes() << " m=" << samples.samples() << '\n';
  std::string line;
  for (std::size_t t = 0; t < samples.samples(); ++t) {
    line.clear();
    for (std::int8_t v : samples.row(t)) {
      if (!line.empty()) line += ' ';
      line += v > 0 ? "1" : "-1";
    }
    line += '\n';
    out << line;
  }
}

SampleMatrix read_samples(std::istream& in) {
  LineReader reader{in};
  std::string line;
  std::vector<Assignment> rows;
  int declared_n = -1;
  long long declared_m = -1;
  bool first = true;
  while (reader.next(line)) {
    if (first && line.rfind("tree-samples", 0) == 0) {
      first = false;
      std::istringstream header(line);
      std::string kind, version, n_tok, m_tok;
      header >> kind >> version >> n_tok >> m_tok;
      if (version != "v1") reader.fail("unsupported version '" + version + "'");
      declared_n = parse_node_count(n_tok, reader);
      if (m_tok.rfind("m=", 0) != 0) reader.fail("expected m=<count> in header");
      try {
        declared_m = std::stoll(m_tok.substr(2));
      } catch (const std::logic_error&) {
        reader.fail("bad sample count '" + m_tok + "'");
      }
      continue;
    }
    first = false;
    std::istringstream fields(line);
    Assignment row;
    int v = 0;
    while (fields >> v) {
      if (v != 1 && v != -1) reader.fail("sample entries must be 1 or -1");
      row.push_back(static_cast<std::int8_t>(v));
    }
    if (!fields.eof()) reader.fail("malformed sample entry");
    if (declared_n >= 0 && static_cast<int>(row.size()) != declared_n) {
      throw Error(ErrorCode::RaggedRows, "line " + std::to_string(reader.line_no) + " has " +
                                             std::to_string(row.size()) + " entries, header declares " +
                                             std::to_string(declared_n));
    }
    rows.push_back(std::move(row));
  }
  if (declared_m >= 0 && static_cast<long long>(rows.size()) != declared_m) {
    throw Error(ErrorCode::ParseError, "header declares " + std::to_string(declared_m) + " samples, found " +
                                           std::to_string(rows.size()));
  }
  if (rows.empty()) return declared_n > 0 ? SampleMatrix(declared_n, 0) : SampleMatrix();
  return SampleMatrix::from_rows(rows);
}

SampleMatrix load_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return read_samples(in);
}

void save_sample_file(const std::string& path, const SampleMatrix& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  write_samples(out, samples);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace chowliu
