#include "flatlie/instance_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "flatlie/errors.hpp"

namespace flatlie::io {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next non-blank line with comments stripped, split into tokens.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  int line() const { return line_no_; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_no_); }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

double parse_double(const std::string& s, const LineReader& r) {
  double x = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s[0] == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last) r.fail("expected a number, got '" + s + "'");
  return x;
}

int parse_int(const std::string& s, const LineReader& r) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) r.fail("expected an integer, got '" + s + "'");
  return x;
}

int parse_index(const std::string& s, int dim, const LineReader& r) {
  const int i = parse_int(s, r);
  if (i < 0 || i >= dim) r.fail("index " + s + " out of range for dim " + std::to_string(dim));
  return i;
}

Eigen::MatrixXd read_rows(LineReader& r, int rows, int cols, const std::string& what) {
  Eigen::MatrixXd m(rows, cols);
  std::vector<std::string> tokens;
  for (int i = 0; i < rows; ++i) {
    if (!r.next(tokens)) r.fail("unexpected end of file inside " + what);
    if (static_cast<int>(tokens.size()) != cols) {
      r.fail(what + " row " + std::to_string(i) + " has " + std::to_string(tokens.size()) + " entries, expected " +
             std::to_string(cols));
    }
    for (int j = 0; j < cols; ++j) m(i, j) = parse_double(tokens[static_cast<std::size_t>(j)], r);
  }
  return m;
}

void write_rows(std::ostream& os, const Eigen::MatrixXd& m) {
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? " " : "") << format_number(m(i, j));
    os << '\n';
  }
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

InstanceFile parse(std::istream& in) {
  LineReader r(in);
  std::vector<std::string> t;
  if (!r.next(t) || t.size() != 2 || t[0] != "flatlie-instance") r.fail("missing 'flatlie-instance 1' header");
  if (t[1] != "1") r.fail("unsupported format version " + t[1]);

  InstanceFile f;
  bool have_dim = false;
  auto need_dim = [&] {
    if (!have_dim) r.fail("'dim' must come before '" + t[0] + "'");
  };
  while (r.next(t)) {
    const std::string& key = t[0];
    if (key == "name") {
      if (t.size() != 2) r.fail("name must be a single token");
      f.name = t[1];
    } else if (key == "dim") {
      if (have_dim) r.fail("duplicate 'dim'");
      if (t.size() != 2) r.fail("usage: dim <n>");
      f.dim = parse_int(t[1], r);
      if (f.dim <= 0) r.fail("dim must be positive");
      have_dim = true;
    } else if (key == "bracket") {
      need_dim();
      if (t.size() < 3) r.fail("usage: bracket <i> <j> <k>:<c> ...");
      BracketEntry b;
      b.i = parse_index(t[1], f.dim, r);
      b.j = parse_index(t[2], f.dim, r);
      if (b.i >= b.j) r.fail("bracket needs i < j");
      for (std::size_t a = 3; a < t.size(); ++a) {
        const auto colon = t[a].find(':');
        if (colon == std::string::npos) r.fail("bracket coefficient must look like k:c, got '" + t[a] + "'");
        b.coeffs.emplace_back(parse_index(t[a].substr(0, colon), f.dim, r), parse_double(t[a].substr(colon + 1), r));
      }
      f.brackets.push_back(std::move(b));
    } else if (key == "metric") {
      need_dim();
      if (t.size() != 1) r.fail("'metric' takes no arguments");
      if (f.metric) r.fail("duplicate 'metric'");
      f.metric = read_rows(r, f.dim, f.dim, "metric");
    } else if (key == "bivector") {
      need_dim();
      if (t.size() != 4) r.fail("usage: bivector <i> <j> <v>");
      const int i = parse_index(t[1], f.dim, r);
      const int j = parse_index(t[2], f.dim, r);
      if (i >= j) r.fail("bivector needs i < j");
      if (!f.bivector) f.bivector.emplace();
      f.bivector->emplace_back(i, j, parse_double(t[3], r));
    } else if (key == "subspace") {
      need_dim();
      if (t.size() != 2) r.fail("usage: subspace <p>");
      if (f.subspace) r.fail("duplicate 'subspace'");
      const int p = parse_int(t[1], r);
      if (p < 0 || p > f.dim) r.fail("subspace dimension out of range");
      InstanceFile::SubspaceBlock block;
      block.basis = read_rows(r, f.dim, p, "subspace basis");
      block.omega = read_rows(r, p, p, "subspace omega");
      f.subspace = std::move(block);
    } else {
      r.fail("unknown section '" + key + "'");
    }
  }
  if (!have_dim) r.fail("missing 'dim'");
  return f;
}

InstanceFile parse(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

InstanceFile read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return parse(in);
}

std::string serialize(const InstanceFile& f) {
  std::ostringstream os;
  os << "flatlie-instance 1\n";
  if (!f.name.empty()) os << "name " << f.name << '\n';
  os << "dim " << f.dim << '\n';

  std::map<std::pair<int, int>, std::map<int, double>> merged;
  for (const auto& b : f.brackets)
    for (const auto& [k, c] : b.coeffs) merged[{b.i, b.j}][k] += c;
  for (const auto& [ij, coeffs] : merged) {
    std::string line = "bracket " + std::to_string(ij.first) + " " + std::to_string(ij.second);
    bool any = false;
    for (const auto& [k, c] : coeffs) {
      if (c == 0.0) continue;
      line += " " + std::to_string(k) + ":" + format_number(c);
      any = true;
    }
    if (any) os << line << '\n';
  }
  if (f.metric) {
    os << "metric\n";
    write_rows(os, *f.metric);
  }
  if (f.bivector) {
    auto entries = *f.bivector;
    std::sort(entries.begin(), entries.end());
    for (const auto& [i, j, v] : entries) {
      if (v != 0.0) os << "bivector " << i << ' ' << j << ' ' << format_number(v) << '\n';
    }
  }
  if (f.subspace) {
    os << "subspace " << f.subspace->basis.cols() << '\n';
    write_rows(os, f.subspace->basis);
    write_rows(os, f.subspace->omega);
  }
  return os.str();
}

InstanceFile to_file(const catalog::Instance& inst) {
  InstanceFile f;
  f.name = inst.label;
  f.dim = inst.alg.dim();
  const int n = f.dim;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      BracketEntry b{i, j, {}};
      for (int k = 0; k < n; ++k) {
        if (inst.alg.structure(i, j, k) != 0.0) b.coeffs.emplace_back(k, inst.alg.structure(i, j, k));
      }
      if (!b.coeffs.empty()) f.brackets.push_back(std::move(b));
    }
  }
  if (inst.metric) f.metric = inst.metric->gram();
  if (inst.bivector) {
    f.bivector.emplace();
    const auto& r = inst.bivector->matrix();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (r(i, j) != 0.0) f.bivector->emplace_back(i, j, r(i, j));
  }
  if (inst.symplectic) {
    f.subspace = InstanceFile::SubspaceBlock{inst.symplectic->subspace().basis(), inst.symplectic->omega()};
  }
  return f;
}

catalog::Instance to_instance(const InstanceFile& f, double tol) {
  catalog::Instance inst{LieAlgebra::from_brackets(f.dim, f.brackets), std::nullopt, std::nullopt, std::nullopt,
                         f.name, 0};
  if (f.metric) inst.metric.emplace(*f.metric, tol);
  if (f.bivector) inst.bivector = Bivector::from_entries(f.dim, *f.bivector);
  if (f.subspace) inst.symplectic.emplace(Subspace(f.subspace->basis, tol), f.subspace->omega, tol);
  return inst;
}

}  // namespace flatlie::io
