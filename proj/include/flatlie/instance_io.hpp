#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "flatlie/catalog.hpp"
#include "flatlie/lie_algebra.hpp"

namespace flatlie::io {

/// Raw contents of an instance file, before any mathematical validation.
///
/// Text format, one instance per file, '#' starts a comment:
///
///     flatlie-instance 1
///     name e2
///     dim 3
///     bracket 0 1 2:1            # [e_0, e_1] = 1 e_2, requires i < j
///     bracket 0 2 1:-1
///     metric                     # followed by dim rows of dim numbers
///     1 0 0
///     0 1 0
///     0 0 1
///     bivector 0 1 1             # r(0,1) = 1, requires i < j
///     subspace 2                 # followed by dim basis rows of 2 numbers,
///     ...                        # then 2 omega rows of 2 numbers
///
/// Numbers are written in shortest round-trip form.
struct InstanceFile {
  std::string name;
  int dim = 0;
  std::vector<BracketEntry> brackets;
  std::optional<Eigen::MatrixXd> metric;
  std::optional<std::vector<std::tuple<int, int, double>>> bivector;
  struct SubspaceBlock {
    Eigen::MatrixXd basis;
    Eigen::MatrixXd omega;
  };
  std::optional<SubspaceBlock> subspace;
};

/// Throws ParseError on malformed text (bad syntax, out-of-range or
/// misordered indices, ragged arrays).
InstanceFile parse(std::istream& in);
InstanceFile parse(const std::string& text);
/// Throws ParseError if the file cannot be read (line 0).
InstanceFile read_file(const std::filesystem::path& path);

/// Canonical text: sections in fixed order, brackets and bivector entries
/// sorted, zero coefficients dropped.
std::string serialize(const InstanceFile& file);

InstanceFile to_file(const catalog::Instance& inst);

/// Builds validated values; throws InputError when a section violates its
/// invariants.
catalog::Instance to_instance(const InstanceFile& file, double tol = kDefaultTol);

/// Shortest decimal text that parses back to exactly x.
std::string format_number(double x);

}  // namespace flatlie::io
