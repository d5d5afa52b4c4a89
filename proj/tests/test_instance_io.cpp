#include <charconv>
#include <cmath>
#include <limits>

#include "flatlie/catalog.hpp"
#include "flatlie/errors.hpp"
#include "flatlie/instance_io.hpp"
#include "test_util.hpp"

using namespace flatlie;

namespace {

int parse_error_line(const std::string& text) {
  try {
    io::parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Parse, FullFile) {
  const auto f = io::parse(
      "# comment line\n"
      "flatlie-instance 1\n"
      "name u2-torus\n"
      "dim 4\n"
      "bracket 1 2 3:1\n"
      "bracket 1 3 2:-1   # trailing comment\n"
      "bracket 2 3 1:1\n"
      "metric\n"
      "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n"
      "bivector 0 3 1\n"
      "subspace 2\n"
      "1 0\n0 0\n0 0\n0 1\n"
      "0 1\n-1 0\n");
  EXPECT_EQ(f.name, "u2-torus");
  EXPECT_EQ(f.dim, 4);
  EXPECT_EQ(f.brackets.size(), 3u);
  ASSERT_TRUE(f.metric);
  EXPECT_EQ(*f.metric, Eigen::MatrixXd::Identity(4, 4));
  ASSERT_TRUE(f.bivector);
  EXPECT_EQ(f.bivector->size(), 1u);
  ASSERT_TRUE(f.subspace);
  EXPECT_EQ(f.subspace->omega(0, 1), 1.0);

  const auto inst = io::to_instance(f);
  EXPECT_TRUE(inst.alg.constants() == catalog::named("u2").alg.constants());
}

TEST(Parse, ErrorsCarryLineNumbers) {
  EXPECT_EQ(parse_error_line("flatlie-instance 2\n"), 1);
  EXPECT_EQ(parse_error_line("hello\n"), 1);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 3\nbracket 1 0 2:1\n"), 3);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 3\nbracket 0 1 3:1\n"), 3);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 3\nbracket 0 1 2\n"), 3);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 3\nbracket 0 1 2:x\n"), 3);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 2\nmetric\n1 0\n0\n"), 5);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 2\nmetric\n1 0\n"), 4);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 2\nbivector 1 1 2\n"), 3);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\nbracket 0 1 1:1\n"), 2);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 2\nwhatever\n"), 3);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\nname a\n"), 2);
  EXPECT_EQ(parse_error_line("flatlie-instance 1\ndim 0\n"), 2);
}

TEST(Parse, MissingFileIsAParseError) {
  EXPECT_THROW(io::read_file("/nonexistent/instance.txt"), ParseError);
}

TEST(ToInstance, InvariantFailuresAreInputErrors) {
  EXPECT_THROW(io::to_instance(io::parse("flatlie-instance 1\ndim 2\nmetric\n1 2\n3 1\n")), InputError);
  EXPECT_THROW(io::to_instance(io::parse("flatlie-instance 1\ndim 2\nsubspace 2\n1 0\n0 1\n0 0\n0 0\n")),
               InputError);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(io::format_number(1.0), "1");
  EXPECT_EQ(io::format_number(-0.5), "-0.5");
  EXPECT_EQ(io::format_number(0.1), "0.1");
  EXPECT_EQ(io::format_number(-0.0), "0");
  for (double x : {1.0 / 3.0, std::sqrt(2.0), 1e-300, -6.02214076e23, std::numeric_limits<double>::denorm_min()}) {
    const std::string s = io::format_number(x);
    double y = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), y);
    EXPECT_EQ(y, x) << s;
  }
}

TEST(Serialize, CanonicalOrderAndMerging) {
  const auto f = io::parse(
      "flatlie-instance 1\ndim 3\n"
      "bivector 1 2 5\nbivector 0 1 0\n"
      "bracket 1 2 0:1\nbracket 0 1 2:1\nbracket 0 1 2:1 0:0\n");
  EXPECT_EQ(io::serialize(f),
            "flatlie-instance 1\n"
            "dim 3\n"
            "bracket 0 1 2:2\n"
            "bracket 1 2 0:1\n"
            "bivector 1 2 5\n");
}

TEST(Serialize, GenerateParseSerializeIsByteIdentical) {
  std::vector<catalog::Instance> insts;
  for (const char* name : {"so3", "u2", "heisenberg3", "direct_sum:e2+aff1"}) insts.push_back(catalog::named(name));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    insts.push_back(catalog::random_flat(1 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 4), seed));
    auto m = catalog::named("heisenberg3");
    m.metric = catalog::random_metric(3, seed, 2, 1);
    m.bivector = catalog::random_bivector(3, seed);
    insts.push_back(m);
  }
  for (const auto& inst : insts) {
    const std::string text = io::serialize(io::to_file(inst));
    EXPECT_EQ(io::serialize(io::parse(text)), text) << inst.label;
    const auto back = io::to_instance(io::parse(text));
    EXPECT_TRUE(back.alg.constants() == inst.alg.constants()) << inst.label;
    if (inst.metric) EXPECT_EQ(back.metric->gram(), inst.metric->gram());
    if (inst.bivector) EXPECT_EQ(back.bivector->matrix(), inst.bivector->matrix());
    if (inst.symplectic) EXPECT_EQ(back.symplectic->omega(), inst.symplectic->omega());
  }
}
