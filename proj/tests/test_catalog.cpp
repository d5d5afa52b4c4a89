#include "flatlie/catalog.hpp"
#include "flatlie/errors.hpp"
#include "flatlie/metric_geometry.hpp"
#include "test_util.hpp"

using namespace flatlie;
using testutil::max_abs;

TEST(Named, Abelian) {
  const auto a = catalog::named("abelian:4");
  EXPECT_EQ(a.alg.dim(), 4);
  EXPECT_EQ(a.alg.max_abs_constant(), 0.0);
  EXPECT_EQ(a.metric->gram(), Eigen::MatrixXd::Identity(4, 4));
}

TEST(Named, So3IsCyclic) {
  const auto s = catalog::named("so3").alg;
  EXPECT_EQ(s.structure(0, 1, 2), 1.0);
  EXPECT_EQ(s.structure(1, 2, 0), 1.0);
  EXPECT_EQ(s.structure(2, 0, 1), 1.0);
  EXPECT_EQ(jacobi_defect(s), 0.0);
}

TEST(Named, U2IsSo3PlusCenter) {
  const auto u = catalog::named("u2").alg;
  EXPECT_EQ(u.dim(), 4);
  EXPECT_TRUE(same_subspace(center(u), Subspace(testutil::e(4, 0))));
  EXPECT_EQ(u.structure(1, 2, 3), 1.0);
  EXPECT_EQ(u.structure(2, 3, 1), 1.0);
  EXPECT_EQ(u.structure(3, 1, 2), 1.0);
}

TEST(Named, DirectSum) {
  const auto d = catalog::named("direct_sum:so3+aff1").alg;
  EXPECT_EQ(d.dim(), 5);
  EXPECT_EQ(d.structure(3, 4, 4), 1.0);
  EXPECT_EQ(d.structure(0, 3, 4), 0.0);
}

TEST(Named, UnknownNameThrows) {
  EXPECT_THROW(catalog::named("sl2"), InputError);
  EXPECT_THROW(catalog::named("abelian:0"), InputError);
  EXPECT_THROW(catalog::named("abelian:x"), InputError);
  EXPECT_THROW(catalog::named("direct_sum:so3"), InputError);
}

TEST(Named, AllPassJacobi) {
  for (const char* name : {"abelian:3", "heisenberg3", "so3", "aff1", "e2", "u2", "direct_sum:u2+heisenberg3"}) {
    EXPECT_LE(jacobi_defect(catalog::named(name).alg), kDefaultTol) << name;
  }
}

TEST(RandomMetric, Signatures) {
  const auto pd = catalog::random_metric(3, 1, 3, 0);
  EXPECT_TRUE(pd.riemannian());
  const auto lor = catalog::random_metric(3, 1, 2, 1);
  EXPECT_EQ(lor.n_plus(), 2);
  EXPECT_EQ(lor.n_minus(), 1);
  const auto nd = catalog::random_metric(2, 1, 0, 2);
  EXPECT_EQ(nd.n_minus(), 2);
  EXPECT_THROW(catalog::random_metric(3, 1, 2, 2), InputError);
}

TEST(RandomMetric, EigenvalueMagnitudesInRange) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = catalog::random_metric(5, seed, 3, 2);
    const Eigen::VectorXd ev = g.eigenvalues().cwiseAbs();
    EXPECT_GE(ev.minCoeff(), 0.5 - 1e-12);
    EXPECT_LE(ev.maxCoeff(), 2.0 + 1e-12);
  }
}

TEST(RandomOrthogonal, IsOrthogonal) {
  Rng rng(3);
  const auto q = catalog::random_orthogonal(5, rng);
  EXPECT_MAT_NEAR(Eigen::MatrixXd(q.transpose() * q), Eigen::MatrixXd::Identity(5, 5), 1e-14);
}

TEST(RandomBivector, Examples) {
  const auto r = catalog::random_bivector(3, 4);
  EXPECT_EQ(r.matrix(), -r.matrix().transpose());
  EXPECT_GT(max_abs(r.matrix()), 0.0);

  const Subspace support(testutil::mat({{1, 0}, {1, 1}, {0, 2}, {0, 0}}));
  const auto rs = catalog::random_bivector(4, 4, support);
  EXPECT_TRUE(same_subspace(Subspace::span(rs.matrix()), support));

  EXPECT_TRUE(catalog::random_bivector(1, 4).is_zero());

  EXPECT_THROW(catalog::random_bivector(3, 4, Subspace(testutil::e(3, 0))), InputError);
}

TEST(RandomFlat, Examples) {
  const auto a = catalog::random_flat(1, 2, 7);
  EXPECT_EQ(a.alg.dim(), 3);
  const auto t = classify(a.alg, *a.metric);
  EXPECT_TRUE(t.riemann_lie.holds && t.flat.holds && t.milnor.holds && t.consistent);

  const auto b = catalog::random_flat(2, 4, 1);
  EXPECT_EQ(b.alg.dim(), 6);
  ASSERT_TRUE(b.symplectic.has_value());
  EXPECT_EQ(b.symplectic->dim(), 2);

  EXPECT_THROW(catalog::random_flat(1, 0, 1), InputError);
  EXPECT_THROW(catalog::random_flat(0, 1, 1), InputError);
}

TEST(RandomFlat, SymplecticPartLivesInTheRotatingFactor) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = catalog::random_flat(3, 4, seed);
    ASSERT_TRUE(inst.symplectic);
    EXPECT_TRUE(orthogonal_subalgebra(inst.alg, *inst.metric).contains(inst.symplectic->subspace(), 1e-9));
  }
}

TEST(Reproducibility, SameSeedSameBits) {
  const auto a = catalog::random_flat(3, 5, 42);
  const auto b = catalog::random_flat(3, 5, 42);
  EXPECT_TRUE(a.alg.constants() == b.alg.constants());
  EXPECT_EQ(a.symplectic->subspace().basis(), b.symplectic->subspace().basis());
  EXPECT_EQ(a.symplectic->omega(), b.symplectic->omega());
  EXPECT_EQ(catalog::random_metric(4, 9, 3, 1).gram(), catalog::random_metric(4, 9, 3, 1).gram());
  EXPECT_EQ(catalog::random_bivector(5, 9).matrix(), catalog::random_bivector(5, 9).matrix());
  EXPECT_TRUE(catalog::random_algebra(5, 9).constants() == catalog::random_algebra(5, 9).constants());
  EXPECT_FALSE(catalog::random_flat(3, 5, 43).alg.constants() == a.alg.constants());
}

// The standard fixes the 10000th output of a default-seeded mt19937_64.
TEST(Reproducibility, EngineMatchesTheStandard) {
  Rng rng(5489);
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng.next();
  EXPECT_EQ(x, 9981545732273789042ULL);
}

TEST(Reproducibility, UniformIsTopBitsOfTheEngine) {
  Rng a(1);
  Rng b(1);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, static_cast<double>(b.next() >> 11) * 0x1.0p-53);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(RandomFlat, EveryInstanceIsRiemannLie) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = catalog::random_flat(1 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 5), seed);
    const auto t = classify(inst.alg, *inst.metric);
    EXPECT_TRUE(t.riemann_lie.holds && t.parallel_dtheta.holds && t.flat.holds && t.milnor.holds && t.consistent)
        << inst.label;
  }
}

TEST(SearchMetric, FindsALorentzianWitnessOnHeisenberg) {
  const auto alg = catalog::named("heisenberg3").alg;
  const auto res = catalog::search_metric(alg, 2, 1, 1, 20);
  ASSERT_TRUE(res.found);
  const ScalarProduct g(*res.witness);
  EXPECT_EQ(g.n_plus(), 2);
  EXPECT_EQ(g.n_minus(), 1);
  EXPECT_LE(riemann_lie_defect(alg, g), 1e-8);
}

TEST(SearchMetric, NoRiemannianWitnessOnHeisenberg) {
  const auto res = catalog::search_metric(catalog::named("heisenberg3").alg, 3, 0, 1, 10);
  EXPECT_FALSE(res.found);
  EXPECT_GT(res.best_defect, 1e-3);
}

// Metric with <e3,e3> = 0 kills the defect exactly.
TEST(SearchMetric, KnownLorentzianWitness) {
  const ScalarProduct g(testutil::mat({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
  EXPECT_EQ(g.n_minus(), 1);
  EXPECT_LE(riemann_lie_defect(catalog::named("heisenberg3").alg, g), 1e-15);
}
