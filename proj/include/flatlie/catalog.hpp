#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "flatlie/lie_algebra.hpp"
#include "flatlie/poisson.hpp"
#include "flatlie/rng.hpp"
#include "flatlie/scalar_product.hpp"

namespace flatlie::catalog {

struct Instance {
  LieAlgebra alg;
  std::optional<ScalarProduct> metric;
  std::optional<Bivector> bivector;
  std::optional<SymplecticSubspace> symplectic;
  std::string label;
  std::uint64_t seed = 0;
};

/// Named algebras with the identity metric:
///   abelian:<n>, heisenberg3 ([e1,e2]=e3), so3 (cyclic), aff1 ([e1,e2]=e2),
///   e2 ([s,u1]=u2, [s,u2]=-u1), u2 (e0 central + cyclic so3 on e1..e3),
///   direct_sum:<a>+<b>.
/// Throws InputError for an unknown name.
Instance named(const std::string& name);

/// Haar-like random orthogonal matrix: QR of a standard-normal matrix with
/// the signs of R's diagonal folded into Q.
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

/// gram = Q^T diag(+-d_i) Q, d_i uniform in [0.5, 2], the first n_plus
/// signs positive.
ScalarProduct random_metric(int n, std::uint64_t seed, int n_plus, int n_minus);

/// semidirect_flat with p rotating directions, q = 2m + (q mod 2) abelian
/// directions, frequencies uniform in [-2, 2], identity metric. When p >= 2
/// also carries a random even-dimensional symplectic subspace of span(s_a).
Instance random_flat(int p, int q, std::uint64_t seed);

/// Random antisymmetric n x n matrix; with a support, the bivector of a
/// random nondegenerate 2-form on it (so Im r equals the support).
Bivector random_bivector(int n, std::uint64_t seed, const std::optional<Subspace>& support = std::nullopt);

/// Random p-dimensional symplectic subspace, optionally inside `within`.
SymplecticSubspace random_symplectic(int n, int p, std::uint64_t seed,
                                     const std::optional<Subspace>& within = std::nullopt);

/// Random nondegenerate p x p 2-form with singular values bounded away from zero.
Eigen::MatrixXd random_omega(int p, Rng& rng);

/// Random valid Lie algebra of dimension n: a direct sum of small catalog
/// blocks, expressed in a random well-conditioned basis.
LieAlgebra random_algebra(int n, std::uint64_t seed);

struct MetricSearchResult {
  bool found = false;
  double best_defect = 0.0;
  std::optional<Eigen::MatrixXd> witness;
  int starts = 0;
};

/// Multi-start local search for a metric of the given signature with
/// riemann_lie_defect <= target. Starts are random_metric draws; each is
/// refined by Levenberg-Marquardt on the Riemann-Lie residual tensor with a
/// unit Frobenius-norm constraint. Nearly degenerate results
/// (min|eig| < 1e-3 max|eig|) and results that change signature are discarded.
MetricSearchResult search_metric(const LieAlgebra& alg, int n_plus, int n_minus, std::uint64_t seed, int starts,
                                 double target = 1e-8);

}  // namespace flatlie::catalog
