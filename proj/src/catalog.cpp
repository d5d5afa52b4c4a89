#include "flatlie/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "flatlie/errors.hpp"
#include "flatlie/metric_geometry.hpp"

namespace flatlie::catalog {
namespace {

LieAlgebra heisenberg3() { return LieAlgebra::from_brackets(3, {{0, 1, {{2, 1.0}}}}, {"e1", "e2", "e3"}); }

LieAlgebra so3() {
  return LieAlgebra::from_brackets(3, {{0, 1, {{2, 1.0}}}, {1, 2, {{0, 1.0}}}, {0, 2, {{1, -1.0}}}},
                                   {"e1", "e2", "e3"});
}

LieAlgebra aff1() { return LieAlgebra::from_brackets(2, {{0, 1, {{1, 1.0}}}}, {"e1", "e2"}); }

LieAlgebra e2() { return semidirect_flat(1, 2, Eigen::MatrixXd::Constant(1, 1, 1.0), 0); }

LieAlgebra u2() {
  const LieAlgebra s = so3();
  Tensor3 c(4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c(i + 1, j + 1, k + 1) = s.structure(i, j, k);
  return LieAlgebra(std::move(c), {"e0", "e1", "e2", "e3"});
}

LieAlgebra named_algebra(const std::string& name) {
  if (name == "heisenberg3") return heisenberg3();
  if (name == "so3") return so3();
  if (name == "aff1") return aff1();
  if (name == "e2") return e2();
  if (name == "u2") return u2();
  if (name.starts_with("abelian:")) {
    const std::string digits = name.substr(8);
    int n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || n <= 0) {
      throw InputError("bad abelian dimension in '" + name + "'");
    }
    return LieAlgebra::abelian(n);
  }
  if (name.starts_with("direct_sum:")) {
    const std::string rest = name.substr(11);
    const auto plus = rest.find('+');
    if (plus == std::string::npos) throw InputError("direct_sum needs the form direct_sum:<a>+<b>");
    return direct_sum(named_algebra(rest.substr(0, plus)), named_algebra(rest.substr(plus + 1)));
  }
  throw InputError("unknown catalog algebra '" + name + "'");
}

Eigen::MatrixXd normal_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

Eigen::MatrixXd symmetric_from_upper(const Eigen::VectorXd& x, int n) {
  Eigen::MatrixXd g(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = g(j, i) = x(idx++);
  return g;
}

// Residual of the Riemann-Lie identity as a function of the upper triangle
// of the Gram matrix, plus a Frobenius normalisation.
struct RiemannLieResidual {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const LieAlgebra* alg;
  int n;

  int inputs() const { return n * (n + 1) / 2; }
  int values() const { return n * n * n * n + 1; }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    const Eigen::MatrixXd g = symmetric_from_upper(x, n);
    f.resize(values());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
    if (!lu.isInvertible()) {
      f.setConstant(1e3);
      return 0;
    }
    const Eigen::MatrixXd gi = lu.inverse();
    std::vector<Eigen::MatrixXd> adt, a(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
    for (int i = 0; i < n; ++i) adt.push_back(gi * alg->ad_basis(i).transpose() * g);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        a[static_cast<std::size_t>(i)].col(j) =
            0.5 * alg->basis_bracket(i, j) -
            0.5 * (adt[static_cast<std::size_t>(i)].col(j) + adt[static_cast<std::size_t>(j)].col(i));
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Eigen::VectorXd t = -alg->ad_basis(k) * a[static_cast<std::size_t>(i)].col(j) +
                                    alg->ad_basis(i) * a[static_cast<std::size_t>(k)].col(j);
          f.segment(idx, n) = t;
          idx += n;
        }
    f(idx) = g.norm() - 1.0;
    return 0;
  }
};

}  // namespace

Instance named(const std::string& name) {
  LieAlgebra alg = named_algebra(name);
  const int n = alg.dim();
  return Instance{std::move(alg), ScalarProduct::identity(n), std::nullopt, std::nullopt, name, 0};
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
  const Eigen::MatrixXd a = normal_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) *= -1.0;
  }
  return q;
}

ScalarProduct random_metric(int n, std::uint64_t seed, int n_plus, int n_minus) {
  if (n <= 0 || n_plus < 0 || n_minus < 0 || n_plus + n_minus != n) {
    throw InputError("signature (" + std::to_string(n_plus) + "," + std::to_string(n_minus) +
                     ") does not match dimension " + std::to_string(n));
  }
  Rng rng(seed);
  const Eigen::MatrixXd q = random_orthogonal(n, rng);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = (i < n_plus ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
  Eigen::MatrixXd g = q.transpose() * d.asDiagonal() * q;
  g = (0.5 * (g + g.transpose())).eval();
  return ScalarProduct(std::move(g));
}

Eigen::MatrixXd random_omega(int p, Rng& rng) {
  for (;;) {
    const Eigen::MatrixXd x = normal_matrix(p, p, rng);
    Eigen::MatrixXd omega = x - x.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(omega);
    if (svd.singularValues()(p - 1) >= 0.1 * svd.singularValues()(0)) return omega;
  }
}

SymplecticSubspace random_symplectic(int n, int p, std::uint64_t seed, const std::optional<Subspace>& within) {
  if (p < 2 || p % 2 != 0) throw InputError("symplectic dimension must be even and >= 2");
  const int room = within ? within->dim() : n;
  if (p > room) throw InputError("symplectic dimension exceeds the available space");
  Rng rng(seed);
  for (;;) {
    const Eigen::MatrixXd coeffs = normal_matrix(room, p, rng);
    const Eigen::MatrixXd basis = within ? Eigen::MatrixXd(within->basis() * coeffs) : coeffs;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis);
    if (svd.singularValues()(p - 1) < 1e-3 * svd.singularValues()(0)) continue;
    Eigen::MatrixXd omega = random_omega(p, rng);
    return SymplecticSubspace(Subspace(basis), std::move(omega));
  }
}

Instance random_flat(int p, int q, std::uint64_t seed) {
  if (p < 1 || q < 2) {
    throw InputError("random_flat needs p >= 1 and q >= 2 (got p=" + std::to_string(p) + ", q=" + std::to_string(q) +
                     ")");
  }
  Rng rng(seed);
  const int m = q / 2;
  Eigen::MatrixXd freqs(p, m);
  for (int a = 0; a < p; ++a)
    for (int j = 0; j < m; ++j) freqs(a, j) = rng.uniform(-2.0, 2.0);
  LieAlgebra alg = semidirect_flat(p, q, freqs, q % 2);
  const int n = alg.dim();

  std::optional<SymplecticSubspace> symplectic;
  if (p >= 2) {
    const int k = 2 * (1 + rng.index(p / 2));
    const Subspace s_factor(Eigen::MatrixXd::Identity(n, n).leftCols(p));
    symplectic = random_symplectic(n, k, seed ^ 0x9e3779b97f4a7c15ULL, s_factor);
  }
  return Instance{std::move(alg),
                  ScalarProduct::identity(n),
                  std::nullopt,
                  std::move(symplectic),
                  "flat-p" + std::to_string(p) + "-q" + std::to_string(q) + "-seed" + std::to_string(seed),
                  seed};
}

Bivector random_bivector(int n, std::uint64_t seed, const std::optional<Subspace>& support) {
  if (n <= 0) throw InputError("bivector dimension must be positive");
  Rng rng(seed);
  if (support) {
    if (support->ambient_dim() != n) throw InputError("support does not live in R^n");
    const int p = support->dim();
    if (p % 2 != 0) throw InputError("bivector support must be even-dimensional");
    if (p == 0) return Bivector::zero(n);
    return subspace_form_to_r(SymplecticSubspace(*support, random_omega(p, rng)));
  }
  if (n == 1) return Bivector::zero(1);
  const Eigen::MatrixXd x = normal_matrix(n, n, rng);
  return Bivector(x - x.transpose());
}

LieAlgebra random_algebra(int n, std::uint64_t seed) {
  if (n <= 0) throw InputError("algebra dimension must be positive");
  Rng rng(seed);
  const std::vector<std::string> blocks = {"so3", "heisenberg3", "aff1", "e2", "abelian:1"};
  std::optional<LieAlgebra> alg;
  int remaining = n;
  while (remaining > 0) {
    std::vector<std::string> fitting;
    for (const auto& b : blocks) {
      if (named_algebra(b).dim() <= remaining) fitting.push_back(b);
    }
    LieAlgebra block = named_algebra(fitting[static_cast<std::size_t>(rng.index(static_cast<int>(fitting.size())))]);
    remaining -= block.dim();
    alg = alg ? direct_sum(*alg, block) : block;
  }
  const Eigen::MatrixXd q = random_orthogonal(n, rng);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = rng.uniform(0.5, 2.0);
  return change_basis(*alg, q * d.asDiagonal());
}

MetricSearchResult search_metric(const LieAlgebra& alg, int n_plus, int n_minus, std::uint64_t seed, int starts,
                                 double target) {
  const int n = alg.dim();
  MetricSearchResult result;
  result.best_defect = std::numeric_limits<double>::infinity();
  RiemannLieResidual residual{&alg, n};
  for (int s = 0; s < starts; ++s) {
    ++result.starts;
    const ScalarProduct start = random_metric(n, seed + static_cast<std::uint64_t>(s), n_plus, n_minus);
    // The start already has the right signature, so it bounds best_defect even when LM degenerates.
    result.best_defect = std::min(result.best_defect, bracket_identity_defect(alg, levi_civita(alg, start)));
    Eigen::VectorXd x(residual.inputs());
    const Eigen::MatrixXd g0 = start.gram() / start.gram().norm();
    int idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) x(idx++) = g0(i, j);

    Eigen::NumericalDiff<RiemannLieResidual> diff(residual);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<RiemannLieResidual>, double> lm(diff);
    lm.parameters.ftol = 1e-15;
    lm.parameters.xtol = 1e-15;
    lm.parameters.maxfev = 4000;
    lm.minimize(x);

    try {
      const ScalarProduct candidate(symmetric_from_upper(x, n));
      if (candidate.n_plus() != n_plus || candidate.n_minus() != n_minus) continue;
      const auto& ev = candidate.eigenvalues();
      if (ev.cwiseAbs().minCoeff() < 1e-3 * ev.cwiseAbs().maxCoeff()) continue;
      const double defect = bracket_identity_defect(alg, levi_civita(alg, candidate));
      if (defect < result.best_defect) result.best_defect = defect;
      if (defect <= target && !result.found) {
        result.found = true;
        result.witness = candidate.gram();
      }
    } catch (const InputError&) {
      continue;
    } catch (const NumericalError&) {
      continue;
    }
    if (result.found) break;
  }
  return result;
}

}  // namespace flatlie::catalog
