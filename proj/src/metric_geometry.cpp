#include "flatlie/metric_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatlie/errors.hpp"

namespace flatlie {
namespace {

void check_dims(const LieAlgebra& alg, const ScalarProduct& metric) {
  if (alg.dim() != metric.dim()) {
    throw InputError("metric dimension " + std::to_string(metric.dim()) + " does not match algebra dimension " +
                     std::to_string(alg.dim()));
  }
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

Tensor3 stack_columns_to_tensor(const std::vector<Eigen::MatrixXd>& ops) {
  const int n = static_cast<int>(ops.size());
  Tensor3 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) t(i, j, k) = ops[static_cast<std::size_t>(i)](k, j);
  return t;
}

}  // namespace

Connection::Connection(Tensor3 a) : a_(std::move(a)) {
  const int n = a_.dim();
  ops_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) m(k, j) = a_(i, j, k);
    ops_.push_back(std::move(m));
  }
}

Eigen::MatrixXd Connection::op(const Eigen::VectorXd& u) const {
  if (u.size() != dim()) throw InputError("vector dimension does not match connection");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim(), dim());
  for (int i = 0; i < dim(); ++i) {
    if (u(i) != 0.0) m += u(i) * ops_[static_cast<std::size_t>(i)];
  }
  return m;
}

double metric_scale(const LieAlgebra& alg, const ScalarProduct& metric) {
  return alg.max_abs_constant() * metric.gram().cwiseAbs().maxCoeff();
}

Eigen::MatrixXd metric_adjoint(const ScalarProduct& metric, const Eigen::MatrixXd& m) {
  return metric.dual_gram() * m.transpose() * metric.gram();
}

Eigen::MatrixXd adjoint_ad(const LieAlgebra& alg, const ScalarProduct& metric, const Eigen::VectorXd& u) {
  check_dims(alg, metric);
  return metric_adjoint(metric, ad_matrix(alg, u));
}

Connection levi_civita_koszul(const LieAlgebra& alg, const ScalarProduct& metric) {
  check_dims(alg, metric);
  const int n = alg.dim();
  const auto& g = metric.gram();
  std::vector<Eigen::MatrixXd> ops(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd rhs = g * alg.basis_bracket(i, j);
      for (int k = 0; k < n; ++k) {
        rhs(k) += alg.basis_bracket(k, i).dot(g.col(j)) + alg.basis_bracket(k, j).dot(g.col(i));
      }
      ops[static_cast<std::size_t>(i)].col(j) = 0.5 * (metric.dual_gram() * rhs);
    }
  }
  return Connection(stack_columns_to_tensor(ops));
}

Connection levi_civita(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  check_dims(alg, metric);
  const int n = alg.dim();
  std::vector<Eigen::MatrixXd> adt;
  adt.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) adt.push_back(metric_adjoint(metric, alg.ad_basis(i)));

  std::vector<Eigen::MatrixXd> ops(static_cast<std::size_t>(n), Eigen::MatrixXd(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ops[static_cast<std::size_t>(i)].col(j) =
          0.5 * alg.basis_bracket(i, j) -
          0.5 * (adt[static_cast<std::size_t>(i)].col(j) + adt[static_cast<std::size_t>(j)].col(i));
    }
  }
  Connection a(stack_columns_to_tensor(ops));

  const double disagreement = max_abs_diff(a.tensor(), levi_civita_koszul(alg, metric).tensor());
  if (disagreement > verdict_threshold(tol, metric_scale(alg, metric))) {
    throw NumericalError("Levi-Civita connection: closed form and Koszul solve differ by " +
                         fmt_double(disagreement));
  }
  return a;
}

ConnectionDefects connection_defects(const LieAlgebra& alg, const ScalarProduct& metric, const Connection& a) {
  check_dims(alg, metric);
  const int n = alg.dim();
  ConnectionDefects d;
  for (int i = 0; i < n; ++i) {
    const auto& ai = a.basis_operator(i);
    d.skew_adjoint =
        std::max(d.skew_adjoint, (metric.gram() * ai + ai.transpose() * metric.gram()).cwiseAbs().maxCoeff());
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd t = ai.col(j) - a.basis_operator(j).col(i) - alg.basis_bracket(i, j);
      d.torsion = std::max(d.torsion, t.cwiseAbs().maxCoeff());
    }
  }
  return d;
}

Subspace orthogonal_subalgebra(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  check_dims(alg, metric);
  const int n = alg.dim();
  Eigen::MatrixXd stacked(n * n, n);
  for (int i = 0; i < n; ++i) {
    stacked.col(i) = (alg.ad_basis(i) + metric_adjoint(metric, alg.ad_basis(i))).reshaped();
  }
  return Subspace::kernel(stacked, tol);
}

Subspace orthogonal_complement(const Subspace& s, const ScalarProduct& metric, double tol) {
  if (s.ambient_dim() != metric.dim()) throw InputError("subspace and metric dimensions differ");
  if (s.dim() == 0) return Subspace::full(metric.dim());
  return Subspace::kernel((metric.gram() * s.orthonormal_basis()).transpose(), tol);
}

double bracket_identity_defect(const LieAlgebra& alg, const Connection& a) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        // [A_i e_j, e_k] + [e_i, A_k e_j]
        const Eigen::VectorXd t =
            -alg.ad_basis(k) * a.basis_operator(i).col(j) + alg.ad_basis(i) * a.basis_operator(k).col(j);
        worst = std::max(worst, t.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double triple_bracket_defect(const LieAlgebra& alg, const Connection& a) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        // [e_i,[e_j,e_k]] - [A_i e_j, e_k] - [e_j, A_i e_k]
        const Eigen::VectorXd t = alg.ad_basis(i) * alg.basis_bracket(j, k) +
                                  alg.ad_basis(k) * a.basis_operator(i).col(j) -
                                  alg.ad_basis(j) * a.basis_operator(i).col(k);
        worst = std::max(worst, t.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

double riemann_lie_defect(const LieAlgebra& alg, const Connection& a, double threshold) {
  const double d8 = bracket_identity_defect(alg, a);
  const double d9 = triple_bracket_defect(alg, a);
  if (std::abs(d8 - d9) > threshold) {
    throw NumericalError("Riemann-Lie defect: the two equivalent forms disagree (" + fmt_double(d8) + " vs " +
                         fmt_double(d9) + "); is the bracket a Lie bracket?");
  }
  return d8;
}

double riemann_lie_defect(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  return riemann_lie_defect(alg, levi_civita(alg, metric, tol), verdict_threshold(tol, metric_scale(alg, metric)));
}

double parallel_dtheta_defect(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  // Ad_g is invertible, so the identity fiber decides vanishing everywhere.
  return triple_bracket_defect(alg, levi_civita(alg, metric, tol));
}

double curvature_defect(const LieAlgebra& alg, const Connection& a) {
  const int n = alg.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::MatrixXd r = a.op(alg.basis_bracket(i, j)) -
                                (a.basis_operator(i) * a.basis_operator(j) -
                                 a.basis_operator(j) * a.basis_operator(i));
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double curvature_defect(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  return curvature_defect(alg, levi_civita(alg, metric, tol));
}

Eigen::MatrixXd d_operator(const LieAlgebra& alg, const Connection& a, const Eigen::VectorXd& u) {
  return ad_matrix(alg, u) - a.op(u);
}

Eigen::MatrixXd d_operator(const LieAlgebra& alg, const ScalarProduct& metric, const Eigen::VectorXd& u,
                           double tol) {
  return d_operator(alg, levi_civita(alg, metric, tol), u);
}

Subspace derived_perp(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  check_dims(alg, metric);
  const int n = alg.dim();
  Eigen::MatrixXd stacked(n * n, n);
  for (int i = 0; i < n; ++i) stacked.middleRows(i * n, n) = metric_adjoint(metric, alg.ad_basis(i));
  Subspace perp = Subspace::kernel(stacked, tol);

  const Subspace via_complement = orthogonal_complement(derived_algebra(alg, tol), metric, tol);
  if (!same_subspace(perp, via_complement, tol)) {
    throw NumericalError("[g,g]^perp: kernel intersection and orthogonal complement disagree");
  }

  const Connection a = levi_civita(alg, metric, tol);
  Eigen::MatrixXd d_stacked(n * n, n);
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd d = d_operator(alg, a, Eigen::VectorXd::Unit(n, i));
    d_stacked.col(i) = (metric_adjoint(metric, d) - d).reshaped();
  }
  if (!same_subspace(perp, Subspace::kernel(d_stacked, tol), tol)) {
    throw NumericalError("[g,g]^perp: kernel intersection and {u : D_u^t = D_u} disagree");
  }
  return perp;
}

MilnorResult milnor_decomposition(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  check_dims(alg, metric);
  const int n = alg.dim();
  const double thr = verdict_threshold(tol, metric_scale(alg, metric));
  Subspace s = orthogonal_subalgebra(alg, metric, tol);
  Subspace u = orthogonal_complement(s, metric, tol);

  const double s_abelian = abelian_defect(alg, s);

  Eigen::MatrixXd joined(n, s.dim() + u.dim());
  joined << s.orthonormal_basis(), u.orthonormal_basis();
  const bool direct = s.dim() + u.dim() == n && numerical_rank(joined, tol) == n;

  double u_ideal = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < u.dim(); ++a) {
      u_ideal = std::max(u_ideal, u.distance(alg.ad_basis(i) * u.orthonormal_basis().col(a)));
    }
  }
  const double u_abelian = abelian_defect(alg, u);

  MilnorResult result{s, u, {}, std::max({s_abelian, u_ideal, u_abelian, direct ? 0.0 : 1.0})};
  if (s_abelian > thr) result.failed_clause = "S abelian";
  else if (!direct) result.failed_clause = "direct sum";
  else if (u_ideal > thr) result.failed_clause = "U ideal";
  else if (u_abelian > thr) result.failed_clause = "U abelian";
  return result;
}

TheoremReport classify(const LieAlgebra& alg, const ScalarProduct& metric, double tol) {
  check_dims(alg, metric);
  const double c = alg.max_abs_constant();
  if (const double jd = jacobi_defect(alg); jd > tol * (1.0 + c * c)) {
    throw InputError("not a Lie algebra: Jacobi defect " + fmt_double(jd));
  }
  TheoremReport report;
  report.tol = tol;
  report.scale = metric_scale(alg, metric);
  report.threshold = verdict_threshold(tol, report.scale);
  report.riemannian = metric.riemannian();

  const Connection a = levi_civita(alg, metric, tol);
  auto verdict = [&](double defect) { return ConditionResult{defect, defect <= report.threshold}; };
  report.riemann_lie = verdict(riemann_lie_defect(alg, a, report.threshold));
  report.parallel_dtheta = verdict(triple_bracket_defect(alg, a));
  report.flat = verdict(curvature_defect(alg, a));
  report.decomposition = milnor_decomposition(alg, metric, tol);
  report.milnor = ConditionResult{report.decomposition.defect, report.decomposition.succeeded()};

  const bool v = report.riemann_lie.holds;
  report.consistent = report.parallel_dtheta.holds == v && report.flat.holds == v && report.milnor.holds == v;
  return report;
}

}  // namespace flatlie
