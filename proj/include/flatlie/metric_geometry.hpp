#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "flatlie/lie_algebra.hpp"
#include "flatlie/scalar_product.hpp"
#include "flatlie/subspace.hpp"
#include "flatlie/tensor3.hpp"

namespace flatlie {

/// Infinitesimal Levi-Civita connection: a(i, j, k) is the k-th coordinate
/// of A_{e_i} e_j.
class Connection {
 public:
  explicit Connection(Tensor3 a);

  int dim() const { return a_.dim(); }
  const Tensor3& tensor() const { return a_; }

  /// Matrix of v -> A_{e_i} v.
  const Eigen::MatrixXd& basis_operator(int i) const { return ops_[static_cast<std::size_t>(i)]; }
  /// Matrix of v -> A_u v.
  Eigen::MatrixXd op(const Eigen::VectorXd& u) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return op(u) * v; }

 private:
  Tensor3 a_;
  std::vector<Eigen::MatrixXd> ops_;
};

/// max |c| * max |gram|; the magnitude against which geometric identities are
/// thresholded (see verdict_threshold).
double metric_scale(const LieAlgebra& alg, const ScalarProduct& metric);

/// Metric adjoint of ad_u: gram^{-1} ad_u^T gram.
Eigen::MatrixXd adjoint_ad(const LieAlgebra& alg, const ScalarProduct& metric, const Eigen::VectorXd& u);

/// A_u v = 1/2 [u,v] - 1/2 (ad^t_u v + ad^t_v u). Cross-checked against
/// levi_civita_koszul; a disagreement beyond tolerance throws NumericalError.
Connection levi_civita(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);

/// Direct solve of the Koszul formula
/// 2 <A_u v, w> = <[u,v],w> + <[w,u],v> + <[w,v],u>.
Connection levi_civita_koszul(const LieAlgebra& alg, const ScalarProduct& metric);

struct ConnectionDefects {
  double torsion = 0.0;        ///< max |A_u v - A_v u - [u,v]| over basis pairs
  double skew_adjoint = 0.0;   ///< max |gram A_i + A_i^T gram|
};

ConnectionDefects connection_defects(const LieAlgebra& alg, const ScalarProduct& metric, const Connection& a);

/// {u : ad_u + ad^t_u = 0}.
Subspace orthogonal_subalgebra(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);

/// Gram-orthogonal complement {v : <s, v> = 0 for all s in S}.
Subspace orthogonal_complement(const Subspace& s, const ScalarProduct& metric, double tol = kDefaultTol);

/// max over basis triples of |[A_u v, w] + [u, A_w v]|.
double bracket_identity_defect(const LieAlgebra& alg, const Connection& a);
/// max over basis triples of |[u,[v,w]] - [A_u v, w] - [v, A_u w]|.
double triple_bracket_defect(const LieAlgebra& alg, const Connection& a);

/// Riemann-Lie defect in the bracket_identity_defect form, cross-checked against
/// triple_bracket_defect.
double riemann_lie_defect(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);
double riemann_lie_defect(const LieAlgebra& alg, const Connection& a, double threshold);

/// Value of nabla d(theta) on left-invariant fields at the identity.
double parallel_dtheta_defect(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);

/// max over basis triples of |A_{[u,v]} w - (A_u A_v w - A_v A_u w)|.
double curvature_defect(const LieAlgebra& alg, const Connection& a);
double curvature_defect(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);

/// D_u = ad_u - A_u.
Eigen::MatrixXd d_operator(const LieAlgebra& alg, const Connection& a, const Eigen::VectorXd& u);
Eigen::MatrixXd d_operator(const LieAlgebra& alg, const ScalarProduct& metric, const Eigen::VectorXd& u,
                           double tol = kDefaultTol);

/// Metric adjoint of a matrix: gram^{-1} m^T gram.
Eigen::MatrixXd metric_adjoint(const ScalarProduct& metric, const Eigen::MatrixXd& m);

/// Intersection of ker ad^t_{e_i}. Cross-checked against the orthogonal
/// complement of [g,g] and against {u : D_u^t = D_u}.
Subspace derived_perp(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);

struct MilnorResult {
  Subspace s;  ///< orthogonal subalgebra
  Subspace u;  ///< its gram-orthogonal complement
  /// Empty on success, otherwise one of "S abelian", "direct sum", "U ideal", "U abelian".
  std::string failed_clause;
  /// Largest residual among the four clauses.
  double defect = 0.0;

  bool succeeded() const { return failed_clause.empty(); }
  std::optional<std::pair<Subspace, Subspace>> split() const {
    if (!succeeded()) return std::nullopt;
    return std::make_pair(s, u);
  }
};

/// Orthogonal splitting g = S (+) U with S the orthogonal subalgebra, both
/// abelian and U an ideal.
MilnorResult milnor_decomposition(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);

struct ConditionResult {
  double defect = 0.0;
  bool holds = false;
};

struct TheoremReport {
  double tol = kDefaultTol;
  double scale = 0.0;
  double threshold = 0.0;
  bool riemannian = true;
  ConditionResult riemann_lie;     ///< condition 1
  ConditionResult parallel_dtheta; ///< condition 3
  ConditionResult flat;            ///< condition 4
  ConditionResult milnor;          ///< condition 5
  MilnorResult decomposition{Subspace::zero(0), Subspace::zero(0), {}, 0.0};
  /// True iff conditions 1, 3, 4 and 5 agree.
  bool consistent = false;

  bool is_riemann_lie() const { return riemann_lie.holds; }
};

/// Evaluates the four computable equivalent conditions independently.
/// Condition 2 (the Riemann-Poisson structure on the dual) has no separate
/// computation. Throws InputError for an invalid Lie algebra.
TheoremReport classify(const LieAlgebra& alg, const ScalarProduct& metric, double tol = kDefaultTol);

}  // namespace flatlie
