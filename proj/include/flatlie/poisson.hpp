#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "flatlie/lie_algebra.hpp"
#include "flatlie/metric_geometry.hpp"
#include "flatlie/scalar_product.hpp"
#include "flatlie/subspace.hpp"
#include "flatlie/tensor3.hpp"

namespace flatlie {

/// r in g ^ g, stored as a full antisymmetric matrix. As a map g* -> g,
/// (r alpha)_i = sum_j r(i, j) alpha_j; as a bilinear form,
/// r(alpha, beta) = alpha(r beta).
class Bivector {
 public:
  /// Throws InputError unless `r` is square and exactly antisymmetric.
  explicit Bivector(Eigen::MatrixXd r);

  static Bivector zero(int n) { return Bivector(Eigen::MatrixXd::Zero(n, n)); }
  /// Sets r(i,j) = v and r(j,i) = -v for each (i, j, v) with i < j.
  static Bivector from_entries(int n, const std::vector<std::tuple<int, int, double>>& entries);

  int ambient_dim() const { return static_cast<int>(r_.rows()); }
  const Eigen::MatrixXd& matrix() const { return r_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& alpha) const { return r_ * alpha; }
  double operator()(const Eigen::VectorXd& alpha, const Eigen::VectorXd& beta) const {
    return alpha.dot(r_ * beta);
  }
  bool is_zero() const { return r_.isZero(0.0); }

 private:
  Eigen::MatrixXd r_;
};

/// A subspace S with a nondegenerate 2-form; omega(a, b) = omega(b_a, b_b)
/// on the stored basis of S.
class SymplecticSubspace {
 public:
  SymplecticSubspace(Subspace s, Eigen::MatrixXd omega, double tol = kDefaultTol);

  const Subspace& subspace() const { return s_; }
  const Eigen::MatrixXd& omega() const { return omega_; }
  int dim() const { return s_.dim(); }

  /// omega(x, y) for x, y in S (coordinates taken in the stored basis).
  double form(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

 private:
  Subspace s_;
  Eigen::MatrixXd omega_;
};

/// ad*_x on dual coordinates: (ad*_x alpha)(v) = alpha([x, v]), i.e. ad_x^T.
Eigen::MatrixXd coadjoint(const LieAlgebra& alg, const Eigen::VectorXd& x);

/// max|c| * max|r|^2, the natural size of Schouten-type expressions.
double yb_scale(const LieAlgebra& alg, const Bivector& r);

struct SchoutenResult {
  Tensor3 tensor;  ///< tensor(i,j,k) = [r,r](eps_i, eps_j, eps_k)
  double norm = 0.0;
};

/// [r,r](a,b,c) = a([r b, r c]) + b([r c, r a]) + c([r a, r b]).
SchoutenResult schouten(const LieAlgebra& alg, const Bivector& r);

/// Structure constants of [a,b]_r = ad*_{r b} a - ad*_{r a} b on the dual
/// basis. A Lie algebra whenever [r,r] = 0.
LieAlgebra dual_bracket(const LieAlgebra& alg, const Bivector& r);

/// r = -B omega^{-1} B^T, the bivector whose map g* -> g is the inverse of
/// u -> omega(u, .) composed with restriction to S.
Bivector subspace_form_to_r(const SymplecticSubspace& sf);

/// S_r = Im r with omega_r(r a, r b) = a(r b). The basis of S_r is r applied
/// to a maximal independent set of dual basis vectors.
SymplecticSubspace r_to_subspace_form(const Bivector& r, double tol = kDefaultTol);

/// max over basis triples of |omega(u,[v,w]) + omega(v,[w,u]) + omega(w,[u,v])|.
/// Throws PreconditionError if S is not a subalgebra.
double delta_omega_defect(const LieAlgebra& alg, const SymplecticSubspace& sf, double tol = kDefaultTol);

/// max |r([a,b]_r) - [r a, r b]| over dual basis pairs.
double morphism_defect(const LieAlgebra& alg, const Bivector& r);

/// max |c(r([a,b]_r) - [r a, r b]) + [r,r](a,b,c)|; vanishes for every r.
double morphism_identity_residual(const LieAlgebra& alg, const Bivector& r);

/// max |[r,r](a,b,c) - delta omega_r(r a, r b, r c)|; vanishes whenever S_r
/// is a subalgebra. Throws PreconditionError otherwise.
double delta_omega_identity_residual(const LieAlgebra& alg, const Bivector& r, double tol = kDefaultTol);

struct YbEquivalenceReport {
  double threshold = 0.0;
  double schouten_norm = 0.0;
  double morphism_defect = 0.0;
  bool s_r_subalgebra = false;
  std::optional<double> delta_omega;  ///< only when S_r is a subalgebra
  double morphism_identity_residual = 0.0;
  std::optional<double> delta_omega_identity_residual;
  bool yang_baxter = false;  ///< (a) [r,r] = 0
  bool morphism = false;     ///< (b) r is a Lie algebra morphism
  bool symplectic = false;   ///< (c) S_r subalgebra with delta omega_r = 0
  bool consistent = false;   ///< (a), (b), (c) agree
};

/// The three equivalent Yang-Baxter characterisations, evaluated separately.
/// Throws NumericalError if the unconditional identities fail.
YbEquivalenceReport prop21_report(const LieAlgebra& alg, const Bivector& r, double tol = kDefaultTol);

/// Levi-Civita connection of (g*, [,]_r, <,>*). Throws PreconditionError
/// unless r solves the Yang-Baxter equation.
Connection dual_levi_civita(const LieAlgebra& alg, const ScalarProduct& metric, const Bivector& r,
                            double tol = kDefaultTol);

struct DualConnectionReport {
  bool holds = false;            ///< A*_a b = -ad*_{r a} b
  bool s_r_in_s_metric = false;  ///< S_r inside the orthogonal subalgebra
  bool consistent = false;       ///< the two flags agree
  double deviation = 0.0;        ///< max |A*_a b + ad*_{r a} b|
  double dual_curvature = 0.0;
  double dual_rl_defect = 0.0;
  double threshold = 0.0;
};

DualConnectionReport eq16_check(const LieAlgebra& alg, const ScalarProduct& metric, const Bivector& r,
                      double tol = kDefaultTol);

/// S_r abelian. Requires [r,r] = 0 and S_r inside the orthogonal subalgebra;
/// each violation throws a PreconditionError with its own message.
bool prop23_check(const LieAlgebra& alg, const ScalarProduct& metric, const Bivector& r, double tol = kDefaultTol);

/// max over dual basis triples of |[ad*_{r a} c, b]_r + [a, ad*_{r b} c]_r|.
double rpl_compatibility_defect(const LieAlgebra& alg, const Bivector& r, double tol = kDefaultTol);

struct BialgebraReport {
  Bivector r = Bivector::zero(0);
  double threshold = 0.0;
  double schouten_norm = 0.0;
  double dual_jacobi = 0.0;
  bool image_matches = false;  ///< Im r == S
  DualConnectionReport dual_connection;
  bool s_r_abelian = false;
  double rpl_defect = 0.0;
  TheoremReport primal;
  TheoremReport dual;
  bool both_riemann_lie = false;
  bool certified = false;
};

/// Builds r from an even-dimensional abelian S inside the orthogonal
/// subalgebra and certifies the resulting Riemann-Poisson structure. Each
/// hypothesis failure throws PreconditionError naming it.
BialgebraReport bialgebra_report(const LieAlgebra& alg, const ScalarProduct& metric, const SymplecticSubspace& sf,
                                 double tol = kDefaultTol);

}  // namespace flatlie
