#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "flatlie/subspace.hpp"
#include "flatlie/tensor3.hpp"
#include "flatlie/tolerance.hpp"

namespace flatlie {

/// One bracket relation [e_i, e_j] = sum_k coeffs[k] e_k with i < j.
struct BracketEntry {
  int i = 0;
  int j = 0;
  std::vector<std::pair<int, double>> coeffs;
};

/// A finite-dimensional real Lie algebra given by its structure constants
/// c(i, j, k) = k-th coordinate of [e_i, e_j].
///
/// Antisymmetry is enforced at construction; the Jacobi identity is not
/// (use jacobi_defect), so that invalid inputs can be reported rather than
/// rejected.
class LieAlgebra {
 public:
  /// Takes a full tensor; throws InputError unless c(i,j,k) == -c(j,i,k) exactly.
  explicit LieAlgebra(Tensor3 constants, std::vector<std::string> basis_names = {});

  /// Builds the tensor from i<j relations, completing antisymmetrically.
  static LieAlgebra from_brackets(int dim, const std::vector<BracketEntry>& brackets,
                                  std::vector<std::string> basis_names = {});
  static LieAlgebra abelian(int dim);

  int dim() const { return constants_.dim(); }
  const Tensor3& constants() const { return constants_; }
  double structure(int i, int j, int k) const { return constants_(i, j, k); }
  const std::vector<std::string>& basis_names() const { return names_; }

  /// ad_{e_i} as a matrix: (ad_{e_i})(k, j) = c(i, j, k).
  const Eigen::MatrixXd& ad_basis(int i) const { return ad_[static_cast<std::size_t>(i)]; }
  /// [e_i, e_j] as a vector.
  Eigen::VectorXd basis_bracket(int i, int j) const { return ad_basis(i).col(j); }

  double max_abs_constant() const { return constants_.max_abs(); }

 private:
  Tensor3 constants_;
  std::vector<std::string> names_;
  std::vector<Eigen::MatrixXd> ad_;
};

Eigen::VectorXd bracket(const LieAlgebra& alg, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Matrix M with M v = [u, v].
Eigen::MatrixXd ad_matrix(const LieAlgebra& alg, const Eigen::VectorXd& u);

/// Max-abs entry of the Jacobi defect tensor
/// [[e_i,e_j],e_l] + [[e_j,e_l],e_i] + [[e_l,e_i],e_j]. Zero for a Lie algebra.
double jacobi_defect(const LieAlgebra& alg);

/// {u : ad_u = 0}.
Subspace center(const LieAlgebra& alg, double tol = kDefaultTol);

/// span{[e_i, e_j] : i < j}.
Subspace derived_algebra(const LieAlgebra& alg, double tol = kDefaultTol);

enum class Definiteness {
  kZero,
  kNegativeDefinite,
  kNegativeSemidefinite,
  kPositiveDefinite,
  kPositiveSemidefinite,
  kIndefinite,
};

std::string to_string(Definiteness d);

/// Classifies a symmetric matrix by its eigenvalues; eigenvalues with
/// |lambda| <= tol * max(1, max|lambda|) count as zero.
Definiteness classify_symmetric(const Eigen::MatrixXd& m, double tol = kDefaultTol);

struct KillingForm {
  Eigen::MatrixXd matrix;
  Definiteness verdict = Definiteness::kZero;
};

/// B(e_i, e_j) = trace(ad_{e_i} ad_{e_j}).
KillingForm killing_form(const LieAlgebra& alg, double tol = kDefaultTol);

struct SubspaceFlags {
  bool is_subalgebra = false;
  bool is_ideal = false;
  bool is_abelian = false;
};

SubspaceFlags subspace_flags(const LieAlgebra& alg, const Subspace& s, double tol = kDefaultTol);

/// max |[s_a, s_b]| over an orthonormal basis of s.
double abelian_defect(const LieAlgebra& alg, const Subspace& s);

/// Semidirect product R^p |x R^q of two abelian algebras in the 2x2-block
/// normal form: on basis (s_1..s_p, u_1..u_q), s_a rotates the plane
/// (u_{2m-1}, u_{2m}) with frequency freqs(a, m) and kills the trailing
/// `fixed` u's. Requires freqs.rows() == p and q == 2 * freqs.cols() + fixed.
LieAlgebra semidirect_flat(int p, int q, const Eigen::MatrixXd& freqs, int fixed);

/// Direct sum a (+) b on the concatenated basis.
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

/// Structure constants in the new basis f_i = sum_k change(k, i) e_k.
LieAlgebra change_basis(const LieAlgebra& alg, const Eigen::MatrixXd& change);

}  // namespace flatlie
