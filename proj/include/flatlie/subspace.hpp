#pragma once

#include <Eigen/Dense>

#include "flatlie/tolerance.hpp"

namespace flatlie {

/// A linear subspace of R^n, held as a full-column-rank basis matrix.
///
/// The basis is kept exactly as supplied (callers such as SymplecticSubspace
/// express forms in it); an orthonormal basis and the Euclidean orthogonal
/// projector are derived once at construction. Rank decisions threshold
/// singular values at tol * (largest singular value).
class Subspace {
 public:
  /// Validates that `basis` (n x p) has full column rank.
  explicit Subspace(Eigen::MatrixXd basis, double tol = kDefaultTol);

  static Subspace zero(int ambient_dim);
  static Subspace full(int ambient_dim);
  /// Column span of `vectors`; redundant columns are dropped.
  static Subspace span(const Eigen::MatrixXd& vectors, double tol = kDefaultTol);
  /// Null space of `map` (m x n), as a subspace of R^n.
  static Subspace kernel(const Eigen::MatrixXd& map, double tol = kDefaultTol);

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }

  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXd& orthonormal_basis() const { return orthonormal_; }
  Eigen::MatrixXd projector() const { return orthonormal_ * orthonormal_.transpose(); }

  /// Euclidean distance from v to the subspace.
  double distance(const Eigen::VectorXd& v) const;
  /// distance(v) <= tol * (1 + |v|).
  bool contains(const Eigen::VectorXd& v, double tol = kDefaultTol) const;
  bool contains(const Subspace& other, double tol = kDefaultTol) const;

  /// Coordinates of v in the stored (non-orthonormal) basis, least squares.
  Eigen::VectorXd coordinates(const Eigen::VectorXd& v) const;

 private:
  Eigen::MatrixXd basis_;
  Eigen::MatrixXd orthonormal_;
};

/// max-abs entry of P_a - P_b.
double projector_distance(const Subspace& a, const Subspace& b);

/// Projector distance <= 10 * tol.
bool same_subspace(const Subspace& a, const Subspace& b, double tol = kDefaultTol);

/// Rank of `m` with singular values thresholded at tol * sigma_max.
int numerical_rank(const Eigen::MatrixXd& m, double tol = kDefaultTol);

}  // namespace flatlie
