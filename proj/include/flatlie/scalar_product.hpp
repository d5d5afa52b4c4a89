#pragma once

#include <Eigen/Dense>

#include "flatlie/tolerance.hpp"

namespace flatlie {

/// Symmetric nondegenerate bilinear form on R^n, stored by its Gram matrix
/// together with the inverse (the induced form on the dual space).
/// Indefinite forms are accepted; riemannian() tells them apart.
class ScalarProduct {
 public:
  /// Throws InputError if `gram` is not exactly symmetric, not square, or
  /// degenerate (min |eigenvalue| <= tol * max |eigenvalue|).
  explicit ScalarProduct(Eigen::MatrixXd gram, double tol = kDefaultTol);

  static ScalarProduct identity(int n) { return ScalarProduct(Eigen::MatrixXd::Identity(n, n)); }

  int dim() const { return static_cast<int>(gram_.rows()); }
  const Eigen::MatrixXd& gram() const { return gram_; }
  const Eigen::MatrixXd& dual_gram() const { return dual_gram_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }
  bool riemannian() const { return n_minus_ == 0; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  double operator()(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const { return u.dot(gram_ * v); }

  /// The form <a, b>* = a^T gram^{-1} b on the dual space (symmetrised).
  ScalarProduct dual(double tol = kDefaultTol) const;

 private:
  Eigen::MatrixXd gram_;
  Eigen::MatrixXd dual_gram_;
  Eigen::VectorXd eigenvalues_;
  int n_plus_ = 0;
  int n_minus_ = 0;
};

}  // namespace flatlie
