#include "flatlie/scalar_product.hpp"

#include <cmath>
#include <string>

#include "flatlie/errors.hpp"

namespace flatlie {

ScalarProduct::ScalarProduct(Eigen::MatrixXd gram, double tol) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols() || gram_.rows() == 0) throw InputError("metric must be a non-empty square matrix");
  if (!gram_.allFinite()) throw InputError("metric has non-finite entries");
  for (int i = 0; i < gram_.rows(); ++i) {
    for (int j = i + 1; j < gram_.cols(); ++j) {
      if (gram_(i, j) != gram_(j, i)) {
        throw InputError("metric is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_);
  eigenvalues_ = eig.eigenvalues();
  const double largest = eigenvalues_.cwiseAbs().maxCoeff();
  const double smallest = eigenvalues_.cwiseAbs().minCoeff();
  if (largest == 0.0 || smallest <= tol * largest) throw InputError("metric is degenerate");
  for (double x : eigenvalues_) (x > 0 ? n_plus_ : n_minus_)++;
  const auto& q = eig.eigenvectors();
  dual_gram_ = q * eigenvalues_.cwiseInverse().asDiagonal() * q.transpose();
  dual_gram_ = 0.5 * (dual_gram_ + dual_gram_.transpose()).eval();
  const double inverse_error =
      (gram_ * dual_gram_ - Eigen::MatrixXd::Identity(dim(), dim())).cwiseAbs().maxCoeff();
  if (inverse_error > 1e3 * tol * largest / smallest) {
    throw NumericalError("metric inverse check failed (residual " + std::to_string(inverse_error) + ")");
  }
}

ScalarProduct ScalarProduct::dual(double tol) const { return ScalarProduct(dual_gram_, tol); }

}  // namespace flatlie
