#include "flatlie/subspace.hpp"

#include <string>

#include "flatlie/errors.hpp"

namespace flatlie {
namespace {

int rank_from_singular_values(const Eigen::VectorXd& sv, double tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = tol * sv(0);
  int r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  return r;
}

}  // namespace

Subspace::Subspace(Eigen::MatrixXd basis, double tol) : basis_(std::move(basis)) {
  if (basis_.cols() > basis_.rows()) {
    throw InputError("subspace basis has more columns (" + std::to_string(basis_.cols()) +
                     ") than the ambient dimension (" + std::to_string(basis_.rows()) + ")");
  }
  if (basis_.cols() == 0) {
    orthonormal_ = Eigen::MatrixXd(basis_.rows(), 0);
    return;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis_, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (rank_from_singular_values(sv, tol) < basis_.cols()) {
    throw InputError("subspace basis columns are linearly dependent");
  }
  orthonormal_ = svd.matrixU();
}

Subspace Subspace::zero(int ambient_dim) { return Subspace(Eigen::MatrixXd(ambient_dim, 0)); }

Subspace Subspace::full(int ambient_dim) {
  return Subspace(Eigen::MatrixXd::Identity(ambient_dim, ambient_dim));
}

Subspace Subspace::span(const Eigen::MatrixXd& vectors, double tol) {
  if (vectors.cols() == 0) return zero(static_cast<int>(vectors.rows()));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  return Subspace(svd.matrixU().leftCols(r), tol);
}

Subspace Subspace::kernel(const Eigen::MatrixXd& map, double tol) {
  const auto n = map.cols();
  if (map.rows() == 0) return full(static_cast<int>(n));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(map, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  return Subspace(svd.matrixV().rightCols(n - r), tol);
}

double Subspace::distance(const Eigen::VectorXd& v) const {
  if (v.size() != ambient_dim()) throw InputError("vector dimension does not match subspace");
  const Eigen::VectorXd residual = v - orthonormal_ * (orthonormal_.transpose() * v);
  return residual.norm();
}

bool Subspace::contains(const Eigen::VectorXd& v, double tol) const {
  return distance(v) <= tol * (1.0 + v.norm());
}

bool Subspace::contains(const Subspace& other, double tol) const {
  if (other.ambient_dim() != ambient_dim()) return false;
  for (int a = 0; a < other.dim(); ++a) {
    if (!contains(Eigen::VectorXd(other.orthonormal_basis().col(a)), tol)) return false;
  }
  return true;
}

Eigen::VectorXd Subspace::coordinates(const Eigen::VectorXd& v) const {
  if (dim() == 0) return Eigen::VectorXd(0);
  return basis_.colPivHouseholderQr().solve(v);
}

double projector_distance(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw InputError("subspaces live in different spaces");
  if (a.ambient_dim() == 0) return 0.0;
  return (a.projector() - b.projector()).cwiseAbs().maxCoeff();
}

bool same_subspace(const Subspace& a, const Subspace& b, double tol) {
  return projector_distance(a, b) <= 10.0 * tol;
}

int numerical_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return rank_from_singular_values(svd.singularValues(), tol);
}

}  // namespace flatlie
