#include "flatlie/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "flatlie/errors.hpp"

namespace flatlie {
namespace {

void check_vector(const LieAlgebra& alg, const Eigen::VectorXd& v, const char* what) {
  if (v.size() != alg.dim()) {
    throw InputError(std::string(what) + " has dimension " + std::to_string(v.size()) +
                     ", algebra has dimension " + std::to_string(alg.dim()));
  }
}

}  // namespace

LieAlgebra::LieAlgebra(Tensor3 constants, std::vector<std::string> basis_names)
    : constants_(std::move(constants)), names_(std::move(basis_names)) {
  const int n = constants_.dim();
  if (n <= 0) throw InputError("Lie algebra dimension must be positive");
  if (!names_.empty() && static_cast<int>(names_.size()) != n) {
    throw InputError("basis_names has " + std::to_string(names_.size()) + " labels for dimension " +
                     std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (constants_(i, j, k) != -constants_(j, i, k)) {
          throw InputError("structure constants are not antisymmetric at (" + std::to_string(i) +
                           "," + std::to_string(j) + "," + std::to_string(k) + ")");
        }
        if (!std::isfinite(constants_(i, j, k))) throw InputError("non-finite structure constant");
      }
    }
  }
  ad_.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) m(k, j) = constants_(i, j, k);
    }
    ad_.push_back(std::move(m));
  }
}

LieAlgebra LieAlgebra::from_brackets(int dim, const std::vector<BracketEntry>& brackets,
                                     std::vector<std::string> basis_names) {
  if (dim <= 0) throw InputError("Lie algebra dimension must be positive");
  Tensor3 c(dim);
  for (const auto& b : brackets) {
    if (b.i < 0 || b.j < 0 || b.i >= dim || b.j >= dim) throw InputError("bracket index out of range");
    if (b.i >= b.j) throw InputError("bracket entries need i < j");
    for (const auto& [k, value] : b.coeffs) {
      if (k < 0 || k >= dim) throw InputError("bracket coefficient index out of range");
      c(b.i, b.j, k) += value;
      c(b.j, b.i, k) = -c(b.i, b.j, k);
    }
  }
  return LieAlgebra(std::move(c), std::move(basis_names));
}

LieAlgebra LieAlgebra::abelian(int dim) { return LieAlgebra(Tensor3(dim)); }

Eigen::VectorXd bracket(const LieAlgebra& alg, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  check_vector(alg, u, "u");
  check_vector(alg, v, "v");
  return ad_matrix(alg, u) * v;
}

Eigen::MatrixXd ad_matrix(const LieAlgebra& alg, const Eigen::VectorXd& u) {
  check_vector(alg, u, "u");
  const int n = alg.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (u(i) != 0.0) m += u(i) * alg.ad_basis(i);
  }
  return m;
}

double jacobi_defect(const LieAlgebra& alg) {
  const int n = alg.dim();
  const Tensor3& c = alg.constants();
  double worst = 0.0;
  // Only i < j < l matters: the defect is alternating in (i, j, l).
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int l = j + 1; l < n; ++l) {
        for (int k = 0; k < n; ++k) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) {
            s += c(i, j, m) * c(m, l, k) + c(j, l, m) * c(m, i, k) + c(l, i, m) * c(m, j, k);
          }
          worst = std::max(worst, std::abs(s));
        }
      }
    }
  }
  return worst;
}

Subspace center(const LieAlgebra& alg, double tol) {
  const int n = alg.dim();
  Eigen::MatrixXd stacked(n * n, n);
  for (int i = 0; i < n; ++i) {
    stacked.col(i) = alg.ad_basis(i).reshaped();
  }
  return Subspace::kernel(stacked, tol);
}

Subspace derived_algebra(const LieAlgebra& alg, double tol) {
  const int n = alg.dim();
  Eigen::MatrixXd brackets(n, n * (n - 1) / 2);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) brackets.col(col++) = alg.basis_bracket(i, j);
  }
  return Subspace::span(brackets, tol);
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::kZero: return "zero";
    case Definiteness::kNegativeDefinite: return "negative-definite";
    case Definiteness::kNegativeSemidefinite: return "negative-semidefinite";
    case Definiteness::kPositiveDefinite: return "positive-definite";
    case Definiteness::kPositiveSemidefinite: return "positive-semidefinite";
    case Definiteness::kIndefinite: return "indefinite";
  }
  return "unknown";
}

Definiteness classify_symmetric(const Eigen::MatrixXd& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  const double largest = ev.size() == 0 ? 0.0 : ev.cwiseAbs().maxCoeff();
  const double cutoff = tol * std::max(1.0, largest);
  int pos = 0, neg = 0, zero = 0;
  for (double x : ev) {
    if (x > cutoff) ++pos;
    else if (x < -cutoff) ++neg;
    else ++zero;
  }
  if (pos == 0 && neg == 0) return Definiteness::kZero;
  if (pos > 0 && neg > 0) return Definiteness::kIndefinite;
  if (neg > 0) return zero == 0 ? Definiteness::kNegativeDefinite : Definiteness::kNegativeSemidefinite;
  return zero == 0 ? Definiteness::kPositiveDefinite : Definiteness::kPositiveSemidefinite;
}

KillingForm killing_form(const LieAlgebra& alg, double tol) {
  const int n = alg.dim();
  KillingForm out;
  out.matrix.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double t = (alg.ad_basis(i) * alg.ad_basis(j)).trace();
      out.matrix(i, j) = t;
      out.matrix(j, i) = t;
    }
  }
  out.verdict = classify_symmetric(out.matrix, tol);
  return out;
}

double abelian_defect(const LieAlgebra& alg, const Subspace& s) {
  const auto& q = s.orthonormal_basis();
  double worst = 0.0;
  for (int a = 0; a < s.dim(); ++a) {
    for (int b = a + 1; b < s.dim(); ++b) {
      worst = std::max(worst, bracket(alg, q.col(a), q.col(b)).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

SubspaceFlags subspace_flags(const LieAlgebra& alg, const Subspace& s, double tol) {
  if (s.ambient_dim() != alg.dim()) throw InputError("subspace does not live in the algebra");
  const auto& q = s.orthonormal_basis();
  const double thr = verdict_threshold(tol, alg.max_abs_constant());
  SubspaceFlags flags;
  flags.is_subalgebra = true;
  for (int a = 0; a < s.dim() && flags.is_subalgebra; ++a) {
    for (int b = a + 1; b < s.dim(); ++b) {
      if (!s.contains(bracket(alg, q.col(a), q.col(b)), thr)) {
        flags.is_subalgebra = false;
        break;
      }
    }
  }
  flags.is_ideal = true;
  for (int i = 0; i < alg.dim() && flags.is_ideal; ++i) {
    for (int a = 0; a < s.dim(); ++a) {
      if (!s.contains(Eigen::VectorXd(alg.ad_basis(i) * q.col(a)), thr)) {
        flags.is_ideal = false;
        break;
      }
    }
  }
  flags.is_abelian = abelian_defect(alg, s) <= thr;
  return flags;
}

LieAlgebra semidirect_flat(int p, int q, const Eigen::MatrixXd& freqs, int fixed) {
  if (p < 0 || q < 0 || fixed < 0) throw InputError("semidirect_flat: negative size");
  if (freqs.rows() != p) {
    throw InputError("semidirect_flat: freqs has " + std::to_string(freqs.rows()) + " rows, expected p=" +
                     std::to_string(p));
  }
  if (q != 2 * freqs.cols() + fixed) {
    throw InputError("semidirect_flat: q=" + std::to_string(q) + " but 2*" + std::to_string(freqs.cols()) +
                     "+" + std::to_string(fixed) + " frequency slots given");
  }
  const int n = p + q;
  if (n == 0) throw InputError("semidirect_flat: empty algebra");
  std::vector<BracketEntry> brackets;
  std::vector<std::string> names;
  for (int a = 0; a < p; ++a) names.push_back("s" + std::to_string(a + 1));
  for (int i = 0; i < q; ++i) names.push_back("u" + std::to_string(i + 1));
  for (int a = 0; a < p; ++a) {
    for (int m = 0; m < freqs.cols(); ++m) {
      const double lambda = freqs(a, m);
      if (lambda == 0.0) continue;
      const int first = p + 2 * m;
      const int second = first + 1;
      brackets.push_back({a, first, {{second, lambda}}});
      brackets.push_back({a, second, {{first, -lambda}}});
    }
  }
  return LieAlgebra::from_brackets(n, brackets, std::move(names));
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const int na = a.dim();
  const int n = na + b.dim();
  Tensor3 c(n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k) c(i, j, k) = a.structure(i, j, k);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k) c(na + i, na + j, na + k) = b.structure(i, j, k);
  std::vector<std::string> names;
  if (!a.basis_names().empty() && !b.basis_names().empty()) {
    names = a.basis_names();
    names.insert(names.end(), b.basis_names().begin(), b.basis_names().end());
  }
  return LieAlgebra(std::move(c), std::move(names));
}

LieAlgebra change_basis(const LieAlgebra& alg, const Eigen::MatrixXd& change) {
  const int n = alg.dim();
  if (change.rows() != n || change.cols() != n) throw InputError("change of basis must be n x n");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(change);
  if (!lu.isInvertible()) throw InputError("change of basis is singular");
  Tensor3 c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd coords = lu.solve(bracket(alg, change.col(i), change.col(j)));
      for (int k = 0; k < n; ++k) {
        c(i, j, k) = coords(k);
        c(j, i, k) = -coords(k);
      }
    }
  }
  return LieAlgebra(std::move(c));
}

}  // namespace flatlie
