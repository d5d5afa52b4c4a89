#include "flatlie/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatlie/errors.hpp"

namespace flatlie {
namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

void check_dims(const LieAlgebra& alg, const Bivector& r) {
  if (alg.dim() != r.ambient_dim()) {
    throw InputError("bivector dimension " + std::to_string(r.ambient_dim()) + " does not match algebra dimension " +
                     std::to_string(alg.dim()));
  }
}

void require_yang_baxter(const LieAlgebra& alg, const Bivector& r, double tol) {
  const double norm = schouten(alg, r).norm;
  if (norm > verdict_threshold(tol, yb_scale(alg, r))) {
    throw PreconditionError("dual bracket is not a Lie bracket: [r,r] has norm " + fmt_double(norm));
  }
}

Subspace image(const Bivector& r, double tol) { return Subspace::span(r.matrix(), tol); }

double delta_omega(const LieAlgebra& alg, const SymplecticSubspace& sf, const Eigen::VectorXd& u,
                   const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  return sf.form(u, bracket(alg, v, w)) + sf.form(v, bracket(alg, w, u)) + sf.form(w, bracket(alg, u, v));
}

}  // namespace

Bivector::Bivector(Eigen::MatrixXd r) : r_(std::move(r)) {
  if (r_.rows() != r_.cols()) throw InputError("bivector matrix must be square");
  for (int i = 0; i < r_.rows(); ++i) {
    for (int j = i; j < r_.cols(); ++j) {
      if (r_(i, j) != -r_(j, i)) {
        throw InputError("bivector is not antisymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

Bivector Bivector::from_entries(int n, const std::vector<std::tuple<int, int, double>>& entries) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j, v] : entries) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw InputError("bivector index out of range");
    if (i >= j) throw InputError("bivector entries need i < j");
    r(i, j) = v;
    r(j, i) = -v;
  }
  return Bivector(std::move(r));
}

SymplecticSubspace::SymplecticSubspace(Subspace s, Eigen::MatrixXd omega, double tol)
    : s_(std::move(s)), omega_(std::move(omega)) {
  const int p = s_.dim();
  if (omega_.rows() != p || omega_.cols() != p) {
    throw InputError("omega must be " + std::to_string(p) + "x" + std::to_string(p));
  }
  if (p < 2 || p % 2 != 0) throw InputError("symplectic subspace must have even dimension >= 2");
  for (int a = 0; a < p; ++a) {
    for (int b = a; b < p; ++b) {
      if (omega_(a, b) != -omega_(b, a)) throw InputError("omega is not antisymmetric");
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(omega_);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(p - 1) <= tol * sv(0)) throw InputError("omega is degenerate");
}

double SymplecticSubspace::form(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return s_.coordinates(x).dot(omega_ * s_.coordinates(y));
}

Eigen::MatrixXd coadjoint(const LieAlgebra& alg, const Eigen::VectorXd& x) {
  return ad_matrix(alg, x).transpose();
}

double yb_scale(const LieAlgebra& alg, const Bivector& r) {
  const double rmax = r.ambient_dim() == 0 ? 0.0 : r.matrix().cwiseAbs().maxCoeff();
  return alg.max_abs_constant() * rmax * rmax;
}

SchoutenResult schouten(const LieAlgebra& alg, const Bivector& r) {
  check_dims(alg, r);
  const int n = alg.dim();
  const Eigen::MatrixXd& rm = r.matrix();
  // w[j][k] = [r eps_j, r eps_k]
  std::vector<Eigen::MatrixXd> ad_cols;
  ad_cols.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) ad_cols.push_back(ad_matrix(alg, rm.col(j)) * rm);
  auto w = [&](int j, int k, int component) { return ad_cols[static_cast<std::size_t>(j)](component, k); };

  SchoutenResult out{Tensor3(n), 0.0};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double t = w(j, k, i) + w(k, i, j) + w(i, j, k);
        out.tensor(i, j, k) = t;
        out.norm = std::max(out.norm, std::abs(t));
      }
    }
  }
  return out;
}

LieAlgebra dual_bracket(const LieAlgebra& alg, const Bivector& r) {
  check_dims(alg, r);
  const int n = alg.dim();
  std::vector<Eigen::MatrixXd> coad;
  coad.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) coad.push_back(coadjoint(alg, r.matrix().col(i)));
  Tensor3 d(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Eigen::VectorXd v = coad[static_cast<std::size_t>(j)].col(i) - coad[static_cast<std::size_t>(i)].col(j);
      for (int k = 0; k < n; ++k) {
        d(i, j, k) = v(k);
        d(j, i, k) = -v(k);
      }
    }
  }
  return LieAlgebra(std::move(d));
}

Bivector subspace_form_to_r(const SymplecticSubspace& sf) {
  const Eigen::MatrixXd& b = sf.subspace().basis();
  Eigen::MatrixXd r = -b * sf.omega().fullPivLu().solve(b.transpose());
  return Bivector(0.5 * (r - r.transpose()));
}

SymplecticSubspace r_to_subspace_form(const Bivector& r, double tol) {
  if (r.is_zero()) throw PreconditionError("r = 0 has empty support");
  const int n = r.ambient_dim();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(n, n);
  qr.setThreshold(tol);
  qr.compute(r.matrix());
  const auto rank = qr.rank();
  if (rank % 2 != 0) throw NumericalError("bivector has odd numerical rank " + std::to_string(rank));
  std::vector<int> pivots(qr.colsPermutation().indices().data(), qr.colsPermutation().indices().data() + rank);
  std::sort(pivots.begin(), pivots.end());

  Eigen::MatrixXd basis(n, rank);
  Eigen::MatrixXd omega(rank, rank);
  for (Eigen::Index a = 0; a < rank; ++a) {
    basis.col(a) = r.matrix().col(pivots[static_cast<std::size_t>(a)]);
    for (Eigen::Index b = 0; b < rank; ++b) {
      omega(a, b) = r.matrix()(pivots[static_cast<std::size_t>(a)], pivots[static_cast<std::size_t>(b)]);
    }
  }
  return SymplecticSubspace(Subspace(std::move(basis), tol), std::move(omega), tol);
}

double delta_omega_defect(const LieAlgebra& alg, const SymplecticSubspace& sf, double tol) {
  const Subspace& s = sf.subspace();
  if (s.ambient_dim() != alg.dim()) throw InputError("subspace does not live in the algebra");
  const auto& b = s.basis();
  const double thr = verdict_threshold(tol, alg.max_abs_constant());
  for (int a = 0; a < s.dim(); ++a) {
    for (int c = a + 1; c < s.dim(); ++c) {
      const Eigen::VectorXd x = bracket(alg, b.col(a), b.col(c));
      if (!s.contains(x, thr)) {
        throw PreconditionError("S is not a subalgebra: the bracket [b" + std::to_string(a) + ", b" + std::to_string(c) +
                                "] leaves S");
      }
    }
  }
  double worst = 0.0;
  for (int u = 0; u < s.dim(); ++u)
    for (int v = 0; v < s.dim(); ++v)
      for (int w = 0; w < s.dim(); ++w)
        worst = std::max(worst, std::abs(delta_omega(alg, sf, b.col(u), b.col(v), b.col(w))));
  return worst;
}

double morphism_defect(const LieAlgebra& alg, const Bivector& r) {
  check_dims(alg, r);
  const LieAlgebra dual = dual_bracket(alg, r);
  const auto& rm = r.matrix();
  double worst = 0.0;
  for (int i = 0; i < alg.dim(); ++i) {
    for (int j = i + 1; j < alg.dim(); ++j) {
      const Eigen::VectorXd d = rm * dual.basis_bracket(i, j) - bracket(alg, rm.col(i), rm.col(j));
      worst = std::max(worst, d.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double morphism_identity_residual(const LieAlgebra& alg, const Bivector& r) {
  check_dims(alg, r);
  const int n = alg.dim();
  const LieAlgebra dual = dual_bracket(alg, r);
  const SchoutenResult sch = schouten(alg, r);
  const auto& rm = r.matrix();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::VectorXd d = rm * dual.basis_bracket(i, j) - bracket(alg, rm.col(i), rm.col(j));
      for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(d(k) + sch.tensor(i, j, k)));
    }
  }
  return worst;
}

double delta_omega_identity_residual(const LieAlgebra& alg, const Bivector& r, double tol) {
  check_dims(alg, r);
  if (r.is_zero()) return 0.0;
  const SymplecticSubspace sf = r_to_subspace_form(r, tol);
  if (!subspace_flags(alg, sf.subspace(), tol).is_subalgebra) {
    throw PreconditionError("S_r is not a subalgebra");
  }
  const int n = alg.dim();
  const SchoutenResult sch = schouten(alg, r);
  const auto& rm = r.matrix();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double d = delta_omega(alg, sf, rm.col(i), rm.col(j), rm.col(k));
        worst = std::max(worst, std::abs(sch.tensor(i, j, k) - d));
      }
  return worst;
}

YbEquivalenceReport prop21_report(const LieAlgebra& alg, const Bivector& r, double tol) {
  check_dims(alg, r);
  YbEquivalenceReport rep;
  rep.threshold = verdict_threshold(tol, yb_scale(alg, r));
  rep.schouten_norm = schouten(alg, r).norm;
  rep.morphism_defect = morphism_defect(alg, r);
  rep.morphism_identity_residual = morphism_identity_residual(alg, r);
  if (rep.morphism_identity_residual > rep.threshold) {
    throw NumericalError("unconditional identity r([a,b]_r) - [ra,rb] = -[r,r] fails by " +
                         fmt_double(rep.morphism_identity_residual));
  }
  if (r.is_zero()) {
    rep.s_r_subalgebra = true;
    rep.delta_omega = 0.0;
    rep.delta_omega_identity_residual = 0.0;
  } else {
    const SymplecticSubspace sf = r_to_subspace_form(r, tol);
    rep.s_r_subalgebra = subspace_flags(alg, sf.subspace(), tol).is_subalgebra;
    if (rep.s_r_subalgebra) {
      rep.delta_omega = delta_omega_defect(alg, sf, tol);
      rep.delta_omega_identity_residual = delta_omega_identity_residual(alg, r, tol);
      if (*rep.delta_omega_identity_residual > rep.threshold) {
        throw NumericalError("identity [r,r] = delta omega_r o r fails by " + fmt_double(*rep.delta_omega_identity_residual));
      }
    }
  }
  rep.yang_baxter = rep.schouten_norm <= rep.threshold;
  rep.morphism = rep.morphism_defect <= rep.threshold;
  rep.symplectic = rep.s_r_subalgebra && rep.delta_omega.value_or(0.0) <= rep.threshold;
  rep.consistent = rep.yang_baxter == rep.morphism && rep.morphism == rep.symplectic;
  return rep;
}

Connection dual_levi_civita(const LieAlgebra& alg, const ScalarProduct& metric, const Bivector& r, double tol) {
  check_dims(alg, r);
  require_yang_baxter(alg, r, tol);
  return levi_civita(dual_bracket(alg, r), metric.dual(tol), tol);
}

DualConnectionReport eq16_check(const LieAlgebra& alg, const ScalarProduct& metric, const Bivector& r, double tol) {
  check_dims(alg, r);
  require_yang_baxter(alg, r, tol);
  const LieAlgebra dual = dual_bracket(alg, r);
  const ScalarProduct dual_metric = metric.dual(tol);
  const Connection a_star = levi_civita(dual, dual_metric, tol);

  DualConnectionReport rep;
  rep.threshold = verdict_threshold(tol, metric_scale(dual, dual_metric));
  const int n = alg.dim();
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd dev = a_star.basis_operator(i) + coadjoint(alg, r.matrix().col(i));
    rep.deviation = std::max(rep.deviation, dev.cwiseAbs().maxCoeff());
  }
  rep.holds = rep.deviation <= rep.threshold;
  rep.s_r_in_s_metric = orthogonal_subalgebra(alg, metric, tol).contains(image(r, tol), 10.0 * tol);
  rep.consistent = rep.holds == rep.s_r_in_s_metric;
  rep.dual_curvature = curvature_defect(dual, a_star);
  rep.dual_rl_defect = riemann_lie_defect(dual, a_star, rep.threshold);
  return rep;
}

bool prop23_check(const LieAlgebra& alg, const ScalarProduct& metric, const Bivector& r, double tol) {
  check_dims(alg, r);
  const double norm = schouten(alg, r).norm;
  if (norm > verdict_threshold(tol, yb_scale(alg, r))) {
    throw PreconditionError("r does not solve the Yang-Baxter equation ([r,r] norm " + fmt_double(norm) + ")");
  }
  const Subspace s_r = image(r, tol);
  if (!orthogonal_subalgebra(alg, metric, tol).contains(s_r, 10.0 * tol)) {
    throw PreconditionError("S_r is not contained in the orthogonal subalgebra");
  }
  return subspace_flags(alg, s_r, tol).is_abelian;
}

double rpl_compatibility_defect(const LieAlgebra& alg, const Bivector& r, double tol) {
  check_dims(alg, r);
  require_yang_baxter(alg, r, tol);
  const int n = alg.dim();
  const LieAlgebra dual = dual_bracket(alg, r);
  std::vector<Eigen::MatrixXd> coad;
  for (int i = 0; i < n; ++i) coad.push_back(coadjoint(alg, r.matrix().col(i)));
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        // [ad*_{r e_i} e_k, e_j]_r + [e_i, ad*_{r e_j} e_k]_r
        const Eigen::VectorXd x = coad[static_cast<std::size_t>(i)].col(k);
        const Eigen::VectorXd y = coad[static_cast<std::size_t>(j)].col(k);
        const Eigen::VectorXd t = -dual.ad_basis(j) * x + dual.ad_basis(i) * y;
        worst = std::max(worst, t.cwiseAbs().maxCoeff());
      }
    }
  }
  return worst;
}

BialgebraReport bialgebra_report(const LieAlgebra& alg, const ScalarProduct& metric, const SymplecticSubspace& sf,
                                 double tol) {
  const Subspace& s = sf.subspace();
  if (s.ambient_dim() != alg.dim() || metric.dim() != alg.dim()) {
    throw InputError("algebra, metric and subspace dimensions differ");
  }
  if (!subspace_flags(alg, s, tol).is_abelian) throw PreconditionError("hypothesis failed: S is not abelian");
  if (s.dim() % 2 != 0) throw PreconditionError("hypothesis failed: S is odd-dimensional");
  if (!orthogonal_subalgebra(alg, metric, tol).contains(s, 10.0 * tol)) {
    throw PreconditionError("hypothesis failed: S is not contained in the orthogonal subalgebra");
  }

  BialgebraReport rep;
  rep.r = subspace_form_to_r(sf);
  rep.threshold = verdict_threshold(tol, yb_scale(alg, rep.r));
  rep.schouten_norm = schouten(alg, rep.r).norm;
  if (rep.schouten_norm > rep.threshold) {
    throw NumericalError("r built from an abelian S fails Yang-Baxter by " + fmt_double(rep.schouten_norm));
  }
  rep.image_matches = same_subspace(image(rep.r, tol), s, tol);

  const LieAlgebra dual = dual_bracket(alg, rep.r);
  rep.dual_jacobi = jacobi_defect(dual);
  rep.dual_connection = eq16_check(alg, metric, rep.r, tol);
  rep.s_r_abelian = prop23_check(alg, metric, rep.r, tol);
  rep.rpl_defect = rpl_compatibility_defect(alg, rep.r, tol);
  rep.primal = classify(alg, metric, tol);
  rep.dual = classify(dual, metric.dual(tol), tol);
  rep.both_riemann_lie = rep.primal.is_riemann_lie() && rep.dual.is_riemann_lie();

  const double dthr = rep.dual_connection.threshold;
  rep.certified = rep.image_matches && rep.dual_jacobi <= verdict_threshold(tol, dual.max_abs_constant()) &&
                  rep.dual_connection.holds && rep.dual_connection.consistent && rep.dual_connection.dual_curvature <= dthr &&
                  rep.dual_connection.dual_rl_defect <= dthr && rep.rpl_defect <= rep.threshold && rep.s_r_abelian;
  return rep;
}

}  // namespace flatlie
