#pragma once

#include <initializer_list>

#include <Eigen/Dense>
#include <gtest/gtest.h>

namespace testutil {

inline Eigen::VectorXd e(int n, int i) { return Eigen::VectorXd::Unit(n, i); }

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Eigen::MatrixXd mat(std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  Eigen::MatrixXd m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace testutil

#define EXPECT_MAT_NEAR(a, b, tol) EXPECT_LE(testutil::max_abs((a) - (b)), (tol)) << "got\n" << (a) << "\nwant\n" << (b)
