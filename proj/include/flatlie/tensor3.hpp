#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace flatlie {

/// Dense cubic rank-3 tensor, row-major in (i, j, k).
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int i, int j, int k) { return data_[index(i, j, k)]; }
  double operator()(int i, int j, int k) const { return data_[index(i, j, k)]; }

  double max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
  }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const Tensor3&, const Tensor3&) = default;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// max |a - b| over all entries; tensors must share a dimension.
inline double max_abs_diff(const Tensor3& a, const Tensor3& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

}  // namespace flatlie
