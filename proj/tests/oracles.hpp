#pragma once

// Test-side reference computations, written independently of the library
// code paths they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Normalized trace norm through a two-sided Jacobi SVD.
inline double trace_norm(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().sum() / static_cast<double>(m.rows());
}

inline Mat pauli_x() { Mat p(2, 2); p << 0, 1, 1, 0; return p; }
inline Mat pauli_y() { Mat p(2, 2); p << 0, Complex(0, -1), Complex(0, 1), 0; return p; }
inline Mat pauli_z() { Mat p(2, 2); p << 1, 0, 0, -1; return p; }

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// E over all 2^n sign patterns of |sum a_i s_i|, by direct enumeration.
inline double real_sign_l1(const std::vector<double>& a) {
  const std::size_t n = a.size();
  double total = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += ((mask >> j) & 1u) ? -a[j] : a[j];
    total += std::abs(s);
  }
  return total / static_cast<double>(std::uint64_t{1} << n);
}

/// E|sum_j s_j| / sqrt(n) for Rademacher s, via the binomial distribution.
inline double real_uniform_l1(std::size_t n) {
  double total = 0.0;
  double log_norm = -static_cast<double>(n) * std::log(2.0);
  for (std::size_t k = 0; k <= n; ++k) {
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    total += std::exp(log_c + log_norm) * std::abs(static_cast<double>(n) - 2.0 * k);
  }
  return total / std::sqrt(static_cast<double>(n));
}

/// E over {1, i, -1, -i}^n of |sum a_j w_j|, by direct enumeration.
inline double phase_l1(const Vec& a) {
  const std::size_t n = static_cast<std::size_t>(a.size());
  const Complex w[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  double total = 0.0;
  const std::uint64_t count = std::uint64_t{1} << (2 * n);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    Complex s = 0;
    for (std::size_t j = 0; j < n; ++j) s += a(static_cast<Eigen::Index>(j)) * w[(idx >> (2 * j)) & 3u];
    total += std::abs(s);
  }
  return total / static_cast<double>(count);
}

inline double l4(const Vec& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::pow(std::abs(a(i)), 4);
  return std::pow(s, 0.25);
}

}  // namespace oracle
