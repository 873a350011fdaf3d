#pragma once

// Reference computations used only by tests. Each one takes a different
// numerical route from the library code it checks: closed-form roots,
// long-double accumulation, power iteration, brute-force ECDFs.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace pcasim::oracle {

/// Eigenvalues of [[a, b], [b, c]], descending, from the quadratic formula.
inline std::array<double, 2> eig2(double a, double b, double c) {
  const long double mean = 0.5L * (static_cast<long double>(a) + c);
  const long double half_diff = 0.5L * (static_cast<long double>(a) - c);
  const long double radius = std::sqrt(half_diff * half_diff + static_cast<long double>(b) * b);
  return {static_cast<double>(mean + radius), static_cast<double>(mean - radius)};
}

/// Eigenvalues of a symmetric 3x3 matrix, descending, from the
/// trigonometric solution of the characteristic cubic.
inline std::array<double, 3> eig3(const Eigen::Matrix3d& m) {
  using L = long double;
  const L a = m(0, 0), b = m(1, 1), c = m(2, 2);
  const L d = m(0, 1), e = m(1, 2), f = m(0, 2);
  const L p1 = d * d + e * e + f * f;
  const L q = (a + b + c) / 3.0L;
  if (p1 == 0.0L) {
    std::array<double, 3> out{static_cast<double>(a), static_cast<double>(b),
                              static_cast<double>(c)};
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
  }
  const L p2 = (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2.0L * p1;
  const L p = std::sqrt(p2 / 6.0L);
  // B = (M - qI) / p; r = det(B) / 2
  const L b00 = (a - q) / p, b11 = (b - q) / p, b22 = (c - q) / p;
  const L b01 = d / p, b12 = e / p, b02 = f / p;
  const L det = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                b02 * (b01 * b12 - b11 * b02);
  const L r = std::clamp(det / 2.0L, -1.0L, 1.0L);
  const L phi = std::acos(r) / 3.0L;
  const L pi = std::numbers::pi_v<long double>;
  const L l1 = q + 2.0L * p * std::cos(phi);
  const L l3 = q + 2.0L * p * std::cos(phi + 2.0L * pi / 3.0L);
  const L l2 = 3.0L * q - l1 - l3;
  return {static_cast<double>(l1), static_cast<double>(l2), static_cast<double>(l3)};
}

/// Sample covariance with explicit centering and long-double accumulation.
inline Eigen::MatrixXd covariance(const Eigen::MatrixXd& x) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  std::vector<long double> mean(static_cast<std::size_t>(d), 0.0L);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) mean[j] += x(i, j);
    mean[j] /= n;
  }
  Eigen::MatrixXd s(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      long double acc = 0.0L;
      for (Eigen::Index i = 0; i < n; ++i) acc += (x(i, a) - mean[a]) * (x(i, b) - mean[b]);
      s(a, b) = static_cast<double>(acc / (n - 1));
    }
  }
  return s;
}

/// Leading eigenvector of a symmetric PSD matrix by power iteration.
inline Eigen::VectorXd leading_eigenvector(const Eigen::MatrixXd& s, int iterations = 5000) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(s.rows());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) += 0.01 * static_cast<double>(i);
  v.normalize();
  for (int it = 0; it < iterations; ++it) {
    Eigen::VectorXd next = s * v;
    next.normalize();
    v = next;
  }
  return v;
}

/// (2/pi) * arccos(|a.b|) evaluated in long double.
inline double angle_metric(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  long double dot = 0.0L;
  for (Eigen::Index i = 0; i < a.size(); ++i) dot += static_cast<long double>(a(i)) * b(i);
  dot = std::clamp(std::abs(dot), 0.0L, 1.0L);
  return static_cast<double>(2.0L / std::numbers::pi_v<long double> * std::acos(dot));
}

/// KS statistic by evaluating both ECDFs at every sample point.
inline double ks_brute(std::span<const double> a, std::span<const double> b) {
  auto ecdf = [](std::span<const double> s, double x) {
    std::size_t count = 0;
    for (double v : s) count += v <= x ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(s.size());
  };
  double best = 0.0;
  for (auto sample : {a, b}) {
    for (double x : sample) best = std::max(best, std::abs(ecdf(a, x) - ecdf(b, x)));
  }
  return best;
}

}  // namespace pcasim::oracle
