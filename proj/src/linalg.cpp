#include "pcasim/linalg.hpp"

#include "pcasim/error.hpp"
#include "pcasim/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace pcasim {

SymMatrix::SymMatrix(const Eigen::MatrixXd& values) {
  if (values.rows() != values.cols() || values.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric matrix must be square and non-empty");
  }
  if (!values.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "matrix contains NaN or Inf");
  }
  const double scale = values.cwiseAbs().maxCoeff();
  const double asymmetry = (values - values.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix is not symmetric (max asymmetry " + std::to_string(asymmetry) + ")");
  }
  values_ = 0.5 * (values + values.transpose());
}

SymMatrix covariance(const DataMatrix& centered) {
  const auto& x = centered.values();
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 2) throw Error(ErrorCode::TooFewRows, "covariance needs at least 2 rows");

  std::vector<double> scratch(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) scratch[static_cast<std::size_t>(i)] = x(i, j);
    const double mean = order_invariant_sum_inplace(scratch) / static_cast<double>(n);
    const double magnitude = x.col(j).cwiseAbs().maxCoeff();
    if (std::abs(mean) > 1e-10 * magnitude) {
      throw Error(ErrorCode::NotCentered, "column '" + centered.col_names()[static_cast<std::size_t>(j)] +
                                              "' has mean " + std::to_string(mean));
    }
  }

  Eigen::MatrixXd s(d, d);
  const double divisor = static_cast<double>(n - 1);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a; b < d; ++b) {
      for (Eigen::Index i = 0; i < n; ++i) {
        scratch[static_cast<std::size_t>(i)] = x(i, a) * x(i, b);
      }
      s(a, b) = s(b, a) = order_invariant_sum_inplace(scratch) / divisor;
    }
  }
  return SymMatrix(s);
}

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

// Zeroes a(p, q) with the rotation J^T a J and accumulates v <- v J.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Eigen::Index n = a.rows();
  for (Eigen::Index r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p);
    const double arq = a(r, q);
    a(r, p) = a(p, r) = c * arp - s * arq;
    a(r, q) = a(q, r) = s * arp + c * arq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (Eigen::Index r = 0; r < n; ++r) {
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = c * vrp - s * vrq;
    v(r, q) = s * vrp + c * vrq;
  }
}

void canonicalize_sign(Eigen::Ref<Eigen::VectorXd> vec) {
  const double largest = vec.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < vec.size(); ++i) {
    if (std::abs(vec(i)) >= largest - 1e-12 * largest) {
      if (vec(i) < 0.0) vec = -vec;
      return;
    }
  }
}

}  // namespace

EigenDecomposition eigh(const SymMatrix& s, const JacobiOptions& options) {
  Eigen::MatrixXd a = s.values();
  const Eigen::Index d = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(d, d);
  const double threshold = options.tolerance * a.norm();

  int sweeps = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweeps >= options.max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi did not converge in " + std::to_string(options.max_sweeps) + " sweeps");
    }
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) rotate(a, v, p, q);
    }
    ++sweeps;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  EigenDecomposition result;
  result.eigenvalues.resize(d);
  result.eigenvectors.resize(d, d);
  result.sweeps = sweeps;
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    result.eigenvalues(k) = a(src, src);
    result.eigenvectors.col(k) = v.col(src);
    canonicalize_sign(result.eigenvectors.col(k));
  }
  return result;
}

Eigen::MatrixXd plane_rotation(std::size_t dim, std::size_t axis_from, std::size_t axis_to,
                               double radians) {
  if (axis_from >= dim || axis_to >= dim || axis_from == axis_to) {
    throw Error(ErrorCode::IndexOutOfRange, "rotation axes must be distinct and below " +
                                                std::to_string(dim));
  }
  const auto n = static_cast<Eigen::Index>(dim);
  const auto i = static_cast<Eigen::Index>(axis_from);
  const auto j = static_cast<Eigen::Index>(axis_to);
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  // Row-vector convention: (x_i, x_j) -> (c x_i - s x_j, s x_i + c x_j).
  q(i, i) = c;
  q(i, j) = s;
  q(j, i) = -s;
  q(j, j) = c;
  return q;
}

DataMatrix apply_orthogonal(const DataMatrix& data, const Eigen::MatrixXd& q) {
  const auto d = static_cast<Eigen::Index>(data.cols());
  if (q.rows() != d || q.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch,
                "orthogonal matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  const double defect =
      (q.transpose() * q - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-10)) {
    throw Error(ErrorCode::NotOrthogonal,
                "||Q^T Q - I||_max = " + std::to_string(defect) + " exceeds 1e-10");
  }
  return DataMatrix(data.values() * q, data.col_names());
}

}  // namespace pcasim
