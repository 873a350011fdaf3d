#pragma once

#include "pcasim/ingest.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace pcasim {

/// Dense real symmetric matrix. Construction rejects inputs whose asymmetry
/// exceeds 1e-12 * max|S| and stores the exactly symmetrized average.
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::MatrixXd& values);

  std::size_t dim() const { return static_cast<std::size_t>(values_.rows()); }
  const Eigen::MatrixXd& values() const { return values_; }
  double trace() const { return values_.trace(); }

 private:
  Eigen::MatrixXd values_;
};

/// Eigenpairs sorted by descending eigenvalue. Column i of `eigenvectors`
/// pairs with `eigenvalues[i]`; each column's largest-magnitude entry is
/// positive (ties go to the lowest index).
struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  int sweeps = 0;
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm is <= tolerance * ||S||_F.
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

/// Sample covariance (divisor n - 1) of column-centered data. Throws
/// NotCentered if any column mean exceeds 1e-10 times that column's
/// largest magnitude.
SymMatrix covariance(const DataMatrix& centered);

/// Cyclic Jacobi eigensolver. Throws NoConvergence when the sweep cap is hit.
EigenDecomposition eigh(const SymMatrix& s, const JacobiOptions& options = {});

/// Orthogonal d x d matrix that, applied to row vectors as x * Q, rotates
/// the (axis_from, axis_to) plane by `radians`, turning axis_from toward
/// axis_to. Other coordinates are untouched.
Eigen::MatrixXd plane_rotation(std::size_t dim, std::size_t axis_from, std::size_t axis_to,
                               double radians);

/// Rows x_i -> x_i * Q. Throws NotOrthogonal if ||Q^T Q - I||_max > 1e-10.
DataMatrix apply_orthogonal(const DataMatrix& data, const Eigen::MatrixXd& q);

}  // namespace pcasim
