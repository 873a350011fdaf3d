#include "pcasim/pca.hpp"

#include "pcasim/error.hpp"

#include <cmath>
#include <string>

namespace pcasim {

PcaModel fit_preprocessed(const DataMatrix& transformed, const PreprocessSpec& spec,
                          const PreprocessStats& stats, std::size_t p) {
  const std::size_t d = transformed.cols();
  if (p < 1 || p > d) {
    throw Error(ErrorCode::InvalidP,
                "p must be in [1, " + std::to_string(d) + "], got " + std::to_string(p));
  }

  const SymMatrix s = covariance(transformed);
  const double trace = s.trace();
  if (trace <= kZeroTrace) {
    throw Error(ErrorCode::DegenerateData, "total variance is zero");
  }
  EigenDecomposition eig = eigh(s);

  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double& lambda = eig.eigenvalues(i);
    if (lambda < 0.0) {
      if (lambda < -1e-9 * trace) {
        throw Error(ErrorCode::NotPositiveSemidefinite,
                    "covariance eigenvalue " + std::to_string(lambda) + " is negative");
      }
      lambda = 0.0;
    }
  }
  const double total = eig.eigenvalues.sum();
  const Eigen::VectorXd all_ratios = eig.eigenvalues / total;
  if (std::abs(all_ratios.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotPositiveSemidefinite, "explained-variance ratios do not sum to 1");
  }

  const auto kept = static_cast<Eigen::Index>(p);
  PcaModel model;
  model.ratios_ = all_ratios.head(kept);
  model.eigenvalues_ = eig.eigenvalues.head(kept);
  model.components_ = eig.eigenvectors.leftCols(kept);
  model.total_variance_ = total;
  model.degenerate_first_ =
      d >= 2 && (eig.eigenvalues(0) - eig.eigenvalues(1)) / total <= kDegenerateGap;
  model.spec_ = spec;
  model.stats_ = stats;
  return model;
}

PcaModel fit(const DataMatrix& data, const PreprocessSpec& spec, std::size_t p) {
  const PreprocessStats stats = fit_preprocess(data, spec.mode);
  return fit_preprocessed(apply_preprocess(data, stats), spec, stats, p);
}

Eigen::MatrixXd project(const PcaModel& model, const DataMatrix& data) {
  if (data.cols() != model.d()) {
    throw Error(ErrorCode::DimensionMismatch, "model expects " + std::to_string(model.d()) +
                                                  " columns, data has " +
                                                  std::to_string(data.cols()));
  }
  return apply_preprocess(data, model.preprocess_stats()).values() * model.components();
}

}  // namespace pcasim
