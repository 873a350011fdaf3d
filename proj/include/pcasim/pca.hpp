#pragma once

#include "pcasim/ingest.hpp"
#include "pcasim/linalg.hpp"

#include <Eigen/Dense>

#include <cstddef>

namespace pcasim {

/// Relative gap (lambda_1 - lambda_2) / sum(lambda) at or below which the
/// first principal direction is treated as arbitrary.
inline constexpr double kDegenerateGap = 1e-6;

/// Total variance at or below which a dataset has nothing to decompose.
inline constexpr double kZeroTrace = 1e-15;

/// Immutable result of fitting PCA to one dataset.
class PcaModel {
 public:
  std::size_t d() const { return static_cast<std::size_t>(components_.rows()); }
  std::size_t p() const { return static_cast<std::size_t>(components_.cols()); }

  /// Explained-variance ratios of the retained components, descending.
  const Eigen::VectorXd& ratios() const { return ratios_; }
  /// Raw (clamped) eigenvalues of the retained components.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  /// d x p, column-orthonormal.
  const Eigen::MatrixXd& components() const { return components_; }
  Eigen::VectorXd first_component() const { return components_.col(0); }

  double total_variance() const { return total_variance_; }
  bool degenerate_first() const { return degenerate_first_; }
  const PreprocessSpec& preprocess_spec() const { return spec_; }
  const PreprocessStats& preprocess_stats() const { return stats_; }

 private:
  friend PcaModel fit_preprocessed(const DataMatrix&, const PreprocessSpec&,
                                   const PreprocessStats&, std::size_t);

  Eigen::VectorXd ratios_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd components_;
  double total_variance_ = 0.0;
  bool degenerate_first_ = false;
  PreprocessSpec spec_;
  PreprocessStats stats_;
};

/// Fits PCA with p retained components to `data` after preprocessing it
/// per `spec`. Under PreprocessMode::None the data must already be centered.
PcaModel fit(const DataMatrix& data, const PreprocessSpec& spec, std::size_t p);

/// Fits to data that has already been transformed with `stats`; the stats
/// are stored so that `project` can repeat the transform.
PcaModel fit_preprocessed(const DataMatrix& transformed, const PreprocessSpec& spec,
                          const PreprocessStats& stats, std::size_t p);

/// Scores Z = preprocess(data; model stats) * A, n x p.
Eigen::MatrixXd project(const PcaModel& model, const DataMatrix& data);

}  // namespace pcasim
