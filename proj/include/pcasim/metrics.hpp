#pragma once

#include "pcasim/ingest.hpp"
#include "pcasim/pca.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pcasim {

/// Which spectrum the explained-variance difference compares. Ratios is
/// the default and the only mode for which the [0, 1] bound holds.
enum class SpectrumKind { Ratios, RawEigenvalues };

/// Difference in explained variance:
///   d / (d + p - 2) * sum_{i < p} |r_i - r'_i|
/// Both inputs must hold at least p descending entries; ratio entries must
/// lie in [0, 1]. Requires d >= 2 and 1 <= p <= d.
double delta_lambda(std::span<const double> r, std::span<const double> r_prime, std::size_t d,
                    std::size_t p, SpectrumKind kind = SpectrumKind::Ratios);

/// With p = 1 the normalization d / (d - 1) is not guaranteed to keep
/// delta_lambda inside the unit interval; reports carry this flag.
inline bool delta_lambda_may_exceed_unit(std::size_t p) { return p == 1; }

/// Angle difference between first principal components, in [0, 1], where
/// parallel and anti-parallel directions both give 0:
///   (2 / pi) * min(angle(a, b), angle(a, -b))
/// Inputs must be unit vectors within 1e-8.
double delta_theta(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Frobenius norm of the difference of the two Pearson correlation
/// matrices. Zero-variance columns contribute all-zero rows and columns.
double corr_matrix_diff(const DataMatrix& a, const DataMatrix& b);

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Mean over columns of the two-sample KS statistic.
double ks_mean(const DataMatrix& a, const DataMatrix& b);

struct CompareOptions {
  PreprocessSpec preprocess;
  /// Retained components; defaults to d.
  std::optional<std::size_t> p;
  SpectrumKind spectrum = SpectrumKind::Ratios;
};

struct MetricReport {
  double delta_lambda = 0.0;
  double delta_theta = 0.0;
  double corr_diff = 0.0;
  double ks_mean = 0.0;

  std::size_t p = 0;
  std::size_t d = 0;
  PreprocessSpec preprocess;
  SpectrumKind spectrum = SpectrumKind::Ratios;
  bool degenerate_a = false;
  bool degenerate_b = false;
  bool delta_lambda_unbounded = false;

  // provenance
  std::string id_a;
  std::string id_b;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
  std::optional<std::uint64_t> seed;
};

/// Fits PCA to each dataset independently and fills every metric. KS and
/// correlation baselines use the unpreprocessed values. Throws
/// SchemaMismatch unless both inputs have the same column names in order.
MetricReport compare(const DataMatrix& a, const DataMatrix& b, const CompareOptions& options = {});

MetricReport compare(const DataMatrix& a, const DataMatrix& b, const PreprocessSpec& spec,
                     std::size_t p);

/// Selected feature indices F, kept sorted and unique, with the complement
/// taken within [0, d).
class FeatureSubset {
 public:
  FeatureSubset(std::vector<std::size_t> selected, std::size_t d);

  std::size_t dim() const { return dim_; }
  const std::vector<std::size_t>& selected() const { return selected_; }
  std::vector<std::size_t> complement() const;

 private:
  std::vector<std::size_t> selected_;
  std::size_t dim_;
};

/// Average angle difference between the first principal component of `data`
/// and that of each copy with one non-selected feature zeroed. The zeroing
/// is applied after preprocessing with statistics fitted on `data`, so the
/// zeroed feature is the only difference between the compared datasets.
double aad(const DataMatrix& data, const FeatureSubset& subset,
           const PreprocessSpec& spec = {PreprocessMode::Center}, unsigned threads = 1);

}  // namespace pcasim
