#pragma once

#include "pcasim/ingest.hpp"
#include "pcasim/metrics.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace pcasim {

enum class ExperimentKind { Instability, Invariance, AadSweep };

std::string_view to_string(ExperimentKind kind);

using Field = std::variant<std::int64_t, double, std::string>;
using Record = std::vector<std::pair<std::string, Field>>;

/// Tabular output of one harness run. Every row of a result has the same
/// keys in the same order.
struct ExperimentResult {
  ExperimentKind kind = ExperimentKind::Instability;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  Record config;
  Record summary;
  std::vector<Record> rows;
};

/// Lookup helpers; throw InvalidArgument when the key is absent.
const Field& field(const Record& record, std::string_view key);
double number(const Record& record, std::string_view key);

// --- synthetic data --------------------------------------------------------

/// n draws from a zero-mean normal whose covariance is random_spd_covariance
/// of dimension d, both driven by `seed`.
DataMatrix synthetic_normal(std::size_t n, std::size_t d, std::uint64_t seed);

/// `informative` columns drawn like synthetic_normal followed by `noise`
/// independent columns with standard deviation `noise_std`.
DataMatrix informative_plus_noise(std::size_t n, std::size_t informative, std::size_t noise,
                                  double noise_std, std::uint64_t seed);

/// n rows of F * L^T + E: F holds one standard-normal column per entry of
/// `factor_std`, L is d x k with N(0, factor_std_j^2) loadings and E is
/// unit-variance noise. Mimics tabular data with a few dominant directions.
DataMatrix latent_factor_data(std::size_t n, std::size_t d, std::span<const double> factor_std,
                              std::uint64_t seed);

/// x_ij + eta * delta_ij with delta_ij ~ N(0, s_j), s_j the sample standard
/// deviation of column j.
DataMatrix noisy_copy(const DataMatrix& data, double eta, std::uint64_t seed);

/// Per-column a_j + b_j * x_ij.
DataMatrix affine_copy(const DataMatrix& data, std::span<const double> shift,
                       std::span<const double> scale);

// --- experiments -----------------------------------------------------------

struct InstabilityConfig {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> sizes;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  PreprocessSpec preprocess{PreprocessMode::ZScore};
  unsigned threads = 1;
};

/// For every (d, n) cell, compares pairs of independent n-row samples from
/// one fixed normal distribution and reports mean and standard deviation
/// of each metric over the trials.
ExperimentResult instability_sweep(const InstabilityConfig& config);

struct InvarianceConfig {
  double noise_scale = 0.1;
  double rotation_degrees = 45.0;
  std::uint64_t seed = 0;
};

/// One row per transform: noisy copy (center), per-column affine copy
/// (zscore; exact invariance), and a plane rotation of the two
/// highest-variance columns of the centered data (none; delta_theta shifts
/// by the rotation angle).
ExperimentResult invariance_suite(const DataMatrix& data, const InvarianceConfig& config);

/// Rows (k, aad) for k = 1 .. d-1 with F the first k entries of `ordering`.
ExperimentResult aad_sweep(const DataMatrix& data, std::span<const std::size_t> ordering,
                           const PreprocessSpec& spec = {PreprocessMode::Center},
                           unsigned threads = 1);

struct RankMethod {
  enum class Kind { Variance, AbsCorrToTarget };
  Kind kind = Kind::Variance;
  std::size_t target_col = 0;
};

/// Column ordering by descending score, ties kept in index order.
std::vector<std::size_t> rank_features(const DataMatrix& data, const RankMethod& method);

/// Spearman rank correlation; tied values receive their average rank.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace pcasim
