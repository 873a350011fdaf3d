#include "pcasim/metrics.hpp"

#include "pcasim/error.hpp"
#include "pcasim/linalg.hpp"
#include "pcasim/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pcasim {

double delta_lambda(std::span<const double> r, std::span<const double> r_prime, std::size_t d,
                    std::size_t p, SpectrumKind kind) {
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "delta_lambda needs d >= 2");
  if (p < 1 || p > d) {
    throw Error(ErrorCode::InvalidP,
                "p must be in [1, " + std::to_string(d) + "], got " + std::to_string(p));
  }
  if (r.size() < p || r_prime.size() < p) {
    throw Error(ErrorCode::LengthMismatch, "spectra must have at least p = " +
                                               std::to_string(p) + " entries");
  }
  for (const auto spectrum : {r, r_prime}) {
    for (std::size_t i = 0; i < p; ++i) {
      if (i + 1 < p && spectrum[i] < spectrum[i + 1]) {
        throw Error(ErrorCode::NotDescending,
                    "spectrum entry " + std::to_string(i + 1) + " exceeds entry " +
                        std::to_string(i));
      }
      if (kind == SpectrumKind::Ratios &&
          (!(spectrum[i] >= -1e-12) || !(spectrum[i] <= 1.0 + 1e-12))) {
        throw Error(ErrorCode::InvalidArgument, "explained-variance ratio outside [0, 1]");
      }
    }
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) sum += std::abs(r[i] - r_prime[i]);
  return static_cast<double>(d) / static_cast<double>(d + p - 2) * sum;
}

double delta_theta(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch, "vectors have different lengths");
  }
  for (const auto* v : {&a, &b}) {
    const double norm = v->norm();
    if (!(std::abs(norm - 1.0) <= 1e-8)) {
      throw Error(ErrorCode::NotUnitVector, "vector norm is " + std::to_string(norm));
    }
  }
  // angle(a, b) = 2 atan2(|a - b|, |a + b|) equals arccos(a . b) for unit
  // vectors but keeps full precision for nearly (anti)parallel pairs, where
  // arccos of a rounded dot product is off by ~1e-8.
  const double diff = (a - b).norm();
  const double sum = (a + b).norm();
  const double angle = 2.0 * std::atan2(std::min(diff, sum), std::max(diff, sum));
  return std::clamp(angle * 2.0 / std::numbers::pi, 0.0, 1.0);
}

namespace {

void require_same_schema(const DataMatrix& a, const DataMatrix& b) {
  if (a.cols() != b.cols()) {
    throw Error(ErrorCode::SchemaMismatch, "column counts differ (" + std::to_string(a.cols()) +
                                               " vs " + std::to_string(b.cols()) + ")");
  }
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a.col_names()[j] != b.col_names()[j]) {
      throw Error(ErrorCode::SchemaMismatch, "column " + std::to_string(j) + " is '" +
                                                 a.col_names()[j] + "' vs '" +
                                                 b.col_names()[j] + "'");
    }
  }
}

Eigen::MatrixXd pearson(const DataMatrix& data) {
  return covariance(preprocess(data, {PreprocessMode::ZScore})).values();
}

}  // namespace

double corr_matrix_diff(const DataMatrix& a, const DataMatrix& b) {
  require_same_schema(a, b);
  return (pearson(a) - pearson(b)).norm();
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::InvalidArgument, "KS needs non-empty samples");
  std::vector<double> xs(a.begin(), a.end());
  std::vector<double> ys(b.begin(), b.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());

  std::size_t i = 0;
  std::size_t j = 0;
  double gap = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double x = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == x) ++i;
    while (j < ys.size() && ys[j] == x) ++j;
    gap = std::max(gap, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return gap;
}

double ks_mean(const DataMatrix& a, const DataMatrix& b) {
  require_same_schema(a, b);
  double total = 0.0;
  for (Eigen::Index j = 0; j < a.values().cols(); ++j) {
    const Eigen::VectorXd ca = a.values().col(j);
    const Eigen::VectorXd cb = b.values().col(j);
    total += ks_statistic({ca.data(), static_cast<std::size_t>(ca.size())},
                          {cb.data(), static_cast<std::size_t>(cb.size())});
  }
  return total / static_cast<double>(a.cols());
}

MetricReport compare(const DataMatrix& a, const DataMatrix& b, const CompareOptions& options) {
  require_same_schema(a, b);
  const std::size_t d = a.cols();
  const std::size_t p = options.p.value_or(d);

  const PcaModel model_a = fit(a, options.preprocess, p);
  const PcaModel model_b = fit(b, options.preprocess, p);

  const auto& spectrum_a = options.spectrum == SpectrumKind::Ratios ? model_a.ratios()
                                                                     : model_a.eigenvalues();
  const auto& spectrum_b = options.spectrum == SpectrumKind::Ratios ? model_b.ratios()
                                                                     : model_b.eigenvalues();

  MetricReport report;
  if (d >= 2) {
    report.delta_lambda =
        delta_lambda({spectrum_a.data(), p}, {spectrum_b.data(), p}, d, p, options.spectrum);
  }
  report.delta_theta = delta_theta(model_a.first_component(), model_b.first_component());
  report.corr_diff = corr_matrix_diff(a, b);
  report.ks_mean = ks_mean(a, b);
  report.p = p;
  report.d = d;
  report.preprocess = options.preprocess;
  report.spectrum = options.spectrum;
  report.degenerate_a = model_a.degenerate_first();
  report.degenerate_b = model_b.degenerate_first();
  report.delta_lambda_unbounded = delta_lambda_may_exceed_unit(p);
  report.n_a = a.rows();
  report.n_b = b.rows();
  return report;
}

MetricReport compare(const DataMatrix& a, const DataMatrix& b, const PreprocessSpec& spec,
                     std::size_t p) {
  return compare(a, b, CompareOptions{spec, p, SpectrumKind::Ratios});
}

FeatureSubset::FeatureSubset(std::vector<std::size_t> selected, std::size_t d)
    : selected_(std::move(selected)), dim_(d) {
  std::sort(selected_.begin(), selected_.end());
  selected_.erase(std::unique(selected_.begin(), selected_.end()), selected_.end());
  if (!selected_.empty() && selected_.back() >= d) {
    throw Error(ErrorCode::IndexOutOfRange, "selected feature " +
                                                std::to_string(selected_.back()) +
                                                " out of range for " + std::to_string(d) +
                                                " columns");
  }
}

std::vector<std::size_t> FeatureSubset::complement() const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < dim_; ++f) {
    if (!std::binary_search(selected_.begin(), selected_.end(), f)) out.push_back(f);
  }
  return out;
}

double aad(const DataMatrix& data, const FeatureSubset& subset, const PreprocessSpec& spec,
           unsigned threads) {
  if (data.cols() < 2) throw Error(ErrorCode::InvalidArgument, "AAD needs d >= 2");
  if (subset.dim() != data.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "feature subset built for " +
                                                  std::to_string(subset.dim()) +
                                                  " columns, data has " +
                                                  std::to_string(data.cols()));
  }
  const std::vector<std::size_t> unselected = subset.complement();
  if (unselected.empty()) {
    throw Error(ErrorCode::EmptyComplement, "every feature is selected; AAD is undefined");
  }

  const PreprocessStats stats = fit_preprocess(data, spec.mode);
  const DataMatrix transformed = apply_preprocess(data, stats);
  const Eigen::VectorXd reference =
      fit_preprocessed(transformed, spec, stats, 1).first_component();

  std::vector<double> angles(unselected.size());
  parallel_for(unselected.size(), threads, [&](std::size_t k) {
    const DataMatrix zeroed = zero_feature(transformed, unselected[k]);
    angles[k] =
        delta_theta(reference, fit_preprocessed(zeroed, spec, stats, 1).first_component());
  });

  double total = 0.0;
  for (double angle : angles) total += angle;
  return total / static_cast<double>(angles.size());
}

}  // namespace pcasim
