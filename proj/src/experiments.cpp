#include "pcasim/experiments.hpp"

#include "pcasim/error.hpp"
#include "pcasim/linalg.hpp"
#include "pcasim/parallel.hpp"
#include "pcasim/random.hpp"
#include "pcasim/summation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pcasim {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::Instability: return "instability";
    case ExperimentKind::Invariance: return "invariance";
    case ExperimentKind::AadSweep: return "aad_sweep";
  }
  return "instability";
}

const Field& field(const Record& record, std::string_view key) {
  for (const auto& [name, value] : record) {
    if (name == key) return value;
  }
  throw Error(ErrorCode::InvalidArgument, "record has no field '" + std::string(key) + "'");
}

double number(const Record& record, std::string_view key) {
  const Field& value = field(record, key);
  if (const auto* d = std::get_if<double>(&value)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&value)) return static_cast<double>(*i);
  throw Error(ErrorCode::InvalidArgument, "field '" + std::string(key) + "' is not numeric");
}

namespace {

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::vector<double> column_stddevs(const DataMatrix& data) {
  const std::size_t n = data.rows();
  std::vector<double> out(data.cols());
  std::vector<double> scratch(n);
  for (std::size_t j = 0; j < data.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) scratch[i] = data(i, j);
    const double mean = order_invariant_sum_inplace(scratch) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) scratch[i] = (data(i, j) - mean) * (data(i, j) - mean);
    out[j] = std::sqrt(order_invariant_sum_inplace(scratch) / static_cast<double>(n - 1));
  }
  return out;
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

// Sample standard deviation (divisor trials - 1); 0 for a single trial.
MeanStd summarize(const std::vector<double>& values) {
  MeanStd out;
  for (double v : values) out.mean += v;
  out.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

}  // namespace

DataMatrix synthetic_normal(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  const Eigen::MatrixXd cov = random_spd_covariance(rng, static_cast<Eigen::Index>(d));
  return DataMatrix(sample_mvn(rng, cov, static_cast<Eigen::Index>(n)));
}

DataMatrix informative_plus_noise(std::size_t n, std::size_t informative, std::size_t noise,
                                  double noise_std, std::uint64_t seed) {
  if (informative < 1) throw Error(ErrorCode::InvalidArgument, "need an informative column");
  const auto rows = static_cast<Eigen::Index>(n);
  const auto inf = static_cast<Eigen::Index>(informative);
  Rng rng(seed);
  const Eigen::MatrixXd cov = random_spd_covariance(rng, inf);
  Eigen::MatrixXd values(rows, inf + static_cast<Eigen::Index>(noise));
  values.leftCols(inf) = sample_mvn(rng, cov, rows);
  values.rightCols(static_cast<Eigen::Index>(noise)) =
      noise_std * rng.normal_matrix(rows, static_cast<Eigen::Index>(noise));
  return DataMatrix(std::move(values));
}

DataMatrix latent_factor_data(std::size_t n, std::size_t d,
                              std::span<const double> factor_std, std::uint64_t seed) {
  if (d < 1 || factor_std.empty()) {
    throw Error(ErrorCode::InvalidArgument, "latent factor data needs d >= 1 and a factor");
  }
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(d);
  const auto k = static_cast<Eigen::Index>(factor_std.size());
  Rng rng(seed);
  Eigen::MatrixXd loadings = rng.normal_matrix(cols, k);
  for (Eigen::Index j = 0; j < k; ++j) loadings.col(j) *= factor_std[static_cast<std::size_t>(j)];
  const Eigen::MatrixXd factors = rng.normal_matrix(rows, k);
  Eigen::MatrixXd values = factors * loadings.transpose() + rng.normal_matrix(rows, cols);
  return DataMatrix(std::move(values));
}

DataMatrix noisy_copy(const DataMatrix& data, double eta, std::uint64_t seed) {
  if (!(eta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "noise scale must be >= 0");
  const std::vector<double> sd = column_stddevs(data);
  Rng rng(seed);
  const Eigen::MatrixXd delta =
      rng.normal_matrix(data.values().rows(), data.values().cols());
  Eigen::MatrixXd out = data.values();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    out.col(j) += eta * sd[static_cast<std::size_t>(j)] * delta.col(j);
  }
  return DataMatrix(std::move(out), data.col_names());
}

DataMatrix affine_copy(const DataMatrix& data, std::span<const double> shift,
                       std::span<const double> scale) {
  if (shift.size() != data.cols() || scale.size() != data.cols()) {
    throw Error(ErrorCode::LengthMismatch, "need one shift and one scale per column");
  }
  Eigen::MatrixXd out = data.values();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const auto c = static_cast<std::size_t>(j);
    out.col(j) = (shift[c] + scale[c] * out.col(j).array()).matrix();
  }
  return DataMatrix(std::move(out), data.col_names());
}

ExperimentResult instability_sweep(const InstabilityConfig& config) {
  if (config.dims.empty() || config.sizes.empty() || config.trials < 1) {
    throw Error(ErrorCode::InvalidGrid, "need non-empty dims and sizes and trials >= 1");
  }
  for (std::size_t d : config.dims) {
    if (d < 2) throw Error(ErrorCode::InvalidGrid, "every d must be >= 2");
  }
  for (std::size_t n : config.sizes) {
    if (n < 2) throw Error(ErrorCode::InvalidGrid, "every n must be >= 2");
  }

  ExperimentResult result;
  result.kind = ExperimentKind::Instability;
  result.seed = config.seed;
  result.trials = config.trials;
  result.config = {{"preprocess", std::string(to_string(config.preprocess.mode))},
                   {"covariance", std::string("M^T M + 0.1 I, M ~ N(0,1)")}};

  static constexpr std::pair<const char*, double MetricReport::*> kMetrics[] = {
      {"delta_lambda", &MetricReport::delta_lambda},
      {"delta_theta", &MetricReport::delta_theta},
      {"corr_diff", &MetricReport::corr_diff},
      {"ks_mean", &MetricReport::ks_mean}};
  for (std::size_t d : config.dims) {
    Rng cov_rng(derive_seed(config.seed, {0, d}));
    const Eigen::MatrixXd cov = random_spd_covariance(cov_rng, static_cast<Eigen::Index>(d));

    for (std::size_t n : config.sizes) {
      std::vector<MetricReport> reports(config.trials);
      parallel_for(config.trials, config.threads, [&](std::size_t t) {
        Rng rng(derive_seed(config.seed, {1, d, n, t}));
        const auto rows = static_cast<Eigen::Index>(n);
        const DataMatrix a(sample_mvn(rng, cov, rows));
        const DataMatrix b(sample_mvn(rng, cov, rows));
        reports[t] = compare(a, b, CompareOptions{config.preprocess, d, SpectrumKind::Ratios});
      });

      Record row{{"d", as_int(d)}, {"n", as_int(n)}, {"trials", as_int(config.trials)}};
      std::size_t degenerate = 0;
      for (const auto& r : reports) degenerate += (r.degenerate_a || r.degenerate_b) ? 1 : 0;
      for (const auto& [metric, member] : kMetrics) {
        std::vector<double> values;
        values.reserve(reports.size());
        for (const auto& r : reports) values.push_back(r.*member);
        const MeanStd s = summarize(values);
        row.emplace_back(std::string(metric) + "_mean", s.mean);
        row.emplace_back(std::string(metric) + "_std", s.std);
      }
      row.emplace_back("degenerate_trials", as_int(degenerate));
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

ExperimentResult invariance_suite(const DataMatrix& data, const InvarianceConfig& config) {
  if (!(config.noise_scale >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise scale must be >= 0");
  }
  if (!(config.rotation_degrees > 0.0 && config.rotation_degrees <= 90.0)) {
    throw Error(ErrorCode::InvalidArgument, "rotation must be in (0, 90] degrees");
  }
  const std::size_t d = data.cols();
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "invariance suite needs d >= 2");

  ExperimentResult result;
  result.kind = ExperimentKind::Invariance;
  result.seed = config.seed;
  result.trials = 1;
  result.config = {{"noise_scale", config.noise_scale},
                   {"rotation_degrees", config.rotation_degrees},
                   {"n", as_int(data.rows())},
                   {"d", as_int(d)}};

  auto make_row = [](std::string transform, PreprocessMode mode, const MetricReport& report,
                     double expected_lambda, double expected_theta, double tol_lambda,
                     double tol_theta, double nominal_theta = 0.0, std::string plane = {}) {
    const bool pass = std::abs(report.delta_lambda - expected_lambda) <= tol_lambda &&
                      std::abs(report.delta_theta - expected_theta) <= tol_theta;
    return Record{{"transform", std::move(transform)},
                  {"preprocess", std::string(to_string(mode))},
                  {"delta_lambda", report.delta_lambda},
                  {"delta_theta", report.delta_theta},
                  {"expected_delta_lambda", expected_lambda},
                  {"expected_delta_theta", expected_theta},
                  {"tolerance_delta_lambda", tol_lambda},
                  {"tolerance_delta_theta", tol_theta},
                  {"pass", std::int64_t{pass ? 1 : 0}},
                  {"nominal_delta_theta", nominal_theta},
                  {"plane", std::move(plane)}};
  };

  // (a) Additive noise: invariant only in expectation, so the tolerances are
  // finite-sample sanity bounds.
  {
    const DataMatrix noisy = noisy_copy(data, config.noise_scale, derive_seed(config.seed, 0));
    const auto report = compare(data, noisy, {PreprocessMode::Center}, d);
    result.rows.push_back(make_row("noise", PreprocessMode::Center, report, 0.0, 0.0, 0.01, 0.02));
  }

  // (b) Per-column translation and positive scaling under standardization.
  {
    Rng rng(derive_seed(config.seed, 1));
    std::vector<double> shift(d);
    std::vector<double> scale(d);
    for (std::size_t j = 0; j < d; ++j) {
      shift[j] = rng.uniform(-10.0, 10.0);
      scale[j] = rng.uniform(0.5, 5.0);
    }
    const auto report = compare(data, affine_copy(data, shift, scale), {PreprocessMode::ZScore}, d);
    result.rows.push_back(make_row("affine", PreprocessMode::ZScore, report, 0.0, 0.0, 1e-9, 1e-9));
  }

  // (c) Rotation in the plane of the two highest-variance columns.
  {
    const std::vector<std::size_t> order = rank_features(data, {RankMethod::Kind::Variance});
    const double radians = config.rotation_degrees * std::numbers::pi / 180.0;
    const DataMatrix centered = preprocess(data, {PreprocessMode::Center});
    const Eigen::MatrixXd q = plane_rotation(d, order[0], order[1], radians);
    const DataMatrix rotated = apply_orthogonal(centered, q);
    const auto report = compare(centered, rotated, {PreprocessMode::None}, d);

    // The rotated covariance is Q^T S Q, so its first component is Q^T a_1.
    const Eigen::VectorXd a1 = fit(centered, {PreprocessMode::None}, 1).first_component();
    const double predicted = delta_theta(a1, q.transpose() * a1);
    const double nominal = 2.0 / std::numbers::pi * std::min(radians, std::numbers::pi - radians);
    result.rows.push_back(make_row("rotation", PreprocessMode::None, report, 0.0, predicted,
                                   1e-9, 1e-6, nominal,
                                   data.col_names()[order[0]] + "/" + data.col_names()[order[1]]));
  }
  return result;
}

ExperimentResult aad_sweep(const DataMatrix& data, std::span<const std::size_t> ordering,
                           const PreprocessSpec& spec, unsigned threads) {
  const std::size_t d = data.cols();
  if (ordering.size() != d) {
    throw Error(ErrorCode::InvalidPermutation, "ordering has " + std::to_string(ordering.size()) +
                                                   " entries, data has " + std::to_string(d) +
                                                   " columns");
  }
  std::vector<bool> seen(d, false);
  for (std::size_t f : ordering) {
    if (f >= d || seen[f]) {
      throw Error(ErrorCode::InvalidPermutation,
                  "ordering is not a permutation (entry " + std::to_string(f) + ")");
    }
    seen[f] = true;
  }
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "AAD sweep needs d >= 2");

  std::vector<double> values(d - 1);
  parallel_for(d - 1, threads, [&](std::size_t i) {
    const std::size_t k = i + 1;
    const FeatureSubset subset({ordering.begin(), ordering.begin() + static_cast<std::ptrdiff_t>(k)}, d);
    values[i] = aad(data, subset, spec, 1);
  });

  ExperimentResult result;
  result.kind = ExperimentKind::AadSweep;
  result.trials = 1;
  std::string order_text;
  for (std::size_t f : ordering) {
    if (!order_text.empty()) order_text += ',';
    order_text += std::to_string(f);
  }
  result.config = {{"preprocess", std::string(to_string(spec.mode))},
                   {"ordering", order_text},
                   {"n", as_int(data.rows())},
                   {"d", as_int(d)}};
  std::vector<double> ks;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t k = i + 1;
    result.rows.push_back({{"k", as_int(k)},
                           {"added_feature", data.col_names()[ordering[i]]},
                           {"aad", values[i]}});
    ks.push_back(static_cast<double>(k));
  }
  if (values.size() >= 2) result.summary = {{"spearman_k_aad", spearman(ks, values)}};
  return result;
}

std::vector<std::size_t> rank_features(const DataMatrix& data, const RankMethod& method) {
  const std::size_t d = data.cols();
  std::vector<double> score(d);
  switch (method.kind) {
    case RankMethod::Kind::Variance: {
      const std::vector<double> sd = column_stddevs(data);
      for (std::size_t j = 0; j < d; ++j) score[j] = sd[j] * sd[j];
      break;
    }
    case RankMethod::Kind::AbsCorrToTarget: {
      if (method.target_col >= d) {
        throw Error(ErrorCode::IndexOutOfRange, "target column " +
                                                    std::to_string(method.target_col) +
                                                    " out of range");
      }
      const Eigen::MatrixXd corr =
          covariance(preprocess(data, {PreprocessMode::ZScore})).values();
      for (std::size_t j = 0; j < d; ++j) {
        score[j] = std::abs(corr(static_cast<Eigen::Index>(j),
                                 static_cast<Eigen::Index>(method.target_col)));
      }
      break;
    }
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });
  return order;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::LengthMismatch, "spearman needs two samples of equal length >= 2");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::DegenerateData, "spearman undefined for a constant sample");
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace pcasim
