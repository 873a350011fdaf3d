#include "oracles.hpp"
#include "pcasim/error.hpp"
#include "pcasim/pca.hpp"
#include "pcasim/random.hpp"

#include <gtest/gtest.h>

namespace pcasim {
namespace {

template <class Fn>
ErrorCode error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected pcasim::Error";
  return ErrorCode::InvalidArgument;
}

const PreprocessSpec kCenter{PreprocessMode::Center};

DataMatrix line_data() {
  Eigen::MatrixXd x(4, 2);
  x << 1, 1, 2, 2, 3, 3, 4, 4;
  return DataMatrix(x);
}

TEST(Fit, PointsOnALine) {
  const auto model = fit(line_data(), kCenter, 2);
  EXPECT_NEAR(model.ratios()(0), 1.0, 1e-15);
  EXPECT_NEAR(model.ratios()(1), 0.0, 1e-15);
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(model.first_component()(0), h, 1e-15);
  EXPECT_NEAR(model.first_component()(1), h, 1e-15);
  EXPECT_FALSE(model.degenerate_first());
}

TEST(Fit, IsotropicCloudHasEqualRatios) {
  Rng rng(1);
  const DataMatrix data(rng.normal_matrix(100000, 2));
  const auto model = fit(data, kCenter, 2);
  EXPECT_NEAR(model.ratios()(0), 0.5, 0.02);
  EXPECT_NEAR(model.ratios()(1), 0.5, 0.02);
}

TEST(Fit, SymmetricSquareIsDegenerate) {
  Eigen::MatrixXd x(4, 2);
  x << 1, 1, 1, -1, -1, 1, -1, -1;
  const auto model = fit(DataMatrix(x), kCenter, 2);
  EXPECT_TRUE(model.degenerate_first());
  EXPECT_EQ(model.ratios()(0), 0.5);
}

TEST(Fit, ValidatesArguments) {
  EXPECT_EQ(error_code_of([] { fit(line_data(), kCenter, 0); }), ErrorCode::InvalidP);
  EXPECT_EQ(error_code_of([] { fit(line_data(), kCenter, 3); }), ErrorCode::InvalidP);
  EXPECT_EQ(error_code_of([] { fit(DataMatrix(Eigen::MatrixXd::Constant(5, 3, 2.0)), kCenter, 1); }),
            ErrorCode::DegenerateData);
  EXPECT_EQ(error_code_of([] { fit(line_data(), {PreprocessMode::None}, 1); }),
            ErrorCode::NotCentered);
}

TEST(Fit, RatiosAreDescendingAndSumToOneWhenPEqualsD) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const auto d = static_cast<Eigen::Index>(1 + rng.below(10));
    const auto n = static_cast<Eigen::Index>(2 + rng.below(100));
    const DataMatrix data(sample_mvn(rng, random_spd_covariance(rng, d), n));
    for (auto mode : {PreprocessMode::Center, PreprocessMode::ZScore}) {
      const auto model = fit(data, {mode}, static_cast<std::size_t>(d));
      EXPECT_NEAR(model.ratios().sum(), 1.0, 1e-9);
      for (Eigen::Index i = 0; i < d; ++i) {
        EXPECT_GE(model.ratios()(i), 0.0);
        if (i > 0) EXPECT_GE(model.ratios()(i - 1), model.ratios()(i));
      }
      const auto truncated = fit(data, {mode}, 1);
      EXPECT_LE(truncated.ratios().sum(), 1.0 + 1e-12);
      EXPECT_EQ(truncated.ratios()(0), model.ratios()(0));
    }
  }
}

TEST(Fit, FirstComponentMatchesPowerIteration) {
  Rng rng(77);
  const DataMatrix data(sample_mvn(rng, random_spd_covariance(rng, 6), 400));
  const auto model = fit(data, kCenter, 6);
  const auto reference = oracle::leading_eigenvector(oracle::covariance(data.values()));
  EXPECT_LE(oracle::angle_metric(model.first_component(), reference), 1e-7);
}

TEST(Project, ScoreVariancesAreEigenvalues) {
  Rng rng(8);
  const DataMatrix data(sample_mvn(rng, random_spd_covariance(rng, 5), 250));
  const auto model = fit(data, kCenter, 5);
  const Eigen::MatrixXd z = project(model, data);
  const Eigen::MatrixXd cov = z.transpose() * z / 249.0;
  const double trace = model.total_variance();
  for (Eigen::Index i = 0; i < 5; ++i) {
    EXPECT_NEAR(cov(i, i), model.eigenvalues()(i), 1e-9 * trace);
    for (Eigen::Index j = 0; j < 5; ++j) {
      if (i != j) EXPECT_LE(std::abs(cov(i, j)), 1e-8 * trace);
    }
  }
}

TEST(Project, RankOneReconstructsLine) {
  const auto data = line_data();
  const auto model = fit(data, kCenter, 1);
  const Eigen::MatrixXd z = project(model, data);
  const Eigen::MatrixXd rebuilt = z * model.components().transpose();
  const auto centered = preprocess(data, kCenter).values();
  EXPECT_LE((rebuilt - centered).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Project, WidthMustMatch) {
  const auto model = fit(line_data(), kCenter, 1);
  EXPECT_EQ(error_code_of([&] { project(model, DataMatrix(Eigen::MatrixXd::Ones(3, 3))); }),
            ErrorCode::DimensionMismatch);
}

TEST(Fit, DeterministicAcrossRuns) {
  Rng rng(12);
  const DataMatrix data(rng.normal_matrix(80, 7));
  const auto a = fit(data, {PreprocessMode::ZScore}, 7);
  const auto b = fit(data, {PreprocessMode::ZScore}, 7);
  EXPECT_EQ(a.ratios(), b.ratios());
  EXPECT_EQ(a.components(), b.components());
}

}  // namespace
}  // namespace pcasim
