#include "oracles.hpp"
#include "pcasim/error.hpp"
#include "pcasim/linalg.hpp"
#include "pcasim/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

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

Eigen::MatrixXd random_symmetric(Rng& rng, Eigen::Index d, double scale) {
  const Eigen::MatrixXd m = rng.normal_matrix(d, d) * scale;
  return 0.5 * (m + m.transpose());
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Covariance, HandExamples) {
  Eigen::MatrixXd x(2, 2);
  x << -1, -1, 1, 1;
  const auto s = covariance(DataMatrix(x)).values();
  EXPECT_DOUBLE_EQ(s(0, 0), 2.0);
  EXPECT_DOUBLE_EQ(s(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(s(1, 0), 2.0);
  EXPECT_DOUBLE_EQ(s(1, 1), 2.0);

  Eigen::MatrixXd y(2, 2);
  y << -1, 0, 1, 0;
  const auto t = covariance(DataMatrix(y)).values();
  EXPECT_DOUBLE_EQ(t(0, 0), 2.0);
  EXPECT_EQ(t(0, 1), 0.0);
  EXPECT_EQ(t(1, 1), 0.0);
}

TEST(Covariance, RejectsUncenteredData) {
  Eigen::MatrixXd x(2, 1);
  x << 1, 3;
  EXPECT_EQ(error_code_of([&] { covariance(DataMatrix(x)); }), ErrorCode::NotCentered);
}

TEST(Covariance, MatchesReferenceAndIsPsd) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(3 + rng.below(200));
    const auto d = static_cast<Eigen::Index>(1 + rng.below(8));
    const DataMatrix raw(rng.normal_matrix(n, d) * rng.uniform(0.1, 100.0));
    const auto centered = preprocess(raw, {PreprocessMode::Center});
    const auto s = covariance(centered).values();
    const auto reference = oracle::covariance(raw.values());
    EXPECT_LE(max_abs(s - reference), 1e-12 * max_abs(reference)) << "seed " << seed;
    EXPECT_EQ(s, s.transpose());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12 * s.trace());
  }
}

TEST(Covariance, ExactlyInvariantUnderRowPermutation) {
  Rng rng(21);
  const DataMatrix raw(rng.normal_matrix(300, 6) * 3.0);
  const auto centered = preprocess(raw, {PreprocessMode::Center});
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(300);
  perm.setIdentity();
  for (Eigen::Index i = 299; i > 0; --i) {
    std::swap(perm.indices()[i], perm.indices()[static_cast<Eigen::Index>(rng.below(i + 1))]);
  }
  const auto shuffled = preprocess(DataMatrix(perm * raw.values()), {PreprocessMode::Center});
  EXPECT_EQ(covariance(shuffled).values(), covariance(centered).values());
}

TEST(Covariance, TransformsAsQtSQ) {
  Rng rng(4);
  const auto centered = preprocess(DataMatrix(rng.normal_matrix(100, 4)), {PreprocessMode::Center});
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(rng.normal_matrix(4, 4));
  const Eigen::MatrixXd q = qr.householderQ();
  const auto s = covariance(centered).values();
  const auto rotated = covariance(apply_orthogonal(centered, q)).values();
  EXPECT_LE(max_abs(rotated - q.transpose() * s * q), 1e-12 * max_abs(s));
}

TEST(SymMatrixTest, RejectsAsymmetricInput) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 3, 1;
  EXPECT_EQ(error_code_of([&] { SymMatrix{m}; }), ErrorCode::InvalidArgument);
  EXPECT_EQ(error_code_of([] { SymMatrix(Eigen::MatrixXd::Zero(2, 3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Eigh, DiagonalInput) {
  const auto e = eigh(SymMatrix(Eigen::Vector2d(3, 1).asDiagonal().toDenseMatrix()));
  EXPECT_EQ(e.eigenvalues(0), 3.0);
  EXPECT_EQ(e.eigenvalues(1), 1.0);
  EXPECT_EQ(e.eigenvectors, Eigen::Matrix2d::Identity());

  const auto swapped = eigh(SymMatrix(Eigen::Vector2d(1, 3).asDiagonal().toDenseMatrix()));
  EXPECT_EQ(swapped.eigenvalues(0), 3.0);
  EXPECT_EQ(swapped.eigenvectors(1, 0), 1.0);
  EXPECT_EQ(swapped.eigenvectors(0, 1), 1.0);
}

TEST(Eigh, TwoByTwoHandExample) {
  Eigen::Matrix2d s;
  s << 2, 1, 1, 2;
  const auto e = eigh(SymMatrix(s));
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(e.eigenvalues(0), 3.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvectors(0, 0), h, 1e-14);
  EXPECT_NEAR(e.eigenvectors(1, 0), h, 1e-14);
  // Tie on magnitude goes to the lowest index, which becomes positive.
  EXPECT_NEAR(e.eigenvectors(0, 1), h, 1e-14);
  EXPECT_NEAR(e.eigenvectors(1, 1), -h, 1e-14);
}

TEST(Eigh, IdentityIsOrthonormal) {
  const auto e = eigh(SymMatrix(Eigen::MatrixXd::Identity(4, 4)));
  for (Eigen::Index i = 0; i < 4; ++i) EXPECT_EQ(e.eigenvalues(i), 1.0);
  EXPECT_LE(max_abs(e.eigenvectors.transpose() * e.eigenvectors - Eigen::MatrixXd::Identity(4, 4)),
            1e-15);
}

TEST(Eigh, SweepCapRaisesNoConvergence) {
  Eigen::Matrix2d s;
  s << 2, 1, 1, 2;
  EXPECT_EQ(error_code_of([&] { eigh(SymMatrix(s), {1e-12, 0}); }), ErrorCode::NoConvergence);
}

TEST(Eigh, MatchesClosedFormRootsTwoByTwo) {
  Rng rng(100);
  for (int trial = 0; trial < 200; ++trial) {
    const double scale = std::pow(10.0, rng.uniform(-6.0, 6.0));
    const Eigen::MatrixXd s = random_symmetric(rng, 2, scale);
    const auto expected = oracle::eig2(s(0, 0), s(0, 1), s(1, 1));
    const auto e = eigh(SymMatrix(s));
    const double tol = 1e-12 * s.norm();
    EXPECT_NEAR(e.eigenvalues(0), expected[0], tol);
    EXPECT_NEAR(e.eigenvalues(1), expected[1], tol);
  }
}

TEST(Eigh, MatchesClosedFormRootsThreeByThree) {
  Rng rng(200);
  for (int trial = 0; trial < 200; ++trial) {
    const double scale = std::pow(10.0, rng.uniform(-6.0, 6.0));
    const Eigen::Matrix3d s = random_symmetric(rng, 3, scale);
    const auto expected = oracle::eig3(s);
    const auto e = eigh(SymMatrix(s));
    const double tol = 1e-12 * s.norm();
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(e.eigenvalues(i), expected[static_cast<std::size_t>(i)], tol);
  }
}

TEST(Eigh, DecompositionInvariants) {
  Rng rng(300);
  for (int trial = 0; trial < 30; ++trial) {
    const auto d = static_cast<Eigen::Index>(1 + rng.below(40));
    const Eigen::MatrixXd s = random_symmetric(rng, d, rng.uniform(0.01, 100.0));
    const auto e = eigh(SymMatrix(s));
    const Eigen::MatrixXd& v = e.eigenvectors;
    const double norm = s.norm();
    EXPECT_LE(max_abs(v.transpose() * v - Eigen::MatrixXd::Identity(d, d)), 1e-12);
    EXPECT_LE(max_abs(s * v - v * e.eigenvalues.asDiagonal()), 1e-12 * norm);
    EXPECT_NEAR(e.eigenvalues.sum(), s.trace(), 1e-12 * norm * static_cast<double>(d));
    for (Eigen::Index i = 1; i < d; ++i) EXPECT_GE(e.eigenvalues(i - 1), e.eigenvalues(i));
    for (Eigen::Index j = 0; j < d; ++j) {
      Eigen::Index arg = 0;
      v.col(j).cwiseAbs().maxCoeff(&arg);
      EXPECT_GT(v(arg, j), 0.0);
    }
  }
}

TEST(Eigh, Deterministic) {
  Rng rng(400);
  const Eigen::MatrixXd s = random_symmetric(rng, 12, 1.0);
  const auto a = eigh(SymMatrix(s));
  const auto b = eigh(SymMatrix(s));
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(ApplyOrthogonal, IdentityAndQuarterTurn) {
  Eigen::MatrixXd x(2, 2);
  x << 1, 2, 3, 4;
  const DataMatrix data(x);
  EXPECT_EQ(apply_orthogonal(data, Eigen::MatrixXd::Identity(2, 2)), data);

  const auto turned = apply_orthogonal(data, plane_rotation(2, 0, 1, std::numbers::pi / 2));
  EXPECT_NEAR(turned(0, 0), -2.0, 1e-15);
  EXPECT_NEAR(turned(0, 1), 1.0, 1e-15);
  EXPECT_NEAR(turned(1, 0), -4.0, 1e-15);
  EXPECT_NEAR(turned(1, 1), 3.0, 1e-15);
}

TEST(ApplyOrthogonal, RejectsBadMatrices) {
  const DataMatrix data(Eigen::MatrixXd::Ones(3, 2));
  Eigen::MatrixXd scaled = Eigen::MatrixXd::Identity(2, 2) * 1.001;
  EXPECT_EQ(error_code_of([&] { apply_orthogonal(data, scaled); }), ErrorCode::NotOrthogonal);
  EXPECT_EQ(error_code_of([&] { apply_orthogonal(data, Eigen::MatrixXd::Identity(3, 3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(PlaneRotation, OrthogonalAndOnlyTouchesPlane) {
  const auto q = plane_rotation(5, 3, 1, 0.7);
  EXPECT_LE(max_abs(q.transpose() * q - Eigen::MatrixXd::Identity(5, 5)), 1e-15);
  for (int i : {0, 2, 4}) EXPECT_EQ(q(i, i), 1.0);
  EXPECT_NEAR(q(3, 3), std::cos(0.7), 1e-15);
  EXPECT_NEAR(q(3, 1), std::sin(0.7), 1e-15);
}

}  // namespace
}  // namespace pcasim
