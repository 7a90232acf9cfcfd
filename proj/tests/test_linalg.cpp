#include <gtest/gtest.h>

#include <random>

#include "mln/errors.hpp"
#include "mln/linalg.hpp"
#include "oracles.hpp"

using namespace mln;

TEST(Linalg, HandQr) {
  Matrix a(2, 1);
  a << 3, 4;
  const QRFactors f = economy_qr(a);
  EXPECT_NEAR(f.q(0, 0), 0.6, 1e-15);
  EXPECT_NEAR(f.q(1, 0), 0.8, 1e-15);
  EXPECT_NEAR(f.r(0, 0), 5.0, 1e-15);
}

TEST(Linalg, QrProperties) {
  std::mt19937_64 gen(1);
  const Matrix a = oracle::gaussian(9, 4, gen);
  const QRFactors f = economy_qr(a);
  EXPECT_LT((f.q.transpose() * f.q - Matrix::Identity(4, 4)).norm(), 1e-14);
  EXPECT_LT(oracle::rel_diff(f.q * f.r, a), 1e-14);
  for (Eigen::Index j = 0; j < 4; ++j) {
    EXPECT_GE(f.r(j, j), 0.0);
    for (Eigen::Index i = j + 1; i < 4; ++i) EXPECT_EQ(f.r(i, j), 0.0);
  }
  EXPECT_THROW(economy_qr(Matrix::Ones(2, 3)), DimensionError);
}

TEST(Linalg, OrthogonalComplement) {
  std::mt19937_64 gen(2);
  const Matrix q = orth(oracle::gaussian(7, 3, gen));
  const Matrix qp = orthogonal_complement(q);
  ASSERT_EQ(qp.cols(), 4);
  Matrix full(7, 7);
  full << q, qp;
  EXPECT_LT((full.transpose() * full - Matrix::Identity(7, 7)).norm(), 1e-14);
}

TEST(Linalg, HandSvd) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = -2.0;
  a(1, 1) = 3.0;
  const SVDFactors f = svd(a);
  EXPECT_NEAR(f.s(0), 3.0, 1e-15);
  EXPECT_NEAR(f.s(1), 2.0, 1e-15);
  EXPECT_LT(oracle::rel_diff(f.u * f.s.asDiagonal() * f.v.transpose(), a), 1e-15);
}

TEST(Linalg, SvdReconstructsAllShapes) {
  std::mt19937_64 gen(3);
  for (auto [m, n] : {std::pair{5, 5}, {20, 4}, {4, 20}, {7, 5}}) {
    const Matrix a = oracle::gaussian(m, n, gen);
    const SVDFactors f = svd(a);
    EXPECT_LT(oracle::rel_diff(f.u * f.s.asDiagonal() * f.v.transpose(), a), 1e-13) << m << "x" << n;
    const Eigen::Index p = std::min(m, n);
    EXPECT_LT((f.u.transpose() * f.u - Matrix::Identity(p, p)).norm(), 1e-13);
    EXPECT_LT((f.v.transpose() * f.v - Matrix::Identity(p, p)).norm(), 1e-13);
    EXPECT_LT((f.s - singular_values(a)).norm(), 1e-13 * f.s(0));
  }
}

TEST(Linalg, EpsPseudoinverseMatchesConstructedOracle) {
  std::mt19937_64 gen(4);
  for (int c = 0; c < 200; ++c) {
    const oracle::PinvCase pc = oracle::pinv_case(gen);
    const Matrix got = eps_pseudoinverse(pc.a, pc.eps);
    const double scale = std::max(pc.expected.norm(), 1.0);
    ASSERT_LT((got - pc.expected).norm() / scale, 1e-12) << "case " << c;
  }
}

TEST(Linalg, EpsPseudoinverseHand) {
  Matrix a = Matrix::Zero(3, 2);
  a(0, 0) = 4.0;
  a(1, 1) = 1e-9;
  Matrix expected = Matrix::Zero(2, 3);
  expected(0, 0) = 0.25;
  EXPECT_LT((eps_pseudoinverse(a, 1e-6) - expected).norm(), 1e-16);
  expected(1, 1) = 1e9;
  EXPECT_LT((eps_pseudoinverse(a, 0.0) - expected).norm(), 1e-6);
  EXPECT_THROW(eps_pseudoinverse(a, -1.0), DimensionError);
}

TEST(Linalg, MoorePenroseIdentities) {
  std::mt19937_64 gen(5);
  const Matrix a = oracle::gaussian(8, 3, gen) * oracle::gaussian(3, 6, gen);
  const Matrix p = pseudoinverse(a);
  EXPECT_LT(oracle::rel_diff(a * p * a, a), 1e-12);
  EXPECT_LT(oracle::rel_diff(p * a * p, p), 1e-12);
  EXPECT_LT(((a * p) - (a * p).transpose()).norm(), 1e-12);
  EXPECT_LT(((p * a) - (p * a).transpose()).norm(), 1e-12);
}

TEST(Linalg, TimesPseudoinverseMatchesExplicit) {
  std::mt19937_64 gen(6);
  const Matrix m = oracle::gaussian(7, 5, gen);
  const Matrix b = oracle::gaussian(4, 5, gen);
  EXPECT_LT(oracle::rel_diff(times_pseudoinverse(b, m), oracle::times_pinv_jacobi(b, m)), 1e-12);
  EXPECT_LT(oracle::rel_diff(times_eps_pseudoinverse(b, m, 1e-3), b * eps_pseudoinverse(m, 1e-3)), 1e-12);
  EXPECT_THROW(times_pseudoinverse(Matrix::Ones(2, 3), m), DimensionError);
}

TEST(Linalg, HandTriangularSolve) {
  Matrix r(2, 2), b(1, 2), expected(1, 2);
  r << 2, 1, 0, 4;
  b << 2, 5;
  expected << 1, 1;
  EXPECT_LT((solve_upper_triangular(r, b) - expected).norm(), 1e-15);
}

TEST(Linalg, SingularTriangularThrows) {
  Matrix r(2, 2);
  r << 1, 1, 0, 1e-17;
  EXPECT_THROW(solve_upper_triangular(r, Matrix::Ones(3, 2)), SingularTriangularError);
  EXPECT_THROW(solve_upper_triangular(Matrix::Ones(2, 3), Matrix::Ones(1, 3)), DimensionError);
}

TEST(Linalg, SpectralNorm) {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 1.0, -7.0, 2.0;
  EXPECT_NEAR(spectral_norm(d), 7.0, 1e-14);

  // Large enough for the power-iteration path: a rank-one matrix of norm 3.
  std::mt19937_64 gen(7);
  const Vector u = oracle::gaussian(1100, 1, gen).col(0).normalized();
  const Vector v = oracle::gaussian(1030, 1, gen).col(0).normalized();
  EXPECT_NEAR(spectral_norm(3.0 * u * v.transpose()), 3.0, 1e-10);
}

TEST(Linalg, HaarOrthogonalIsOrthogonalAndSeeded) {
  const Matrix q = haar_orthogonal(12, 5, 1);
  EXPECT_LT((q.transpose() * q - Matrix::Identity(12, 12)).norm(), 1e-13);
  EXPECT_EQ(q, haar_orthogonal(12, 5, 1));
  EXPECT_NE(q, haar_orthogonal(12, 6, 1));
}
