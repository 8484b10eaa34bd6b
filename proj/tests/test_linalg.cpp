/*
 * Copyright 2026 The DGP Causal Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "dgp/embeddings.hpp"
#include "dgp/kernels.hpp"
#include "dgp/psd_linalg.hpp"
#include "oracles.hpp"

namespace {

using dgp::Lengthscales;
using dgp::Matrix;
using dgp::Vector;

Matrix col(std::initializer_list<double> v) {
  Matrix m(static_cast<Eigen::Index>(v.size()), 1);
  Eigen::Index i = 0;
  for (double x : v) m(i++, 0) = x;
  return m;
}

TEST(Rbf, SelfSimilarityIsOne) {
  Vector x(3);
  x << 0.3, -1.2, 4.0;
  EXPECT_DOUBLE_EQ(dgp::rbf_eval(x, x, Lengthscales::isotropic(0.7, 3)), 1.0);
}

TEST(Rbf, DistanceEqualToLengthscale) {
  Vector a(1), b(1);
  a << 0.0;
  b << 1.7;
  EXPECT_NEAR(dgp::rbf_eval(a, b, Lengthscales::isotropic(1.7, 1)), std::exp(-0.5), 1e-15);
}

TEST(Rbf, TwoDimensionalUnitCase) {
  Vector a(2), b(2);
  a << 0, 0;
  b << 1, 1;
  EXPECT_NEAR(dgp::rbf_eval(a, b, Lengthscales::isotropic(1.0, 2)), std::exp(-1.0), 1e-15);
}

TEST(Rbf, RejectsBadInputs) {
  Vector a(2), b(3);
  a.setZero();
  b.setZero();
  EXPECT_THROW(dgp::rbf_eval(a, b, Lengthscales::isotropic(1.0, 2)), dgp::InputError);
  EXPECT_THROW(dgp::Lengthscale(0.0), dgp::ParameterError);
  EXPECT_THROW(dgp::Lengthscale(-1.0), dgp::ParameterError);
  Vector l(2);
  l << 1.0, -2.0;
  EXPECT_THROW(Lengthscales{l}, dgp::ParameterError);
}

TEST(Rbf, TranslationInvariant) {
  std::mt19937_64 g(3);
  const Matrix x = oracle::random_matrix(g, 2, 3);
  const Vector shift = oracle::random_matrix(g, 3, 1);
  const Lengthscales l = Lengthscales::isotropic(0.8, 3);
  const Vector a = x.row(0).transpose(), b = x.row(1).transpose();
  EXPECT_NEAR(dgp::rbf_eval(a, b, l), dgp::rbf_eval(Vector(a + shift), Vector(b + shift), l),
              1e-14);
}

TEST(Gram, SingleRow) {
  const Matrix k = dgp::gram(col({2.5}), col({2.5}), Lengthscales::isotropic(1.0, 1));
  ASSERT_EQ(k.rows(), 1);
  EXPECT_DOUBLE_EQ(k(0, 0), 1.0);
}

TEST(Gram, ThreePointOffDiagonals) {
  const Matrix k = dgp::gram(col({0, 1, 3}), Lengthscales::isotropic(1.0, 1));
  EXPECT_NEAR(k(0, 1), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(k(0, 2), std::exp(-4.5), 1e-15);
  EXPECT_NEAR(k(1, 2), std::exp(-2.0), 1e-15);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(k(i, i), 1.0);
}

TEST(Gram, SymmetricPsdAndMatchesScalarOracle) {
  std::mt19937_64 g(11);
  const Matrix x = oracle::random_matrix(g, 30, 2);
  Vector lv(2);
  lv << 0.5, 1.3;
  const Matrix k = dgp::gram(x, Lengthscales(lv));
  EXPECT_EQ((k - k.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LT((k - oracle::gram(x, x, lv)).cwiseAbs().maxCoeff(), 1e-14);
  const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix>(k).eigenvalues().minCoeff();
  EXPECT_GE(min_eig, -1e-8 * 30);
  EXPECT_GT(k.minCoeff(), 0.0);
  EXPECT_LE(k.maxCoeff(), 1.0);
}

TEST(Gram, JointScalingLeavesEntriesUnchanged) {
  std::mt19937_64 g(5);
  const Matrix x = oracle::random_matrix(g, 8, 2);
  const Matrix a = dgp::gram(x, Lengthscales::isotropic(0.9, 2));
  const Matrix b = dgp::gram(Matrix(3.0 * x), Lengthscales::isotropic(2.7, 2));
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Gram, DimensionMismatch) {
  EXPECT_THROW(dgp::gram(Matrix::Zero(3, 2), Matrix::Zero(2, 3), Lengthscales::isotropic(1, 2)),
               dgp::InputError);
  EXPECT_THROW(dgp::gram(Matrix::Zero(3, 2), Lengthscales::isotropic(1, 1)), dgp::InputError);
}

TEST(Hadamard, IdentityElementAndOracle) {
  Matrix a(2, 2), b(2, 2), expect(2, 2);
  a << 1, .5, .5, 1;
  b << 1, .2, .2, 1;
  expect << 1, .1, .1, 1;
  EXPECT_LT((dgp::hadamard(a, b) - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(dgp::hadamard(a, Matrix::Ones(2, 2)), a);
  EXPECT_THROW(dgp::hadamard(a, Matrix::Ones(2, 3)), dgp::InputError);
}

TEST(Hadamard, SchurProductIsPsd) {
  std::mt19937_64 g(8);
  const Matrix x = oracle::random_matrix(g, 20, 1), z = oracle::random_matrix(g, 20, 1);
  const Matrix h = dgp::hadamard(dgp::gram(x, Lengthscales::isotropic(0.4, 1)),
                                 dgp::gram(z, Lengthscales::isotropic(0.6, 1)));
  EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues().minCoeff(), -1e-8 * 20);
}

TEST(MedianHeuristic, Examples) {
  EXPECT_DOUBLE_EQ(dgp::median_heuristic(col({0, 1, 3})).value(), 2.0);
  EXPECT_DOUBLE_EQ(dgp::median_heuristic(col({0, 1})).value(), 1.0);
  EXPECT_DOUBLE_EQ(dgp::median_heuristic(col({0, 0.25, 0.5, 0.75, 1.0})).value(), 0.5);
}

TEST(MedianHeuristic, Errors) {
  EXPECT_THROW(dgp::median_heuristic(col({1, 1, 1})), dgp::DegenerateInputError);
  EXPECT_THROW(dgp::median_heuristic(col({1})), dgp::InputError);
}

TEST(MedianHeuristic, PerColumnFallsBackOnConstantColumn) {
  Matrix x(3, 2);
  x << 0, 5, 1, 5, 3, 5;
  const Lengthscales l = dgp::median_heuristic_per_column(x);
  EXPECT_DOUBLE_EQ(l[0], 2.0);
  EXPECT_DOUBLE_EQ(l[1], dgp::median_heuristic(x).value());
}

TEST(Psd, IdentityAndDiagonal) {
  const dgp::PsdFactorization f = dgp::factor_psd(Matrix::Identity(3, 3));
  EXPECT_EQ(f.jitter_used(), 0.0);
  EXPECT_LT((f.lower_triangular_factor() - Matrix::Identity(3, 3)).norm(), 1e-15);
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 4, 9;
  Matrix l = Matrix::Zero(2, 2);
  l.diagonal() << 2, 3;
  EXPECT_LT((dgp::factor_psd(d).lower_triangular_factor() - l).norm(), 1e-15);
}

TEST(Psd, RankOneNeedsJitter) {
  Vector v(4);
  v << 1, 2, -1, 0.5;
  const Matrix m = v * v.transpose();
  const dgp::PsdFactorization f = dgp::factor_psd(m);
  EXPECT_GT(f.jitter_used(), 0.0);
  EXPECT_LE(f.jitter_used(), 1e-2);
  const Matrix l = f.lower_triangular_factor();
  const Matrix jittered = m + f.jitter_used() * Matrix::Identity(4, 4);
  EXPECT_LT((l * l.transpose() - jittered).norm() / jittered.norm(), 1e-8);
}

TEST(Psd, JitterIsDeterministic) {
  Vector v(3);
  v << 1, 1, 1;
  const Matrix m = v * v.transpose();
  EXPECT_EQ(dgp::factor_psd(m).jitter_used(), dgp::factor_psd(m).jitter_used());
}

TEST(Psd, FailsBeyondLadder) {
  Matrix m = Matrix::Identity(2, 2);
  m(1, 1) = -1.0;
  EXPECT_THROW(dgp::factor_psd(m), dgp::SingularMatrixError);
}

TEST(Psd, RejectsAsymmetricAndNonSquare) {
  Matrix m(2, 2);
  m << 1, 0.5, 0.4, 1;
  EXPECT_THROW(dgp::factor_psd(m), dgp::InputError);
  EXPECT_THROW(dgp::factor_psd(Matrix::Identity(2, 3)), dgp::InputError);
}

TEST(Psd, SolveExamples) {
  std::mt19937_64 g(1);
  const Matrix b = oracle::random_matrix(g, 3, 2);
  EXPECT_LT((dgp::factor_psd(Matrix::Identity(3, 3)).solve(b) - b).norm(), 1e-15);
  const Vector bv = b.col(0);
  const Vector x = dgp::factor_psd(Matrix(2.0 * Matrix::Identity(3, 3))).solve(bv);
  EXPECT_LT((x - bv / 2).norm(), 1e-15);
  EXPECT_THROW(dgp::factor_psd(Matrix::Identity(3, 3)).solve(Matrix(Matrix::Ones(2, 1))), dgp::InputError);
}

TEST(Psd, SolveMatchesDenseInverse) {
  std::mt19937_64 g(2);
  const Matrix a = oracle::random_spd(g, 5);
  const Matrix b = oracle::random_matrix(g, 5, 3);
  const Matrix x = dgp::factor_psd(a).solve(b);
  EXPECT_LT((x - oracle::inverse(a) * b).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Psd, RecoversSolutionOfIllConditionedSystem) {
  std::mt19937_64 g(4);
  const Matrix q = oracle::random_matrix(g, 6, 6).householderQr().householderQ();
  Vector ev(6);
  ev << 1, 1e-1, 1e-3, 1e-5, 1e-6, 1e-8;
  const Matrix a = q * ev.asDiagonal() * q.transpose();
  const Matrix sym = 0.5 * (a + a.transpose());
  const Matrix x = oracle::random_matrix(g, 6, 2);
  const Matrix rec = dgp::factor_psd(sym).solve(Matrix(sym * x));
  EXPECT_LT((rec - x).norm() / x.norm(), 1e-6);
}

TEST(Psd, LogdetExamples) {
  EXPECT_NEAR(dgp::factor_psd(Matrix::Identity(4, 4)).logdet(), 0.0, 1e-15);
  const Matrix e = std::exp(1.0) * Matrix::Identity(2, 2);
  EXPECT_NEAR(dgp::factor_psd(e).logdet(), 2.0, 1e-14);
  std::mt19937_64 g(6);
  const Matrix a = oracle::random_spd(g, 4);
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(a).eigenvalues();
  EXPECT_NEAR(dgp::factor_psd(a).logdet(), ev.array().log().sum(), 1e-8);
}

TEST(Psd, LogdetAdditiveOverBlocks) {
  std::mt19937_64 g(7);
  const Matrix a = oracle::random_spd(g, 3), b = oracle::random_spd(g, 2);
  Matrix blk = Matrix::Zero(5, 5);
  blk.topLeftCorner(3, 3) = a;
  blk.bottomRightCorner(2, 2) = b;
  EXPECT_NEAR(dgp::factor_psd(blk).logdet(),
              dgp::factor_psd(a).logdet() + dgp::factor_psd(b).logdet(), 1e-12);
}

TEST(Mediation, IdentityKernel) {
  const dgp::MediationMatrix a = dgp::mediation_iv(Matrix::Identity(3, 3), 1.0);
  EXPECT_LT((a.entries - 0.5 * Matrix::Identity(3, 3)).norm(), 1e-15);
  EXPECT_EQ(a.regularizer_eta, 1.0);
}

TEST(Mediation, SmallEtaApproachesIdentity) {
  const Matrix k = dgp::gram(col({0, 2, 4, 6}), Lengthscales::isotropic(1.0, 1));
  EXPECT_LT((dgp::mediation_iv(k, 1e-10).entries - Matrix::Identity(4, 4)).norm(), 1e-8);
}

TEST(Mediation, MatchesDenseOracleAndCommutes) {
  std::mt19937_64 g(9);
  const Matrix z = oracle::random_matrix(g, 3, 1);
  Vector l(1);
  l << 0.7;
  const Matrix k = oracle::gram(z, z, l);
  const Matrix a = dgp::mediation_iv(k, 0.1).entries;
  EXPECT_LT((a - oracle::mediation(k, 0.1)).cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LT((a * k - k * a).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(Mediation, EigenvaluesInUnitInterval) {
  std::mt19937_64 g(10);
  const Matrix z = oracle::random_matrix(g, 15, 2);
  const Matrix k = dgp::gram(z, Lengthscales::isotropic(1.0, 2));
  const Matrix a = dgp::mediation_iv(k, 0.1).entries;
  const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (a + a.transpose())).eigenvalues();
  EXPECT_GE(ev.minCoeff(), -1e-10);
  EXPECT_LT(ev.maxCoeff(), 1.0);
}

TEST(Mediation, Errors) {
  EXPECT_THROW(dgp::mediation_iv(Matrix::Identity(2, 3), 0.1), dgp::InputError);
  EXPECT_THROW(dgp::mediation_iv(Matrix::Identity(2, 2), 0.0), dgp::ParameterError);
  EXPECT_THROW(dgp::mediation_proxy(Matrix::Identity(2, 2), Matrix::Identity(3, 3), 0.1),
               dgp::InputError);
  EXPECT_THROW(dgp::split_mediation_iv(Matrix::Identity(2, 2), Matrix::Ones(3, 2), 0.1),
               dgp::InputError);
}

TEST(MediationProxy, ConstantInputsEigenvalue) {
  const int n = 4;
  const double eta = 0.3;
  const Matrix ones = Matrix::Ones(n, n);
  const Matrix b = dgp::mediation_proxy(ones, ones, eta).entries;
  const Vector v = Vector::Ones(n);
  EXPECT_LT((b * v - (n / (n + eta)) * v).norm(), 1e-12);
}

TEST(MediationProxy, LargeEtaFirstOrder) {
  std::mt19937_64 g(12);
  const Matrix x = oracle::random_matrix(g, 5, 1), z = oracle::random_matrix(g, 5, 1);
  const Matrix kx = dgp::gram(x, Lengthscales::isotropic(1, 1));
  const Matrix kz = dgp::gram(z, Lengthscales::isotropic(1, 1));
  const Matrix g2 = kx.cwiseProduct(kz);
  const double eta = 1e6;
  EXPECT_LT((dgp::mediation_proxy(kx, kz, eta).entries - g2 / eta).cwiseAbs().maxCoeff(),
            1e-10);
}

TEST(MediationProxy, MatchesDenseOracle) {
  std::mt19937_64 g(13);
  const Matrix x = oracle::random_matrix(g, 4, 1), z = oracle::random_matrix(g, 4, 2);
  Vector lx(1), lz(2);
  lx << 0.8;
  lz << 1.1, 0.6;
  const Matrix kx = oracle::gram(x, x, lx), kz = oracle::gram(z, z, lz);
  EXPECT_LT((dgp::mediation_proxy(kx, kz, 0.1).entries -
             oracle::mediation(kx.cwiseProduct(kz), 0.1))
                .cwiseAbs()
                .maxCoeff(),
            1e-8);
}

TEST(Kme, Examples) {
  const dgp::KmeSummary one = dgp::kme_summary(Matrix::Ones(1, 1));
  EXPECT_DOUBLE_EQ(one.c_w_hat, 1.0);
  EXPECT_DOUBLE_EQ(one.k_wbar_w[0], 1.0);
  EXPECT_DOUBLE_EQ(dgp::kme_summary(Matrix::Identity(5, 5)).c_w_hat, 0.2);
  const Matrix k = dgp::gram(col({0, 1}), Lengthscales::isotropic(1, 1));
  EXPECT_NEAR(dgp::kme_summary(k).c_w_hat, (2 + 2 * std::exp(-0.5)) / 4, 1e-15);
  EXPECT_THROW(dgp::kme_summary(Matrix(0, 0)), dgp::InputError);
}

TEST(Kme, MeanOfColumnAveragesIsConstant) {
  std::mt19937_64 g(14);
  const Matrix k = dgp::gram(oracle::random_matrix(g, 9, 2), Lengthscales::isotropic(1, 2));
  const dgp::KmeSummary s = dgp::kme_summary(k);
  EXPECT_NEAR(s.k_wbar_w.mean(), s.c_w_hat, 1e-15);
  EXPECT_NEAR(s.c_w_hat, k.sum() / 81.0, 1e-15);
  EXPECT_GT(s.c_w_hat, 0.0);
  EXPECT_LE(s.c_w_hat, 1.0);
}

TEST(SplitMediation, IdenticalSplitsMatchFull) {
  std::mt19937_64 g(15);
  const Matrix z = oracle::random_matrix(g, 6, 1), x = oracle::random_matrix(g, 6, 1);
  const Lengthscales l = Lengthscales::isotropic(0.9, 1);
  const Matrix kz = dgp::gram(z, l), kx = dgp::gram(x, l);
  EXPECT_LT((dgp::split_mediation_iv(kz, kz, 0.1).entries - dgp::mediation_iv(kz, 0.1).entries)
                .cwiseAbs()
                .maxCoeff(),
            1e-10);
  EXPECT_LT((dgp::split_mediation_proxy(kx, kz, kx, kz, 0.1).entries -
             dgp::mediation_proxy(kx, kz, 0.1).entries)
                .cwiseAbs()
                .maxCoeff(),
            1e-10);
}

TEST(SplitMediation, IdentityKernelAndDenseOracle) {
  std::mt19937_64 g(16);
  const Matrix cross = oracle::random_matrix(g, 3, 2);
  EXPECT_LT((dgp::split_mediation_iv(Matrix::Identity(3, 3), cross, 1.0).entries - cross / 2)
                .norm(),
            1e-15);
  const Matrix z1 = oracle::random_matrix(g, 3, 1), z2 = oracle::random_matrix(g, 2, 1);
  Vector l(1);
  l << 0.8;
  const Matrix k11 = oracle::gram(z1, z1, l), k12 = oracle::gram(z1, z2, l);
  const Matrix expect = oracle::inverse(k11 + 0.1 * oracle::eye(3)) * k12;
  EXPECT_LT((dgp::split_mediation_iv(k11, k12, 0.1).entries - expect).cwiseAbs().maxCoeff(),
            1e-8);
}

}  // namespace
