// Copyright 2026 The qpa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <thread>

#include "qpa/hermitian.hpp"
#include "qpa/verification.hpp"

namespace {

using namespace qpa;

HermitianMatrix random_hermitian(std::uint64_t seed, Index n) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return HermitianMatrix(m);
}

double frob(const ComplexMatrix& m) { return m.norm(); }

TEST(Eig, DiagonalInput) {
  auto s = eig_hermitian(HermitianMatrix::diagonal({1.0, 3.0}));
  EXPECT_DOUBLE_EQ(s.eigenvalues(0), 3.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues(1), 1.0);
  EXPECT_NEAR(std::abs(s.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(Eig, PauliX) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  auto s = eig_hermitian(HermitianMatrix(x));
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), -1.0, 1e-15);
}

TEST(Eig, ReconstructionAndUnitarity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto m = random_hermitian(seed, 2 + seed % 6);
    const auto& s = m.spectrum();
    EXPECT_LE(frob(reconstruct(s) - m.entries()), 1e-10);
    const auto n = m.dim();
    EXPECT_LE(frob(s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(n, n)),
              1e-10);
    for (Index i = 1; i < n; ++i) EXPECT_GE(s.eigenvalues(i - 1), s.eigenvalues(i));
  }
}

TEST(Eig, Deterministic) {
  auto a = random_hermitian(7, 5).spectrum();
  auto b = random_hermitian(7, 5).spectrum();
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(Eig, SpectrumCacheIsSharedAcrossThreads) {
  auto m = random_hermitian(3, 6);
  std::vector<const Spectrum*> seen(4);
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i) ts.emplace_back([&, i] { seen[i] = &m.spectrum(); });
  for (auto& t : ts) t.join();
  for (int i = 1; i < 4; ++i) EXPECT_EQ(seen[i], seen[0]);
}

TEST(HermitianMatrix, SymmetrizesInput) {
  ComplexMatrix m(2, 2);
  m << 1, Complex(0, 1), Complex(0, -1 + 1e-14), 2;
  HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(HermitianMatrix, RejectsBadInput) {
  EXPECT_THROW(HermitianMatrix(ComplexMatrix(2, 3)), DomainError);
  ComplexMatrix nan = ComplexMatrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  EXPECT_THROW(HermitianMatrix{nan}, DomainError);
  ComplexMatrix inf = ComplexMatrix::Identity(2, 2);
  inf(1, 0) = Complex(0, INFINITY);
  EXPECT_THROW(HermitianMatrix{inf}, DomainError);
}

TEST(MatrixFunction, PseudoInverseSqrt) {
  auto r = matrix_function(HermitianMatrix::diagonal({4.0, 0.0}), Power{-0.5});
  EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-15);
  EXPECT_EQ(r(1, 1).real(), 0.0);
}

TEST(MatrixFunction, LogOfIdentityIsZero) {
  auto r = matrix_function(HermitianMatrix::identity(3), Log{});
  EXPECT_LE(frob(r.entries()), 1e-15);
}

TEST(MatrixFunction, FractionalPowerMatchesScalarPowers) {
  ComplexMatrix g = random_hermitian(11, 3).entries();
  HermitianMatrix psd(g * g.adjoint());
  auto r = matrix_function(psd, Power{0.3});
  const auto& ev = psd.spectrum().eigenvalues;
  const auto& rv = r.spectrum().eigenvalues;
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(rv(i), std::pow(ev(i), 0.3), 1e-10);
  EXPECT_LE(frob(r.entries() * psd.entries() - psd.entries() * r.entries()), 1e-9);
}

TEST(MatrixFunction, PowerOneIsIdentityMap) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto m = random_hermitian(seed, 4);
    EXPECT_LE(frob(matrix_function(m, Power{1.0}).entries() - m.entries()), 1e-12);
  }
}

TEST(MatrixFunction, ExpInvertsLog) {
  ComplexMatrix g = random_hermitian(5, 4).entries();
  HermitianMatrix pd(g * g.adjoint() + ComplexMatrix::Identity(4, 4));
  auto back = matrix_function(matrix_function(pd, Log{}), Exp{});
  EXPECT_LE(frob(back.entries() - pd.entries()), 1e-10);
}

TEST(MatrixFunction, NegativeEigenvalueWithFractionalPowerIsDomainError) {
  EXPECT_THROW(matrix_function(HermitianMatrix::diagonal({1.0, -0.5}), Power{0.5}),
               DomainError);
  // Integer powers are fine on any Hermitian matrix.
  auto sq = matrix_function(HermitianMatrix::diagonal({1.0, -0.5}), Power{2.0});
  EXPECT_NEAR(sq(1, 1).real(), 0.25, 1e-15);
}

TEST(Tensor, Examples) {
  auto i4 = tensor(HermitianMatrix::identity(2), HermitianMatrix::identity(2));
  EXPECT_LE(frob(i4.entries() - ComplexMatrix::Identity(4, 4)), 0.0);
  auto d = tensor(HermitianMatrix::diagonal({1, 2}), HermitianMatrix::diagonal({3, 4}));
  const double want[] = {3, 4, 6, 8};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(d(i, i).real(), want[i]);
}

TEST(Tensor, TraceMultiplicative) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto a = random_hermitian(seed, 2), b = random_hermitian(seed + 100, 3);
    EXPECT_NEAR(tensor(a, b).trace(), a.trace() * b.trace(), 1e-10);
    EXPECT_NEAR(tensor(a, a).trace(), a.trace() * a.trace(), 1e-10);
  }
}

TEST(Tensor, SpectrumIsPairwiseProducts) {
  auto a = random_hermitian(1, 2), b = random_hermitian(2, 2);
  std::vector<double> want;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j)
      want.push_back(a.spectrum().eigenvalues(i) * b.spectrum().eigenvalues(j));
  std::sort(want.rbegin(), want.rend());
  auto got = tensor(a, b).spectrum().eigenvalues;
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(got(i), want[i], 1e-10);
}

TEST(Tensor, CapIsSizeError) {
  EXPECT_THROW(tensor(HermitianMatrix::identity(8), HermitianMatrix::identity(8), 32),
               SizeError);
}

TEST(Pinch, IdentitySigmaKeepsRho) {
  auto rho = random_hermitian(4, 3);
  EXPECT_LE(frob(pinch(HermitianMatrix::identity(3), rho).entries() - rho.entries()), 1e-12);
}

TEST(Pinch, DistinctDiagonalKillsOffDiagonal) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  auto r = pinch(HermitianMatrix::diagonal({1.0 / 3, 2.0 / 3}), HermitianMatrix(x));
  EXPECT_LE(frob(r.entries()), 1e-15);
}

TEST(Pinch, TracePreservingIdempotentCommuting) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto sigma = random_psd(seed, 4);
    auto rho = random_psd(seed + 1000, 4);
    auto p = pinch(sigma, rho);
    EXPECT_NEAR(p.trace(), rho.trace(), 1e-10);
    EXPECT_LE(frob(pinch(sigma, p).entries() - p.entries()), 1e-10);
    EXPECT_LE(frob(p.entries() * sigma.entries() - sigma.entries() * p.entries()), 1e-9);
  }
}

TEST(Pinch, PinchingInequalityOnSeededPairs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Index d = 2 + static_cast<Index>(seed % 5);
    auto sigma = random_psd(seed, d);
    auto rho = random_psd(seed + 5000, d);
    const int v = distinct_eigenvalue_count(sigma);
    EXPECT_GE(min_eigenvalue(static_cast<double>(v) * pinch(sigma, rho) - rho), -1e-9)
        << "seed " << seed;
  }
}

TEST(Pinch, DegenerateSigmaUsesClusters) {
  // sigma = diag(0.5, 0.5, 0): two clusters, so the 2x2 upper block survives.
  auto rho = random_psd(9, 3);
  auto p = pinch(HermitianMatrix::diagonal({0.5, 0.5, 0.0}), rho);
  EXPECT_NEAR(std::abs(p(0, 1) - rho(0, 1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p(0, 2)), 0.0, 1e-12);
}

TEST(Pinch, DimensionMismatch) {
  EXPECT_THROW(pinch(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), DomainError);
}

TEST(SpectralUtilities, Examples) {
  auto u = spectral_utilities(HermitianMatrix::identity(4));
  EXPECT_EQ(u.operator_norm, 1.0);
  EXPECT_EQ(u.distinct_count_v, 1);
  EXPECT_LE(frob(u.support_projector.entries() - ComplexMatrix::Identity(4, 4)), 1e-12);

  auto h = spectral_utilities(HermitianMatrix::diagonal({0.5, 0.5, 0, 0}));
  EXPECT_EQ(h.distinct_count_v, 2);
  EXPECT_NEAR(h.support_projector.trace(), 2.0, 1e-12);

  auto half = 0.5 * HermitianMatrix::identity(2);
  auto cube = tensor(tensor(half, half), half);
  EXPECT_EQ(spectral_utilities(cube).distinct_count_v, 1);
}

TEST(SpectralUtilities, SupportProjectorIdempotent) {
  auto m = random_psd(2, 5);
  auto p = spectral_utilities(m).support_projector.entries();
  EXPECT_LE(frob(p * p - p), 1e-10);
}

TEST(Clusters, AmbiguousChainSplits) {
  RealVector ev(3);
  // Consecutive gaps below tol but first-to-last gap above it.
  ev << 1.0, 1.0 - 0.8e-8, 1.0 - 1.6e-8;
  auto c = cluster_eigenvalues(ev, 1e-8);
  EXPECT_EQ(c.size(), 2u);
}

TEST(Clusters, NearEqualMerge) {
  RealVector ev(3);
  ev << 0.5, 0.5 - 1e-13, 0.1;
  EXPECT_EQ(cluster_eigenvalues(ev).size(), 2u);
}

TEST(TraceUtilities, TraceNormAndProduct) {
  auto m = HermitianMatrix::diagonal({0.25, -0.25, 0.5});
  EXPECT_DOUBLE_EQ(trace_norm(m), 1.0);
  auto a = random_hermitian(1, 3), b = random_hermitian(2, 3);
  EXPECT_NEAR(trace_product(a.entries(), b.entries()),
              (a.entries() * b.entries()).trace().real(), 1e-12);
}

}  // namespace
