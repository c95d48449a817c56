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
#include <cstdlib>
#include <numbers>

#include "qpa/corpus.hpp"
#include "qpa/verification.hpp"
#include "reference_values.hpp"

namespace {

using namespace qpa;
constexpr double kLn2 = std::numbers::ln2;

HashFamily modified(int k, int m) { return make_family(FamilyKind::modified_toeplitz, 2, k, m); }
HashFamily toeplitz(int k, int m) { return make_family(FamilyKind::toeplitz, 2, k, m); }

TEST(Rhs, ClosedForms) {
  EXPECT_NEAR(thm1_rhs(presets::product(), 2, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(thm1_rhs(presets::copy(), 2, 1.0), 2.0, 1e-12);
  EXPECT_NEAR(thm1_rhs(presets::product(), 2, 0.5), 2.0, 1e-12);
  EXPECT_NEAR(thm2_rhs(presets::copy(), 2, 1.0), 3.0, 1e-12);
  EXPECT_NEAR(thm2_rhs(presets::product(), 4, 0.5), 1.0 + std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(finite_size_bound(presets::copy(), 2, 1.0), 2 * kLn2, 1e-12);
  EXPECT_NEAR(finite_size_bound(presets::product(), 2, 1.0), kLn2, 1e-12);
}

TEST(Rhs, OrderDomain) {
  auto s = presets::tilted_qubit();
  EXPECT_THROW(thm1_rhs(s, 2, 0.0), DomainError);
  EXPECT_THROW(thm2_rhs(s, 2, 1.5), DomainError);
  EXPECT_THROW(finite_size_bound(s, 2, -0.1), DomainError);
  EXPECT_THROW(ensemble_avg_exp_sI_bar_prime(s, modified(1, 1), 0.0), DomainError);
}

TEST(Ensemble, TrivialFamilyOnCopy) {
  EXPECT_NEAR(ensemble_avg_I_prime(presets::copy(), modified(1, 1)), kLn2, 1e-12);
  const double ibp = mutual_info_variants(presets::copy()).I_bar_prime;
  EXPECT_NEAR(ensemble_avg_exp_sI_bar_prime(presets::copy(), modified(1, 1), 1.0), std::exp(ibp),
              1e-12);
}

TEST(Ensemble, ProductStaysProductUnderSurjectiveMembers) {
  // Every modified member has full rank, so the image of a uniform key is
  // uniform and independent of E.
  auto p2 = tensor_power(presets::product(), 2);
  for (const auto& f : {modified(2, 1), modified(2, 2)}) {
    EXPECT_NEAR(ensemble_avg_I_prime(p2, f), 0.0, 1e-12) << f.descriptor();
    EXPECT_NEAR(ensemble_avg_exp_sI_bar_prime(p2, f, 0.5), 1.0, 1e-12) << f.descriptor();
  }
}

TEST(Ensemble, ToeplitzZeroMemberLeaksOnProduct) {
  // Of the four members of toeplitz:q=2,k=2,m=1 only the zero map is not
  // onto; it gives I' = log 2.
  auto p2 = tensor_power(presets::product(), 2);
  EXPECT_NEAR(ensemble_avg_I_prime(p2, toeplitz(2, 1)), kLn2 / 4, 1e-12);
  EXPECT_NEAR(ensemble_avg_exp_sI_bar_prime(p2, toeplitz(2, 1), 1.0), (3.0 + 2.0) / 4, 1e-12);
}

TEST(Ensemble, FrozenTiltedSquared) {
  auto t2 = tensor_power(presets::tilted_qubit(), 2);
  EXPECT_NEAR(ensemble_avg_I_prime(t2, modified(2, 1)), qpa_test::kTilted2AvgIPrime, 1e-10);
  EXPECT_NEAR(ensemble_avg_exp_sI_bar_prime(t2, modified(2, 1), 0.5),
              qpa_test::kTilted2AvgExpHalfIBarPrime, 1e-10);
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(i / 100.0);
  double best = INFINITY;
  for (double s : grid) best = std::min(best, finite_size_bound(t2, 4, s));
  EXPECT_NEAR(best, qpa_test::kTilted2FiniteSizeM4, 1e-10);
}

TEST(Ensemble, MismatchedFamily) {
  EXPECT_THROW(ensemble_avg_I_prime(presets::tilted_qubit(), toeplitz(2, 1)), MismatchError);
  EXPECT_THROW(verify_thm1(random_cq(3, 3, 2), toeplitz(2, 1)), MismatchError);
}

TEST(Verify, ProductThm1) {
  auto r = verify_thm1(tensor_power(presets::product(), 2), modified(2, 1));
  EXPECT_TRUE(r.all_passed());
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_EQ(r.v, 1);
  EXPECT_EQ(r.M, 2u);
  EXPECT_EQ(r.theorem, "thm1");
  EXPECT_EQ(r.family, "modified_toeplitz:q=2,k=2,m=1");
}

TEST(Verify, CopySquaredHasPositiveSlack) {
  auto c2 = tensor_power(presets::copy(), 2);
  for (const auto& f : {modified(2, 1), toeplitz(2, 1)}) {
    auto r = verify_thm1(c2, f);
    EXPECT_TRUE(r.all_passed()) << f.descriptor();
    EXPECT_GT(r.slack, 0.0);
  }
}

TEST(Verify, ProductThm2) {
  auto r = verify_thm2(tensor_power(presets::product(), 2), modified(2, 1));
  EXPECT_TRUE(r.all_passed());
  for (const auto& row : r.rows) {
    EXPECT_NEAR(row.lhs, 1.0, 1e-12);
    EXPECT_NEAR(row.rhs, 1.0 + std::pow(2.0, row.s) * std::exp(-row.s * 2 * kLn2), 1e-12);
  }
}

TEST(Verify, CopyThm2AtOne) {
  auto r = verify_thm2(tensor_power(presets::copy(), 2), modified(2, 1), {1.0});
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_NEAR(r.rows[0].rhs, 1.0 + 2.0 * std::exp(-renyi_cond_bar_star(tensor_power(presets::copy(), 2), 1.0)),
              1e-12);
  EXPECT_TRUE(r.all_passed());
}

TEST(Verify, SlackIsMinOverRows) {
  auto r = verify_thm1(random_cq(1001, 4, 3), toeplitz(2, 2));
  double m = INFINITY;
  for (const auto& row : r.rows) m = std::min(m, row.rhs - row.lhs);
  EXPECT_DOUBLE_EQ(r.slack, m);
  EXPECT_EQ(r.passed, r.slack >= -kBoundTolerance);
}

TEST(Verify, FiniteSizeWitness) {
  auto t2 = tensor_power(presets::tilted_qubit(), 2);
  auto r = verify_finite_size(t2, toeplitz(2, 2));
  EXPECT_TRUE(r.all_passed());
  auto values = ensemble_values(t2, toeplitz(2, 2));
  EXPECT_DOUBLE_EQ(r.lhs, *std::min_element(values.I_prime.begin(), values.I_prime.end()));
}

class CorpusBounds : public ::testing::TestWithParam<std::size_t> {};

TEST_P(CorpusBounds, AllBoundsHold) {
  static const auto corpus = state_corpus();
  const auto& entry = corpus.at(GetParam());
  for (const auto& f : corpus_families(entry.k)) {
    auto r1 = verify_thm1(entry.state, f, default_s_grid(), entry.name);
    auto r2 = verify_thm2(entry.state, f, default_s_grid(), entry.name);
    auto r3 = verify_finite_size(entry.state, f, default_s_grid(), entry.name);
    EXPECT_TRUE(r1.all_passed()) << entry.name << " " << f.descriptor() << " slack " << r1.slack;
    EXPECT_TRUE(r2.all_passed()) << entry.name << " " << f.descriptor() << " slack " << r2.slack;
    EXPECT_TRUE(r3.all_passed()) << entry.name << " " << f.descriptor() << " slack " << r3.slack;
    for (const auto& c : r1.side_checks) EXPECT_TRUE(c.passed) << entry.name << " " << c.name;
    for (const auto& c : r2.side_checks) EXPECT_TRUE(c.passed) << entry.name << " " << c.name;
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, CorpusBounds, ::testing::Range<std::size_t>(0, 30));

TEST(Corpus, Shape) {
  auto corpus = state_corpus();
  EXPECT_EQ(corpus.size(), 30u);
  for (const auto& e : corpus) {
    EXPECT_LE(e.state.alphabet_size(), 4u) << e.name;
    EXPECT_LE(e.state.eve_dim(), 4) << e.name;
  }
  EXPECT_EQ(corpus_families(1).size(), 2u);
  EXPECT_EQ(corpus_families(2).size(), 4u);
}

TEST(Determinism, ThreadCountDoesNotChangeResults) {
  auto s = random_cq(1007, 4, 3);
  auto f = toeplitz(2, 1);
  ::setenv("QPA_THREADS", "1", 1);
  auto serial = ensemble_values(s, f);
  auto r_serial = verify_thm1(s, f);
  ::setenv("QPA_THREADS", "4", 1);
  auto parallel = ensemble_values(s, f);
  auto r_parallel = verify_thm1(s, f);
  ::unsetenv("QPA_THREADS");
  ASSERT_EQ(serial.I_prime.size(), parallel.I_prime.size());
  for (std::size_t i = 0; i < serial.I_prime.size(); ++i) {
    EXPECT_NEAR(serial.I_prime[i], parallel.I_prime[i], 1e-12);
    EXPECT_NEAR(serial.I_bar_prime[i], parallel.I_bar_prime[i], 1e-12);
  }
  EXPECT_NEAR(r_serial.slack, r_parallel.slack, 1e-12);
}

TEST(MatrixLemmas, ZeroMatrix) {
  auto r = matrix_lemma_checks(HermitianMatrix(ComplexMatrix::Zero(3, 3)), default_s_grid());
  EXPECT_NEAR(r.min_eig_subadditive, 0.0, 1e-12);
  EXPECT_TRUE(r.passed);
}

TEST(MatrixLemmas, DiagonalExample) {
  auto x = HermitianMatrix::diagonal({1.0, 4.0});
  auto r = matrix_lemma_checks(x, {0.5});
  EXPECT_NEAR(r.min_eig_subadditive, 2.0 - std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r.min_eig_log, std::min(2.0 - std::log(2.0), 4.0 - std::log(5.0)), 1e-12);
  EXPECT_TRUE(r.passed);
}

TEST(MatrixLemmas, SeededBatch) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto r = matrix_lemma_checks(seed, static_cast<Index>(2 + seed % 5), default_s_grid());
    EXPECT_TRUE(r.passed) << "seed " << seed;
  }
}

TEST(MatrixLemmas, RejectsBadOrder) {
  EXPECT_THROW(matrix_lemma_checks(1, 2, {0.0}), DomainError);
}

TEST(Pinching, CommutingStateUnchanged) {
  auto s = make_cq_state({0.3, 0.7}, {HermitianMatrix::diagonal({0.2, 0.8}),
                                      HermitianMatrix::diagonal({0.6, 0.4})});
  auto pinched = pinch_state(s);
  for (std::size_t a = 0; a < 2; ++a) {
    EXPECT_LT((pinched.eve_state(a).entries() - s.eve_state(a).entries()).norm(), 1e-12);
  }
  auto r = pinching_bound_check(s);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.I, r.I_pinched, 1e-12);
}

TEST(Pinching, TiltedHasPositiveSlack) {
  auto r = pinching_bound_check(presets::tilted_qubit());
  EXPECT_TRUE(r.passed);
  EXPECT_GT(r.slack, 0.0);
  EXPECT_EQ(r.v, 2);
}

TEST(Pinching, Corpus) {
  for (const auto& e : state_corpus()) {
    EXPECT_TRUE(pinching_bound_check(e.state).passed) << e.name;
  }
}

}  // namespace
