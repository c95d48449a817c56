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

// Exact checks of the universal_2 privacy-amplification bounds. Ensemble
// averages are taken over every member of a hash family, so the left-hand
// sides are exact up to floating point; nothing here samples.

#ifndef QPA_VERIFICATION_HPP_
#define QPA_VERIFICATION_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qpa/cq_state.hpp"
#include "qpa/hash_family.hpp"
#include "qpa/hermitian.hpp"
#include "qpa/optimize.hpp"
#include "qpa/parallel.hpp"
#include "qpa/quantities.hpp"

namespace qpa {

/// Absolute slack (nats) below which a bound counts as violated.
inline constexpr double kBoundTolerance = 1e-9;

inline std::vector<double> default_s_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 10; ++i) g.push_back(i / 10.0);
  return g;
}

struct BoundRow {
  double s = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// A named side condition checked alongside a bound, as lhs <= rhs.
struct SideCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = false;
};

struct BoundReport {
  std::string theorem;
  std::string state_name;
  std::string family;
  int v = 0;
  std::uint32_t M = 0;
  /// Left-hand side at best_s (constant in s for thm1).
  double lhs = 0.0;
  std::vector<BoundRow> rows;
  double best_s = 0.0;
  /// min over rows of rhs - lhs.
  double slack = 0.0;
  bool passed = false;
  std::vector<SideCheck> side_checks;

  bool all_passed() const {
    return passed && std::all_of(side_checks.begin(), side_checks.end(),
                                 [](const SideCheck& c) { return c.passed; });
  }
};

inline SideCheck side_check(std::string name, double lhs, double rhs) {
  return {std::move(name), lhs, rhs, lhs <= rhs + kBoundTolerance};
}

/// Per-member values of the hashed states f_X(A), in member order.
struct EnsembleValues {
  std::vector<double> I;
  std::vector<double> I_prime;
  std::vector<double> I_bar_prime;

  std::size_t size() const { return I_prime.size(); }
};

inline void check_family_fits(const CQState& s, const HashFamily& f) {
  if (f.domain_size() != s.alphabet_size()) {
    throw MismatchError("family " + f.descriptor() + " has domain " +
                        std::to_string(f.domain_size()) +
                        " but the state alphabet has " +
                        std::to_string(s.alphabet_size()) + " symbols");
  }
}

inline EnsembleValues ensemble_values(const CQState& s, const HashFamily& f) {
  check_family_fits(s, f);
  const std::size_t n = f.member_count();
  EnsembleValues out;
  out.I.resize(n);
  out.I_prime.resize(n);
  out.I_bar_prime.resize(n);
  parallel_for(n, [&](std::size_t i) {
    CQState hashed = apply_function(s, f.member(i).function);
    auto mi = QuantityEngine(hashed).mutual_info();
    out.I[i] = mi.I;
    out.I_prime[i] = mi.I_prime;
    out.I_bar_prime[i] = mi.I_bar_prime;
  });
  return out;
}

inline double mean(const std::vector<double>& v) {
  return pairwise_sum(v) / static_cast<double>(v.size());
}

/// E_X I'(f_X(A):E), exact over all members.
inline double ensemble_avg_I_prime(const CQState& s, const HashFamily& f) {
  return mean(ensemble_values(s, f).I_prime);
}

/// E_X exp(s I-bar'(f_X(A):E)).
inline double ensemble_avg_exp_sI_bar_prime(const CQState& s, const HashFamily& f,
                                            double order) {
  if (!(order > 0.0 && order <= 1.0)) throw DomainError("s must lie in (0, 1]");
  auto values = ensemble_values(s, f);
  std::vector<double> e(values.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(order * values.I_bar_prime[i]);
  return mean(e);
}

/// v^s M^s e^{-s H_{1+s}(A|E)} / s with v the eigenvalue count of rho^E.
inline double thm1_rhs(const QuantityEngine& e, std::uint32_t M, double order) {
  if (!(order > 0.0 && order <= 1.0)) throw DomainError("s must lie in (0, 1]");
  const double log_v = std::log(static_cast<double>(e.eve_distinct_count()));
  return std::exp(order * (log_v + std::log(static_cast<double>(M))) +
                  e.log_renyi_sum(order)) /
         order;
}

inline double thm1_rhs(const CQState& s, std::uint32_t M, double order) {
  return thm1_rhs(QuantityEngine(s), M, order);
}

/// 1 + M^s e^{-s H-bar*_{1+s}(A|E)}.
inline double thm2_rhs(const QuantityEngine& e, std::uint32_t M, double order) {
  if (!(order > 0.0 && order <= 1.0)) throw DomainError("s must lie in (0, 1]");
  return 1.0 + std::exp(order * std::log(static_cast<double>(M)) +
                        e.log_bar_star_sum(order));
}

inline double thm2_rhs(const CQState& s, std::uint32_t M, double order) {
  return thm2_rhs(QuantityEngine(s), M, order);
}

/// log v + log(2)/s + max{0, log M - H_{1+s}(A|E)}.
inline double finite_size_bound(const QuantityEngine& e, std::uint32_t M, double order) {
  if (!(order > 0.0 && order <= 1.0)) throw DomainError("s must lie in (0, 1]");
  const double log_v = std::log(static_cast<double>(e.eve_distinct_count()));
  return log_v + std::numbers::ln2 / order +
         std::max(0.0, std::log(static_cast<double>(M)) - e.renyi_cond(order));
}

inline double finite_size_bound(const CQState& s, std::uint32_t M, double order) {
  return finite_size_bound(QuantityEngine(s), M, order);
}

/// Minimum of a bound over the grid, then golden-section refinement in the
/// bracket around the best grid point.
template <class F>
BoundRow minimize_over_s(F&& rhs, const std::vector<double>& grid, double lhs) {
  std::size_t best = 0;
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = rhs(grid[i]);
    if (values[i] < values[best]) best = i;
  }
  double lo = best == 0 ? grid.front() / 2 : grid[best - 1];
  double hi = best + 1 == grid.size() ? grid.back() : grid[best + 1];
  hi = std::min(hi, 1.0);
  ArgMax refined = golden_section_max([&](double s) { return -rhs(s); }, lo, hi, 1e-3 * (hi - lo));
  if (-refined.value < values[best]) return {refined.x, lhs, -refined.value};
  return {grid[best], lhs, values[best]};
}

/// E_X I' <= v^s M^s e^{-s H_{1+s}} / s over the s grid (plus a refined
/// point), with the side conditions E_X I <= E_X I' and the existence of a
/// member meeting the bound.
inline BoundReport verify_thm1(const CQState& s, const HashFamily& f,
                               const std::vector<double>& grid = default_s_grid(),
                               const std::string& state_name = "") {
  QuantityEngine engine(s);
  auto values = ensemble_values(s, f);
  BoundReport r;
  r.theorem = "thm1";
  r.state_name = state_name;
  r.family = f.descriptor();
  r.v = engine.eve_distinct_count();
  r.M = f.range_size();
  r.lhs = mean(values.I_prime);
  for (double x : grid) r.rows.push_back({x, r.lhs, thm1_rhs(engine, r.M, x)});
  BoundRow refined = minimize_over_s([&](double x) { return thm1_rhs(engine, r.M, x); },
                                     grid, r.lhs);
  if (std::none_of(grid.begin(), grid.end(), [&](double x) { return x == refined.s; })) {
    r.rows.push_back(refined);
  }
  r.slack = std::numeric_limits<double>::infinity();
  for (const auto& row : r.rows) {
    if (row.rhs - row.lhs < r.slack) {
      r.slack = row.rhs - row.lhs;
      r.best_s = row.s;
    }
  }
  r.passed = r.slack >= -kBoundTolerance;
  r.side_checks.push_back(side_check("E_X I <= E_X I'", mean(values.I), r.lhs));
  const double best_member = *std::min_element(values.I_prime.begin(), values.I_prime.end());
  r.side_checks.push_back(side_check("min_X I' <= min_s rhs", best_member, r.lhs + r.slack));
  return r;
}

/// E_X e^{s I-bar'} <= 1 + M^s e^{-s H-bar*_{1+s}} at every grid point, with
/// the consequence s E_X I-bar' <= e^{s (log M - H-bar*_{1+s})}.
inline BoundReport verify_thm2(const CQState& s, const HashFamily& f,
                               const std::vector<double>& grid = default_s_grid(),
                               const std::string& state_name = "") {
  QuantityEngine engine(s);
  auto values = ensemble_values(s, f);
  BoundReport r;
  r.theorem = "thm2";
  r.state_name = state_name;
  r.family = f.descriptor();
  r.v = engine.eve_distinct_count();
  r.M = f.range_size();
  r.slack = std::numeric_limits<double>::infinity();
  const double mean_ibp = mean(values.I_bar_prime);
  double worst_side = std::numeric_limits<double>::infinity();
  SideCheck consequence{"s E_X Ibar' <= e^{s(log M - Hbar*)}", 0, 0, true};
  for (double x : grid) {
    if (!(x > 0.0 && x <= 1.0)) throw DomainError("s must lie in (0, 1]");
    std::vector<double> e(values.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::exp(x * values.I_bar_prime[i]);
    BoundRow row{x, mean(e), thm2_rhs(engine, r.M, x)};
    r.rows.push_back(row);
    if (row.rhs - row.lhs < r.slack) {
      r.slack = row.rhs - row.lhs;
      r.best_s = x;
      r.lhs = row.lhs;
    }
    const double side_lhs = x * mean_ibp;
    const double side_rhs = row.rhs - 1.0;
    if (side_rhs - side_lhs < worst_side) {
      worst_side = side_rhs - side_lhs;
      consequence = side_check(consequence.name, side_lhs, side_rhs);
    }
  }
  r.passed = r.slack >= -kBoundTolerance;
  r.side_checks.push_back(consequence);
  return r;
}

/// Finite-size statement: some member has
/// I' <= log v + log(2)/s + max{0, log M - H_{1+s}} (minimized over s).
inline BoundReport verify_finite_size(const CQState& s, const HashFamily& f,
                                      const std::vector<double>& grid = default_s_grid(),
                                      const std::string& state_name = "") {
  QuantityEngine engine(s);
  auto values = ensemble_values(s, f);
  BoundReport r;
  r.theorem = "finite_size";
  r.state_name = state_name;
  r.family = f.descriptor();
  r.v = engine.eve_distinct_count();
  r.M = f.range_size();
  r.lhs = *std::min_element(values.I_prime.begin(), values.I_prime.end());
  r.slack = std::numeric_limits<double>::infinity();
  for (double x : grid) {
    BoundRow row{x, r.lhs, finite_size_bound(engine, r.M, x)};
    r.rows.push_back(row);
    if (row.rhs - row.lhs < r.slack) {
      r.slack = row.rhs - row.lhs;
      r.best_s = x;
    }
  }
  r.passed = r.slack >= -kBoundTolerance;
  return r;
}

struct MatrixLemmaReport {
  std::uint64_t seed = 0;
  Index dim = 0;
  /// Smallest eigenvalue of (I + X^s) - (I + X)^s over the s grid.
  double min_eig_subadditive = 0.0;
  /// Smallest eigenvalue of X^s / s - log(I + X) over the s grid.
  double min_eig_log = 0.0;
  bool passed = false;
};

/// Seeded PSD X = G G^dagger with complex Gaussian G, scaled by a random
/// factor in [0, 4].
inline HermitianMatrix random_psd(std::uint64_t seed, Index dim) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(0.0, 4.0);
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      double re = normal(rng);
      double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  double c = scale(rng);
  return HermitianMatrix(c * g * g.adjoint() / static_cast<double>(dim));
}

/// (I + X)^s <= I + X^s and log(I + X) <= X^s / s for PSD X, s in (0, 1].
inline MatrixLemmaReport matrix_lemma_checks(const HermitianMatrix& x,
                                             const std::vector<double>& grid) {
  MatrixLemmaReport r;
  r.dim = x.dim();
  r.min_eig_subadditive = std::numeric_limits<double>::infinity();
  r.min_eig_log = std::numeric_limits<double>::infinity();
  const auto id = HermitianMatrix::identity(x.dim());
  const HermitianMatrix shifted = id + x;
  const HermitianMatrix log_shifted = matrix_function(shifted, Log{});
  for (double s : grid) {
    if (!(s > 0.0 && s <= 1.0)) throw DomainError("s must lie in (0, 1]");
    HermitianMatrix xs = matrix_function(x, Power{s});
    HermitianMatrix lhs = matrix_function(shifted, Power{s});
    r.min_eig_subadditive = std::min(r.min_eig_subadditive, min_eigenvalue((id + xs) - lhs));
    r.min_eig_log = std::min(r.min_eig_log, min_eigenvalue((1.0 / s) * xs - log_shifted));
  }
  r.passed = r.min_eig_subadditive >= -kBoundTolerance && r.min_eig_log >= -kBoundTolerance;
  return r;
}

inline MatrixLemmaReport matrix_lemma_checks(std::uint64_t seed, Index dim,
                                             const std::vector<double>& grid) {
  auto r = matrix_lemma_checks(random_psd(seed, dim), grid);
  r.seed = seed;
  return r;
}

/// rho_a -> E_{rho^E}(rho_a) on every symbol: the pinching of the joint state
/// by I (x) rho^E.
inline CQState pinch_state(const CQState& s) {
  HermitianMatrix sigma = eve_marginal(s);
  std::vector<HermitianMatrix> rhos;
  rhos.reserve(s.alphabet_size());
  for (const auto& r : s.eve_states()) rhos.push_back(pinch(sigma, r));
  return make_cq_state(s.probs(), std::move(rhos));
}

struct PinchingReport {
  int v = 0;
  double I = 0.0;
  double I_pinched = 0.0;
  double I_bar_pinched = 0.0;
  /// I_pinched + log v - I.
  double slack = 0.0;
  /// Smallest eigenvalue of v E(rho_a) - rho_a over all symbols.
  double min_eig_pinching = 0.0;
  bool passed = false;
};

/// I(A:E|rho) <= I(A:E|E(rho)) + log v, I = I-bar on the pinched state, and
/// rho <= v E(rho) blockwise.
inline PinchingReport pinching_bound_check(const CQState& s) {
  PinchingReport r;
  QuantityEngine engine(s);
  HermitianMatrix sigma = engine.eve_marginal_matrix();
  r.v = engine.eve_distinct_count();
  CQState pinched = pinch_state(s);
  auto before = engine.mutual_info();
  auto after = QuantityEngine(pinched).mutual_info();
  r.I = before.I;
  r.I_pinched = after.I;
  r.I_bar_pinched = after.I_bar;
  r.slack = r.I_pinched + std::log(static_cast<double>(r.v)) - r.I;
  r.min_eig_pinching = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
    const auto& rho = s.eve_state(a);
    r.min_eig_pinching = std::min(
        r.min_eig_pinching,
        min_eigenvalue(static_cast<double>(r.v) * pinched.eve_state(a) - rho));
  }
  r.passed = r.slack >= -kBoundTolerance && r.min_eig_pinching >= -kBoundTolerance &&
             std::abs(r.I_pinched - r.I_bar_pinched) <= kBoundTolerance;
  return r;
}

}  // namespace qpa

#endif  // QPA_VERIFICATION_HPP_
