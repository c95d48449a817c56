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

// Classical-quantum states rho = sum_a P(a) |a><a| (x) rho_a.

#ifndef QPA_CQ_STATE_HPP_
#define QPA_CQ_STATE_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qpa/error.hpp"
#include "qpa/hermitian.hpp"

namespace qpa {

inline constexpr double kStateTolerance = 1e-10;

class CQState;
CQState make_cq_state(std::vector<double> probs,
                      std::vector<HermitianMatrix> eve_states);

/// Validated classical-quantum state. Only make_cq_state builds one.
class CQState {
 public:
  std::size_t alphabet_size() const { return probs_.size(); }
  Index eve_dim() const { return eve_states_.front().dim(); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<HermitianMatrix>& eve_states() const { return eve_states_; }
  double prob(std::size_t a) const { return probs_[a]; }
  const HermitianMatrix& eve_state(std::size_t a) const { return eve_states_[a]; }

 private:
  friend CQState make_cq_state(std::vector<double>, std::vector<HermitianMatrix>);
  CQState(std::vector<double> p, std::vector<HermitianMatrix> r)
      : probs_(std::move(p)), eve_states_(std::move(r)) {}

  std::vector<double> probs_;
  std::vector<HermitianMatrix> eve_states_;
};

/// Validates and builds a state. Every failure names its invariant:
/// length_mismatch, empty_alphabet, negative_probability, probability_sum,
/// dimension_mismatch, eve_state_not_psd, eve_state_trace.
inline CQState make_cq_state(std::vector<double> probs,
                             std::vector<HermitianMatrix> eve_states) {
  if (probs.size() != eve_states.size()) {
    throw InvalidStateError(
        "length_mismatch", std::to_string(probs.size()) + " probabilities vs " +
                               std::to_string(eve_states.size()) + " Eve states");
  }
  if (probs.empty()) throw InvalidStateError("empty_alphabet", "no symbols");
  double total = 0.0;
  for (std::size_t a = 0; a < probs.size(); ++a) {
    if (!std::isfinite(probs[a]) || probs[a] < 0.0) {
      throw InvalidStateError("negative_probability",
                              "P(" + std::to_string(a) + ") = " +
                                  std::to_string(probs[a]));
    }
    total += probs[a];
  }
  if (std::abs(total - 1.0) > kStateTolerance) {
    throw InvalidStateError("probability_sum",
                            "probabilities sum to " + std::to_string(total));
  }
  const Index d = eve_states.front().dim();
  for (std::size_t a = 0; a < eve_states.size(); ++a) {
    const auto& r = eve_states[a];
    if (r.dim() != d || d == 0) {
      throw InvalidStateError("dimension_mismatch",
                              "rho_" + std::to_string(a) + " has dimension " +
                                  std::to_string(r.dim()) + ", expected " +
                                  std::to_string(d));
    }
    if (min_eigenvalue(r) < -kStateTolerance) {
      throw InvalidStateError("eve_state_not_psd",
                              "rho_" + std::to_string(a) +
                                  " has eigenvalue " +
                                  std::to_string(min_eigenvalue(r)));
    }
    if (std::abs(r.trace() - 1.0) > kStateTolerance) {
      throw InvalidStateError("eve_state_trace",
                              "Tr rho_" + std::to_string(a) + " = " +
                                  std::to_string(r.trace()));
    }
  }
  return CQState(std::move(probs), std::move(eve_states));
}

/// Table f: {0..domain-1} -> {0..range_size-1}.
struct ClassicalFunction {
  std::vector<std::uint32_t> table;
  std::uint32_t range_size = 0;

  std::size_t domain_size() const { return table.size(); }
  std::uint32_t operator()(std::size_t a) const { return table[a]; }
};

/// Block-diagonal joint density of dimension |A| d_E.
inline HermitianMatrix joint_density(const CQState& s,
                                     Index cap = kDefaultDimensionCap) {
  const Index d = s.eve_dim();
  const Index n = static_cast<Index>(s.alphabet_size()) * d;
  if (n > cap) {
    throw SizeError("joint dimension " + std::to_string(n) + " exceeds cap " +
                    std::to_string(cap));
  }
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
    out.block(static_cast<Index>(a) * d, static_cast<Index>(a) * d, d, d) =
        s.prob(a) * s.eve_state(a).entries();
  }
  return HermitianMatrix(out);
}

/// rho^E = sum_a P(a) rho_a.
inline HermitianMatrix eve_marginal(const CQState& s) {
  ComplexMatrix acc = ComplexMatrix::Zero(s.eve_dim(), s.eve_dim());
  for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
    acc += s.prob(a) * s.eve_state(a).entries();
  }
  return HermitianMatrix(acc);
}

/// State of (f(A), E). Output symbols that receive no probability carry the
/// maximally mixed state with weight zero.
inline CQState apply_function(const CQState& s, const ClassicalFunction& f) {
  if (f.domain_size() != s.alphabet_size()) {
    throw MismatchError("function domain " + std::to_string(f.domain_size()) +
                        " does not match alphabet size " +
                        std::to_string(s.alphabet_size()));
  }
  const Index d = s.eve_dim();
  std::vector<double> probs(f.range_size, 0.0);
  std::vector<ComplexMatrix> blocks(f.range_size, ComplexMatrix::Zero(d, d));
  for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
    const std::uint32_t i = f(a);
    if (i >= f.range_size) {
      throw MismatchError("function value " + std::to_string(i) +
                          " outside range " + std::to_string(f.range_size));
    }
    probs[i] += s.prob(a);
    blocks[i] += s.prob(a) * s.eve_state(a).entries();
  }
  std::vector<HermitianMatrix> rhos;
  rhos.reserve(f.range_size);
  for (std::uint32_t i = 0; i < f.range_size; ++i) {
    if (probs[i] > 0.0) {
      rhos.emplace_back(blocks[i] / probs[i]);
    } else {
      rhos.push_back((1.0 / static_cast<double>(d)) * HermitianMatrix::identity(d));
    }
  }
  return make_cq_state(std::move(probs), std::move(rhos));
}

/// Applies the channel rho -> sum_k K rho K^dagger to every Eve state.
inline CQState apply_eve_channel(const CQState& s,
                                 const std::vector<ComplexMatrix>& kraus) {
  const Index d = s.eve_dim();
  if (kraus.empty()) throw DomainError("empty Kraus set");
  ComplexMatrix completeness = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus) {
    if (k.cols() != d || k.rows() != d) {
      throw DomainError("Kraus operator must be " + std::to_string(d) + "x" +
                        std::to_string(d));
    }
    completeness += k.adjoint() * k;
  }
  double defect = (completeness - ComplexMatrix::Identity(d, d)).norm();
  if (defect > kStateTolerance) {
    throw DomainError("Kraus set is not trace preserving (defect " +
                      std::to_string(defect) + ")");
  }
  std::vector<HermitianMatrix> rhos;
  rhos.reserve(s.alphabet_size());
  for (const auto& r : s.eve_states()) {
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (const auto& k : kraus) out += k * r.entries() * k.adjoint();
    rhos.emplace_back(out);
  }
  return make_cq_state(s.probs(), std::move(rhos));
}

/// n-fold product state. Symbol index of (a_1, ..., a_n) is
/// sum_i a_i |A|^(i-1), i.e. a_1 is the least significant digit, and the Eve
/// state is rho_{a_1} (x) ... (x) rho_{a_n}.
inline CQState tensor_power(const CQState& s, int n,
                            Index cap = kDefaultDimensionCap) {
  if (n < 1) throw DomainError("tensor power must be >= 1");
  const std::size_t A = s.alphabet_size();
  double joint = 1.0;
  for (int i = 0; i < n; ++i) {
    joint *= static_cast<double>(A) * static_cast<double>(s.eve_dim());
  }
  if (joint > static_cast<double>(cap)) {
    throw SizeError("tensor power " + std::to_string(n) + " has joint dimension " +
                    std::to_string(static_cast<long long>(joint)) +
                    " above cap " + std::to_string(cap) +
                    "; use additivity (s H_{1+s} scales linearly in n) instead");
  }
  std::vector<double> probs = s.probs();
  std::vector<HermitianMatrix> rhos = s.eve_states();
  for (int step = 1; step < n; ++step) {
    std::vector<double> next_p;
    std::vector<HermitianMatrix> next_r;
    next_p.reserve(probs.size() * A);
    next_r.reserve(probs.size() * A);
    // New digit is the most significant one.
    for (std::size_t hi = 0; hi < A; ++hi) {
      for (std::size_t lo = 0; lo < probs.size(); ++lo) {
        next_p.push_back(probs[lo] * s.prob(hi));
        next_r.push_back(tensor(rhos[lo], s.eve_state(hi), cap));
      }
    }
    probs = std::move(next_p);
    rhos = std::move(next_r);
  }
  return make_cq_state(std::move(probs), std::move(rhos));
}

namespace presets {

inline HermitianMatrix basis_projector(Index d, Index k) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
  v(k) = 1.0;
  return HermitianMatrix::outer(v);
}

/// P uniform on {0,1}, Eve holds |a><a|.
inline CQState copy() {
  return make_cq_state({0.5, 0.5}, {basis_projector(2, 0), basis_projector(2, 1)});
}

/// P uniform on {0,1}, Eve holds I/2 regardless of a.
inline CQState product() {
  auto mixed = 0.5 * HermitianMatrix::identity(2);
  return make_cq_state({0.5, 0.5}, {mixed, mixed});
}

/// P = (0.6, 0.4); rho_0 = diag(0.95, 0.05), rho_1 = 0.9|+><+| + 0.05 I.
/// The two Eve states do not commute.
inline CQState tilted_qubit() {
  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  auto rho1 = 0.9 * HermitianMatrix::outer(plus) +
              0.05 * HermitianMatrix::identity(2);
  return make_cq_state({0.6, 0.4}, {HermitianMatrix::diagonal({0.95, 0.05}), rho1});
}

/// P uniform on {0,1}; Eve holds the pure state cos(theta)|0> + (-1)^a
/// sin(theta)|1>.
inline CQState bb84(double theta = std::numbers::pi / 8) {
  std::vector<HermitianMatrix> rhos;
  for (int a = 0; a < 2; ++a) {
    Eigen::VectorXcd v(2);
    v << std::cos(theta), (a == 0 ? 1.0 : -1.0) * std::sin(theta);
    rhos.push_back(HermitianMatrix::outer(v));
  }
  return make_cq_state({0.5, 0.5}, std::move(rhos));
}

/// Qubit depolarizing channel rho -> (1 - p) rho + p I/2 as Kraus operators.
inline std::vector<ComplexMatrix> depolarizing_kraus(double p) {
  if (p < 0.0 || p > 1.0) throw DomainError("depolarizing p must lie in [0, 1]");
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const double c0 = std::sqrt(1.0 - 0.75 * p);
  const double c1 = std::sqrt(0.25 * p);
  return {c0 * ComplexMatrix::Identity(2, 2), c1 * x, c1 * y, c1 * z};
}

/// bb84(pi/8) after a depolarizing channel of strength p on Eve's side.
inline CQState depolarized(double p = 0.3) {
  return apply_eve_channel(bb84(), depolarizing_kraus(p));
}

}  // namespace presets

/// Looks up a preset by name: copy, product, tilted-qubit, bb84 (param theta,
/// default pi/8), depolarized (param p, default 0.3).
inline CQState preset(std::string_view name,
                      std::optional<double> param = std::nullopt) {
  if (name == "copy") return presets::copy();
  if (name == "product") return presets::product();
  if (name == "tilted-qubit") return presets::tilted_qubit();
  if (name == "bb84") return presets::bb84(param.value_or(std::numbers::pi / 8));
  if (name == "depolarized") return presets::depolarized(param.value_or(0.3));
  throw ParseError("unknown preset '" + std::string(name) +
                   "' (known: copy, product, tilted-qubit, bb84, depolarized)");
}

/// Seeded random state: P ~ Dirichlet(1,...,1) and rho_a = G G^dagger /
/// Tr(G G^dagger) for a complex Gaussian d_E x d_E matrix G.
inline CQState random_cq(std::uint64_t seed, std::size_t alphabet, Index eve_dim) {
  if (alphabet == 0 || eve_dim <= 0) throw DomainError("random_cq: empty shape");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> probs(alphabet);
  double total = 0.0;
  for (auto& p : probs) {
    p = -std::log1p(-uniform(rng));
    total += p;
  }
  for (auto& p : probs) p /= total;
  std::vector<HermitianMatrix> rhos;
  rhos.reserve(alphabet);
  for (std::size_t a = 0; a < alphabet; ++a) {
    ComplexMatrix g(eve_dim, eve_dim);
    for (Index i = 0; i < eve_dim; ++i) {
      for (Index j = 0; j < eve_dim; ++j) {
        double re = normal(rng);
        double im = normal(rng);
        g(i, j) = Complex(re, im);
      }
    }
    ComplexMatrix m = g * g.adjoint();
    rhos.emplace_back(m / m.trace().real());
  }
  return make_cq_state(std::move(probs), std::move(rhos));
}

}  // namespace qpa

#endif  // QPA_CQ_STATE_HPP_
