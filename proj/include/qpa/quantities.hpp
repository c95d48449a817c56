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

// Entropies, conditional Renyi entropies, mutual-information variants and
// trace distances of classical-quantum states. Everything is in nats.
//
// All quantities are evaluated blockwise: one d_E x d_E problem per symbol
// plus one shared eigendecomposition of rho^E. The joint |A| d_E route lives
// in joint_reference.hpp and is only used to cross-check this one.

#ifndef QPA_QUANTITIES_HPP_
#define QPA_QUANTITIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "qpa/cq_state.hpp"
#include "qpa/error.hpp"
#include "qpa/hermitian.hpp"
#include "qpa/parallel.hpp"

namespace qpa {

inline constexpr double kRenyiOrderMax = 4.0;
/// Weight of rho_a outside the support of its sandwiched operator above which
/// the log-sandwich quantities are taken to be infinite.
inline constexpr double kSupportWeightTolerance = 1e-9;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// -x log x with 0 log 0 = 0.
inline double entropy_term(double x) { return x > 0.0 ? -x * std::log(x) : 0.0; }

struct VonNeumannEntropies {
  double H_AE = 0.0;
  double H_E = 0.0;
  double H_A = 0.0;
};

struct MutualInformation {
  double I = 0.0;
  double I_prime = 0.0;
  double I_bar = 0.0;
  double I_bar_prime = 0.0;
};

struct TraceDistances {
  double d1 = 0.0;
  double d1_prime = 0.0;
};

struct RelativeEntropies {
  double D = 0.0;
  double D_bar = 0.0;
  /// False when supp(rho) is not inside supp(sigma); both values are +inf.
  bool support_ok = true;
};

/// Formats s for quantity identifiers, e.g. 0.5 -> "0.5".
inline std::string order_label(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", s);
  return buf;
}

/// Precomputed spectral data of one state; every query is a cheap scalar
/// reduction over it.
class QuantityEngine {
 public:
  explicit QuantityEngine(const CQState& state)
      : state_(state),
        sigma_(eve_marginal(state)),
        blocks_(state.alphabet_size()) {
    const Spectrum& sig = sigma_.spectrum();
    sigma_cutoff_ = kSupportTolerance * sig.max_abs();
    const Index d = state.eve_dim();
    RealVector inv_sqrt(d);
    for (Index j = 0; j < d; ++j) {
      double mu = sig.eigenvalues(j);
      inv_sqrt(j) = mu > sigma_cutoff_ ? 1.0 / std::sqrt(mu) : 0.0;
    }
    sigma_inv_sqrt_ = sig.eigenvectors * inv_sqrt.cast<Complex>().asDiagonal() *
                      sig.eigenvectors.adjoint();
    for (std::size_t a = 0; a < blocks_.size(); ++a) prepare_block(a);
  }

  const CQState& state() const { return state_; }
  const HermitianMatrix& eve_marginal_matrix() const { return sigma_; }

  /// v: number of distinct eigenvalues of rho^E.
  int eve_distinct_count() const { return distinct_eigenvalue_count(sigma_); }

  VonNeumannEntropies von_neumann() const {
    VonNeumannEntropies out;
    std::vector<double> ae(blocks_.size());
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      double acc = 0.0;
      for (double l : blocks_[a].lambda) acc += entropy_term(p * l);
      ae[a] = acc;
      out.H_A += entropy_term(p);
    }
    out.H_AE = pairwise_sum(ae);
    for (Index j = 0; j < sigma_.dim(); ++j) {
      out.H_E += entropy_term(std::max(0.0, sigma_.spectrum().eigenvalues(j)));
    }
    return out;
  }

  /// H(A|E) = H(A,E) - H(E).
  double cond_entropy() const {
    auto h = von_neumann();
    return h.H_AE - h.H_E;
  }

  /// H-bar(A|E) = -Tr rho log((I (x) rho_E^{-1/2}) rho (I (x) rho_E^{-1/2})).
  /// +inf when some rho_a has weight outside the support of its sandwich.
  double cond_entropy_bar() const {
    if (sandwich_support_violated()) return kInfinity;
    std::vector<double> terms(blocks_.size(), 0.0);
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      if (p <= 0.0) continue;
      terms[a] = -p * (std::log(p) + blocks_[a].trace_rho_log_sandwich);
    }
    return pairwise_sum(terms);
  }

  /// log sum_a P(a)^{1+s} Tr rho_a^{1+s} rho_E^{-s}, which equals
  /// -s H_{1+s}(A|E).
  double log_renyi_sum(double s) const {
    std::vector<double> terms(blocks_.size(), 0.0);
    const RealVector& mu = sigma_.spectrum().eigenvalues;
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      if (p <= 0.0) continue;
      const Block& b = blocks_[a];
      double acc = 0.0;
      for (std::size_t i = 0; i < b.lambda.size(); ++i) {
        if (b.lambda[i] <= 0.0) continue;
        double li = std::pow(b.lambda[i], 1.0 + s);
        for (Index j = 0; j < mu.size(); ++j) {
          if (mu(j) <= sigma_cutoff_) continue;
          acc += li * std::pow(mu(j), -s) * b.overlap(static_cast<Index>(i), j);
        }
      }
      terms[a] = std::pow(p, 1.0 + s) * acc;
    }
    return std::log(pairwise_sum(terms));
  }

  /// s H_{1+s}(A|E); exactly 0 at s = 0.
  double scaled_renyi_cond(double s) const {
    check_order(s, true);
    return s == 0.0 ? 0.0 : -log_renyi_sum(s);
  }

  /// H_{1+s}(A|E). s = 0 gives the von Neumann limit H(A|E).
  double renyi_cond(double s) const {
    check_order(s, true);
    if (s == 0.0) return cond_entropy();
    return -log_renyi_sum(s) / s;
  }

  /// log sum_a P(a)^{1+s} Tr rho_a (rho_E^{-1/2} rho_a rho_E^{-1/2})^s.
  double log_bar_star_sum(double s) const {
    std::vector<double> terms(blocks_.size(), 0.0);
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      if (p <= 0.0) continue;
      const Block& b = blocks_[a];
      double acc = 0.0;
      for (std::size_t k = 0; k < b.sandwich_eigs.size(); ++k) {
        if (b.sandwich_eigs[k] <= b.sandwich_cutoff) continue;
        acc += b.sandwich_weights[k] * std::pow(b.sandwich_eigs[k], s);
      }
      terms[a] = std::pow(p, 1.0 + s) * acc;
    }
    return std::log(pairwise_sum(terms));
  }

  /// H-bar*_{1+s}(A|E) for s in (0, 4]. The s -> 0 limit is
  /// cond_entropy_bar(), which callers must request explicitly.
  double renyi_cond_bar_star(double s) const {
    check_order(s, false);
    return -log_bar_star_sum(s) / s;
  }

  /// H_min(A|E) = -log || (I (x) rho_E^{-1/2}) rho (I (x) rho_E^{-1/2}) ||.
  double min_entropy() const {
    double norm = 0.0;
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      if (p <= 0.0 || blocks_[a].sandwich_eigs.empty()) continue;
      norm = std::max(norm, p * blocks_[a].sandwich_eigs.front());
    }
    return -std::log(norm);
  }

  MutualInformation mutual_info() const {
    MutualInformation out;
    const double log_alphabet = std::log(static_cast<double>(blocks_.size()));
    const bool violated = sandwich_support_violated();
    std::vector<double> i_terms(blocks_.size(), 0.0);
    std::vector<double> ip_terms(blocks_.size(), 0.0);
    std::vector<double> ib_terms(blocks_.size(), 0.0);
    std::vector<double> ibp_terms(blocks_.size(), 0.0);
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      if (p <= 0.0) continue;
      const Block& b = blocks_[a];
      double neg_entropy = 0.0;
      for (double l : b.lambda) neg_entropy -= entropy_term(l);
      const double rel = neg_entropy - b.trace_rho_log_sigma;
      i_terms[a] = p * rel;
      ip_terms[a] = p * (std::log(p) + log_alphabet + rel);
      ib_terms[a] = p * b.trace_rho_log_sandwich;
      ibp_terms[a] = p * (std::log(p) + log_alphabet + b.trace_rho_log_sandwich);
    }
    out.I = pairwise_sum(i_terms);
    out.I_prime = pairwise_sum(ip_terms);
    out.I_bar = violated ? -kInfinity : pairwise_sum(ib_terms);
    out.I_bar_prime = violated ? -kInfinity : pairwise_sum(ibp_terms);
    return out;
  }

  /// d1 = ||rho - rho_A (x) rho_E||_1 and d1' = ||rho - rho_mix (x) rho_E||_1.
  TraceDistances trace_distances() const {
    TraceDistances out;
    const double inv_alphabet = 1.0 / static_cast<double>(blocks_.size());
    std::vector<double> t1(blocks_.size()), t2(blocks_.size());
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      const ComplexMatrix& r = state_.eve_state(a).entries();
      t1[a] = trace_norm(HermitianMatrix(p * (r - sigma_.entries())));
      t2[a] = trace_norm(HermitianMatrix(p * r - inv_alphabet * sigma_.entries()));
    }
    out.d1 = pairwise_sum(t1);
    out.d1_prime = pairwise_sum(t2);
    return out;
  }

  /// phi(t) = log Tr_E (sum_a P(a)^{1/(1-t)} rho_a^{1/(1-t)})^{1-t}, t in
  /// [0, 1). The sum is rescaled by its largest term before raising to high
  /// powers.
  double phi(double t) const {
    if (!(t >= 0.0 && t < 1.0)) {
      throw DomainError("phi: t must lie in [0, 1), got " + std::to_string(t));
    }
    if (t == 0.0) return 0.0;
    const double power = 1.0 / (1.0 - t);
    double scale = 0.0;
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      if (p <= 0.0 || blocks_[a].lambda.empty()) continue;
      scale = std::max(scale, p * blocks_[a].lambda.front());
    }
    const Index d = state_.eve_dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      const double p = state_.prob(a);
      if (p <= 0.0) continue;
      const Block& b = blocks_[a];
      RealVector scaled(d);
      for (Index i = 0; i < d; ++i) {
        double x = p * b.lambda[static_cast<std::size_t>(i)] / scale;
        scaled(i) = x > 0.0 ? std::pow(x, power) : 0.0;
      }
      sum += b.vectors * scaled.cast<Complex>().asDiagonal() * b.vectors.adjoint();
    }
    HermitianMatrix s(sum);
    double acc = 0.0;
    for (Index i = 0; i < d; ++i) {
      double x = s.spectrum().eigenvalues(i);
      if (x > 0.0) acc += std::pow(x, 1.0 - t);
    }
    return std::log(scale) + std::log(acc);
  }

  /// True when some rho_a (P(a) > 0) is not supported inside
  /// rho_E^{-1/2} rho_a rho_E^{-1/2}; H-bar and I-bar are then infinite.
  bool sandwich_support_violated() const {
    for (std::size_t a = 0; a < blocks_.size(); ++a) {
      if (state_.prob(a) > 0.0 &&
          blocks_[a].outside_weight > kSupportWeightTolerance) {
        return true;
      }
    }
    return false;
  }

 private:
  struct Block {
    std::vector<double> lambda;  // eigenvalues of rho_a, descending, >= 0
    ComplexMatrix vectors;
    Eigen::MatrixXd overlap;  // |<u_i|w_j>|^2 against rho_E eigenvectors
    double trace_rho_log_sigma = 0.0;
    std::vector<double> sandwich_eigs;     // of rho_E^{-1/2} rho_a rho_E^{-1/2}
    std::vector<double> sandwich_weights;  // <z_k| rho_a |z_k>
    double sandwich_cutoff = 0.0;
    double outside_weight = 0.0;
    double trace_rho_log_sandwich = 0.0;
  };

  static void check_order(double s, bool allow_zero) {
    if (!(s >= 0.0 && s <= kRenyiOrderMax)) {
      throw DomainError("Renyi parameter s must lie in [0, 4], got " +
                        std::to_string(s));
    }
    if (!allow_zero && s == 0.0) {
      throw DomainError(
          "H-bar*_{1+s} is undefined at s = 0; use cond_entropy_bar for the limit");
    }
  }

  void prepare_block(std::size_t a) {
    Block& b = blocks_[a];
    const HermitianMatrix& rho = state_.eve_state(a);
    const Spectrum& rs = rho.spectrum();
    const Spectrum& sig = sigma_.spectrum();
    const Index d = rho.dim();
    b.lambda.resize(static_cast<std::size_t>(d));
    for (Index i = 0; i < d; ++i) {
      b.lambda[static_cast<std::size_t>(i)] = std::max(0.0, rs.eigenvalues(i));
    }
    b.vectors = rs.eigenvectors;
    b.overlap = (rs.eigenvectors.adjoint() * sig.eigenvectors).cwiseAbs2();
    for (Index i = 0; i < d; ++i) {
      for (Index j = 0; j < d; ++j) {
        double mu = sig.eigenvalues(j);
        if (mu <= sigma_cutoff_) continue;
        b.trace_rho_log_sigma +=
            b.lambda[static_cast<std::size_t>(i)] * b.overlap(i, j) * std::log(mu);
      }
    }
    HermitianMatrix sandwich(sigma_inv_sqrt_ * rho.entries() * sigma_inv_sqrt_);
    const Spectrum& ss = sandwich.spectrum();
    b.sandwich_cutoff = kSupportTolerance * ss.max_abs();
    b.sandwich_eigs.resize(static_cast<std::size_t>(d));
    b.sandwich_weights.resize(static_cast<std::size_t>(d));
    double inside = 0.0;
    for (Index k = 0; k < d; ++k) {
      auto z = ss.eigenvectors.col(k);
      double w = (z.adjoint() * rho.entries() * z)(0, 0).real();
      b.sandwich_eigs[static_cast<std::size_t>(k)] = ss.eigenvalues(k);
      b.sandwich_weights[static_cast<std::size_t>(k)] = w;
      if (ss.eigenvalues(k) > b.sandwich_cutoff) {
        inside += w;
        b.trace_rho_log_sandwich += w * std::log(ss.eigenvalues(k));
      }
    }
    b.outside_weight = std::max(0.0, rho.trace() - inside);
  }

  CQState state_;
  HermitianMatrix sigma_;
  ComplexMatrix sigma_inv_sqrt_;
  double sigma_cutoff_ = 0.0;
  std::vector<Block> blocks_;
};

// Free-function surface, one engine per call.

inline VonNeumannEntropies von_neumann_entropies(const CQState& s) {
  return QuantityEngine(s).von_neumann();
}
inline double cond_entropy(const CQState& s) { return QuantityEngine(s).cond_entropy(); }
inline double cond_entropy_bar(const CQState& s) {
  return QuantityEngine(s).cond_entropy_bar();
}
inline double renyi_cond(const CQState& s, double order) {
  return QuantityEngine(s).renyi_cond(order);
}
inline double renyi_cond_bar_star(const CQState& s, double order) {
  return QuantityEngine(s).renyi_cond_bar_star(order);
}
inline double min_entropy(const CQState& s) { return QuantityEngine(s).min_entropy(); }
inline MutualInformation mutual_info_variants(const CQState& s) {
  return QuantityEngine(s).mutual_info();
}
inline TraceDistances trace_distances(const CQState& s) {
  return QuantityEngine(s).trace_distances();
}
inline double phi_quantity(const CQState& s, double t) { return QuantityEngine(s).phi(t); }

/// Umegaki D(rho||sigma) = Tr rho (log rho - log sigma) and
/// D-bar(rho||sigma) = Tr rho log(sigma^{-1/2} rho sigma^{-1/2}).
/// supp(rho) outside supp(sigma) gives +inf for both; rho with weight outside
/// the support of the sandwich gives D-bar = -inf.
inline RelativeEntropies relative_entropies(const HermitianMatrix& rho,
                                            const HermitianMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DomainError("relative_entropies: dimension mismatch");
  }
  RelativeEntropies out;
  const Spectrum& ss = sigma.spectrum();
  const Spectrum& rs = rho.spectrum();
  const double cutoff = kSupportTolerance * ss.max_abs();
  const Index d = rho.dim();
  RealVector support(d), log_sigma(d), inv_sqrt(d);
  for (Index j = 0; j < d; ++j) {
    const double mu = ss.eigenvalues(j);
    const bool in = mu > cutoff;
    support(j) = in ? 1.0 : 0.0;
    log_sigma(j) = in ? std::log(mu) : 0.0;
    inv_sqrt(j) = in ? 1.0 / std::sqrt(mu) : 0.0;
  }
  auto rebuild = [&](const RealVector& v) {
    return ComplexMatrix(ss.eigenvectors * v.cast<Complex>().asDiagonal() *
                         ss.eigenvectors.adjoint());
  };
  const double inside_sigma = trace_product(rho.entries(), rebuild(support));
  if (rho.trace() - inside_sigma > kSupportWeightTolerance) {
    out.support_ok = false;
    out.D = kInfinity;
    out.D_bar = kInfinity;
    return out;
  }
  double tr_rho_log_rho = 0.0;
  for (Index i = 0; i < d; ++i) tr_rho_log_rho -= entropy_term(std::max(0.0, rs.eigenvalues(i)));
  out.D = tr_rho_log_rho - trace_product(rho.entries(), rebuild(log_sigma));

  ComplexMatrix isq = rebuild(inv_sqrt);
  HermitianMatrix sandwich(isq * rho.entries() * isq);
  const Spectrum& ws = sandwich.spectrum();
  const double wcut = kSupportTolerance * ws.max_abs();
  double inside = 0.0;
  double acc = 0.0;
  for (Index k = 0; k < d; ++k) {
    if (ws.eigenvalues(k) <= wcut) continue;
    auto z = ws.eigenvectors.col(k);
    double w = (z.adjoint() * rho.entries() * z)(0, 0).real();
    inside += w;
    acc += w * std::log(ws.eigenvalues(k));
  }
  out.D_bar = rho.trace() - inside > kSupportWeightTolerance ? -kInfinity : acc;
  return out;
}

/// Named values of every quantity at the requested Renyi orders (s) and phi
/// arguments (t). Units are nats.
struct QuantityReport {
  std::map<std::string, double> values;
  std::string units = "nats";

  double at(const std::string& key) const { return values.at(key); }
};

inline QuantityReport quantity_report(const CQState& state,
                                      const std::vector<double>& s_values,
                                      const std::vector<double>& t_values = {}) {
  QuantityEngine e(state);
  QuantityReport r;
  auto h = e.von_neumann();
  r.values["H_AE"] = h.H_AE;
  r.values["H_E"] = h.H_E;
  r.values["H_A"] = h.H_A;
  r.values["H_cond"] = h.H_AE - h.H_E;
  r.values["H_cond_bar"] = e.cond_entropy_bar();
  r.values["H_min"] = e.min_entropy();
  auto mi = e.mutual_info();
  r.values["I"] = mi.I;
  r.values["I_prime"] = mi.I_prime;
  r.values["I_bar"] = mi.I_bar;
  r.values["I_bar_prime"] = mi.I_bar_prime;
  auto td = e.trace_distances();
  r.values["d1"] = td.d1;
  r.values["d1_prime"] = td.d1_prime;
  r.values["v"] = e.eve_distinct_count();
  for (double s : s_values) {
    r.values["H_renyi(" + order_label(s) + ")"] = e.renyi_cond(s);
    if (s > 0.0) {
      r.values["H_renyi_bar_star(" + order_label(s) + ")"] = e.renyi_cond_bar_star(s);
    }
  }
  for (double t : t_values) r.values["phi(" + order_label(t) + ")"] = e.phi(t);
  return r;
}

}  // namespace qpa

#endif  // QPA_QUANTITIES_HPP_
