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

// Straightforward evaluation of the quantities on the full |A| d_E joint
// matrix. O((|A| d_E)^3) per call; kept as a cross-check for the blockwise
// engine in quantities.hpp.

#ifndef QPA_JOINT_REFERENCE_HPP_
#define QPA_JOINT_REFERENCE_HPP_

#include <cmath>

#include "qpa/cq_state.hpp"
#include "qpa/hermitian.hpp"
#include "qpa/quantities.hpp"

namespace qpa::joint {

inline HermitianMatrix lift_eve(const HermitianMatrix& m, std::size_t alphabet) {
  return tensor(HermitianMatrix::identity(static_cast<Index>(alphabet)), m);
}

inline HermitianMatrix classical_marginal_times(const CQState& s,
                                                const HermitianMatrix& m) {
  std::vector<double> p = s.probs();
  return tensor(HermitianMatrix::diagonal(p), m);
}

inline double von_neumann(const HermitianMatrix& m) {
  double h = 0.0;
  const RealVector& ev = m.spectrum().eigenvalues;
  for (Index i = 0; i < ev.size(); ++i) h += entropy_term(std::max(0.0, ev(i)));
  return h;
}

inline double cond_entropy(const CQState& s) {
  return von_neumann(joint_density(s)) - von_neumann(eve_marginal(s));
}

inline HermitianMatrix sandwich(const CQState& s) {
  HermitianMatrix rho = joint_density(s);
  HermitianMatrix isq = lift_eve(matrix_function(eve_marginal(s), Power{-0.5}),
                                 s.alphabet_size());
  return HermitianMatrix(isq.entries() * rho.entries() * isq.entries());
}

inline double cond_entropy_bar(const CQState& s) {
  HermitianMatrix rho = joint_density(s);
  auto rel = relative_entropies(rho, lift_eve(eve_marginal(s), s.alphabet_size()));
  return -rel.D_bar;
}

inline double renyi_cond(const CQState& s, double order) {
  if (order == 0.0) return joint::cond_entropy(s);
  HermitianMatrix rho = joint_density(s);
  HermitianMatrix lhs = matrix_function(rho, Power{1.0 + order});
  HermitianMatrix rhs = lift_eve(matrix_function(eve_marginal(s), Power{-order}),
                                 s.alphabet_size());
  return -std::log(trace_product(lhs.entries(), rhs.entries())) / order;
}

inline double renyi_cond_bar_star(const CQState& s, double order) {
  HermitianMatrix rho = joint_density(s);
  HermitianMatrix powered = matrix_function(sandwich(s), Power{order});
  return -std::log(trace_product(rho.entries(), powered.entries())) / order;
}

inline double min_entropy(const CQState& s) {
  return -std::log(spectral_utilities(sandwich(s)).operator_norm);
}

inline MutualInformation mutual_info(const CQState& s) {
  HermitianMatrix rho = joint_density(s);
  HermitianMatrix sigma = eve_marginal(s);
  const double inv = 1.0 / static_cast<double>(s.alphabet_size());
  auto with_marginal = relative_entropies(rho, classical_marginal_times(s, sigma));
  auto with_mixed = relative_entropies(rho, lift_eve(inv * sigma, s.alphabet_size()));
  return {with_marginal.D, with_mixed.D, with_marginal.D_bar, with_mixed.D_bar};
}

inline TraceDistances trace_distances(const CQState& s) {
  HermitianMatrix rho = joint_density(s);
  HermitianMatrix sigma = eve_marginal(s);
  const double inv = 1.0 / static_cast<double>(s.alphabet_size());
  return {trace_norm(rho - classical_marginal_times(s, sigma)),
          trace_norm(rho - lift_eve(inv * sigma, s.alphabet_size()))};
}

/// phi(t) through Tr_A of the joint matrix power.
inline double phi(const CQState& s, double t) {
  HermitianMatrix powered = matrix_function(joint_density(s), Power{1.0 / (1.0 - t)});
  const Index d = s.eve_dim();
  ComplexMatrix partial = ComplexMatrix::Zero(d, d);
  for (std::size_t a = 0; a < s.alphabet_size(); ++a) {
    partial += powered.entries().block(static_cast<Index>(a) * d,
                                       static_cast<Index>(a) * d, d, d);
  }
  HermitianMatrix reduced = matrix_function(HermitianMatrix(partial), Power{1.0 - t});
  return std::log(reduced.trace());
}

}  // namespace qpa::joint

#endif  // QPA_JOINT_REFERENCE_HPP_
