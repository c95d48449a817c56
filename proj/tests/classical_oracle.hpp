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

// Plain scalar formulas for states whose Eve blocks are all diagonal. Works on
// the joint distribution Q(a, e) = P(a) r_a(e) only; no matrices involved.

#ifndef QPA_TESTS_CLASSICAL_ORACLE_HPP_
#define QPA_TESTS_CLASSICAL_ORACLE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace qpa_test {

struct ClassicalState {
  std::vector<double> P;
  /// r[a][e], each row a distribution.
  std::vector<std::vector<double>> r;

  std::size_t A() const { return P.size(); }
  std::size_t E() const { return r.front().size(); }
  double Q(std::size_t a, std::size_t e) const { return P[a] * r[a][e]; }
  double q(std::size_t e) const {
    double s = 0;
    for (std::size_t a = 0; a < A(); ++a) s += Q(a, e);
    return s;
  }
};

/// Seeded diagonal state; roughly a third of the Eve entries are exact zeros
/// so support handling is exercised.
inline ClassicalState random_classical(std::uint64_t seed, std::size_t A, std::size_t E) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ClassicalState c;
  double tot = 0;
  for (std::size_t a = 0; a < A; ++a) {
    c.P.push_back(0.05 + u(rng));
    tot += c.P.back();
  }
  for (auto& p : c.P) p /= tot;
  for (std::size_t a = 0; a < A; ++a) {
    std::vector<double> row(E);
    double s = 0;
    for (auto& x : row) {
      x = u(rng) < 0.3 ? 0.0 : u(rng);
      s += x;
    }
    if (s == 0) {
      row[a % E] = 1.0;
      s = 1.0;
    }
    for (auto& x : row) x /= s;
    c.r.push_back(row);
  }
  return c;
}

inline double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

/// s H_{1+s}: -log sum Q^{1+s} q^{-s}.
inline double scaled_renyi(const ClassicalState& c, double s) {
  double acc = 0;
  for (std::size_t a = 0; a < c.A(); ++a) {
    for (std::size_t e = 0; e < c.E(); ++e) {
      double Q = c.Q(a, e);
      if (Q > 0) acc += std::pow(Q, 1 + s) * std::pow(c.q(e), -s);
    }
  }
  return -std::log(acc);
}

inline double phi(const ClassicalState& c, double t) {
  const double p = 1.0 / (1.0 - t);
  double acc = 0;
  for (std::size_t e = 0; e < c.E(); ++e) {
    double inner = 0;
    for (std::size_t a = 0; a < c.A(); ++a) inner += std::pow(c.Q(a, e), p);
    acc += std::pow(inner, 1.0 - t);
  }
  return std::log(acc);
}

/// Same keys as qpa::quantity_report for the given s and t values.
inline std::map<std::string, double> classical_quantities(const ClassicalState& c,
                                                          const std::vector<double>& s_values,
                                                          const std::vector<double>& t_values,
                                                          const std::vector<std::string>& s_labels,
                                                          const std::vector<std::string>& t_labels) {
  std::map<std::string, double> out;
  double hae = 0, he = 0, ha = 0;
  for (std::size_t a = 0; a < c.A(); ++a) {
    ha -= xlogx(c.P[a]);
    for (std::size_t e = 0; e < c.E(); ++e) hae -= xlogx(c.Q(a, e));
  }
  for (std::size_t e = 0; e < c.E(); ++e) he -= xlogx(c.q(e));
  out["H_AE"] = hae;
  out["H_E"] = he;
  out["H_A"] = ha;
  out["H_cond"] = hae - he;
  out["H_cond_bar"] = hae - he;
  double hmin = 0, I = 0, Ip = 0, d1 = 0, d1p = 0;
  const double nA = static_cast<double>(c.A());
  for (std::size_t a = 0; a < c.A(); ++a) {
    for (std::size_t e = 0; e < c.E(); ++e) {
      const double Q = c.Q(a, e), q = c.q(e);
      if (Q > 0) {
        hmin = std::max(hmin, Q / q);
        I += Q * std::log(Q / (c.P[a] * q));
        Ip += Q * std::log(Q * nA / q);
      }
      d1 += std::abs(Q - c.P[a] * q);
      d1p += std::abs(Q - q / nA);
    }
  }
  out["H_min"] = -std::log(hmin);
  out["I"] = I;
  out["I_bar"] = I;
  out["I_prime"] = Ip;
  out["I_bar_prime"] = Ip;
  out["d1"] = d1;
  out["d1_prime"] = d1p;
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    const double s = s_values[i];
    const double h = s == 0 ? hae - he : scaled_renyi(c, s) / s;
    out["H_renyi(" + s_labels[i] + ")"] = h;
    if (s > 0) out["H_renyi_bar_star(" + s_labels[i] + ")"] = h;
  }
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    out["phi(" + t_labels[i] + ")"] = t_values[i] == 0 ? 0.0 : phi(c, t_values[i]);
  }
  return out;
}

}  // namespace qpa_test

#endif  // QPA_TESTS_CLASSICAL_ORACLE_HPP_
