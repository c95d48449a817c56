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

// Decay exponents of the leaked information and asymptotic rates.

#ifndef QPA_EXPONENTS_HPP_
#define QPA_EXPONENTS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qpa/cq_state.hpp"
#include "qpa/error.hpp"
#include "qpa/optimize.hpp"
#include "qpa/parallel.hpp"
#include "qpa/quantities.hpp"

namespace qpa {

inline constexpr std::size_t kExponentGridPoints = 1001;
inline constexpr double kExponentTolerance = 1e-10;

struct Exponent {
  double value = 0.0;
  /// Maximizing s (or t for e_phi_q).
  double argmax = 0.0;
};

/// Per-state cache of s H_{1+s} and phi(t) on the fixed grids, shared by
/// every rate R.
class ExponentProfile {
 public:
  explicit ExponentProfile(const CQState& state)
      : engine_(state), cond_entropy_(engine_.cond_entropy()) {
    const std::size_t n = kExponentGridPoints;
    s_grid_.resize(n);
    t_grid_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      s_grid_[i] = i + 1 == n ? 1.0 : static_cast<double>(i) / static_cast<double>(n - 1);
      t_grid_[i] = 0.5 * s_grid_[i];
    }
    scaled_h_ = parallel_map<double>(n, [&](std::size_t i) {
      return engine_.scaled_renyi_cond(s_grid_[i]);
    });
    phi_ = parallel_map<double>(n, [&](std::size_t i) { return engine_.phi(t_grid_[i]); });
  }

  const QuantityEngine& engine() const { return engine_; }
  double cond_entropy() const { return cond_entropy_; }

  /// max_{0<=s<=1} s (H_{1+s} - R). The objective is concave in s.
  Exponent e_H(double R) const {
    check_rate(R);
    if (R >= cond_entropy_) return {0.0, 0.0};
    ArgMax m = golden_section_max(
        [&](double s) { return engine_.scaled_renyi_cond(s) - s * R; }, 0.0, 1.0,
        kExponentTolerance);
    return clamp(m);
  }

  /// max_{0<=s<=1} s/(2-s) (H_{1+s} - R).
  Exponent e_H_q(double R) const {
    check_rate(R);
    if (R >= cond_entropy_) return {0.0, 0.0};
    auto f = [&](double s) { return (engine_.scaled_renyi_cond(s) - s * R) / (2.0 - s); };
    std::vector<double> values(s_grid_.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = (scaled_h_[i] - s_grid_[i] * R) / (2.0 - s_grid_[i]);
    }
    return clamp(refine(f, s_grid_, values));
  }

  /// max_{0<=t<=1/2} (-phi(t) - t R) / (2 (1 - t)).
  Exponent e_phi_q(double R) const {
    check_rate(R);
    auto f = [&](double t) { return (-engine_.phi(t) - t * R) / (2.0 * (1.0 - t)); };
    std::vector<double> values(t_grid_.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = (-phi_[i] - t_grid_[i] * R) / (2.0 * (1.0 - t_grid_[i]));
    }
    return clamp(refine(f, t_grid_, values));
  }

 private:
  static void check_rate(double R) {
    if (!(R >= 0.0) || !std::isfinite(R)) {
      throw DomainError("rate R must be finite and >= 0, got " + std::to_string(R));
    }
  }

  static Exponent clamp(const ArgMax& m) {
    if (!(m.value > 0.0)) return {0.0, 0.0};
    return {m.value, m.x};
  }

  template <class F>
  static ArgMax refine(F&& f, const std::vector<double>& grid,
                       const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] > values[best]) best = i;
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    ArgMax m = golden_section_max(f, lo, hi, kExponentTolerance);
    if (m.value >= values[best]) return m;
    return {grid[best], values[best]};
  }

  QuantityEngine engine_;
  double cond_entropy_;
  std::vector<double> s_grid_;
  std::vector<double> t_grid_;
  std::vector<double> scaled_h_;
  std::vector<double> phi_;
};

inline Exponent exponent_e_H(const CQState& s, double R) { return ExponentProfile(s).e_H(R); }
inline Exponent exponent_e_H_q(const CQState& s, double R) {
  return ExponentProfile(s).e_H_q(R);
}
inline Exponent exponent_e_phi_q(const CQState& s, double R) {
  return ExponentProfile(s).e_phi_q(R);
}

struct ExponentRow {
  double R = 0.0;
  Exponent e_H;
  Exponent e_H_q;
  Exponent e_phi_q;
  /// Lower bound e_H / 2 on the trace-distance exponent.
  double e_d_lower = 0.0;
};

struct ExponentCurve {
  std::vector<ExponentRow> rows;
};

/// `steps` rows at uniform R from R_min to R_max inclusive.
inline std::vector<double> rate_grid(double R_min, double R_max, int steps) {
  if (!(R_min >= 0.0) || !(R_max > R_min) || !std::isfinite(R_max)) {
    throw DomainError("rate range must satisfy 0 <= r-min < r-max");
  }
  if (steps < 2) throw DomainError("steps must be at least 2");
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] =
        i + 1 == steps ? R_max : R_min + (R_max - R_min) * i / (steps - 1);
  }
  return out;
}

inline ExponentRow exponent_row(const ExponentProfile& p, double R) {
  ExponentRow row;
  row.R = R;
  row.e_H = p.e_H(R);
  row.e_H_q = p.e_H_q(R);
  row.e_phi_q = p.e_phi_q(R);
  row.e_d_lower = row.e_H.value / 2.0;
  return row;
}

inline ExponentCurve exponent_curve(const CQState& s, double R_min, double R_max, int steps) {
  auto grid = rate_grid(R_min, R_max, steps);
  ExponentProfile profile(s);
  ExponentCurve c;
  c.rows = parallel_map<ExponentRow>(grid.size(),
                                     [&](std::size_t i) { return exponent_row(profile, grid[i]); });
  return c;
}

/// Fixed 12-significant-digit formatting; negative zero prints as 0.
inline std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline constexpr const char* kCurveCsvHeader =
    "R,e_H,s_star_H,e_H_q,s_star_Hq,e_phi_q,t_star,e_d_lower";

inline std::string curve_csv(const ExponentCurve& c) {
  std::string out = std::string(kCurveCsvHeader) + "\n";
  for (const auto& r : c.rows) {
    out += format_number(r.R) + "," + format_number(r.e_H.value) + "," +
           format_number(r.e_H.argmax) + "," + format_number(r.e_H_q.value) + "," +
           format_number(r.e_H_q.argmax) + "," + format_number(r.e_phi_q.value) + "," +
           format_number(r.e_phi_q.argmax) + "," + format_number(r.e_d_lower) + "\n";
  }
  return out;
}

struct RatePoint {
  double R = 0.0;
  /// G = H(A|E), the optimal key generation rate.
  double generation_rate = 0.0;
  double equivocation = 0.0;
  double min_leak_rate = 0.0;
};

inline RatePoint rates(const CQState& s, double R) {
  if (!(R >= 0.0) || !std::isfinite(R)) throw DomainError("rate R must be finite and >= 0");
  RatePoint p;
  p.R = R;
  p.generation_rate = cond_entropy(s);
  p.equivocation = std::min(R, p.generation_rate);
  p.min_leak_rate = std::max(R - p.generation_rate, 0.0);
  return p;
}

}  // namespace qpa

#endif  // QPA_EXPONENTS_HPP_
