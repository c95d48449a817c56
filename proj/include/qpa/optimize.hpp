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

#ifndef QPA_OPTIMIZE_HPP_
#define QPA_OPTIMIZE_HPP_

#include <cmath>
#include <cstddef>
#include <functional>

namespace qpa {

struct ArgMax {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi]. The
/// endpoints are evaluated as well, so monotone objectives return the exact
/// boundary point.
template <class F>
ArgMax golden_section_max(F&& f, double lo, double hi, double tol = 1e-10) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ArgMax best = fc >= fd ? ArgMax{c, fc} : ArgMax{d, fd};
  for (double edge : {lo, hi}) {
    double fe = f(edge);
    if (fe > best.value) best = {edge, fe};
  }
  return best;
}

/// Dense uniform grid of `points` samples, then golden-section inside the
/// bracket around the best sample. For objectives not known to be concave.
template <class F>
ArgMax grid_refine_max(F&& f, double lo, double hi, std::size_t points = 1001,
                       double tol = 1e-10) {
  ArgMax best{lo, f(lo)};
  std::size_t best_i = 0;
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 1; i < points; ++i) {
    double x = i + 1 == points ? hi : lo + step * static_cast<double>(i);
    double v = f(x);
    if (v > best.value) {
      best = {x, v};
      best_i = i;
    }
  }
  double a = best_i == 0 ? lo : lo + step * static_cast<double>(best_i - 1);
  double b = best_i + 1 >= points ? hi : lo + step * static_cast<double>(best_i + 1);
  ArgMax refined = golden_section_max(f, a, b, tol);
  return refined.value > best.value ? refined : best;
}

}  // namespace qpa

#endif  // QPA_OPTIMIZE_HPP_
