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

// Prints quantities, bound checks and exponents for a two-symbol state with
// non-commuting Eve states. Reads a state JSON file if one is given.

#include <cstdio>
#include <iostream>

#include "qpa/exponents.hpp"
#include "qpa/report_json.hpp"
#include "qpa/verification.hpp"

int main(int argc, char** argv) {
  try {
    qpa::CQState s = argc > 1 ? qpa::load_state_file(argv[1]) : qpa::presets::tilted_qubit();
    auto report = qpa::quantity_report(s, {0.5, 1.0}, {0.25});
    for (const auto& [k, v] : report.values) std::printf("%-24s %.10f\n", k.c_str(), v);

    auto s2 = qpa::tensor_power(s, 2);
    for (const char* desc : {"modified_toeplitz:q=2,k=2,m=1", "toeplitz:q=2,k=2,m=1"}) {
      auto f = qpa::parse_family(desc);
      auto r1 = qpa::verify_thm1(s2, f);
      auto r2 = qpa::verify_thm2(s2, f);
      std::printf("%s  E I' = %.6f  slack1 = %.6f (s=%.3f)  slack2 = %.6f\n", desc, r1.lhs,
                  r1.slack, r1.best_s, r2.slack);
    }

    std::cout << qpa::curve_csv(qpa::exponent_curve(s, 0.0, std::log(2.0), 6));
  } catch (const std::exception& e) {
    std::cerr << "tilted_qubit_report: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
