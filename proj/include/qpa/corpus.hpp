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

// The fixed state and family corpus used by `qpa verify --suite full` and the
// acceptance tests.

#ifndef QPA_CORPUS_HPP_
#define QPA_CORPUS_HPP_

#include <algorithm>
#include <string>
#include <vector>

#include "qpa/cq_state.hpp"
#include "qpa/hash_family.hpp"

namespace qpa {

inline constexpr int kCorpusRandomStates = 20;
inline constexpr std::uint64_t kCorpusSeedBase = 1000;

struct CorpusEntry {
  std::string name;
  CQState state;
  /// log_2 |A|.
  int k = 1;
};

inline const std::vector<std::string>& corpus_preset_names() {
  static const std::vector<std::string> names = {"copy", "product", "tilted-qubit", "bb84",
                                                 "depolarized"};
  return names;
}

/// Presets at k = 1 and their 2-fold tensor powers (|A| = 4, d_E = 4), then
/// seeded random states with |A| = 4 and d_E alternating 2, 3.
inline std::vector<CorpusEntry> state_corpus() {
  std::vector<CorpusEntry> out;
  for (const auto& name : corpus_preset_names()) {
    CQState s = preset(name);
    out.push_back({name, s, 1});
    out.push_back({name + "^2", tensor_power(s, 2), 2});
  }
  for (int i = 0; i < kCorpusRandomStates; ++i) {
    const std::uint64_t seed = kCorpusSeedBase + static_cast<std::uint64_t>(i);
    const Index d = 2 + i % 2;
    out.push_back({"random(seed=" + std::to_string(seed) + ",d=" + std::to_string(d) + ")",
                   random_cq(seed, 4, d), 2});
  }
  return out;
}

/// Toeplitz and modified Toeplitz over F_2 with M = 2^m in {2, 4}, m <= k.
inline std::vector<HashFamily> corpus_families(int k) {
  std::vector<HashFamily> out;
  for (int m = 1; m <= std::min(k, 2); ++m) {
    out.push_back(make_family(FamilyKind::toeplitz, 2, k, m));
    out.push_back(make_family(FamilyKind::modified_toeplitz, 2, k, m));
  }
  return out;
}

}  // namespace qpa

#endif  // QPA_CORPUS_HPP_
