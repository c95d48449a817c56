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

// Enumerable universal_2 hash families over prime fields F_q.
//
// Inputs a in {0, ..., q^k - 1} are identified with vectors in F_q^k by
// little-endian base-q digits (digit 0 is the least significant); outputs
// likewise in F_q^m. Member parameters are decoded from the member index the
// same way.
//
//   toeplitz:           f_T(a) = T a, T an m x k Toeplitz matrix,
//                       T[i][j] = t[i - j + k - 1], q^(m+k-1) members.
//   modified_toeplitz:  f_X(a) = X a1 + a2, a = (a1, a2) with a1 the first
//                       k - m digits and a2 the last m; X is an
//                       m x (k - m) Toeplitz matrix, q^(k-1) members (one
//                       member, the identity, when m = k).
//   explicit_list:      arbitrary tables, equiprobable.

#ifndef QPA_HASH_FAMILY_HPP_
#define QPA_HASH_FAMILY_HPP_

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qpa/cq_state.hpp"
#include "qpa/error.hpp"

namespace qpa {

enum class FamilyKind { toeplitz, modified_toeplitz, explicit_list };

inline constexpr std::uint64_t kMaxDomainSize = 1u << 16;
inline constexpr std::uint64_t kMaxMemberCount = 1u << 20;
inline constexpr std::uint64_t kMaxExhaustiveDomain = 1u << 10;

inline std::string_view kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::toeplitz:
      return "toeplitz";
    case FamilyKind::modified_toeplitz:
      return "modified_toeplitz";
    case FamilyKind::explicit_list:
      return "explicit_list";
  }
  return "unknown";
}

/// Non-negative exact fraction, always reduced.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Rational make(std::uint64_t n, std::uint64_t d) {
    std::uint64_t g = std::gcd(n, d);
    if (g == 0) g = 1;
    return {n / g, d / g};
  }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    unsigned __int128 l = static_cast<unsigned __int128>(a.num) * b.den;
    unsigned __int128 r = static_cast<unsigned __int128>(b.num) * a.den;
    return l <=> r;
  }
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline std::uint64_t checked_pow(std::uint64_t base, int exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

inline bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

struct FamilyMember {
  std::uint64_t index = 0;
  ClassicalFunction function;
};

class HashFamily {
 public:
  FamilyKind kind() const { return kind_; }
  std::uint32_t field_order() const { return q_; }
  int input_len() const { return k_; }
  int output_len() const { return m_; }
  std::uint64_t member_count() const { return member_count_; }
  std::uint64_t domain_size() const { return domain_; }
  std::uint32_t range_size() const { return range_; }
  /// Number of F_q parameters behind one member (0 for explicit lists).
  int parameter_count() const { return params_; }
  bool is_linear() const { return kind_ != FamilyKind::explicit_list; }

  /// "toeplitz:q=2,k=4,m=2" style descriptor.
  std::string descriptor() const {
    if (kind_ == FamilyKind::explicit_list) {
      return "explicit_list:n=" + std::to_string(tables_.size()) +
             ",domain=" + std::to_string(domain_) + ",range=" + std::to_string(range_);
    }
    return std::string(kind_name(kind_)) + ":q=" + std::to_string(q_) +
           ",k=" + std::to_string(k_) + ",m=" + std::to_string(m_);
  }

  /// Decodes the member's F_q parameters (little-endian digits of index).
  std::vector<std::uint32_t> parameters(std::uint64_t index) const {
    std::vector<std::uint32_t> p(static_cast<std::size_t>(params_));
    for (auto& x : p) {
      x = static_cast<std::uint32_t>(index % q_);
      index /= q_;
    }
    return p;
  }

  /// m x k generator over F_q with f(a) = G a.
  std::vector<std::vector<std::uint32_t>> generator(std::uint64_t index) const {
    std::vector<std::vector<std::uint32_t>> g(
        static_cast<std::size_t>(m_), std::vector<std::uint32_t>(static_cast<std::size_t>(k_), 0));
    auto p = parameters(index);
    if (kind_ == FamilyKind::toeplitz) {
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < k_; ++j) g[i][j] = p[static_cast<std::size_t>(i - j + k_ - 1)];
    } else if (kind_ == FamilyKind::modified_toeplitz) {
      const int cols = k_ - m_;
      for (int i = 0; i < m_; ++i) {
        for (int j = 0; j < cols; ++j) g[i][j] = p[static_cast<std::size_t>(i - j + cols - 1)];
        g[i][static_cast<std::size_t>(cols + i)] = 1;
      }
    }
    return g;
  }

  FamilyMember member(std::uint64_t index) const {
    if (index >= member_count_) {
      throw DomainError("member index " + std::to_string(index) + " out of range");
    }
    FamilyMember out;
    out.index = index;
    out.function.range_size = range_;
    if (kind_ == FamilyKind::explicit_list) {
      out.function = tables_[index];
      return out;
    }
    auto g = generator(index);
    out.function.table.resize(domain_);
    std::vector<std::uint32_t> digits(static_cast<std::size_t>(k_));
    for (std::uint64_t a = 0; a < domain_; ++a) {
      std::uint64_t rest = a;
      for (auto& d : digits) {
        d = static_cast<std::uint32_t>(rest % q_);
        rest /= q_;
      }
      std::uint32_t value = 0;
      std::uint32_t place = 1;
      for (int i = 0; i < m_; ++i) {
        std::uint32_t acc = 0;
        for (int j = 0; j < k_; ++j) acc = (acc + g[i][j] * digits[j]) % q_;
        value += acc * place;
        place *= q_;
      }
      out.function.table[a] = value;
    }
    return out;
  }

 private:
  friend HashFamily make_family(FamilyKind, std::uint32_t, int, int);
  friend HashFamily make_explicit_family(std::vector<ClassicalFunction>);

  FamilyKind kind_ = FamilyKind::toeplitz;
  std::uint32_t q_ = 2;
  int k_ = 0;
  int m_ = 0;
  int params_ = 0;
  std::uint64_t member_count_ = 0;
  std::uint64_t domain_ = 0;
  std::uint32_t range_ = 0;
  std::vector<ClassicalFunction> tables_;
};

/// Toeplitz-type family over F_q from F_q^k to F_q^m.
inline HashFamily make_family(FamilyKind kind, std::uint32_t q, int k, int m) {
  if (kind == FamilyKind::explicit_list) {
    throw DomainError("use make_explicit_family for explicit lists");
  }
  if (q != 2 && q != 3 && q != 5) {
    throw DomainError("field order must be a prime in {2, 3, 5}, got " +
                      std::to_string(q));
  }
  if (k < 1 || m < 1 || m > k) {
    throw DomainError("need 1 <= m <= k, got k=" + std::to_string(k) +
                      ", m=" + std::to_string(m));
  }
  HashFamily f;
  f.kind_ = kind;
  f.q_ = q;
  f.k_ = k;
  f.m_ = m;
  f.params_ = kind == FamilyKind::toeplitz ? m + k - 1 : (m < k ? k - 1 : 0);
  f.domain_ = checked_pow(q, k, kMaxDomainSize);
  if (f.domain_ > kMaxDomainSize) {
    throw SizeError("domain q^k exceeds 2^16");
  }
  f.member_count_ = checked_pow(q, f.params_, kMaxMemberCount);
  if (f.member_count_ > kMaxMemberCount) {
    throw SizeError("member count exceeds 2^20");
  }
  f.range_ = static_cast<std::uint32_t>(checked_pow(q, m, kMaxDomainSize));
  return f;
}

/// Equiprobable family of explicit tables sharing domain and range.
inline HashFamily make_explicit_family(std::vector<ClassicalFunction> tables) {
  if (tables.empty()) throw DomainError("explicit family needs at least one table");
  HashFamily f;
  f.kind_ = FamilyKind::explicit_list;
  f.q_ = 0;
  f.domain_ = tables.front().domain_size();
  f.range_ = tables.front().range_size;
  for (const auto& t : tables) {
    if (t.domain_size() != f.domain_ || t.range_size != f.range_) {
      throw DomainError("explicit family tables must share domain and range");
    }
    for (auto v : t.table) {
      if (v >= f.range_) throw DomainError("table value outside range");
    }
  }
  f.member_count_ = tables.size();
  f.tables_ = std::move(tables);
  return f;
}

/// Parses "toeplitz:q=2,k=4,m=2" or "modified_toeplitz:q=3,k=3,m=1".
inline HashFamily parse_family(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("family descriptor needs 'kind:q=..,k=..,m=..', got '" +
                     std::string(text) + "'");
  }
  std::string_view kind_text = text.substr(0, colon);
  FamilyKind kind;
  if (kind_text == "toeplitz") {
    kind = FamilyKind::toeplitz;
  } else if (kind_text == "modified_toeplitz") {
    kind = FamilyKind::modified_toeplitz;
  } else {
    throw ParseError("unknown family kind '" + std::string(kind_text) + "'");
  }
  int q = -1, k = -1, m = -1;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("family parameter '" + std::string(item) + "' lacks '='");
    }
    std::string_view key = item.substr(0, eq);
    std::string_view value = item.substr(eq + 1);
    int parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError("family parameter '" + std::string(item) + "' is not an integer");
    }
    if (key == "q") q = parsed;
    else if (key == "k") k = parsed;
    else if (key == "m") m = parsed;
    else throw ParseError("unknown family parameter '" + std::string(key) + "'");
  }
  if (q < 0 || k < 0 || m < 0) {
    throw ParseError("family descriptor must set q, k and m");
  }
  return make_family(kind, static_cast<std::uint32_t>(q), k, m);
}

/// All members in parameter-index order.
inline std::vector<FamilyMember> enumerate_members(const HashFamily& f) {
  std::vector<FamilyMember> out;
  out.reserve(f.member_count());
  for (std::uint64_t i = 0; i < f.member_count(); ++i) out.push_back(f.member(i));
  return out;
}

inline FamilyMember sample_member(const HashFamily& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, f.member_count() - 1);
  return f.member(pick(rng));
}

struct CollisionStats {
  /// max over a1 != a2 of Pr_X[f_X(a1) = f_X(a2)].
  Rational max_collision_prob;
  bool is_universal2 = false;
  /// Largest collision count behind the maximum (out of member_count).
  std::uint64_t worst_count = 0;
};

namespace detail {

/// Number of x in F_q^n solving C x = rhs, by Gaussian elimination mod q.
inline std::uint64_t count_solutions(std::vector<std::vector<std::uint32_t>> rows,
                                     int n, std::uint32_t q) {
  auto inverse = [q](std::uint32_t v) {
    for (std::uint32_t x = 1; x < q; ++x)
      if ((v * x) % q == 1) return x;
    return 0u;
  };
  int rank = 0;
  const int r = static_cast<int>(rows.size());
  for (int col = 0; col < n && rank < r; ++col) {
    int pivot = -1;
    for (int i = rank; i < r; ++i) {
      if (rows[i][col] % q != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    std::uint32_t inv = inverse(rows[rank][col]);
    for (auto& v : rows[rank]) v = (v * inv) % q;
    for (int i = 0; i < r; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      std::uint32_t factor = rows[i][col];
      for (int j = 0; j <= n; ++j) {
        rows[i][j] = (rows[i][j] + q * q - factor * rows[rank][j] % q) % q;
      }
    }
    ++rank;
  }
  for (int i = rank; i < r; ++i) {
    if (rows[i][n] != 0) return 0;  // inconsistent
  }
  std::uint64_t count = 1;
  for (int i = 0; i < n - rank; ++i) count *= q;
  return count;
}

}  // namespace detail

inline CollisionStats collision_stats_exhaustive(const HashFamily& f);

/// Exact certification of the universal_2 condition. For the linear kinds a
/// collision f(a1) = f(a2) depends only on d = a1 - a2 and is a linear
/// condition on the member parameters, so each nonzero d contributes
/// q^(params - rank) colliding members (or none, when the affine system is
/// inconsistent). Explicit lists fall back to all-pairs enumeration.

inline CollisionStats collision_stats(const HashFamily& f) {
  if (!f.is_linear()) return collision_stats_exhaustive(f);
  const std::uint32_t q = f.field_order();
  const int k = f.input_len();
  const int m = f.output_len();
  const int n = f.parameter_count();
  std::uint64_t worst = 0;
  std::vector<std::uint32_t> d(static_cast<std::size_t>(k));
  for (std::uint64_t diff = 1; diff < f.domain_size(); ++diff) {
    std::uint64_t rest = diff;
    for (auto& x : d) {
      x = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    // Row i: sum over parameters of coefficient * x = rhs_i.
    std::vector<std::vector<std::uint32_t>> rows(
        static_cast<std::size_t>(m), std::vector<std::uint32_t>(static_cast<std::size_t>(n) + 1, 0));
    if (f.kind() == FamilyKind::toeplitz) {
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) {
          auto& c = rows[i][static_cast<std::size_t>(i - j + k - 1)];
          c = (c + d[j]) % q;
        }
    } else {
      const int cols = k - m;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < cols; ++j) {
          auto& c = rows[i][static_cast<std::size_t>(i - j + cols - 1)];
          c = (c + d[j]) % q;
        }
        // X d1 + d2 = 0  =>  X d1 = -d2.
        rows[i][static_cast<std::size_t>(n)] = (q - d[static_cast<std::size_t>(cols + i)]) % q;
      }
    }
    worst = std::max(worst, detail::count_solutions(std::move(rows), n, q));
  }
  CollisionStats out;
  out.worst_count = worst;
  out.max_collision_prob = Rational::make(worst, f.member_count());
  out.is_universal2 = out.max_collision_prob <= Rational::make(1, f.range_size());
  return out;
}

/// All-pairs count over every enumerated member. Requires |A| <= 2^10.
inline CollisionStats collision_stats_exhaustive(const HashFamily& f) {
  if (f.domain_size() > kMaxExhaustiveDomain) {
    throw SizeError("all-pairs collision count needs q^k <= 2^10");
  }
  const std::size_t n = f.domain_size();
  std::vector<std::uint64_t> counts(n * n, 0);
  for (std::uint64_t idx = 0; idx < f.member_count(); ++idx) {
    const auto member = f.member(idx);
    const auto& t = member.function.table;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (t[a] == t[b]) ++counts[a * n + b];
  }
  std::uint64_t worst = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) worst = std::max(worst, counts[a * n + b]);
  CollisionStats out;
  out.worst_count = worst;
  out.max_collision_prob = Rational::make(worst, f.member_count());
  out.is_universal2 = out.max_collision_prob <= Rational::make(1, f.range_size());
  return out;
}

}  // namespace qpa

#endif  // QPA_HASH_FAMILY_HPP_
