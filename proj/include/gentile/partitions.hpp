#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "gentile/errors.hpp"

namespace gentile {

/// Weakly decreasing nonnegative parts a_1 >= a_2 >= ... (zero padded).
struct Partition {
  std::vector<int> parts;

  int weight() const { return std::accumulate(parts.begin(), parts.end(), 0); }

  /// "(3,1,0)"
  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts[i]);
    }
    return s + ")";
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;
};

enum class CasimirVariant { raw, shifted };

inline const char* to_string(CasimirVariant v) {
  return v == CasimirVariant::raw ? "raw" : "shifted";
}

/// Partitions of N into at most max_parts parts, reverse-lexicographic,
/// each padded with zeros to length max_parts.
inline std::vector<Partition> partitions_of(int N, int max_parts) {
  if (N < 0) throw DomainError("partitions_of: N must be >= 0");
  if (max_parts < 1) throw DomainError("partitions_of: max_parts must be >= 1");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int cap) -> void {
    if (remaining == 0) {
      Partition p{cur};
      p.parts.resize(static_cast<std::size_t>(max_parts), 0);
      out.push_back(std::move(p));
      return;
    }
    if (static_cast<int>(cur.size()) == max_parts) return;
    for (int v = std::min(remaining, cap); v >= 1; --v) {
      cur.push_back(v);
      self(self, remaining - v, v);
      cur.pop_back();
    }
  };
  rec(rec, N, N);
  return out;
}

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw DomainError("integer overflow in Casimir arithmetic");
  return r;
}

inline std::int64_t ipow(std::int64_t base, int p) {
  std::int64_t r = 1;
  for (int i = 0; i < p; ++i) r = checked_mul(r, base);
  return r;
}

inline std::vector<int> padded(const Partition& lambda, int m) {
  if (static_cast<int>(lambda.parts.size()) > m) {
    for (std::size_t i = static_cast<std::size_t>(m); i < lambda.parts.size(); ++i) {
      if (lambda.parts[i] != 0) {
        throw DomainError("partition " + lambda.str() + " has more than m=" + std::to_string(m) +
                          " nonzero parts");
      }
    }
  }
  std::vector<int> a(lambda.parts.begin(),
                     lambda.parts.begin() + std::min<std::ptrdiff_t>(
                                                static_cast<std::ptrdiff_t>(lambda.parts.size()), m));
  a.resize(static_cast<std::size_t>(m), 0);
  return a;
}

}  // namespace detail

/// S_p = sum_{i=1}^m [ (a_i + m - i)^p - (m - i)^p ]
inline std::int64_t casimir_Sp(int p, const Partition& lambda, int m) {
  if (p < 1) throw DomainError("casimir_Sp: order p must be >= 1");
  const auto a = detail::padded(lambda, m);
  std::int64_t s = 0;
  for (int i = 1; i <= m; ++i) {
    s += detail::ipow(a[static_cast<std::size_t>(i - 1)] + m - i, p) - detail::ipow(m - i, p);
  }
  return s;
}

/// Eigenvalue of C_p on the irrep lambda: raw -> S_p; shifted -> S_1 (p=1), S_2 - (m-1) S_1 (p=2).
inline std::int64_t casimir_value(int p, const Partition& lambda, int m, CasimirVariant variant) {
  if (p != 1 && p != 2) {
    throw DomainError("casimir_value: only orders 1 and 2 are supported, got " + std::to_string(p));
  }
  if (variant == CasimirVariant::raw || p == 1) return casimir_Sp(p, lambda, m);
  return casimir_Sp(2, lambda, m) - static_cast<std::int64_t>(m - 1) * casimir_Sp(1, lambda, m);
}

/// Weyl dimension prod_{i<j} (a_i - a_j + j - i) / (j - i) of the U(m) irrep.
inline std::int64_t weyl_dimension(const Partition& lambda, int m) {
  const auto a = detail::padded(lambda, m);
  std::int64_t num = 1;
  std::int64_t den = 1;
  for (int i = 1; i <= m; ++i) {
    for (int j = i + 1; j <= m; ++j) {
      num = detail::checked_mul(num, a[static_cast<std::size_t>(i - 1)] -
                                         a[static_cast<std::size_t>(j - 1)] + j - i);
      den = detail::checked_mul(den, j - i);
      const auto g = std::gcd(num, den);
      num /= g;
      den /= g;
    }
  }
  return num / den;
}

}  // namespace gentile
