#pragma once

#include <string>
#include <vector>

#include "gentile/fock_basis.hpp"
#include "gentile/ladder.hpp"
#include "gentile/scalars.hpp"
#include "gentile/sparse_operator.hpp"

namespace gentile {

namespace detail {

inline void check_position(int i, const FockBasis& basis, const char* fn) {
  if (i < 1 || i > basis.nu()) {
    throw DomainError(std::string(fn) + ": position " + std::to_string(i) + " outside 1.." +
                      std::to_string(basis.nu()));
  }
}

inline void check_state(int k, const FockBasis& basis, const char* fn) {
  if (k < 1 || k > basis.m()) {
    throw DomainError(std::string(fn) + ": state " + std::to_string(k) + " outside 1.." +
                      std::to_string(basis.m()));
  }
}

inline Letter letter(Ladder kind, int position, int state, int m) {
  return {kind, ModeIndex{position, state}.flat(m)};
}

}  // namespace detail

// --- word forms ------------------------------------------------------------

/// tau_ij = sum_{k,l} ( a_k^{dag i} a_l^{dag j} b_l^i b_k^j + a_k^{dag i} b_l^{dag j} b_l^i a_k^j )
inline WordSum tau_words(int i, int j, const FockBasis& basis) {
  detail::check_position(i, basis, "build_tau");
  detail::check_position(j, basis, "build_tau");
  if (i == j) throw DomainError("build_tau: positions must differ (i=j=" + std::to_string(i) + ")");
  const int m = basis.m();
  using detail::letter;
  std::vector<Word> words;
  words.reserve(static_cast<std::size_t>(2 * m * m));
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= m; ++l) {
      words.push_back({1.0,
                       {letter(Ladder::a_dag, i, k, m), letter(Ladder::a_dag, j, l, m),
                        letter(Ladder::b, i, l, m), letter(Ladder::b, j, k, m)}});
      words.push_back({1.0,
                       {letter(Ladder::a_dag, i, k, m), letter(Ladder::b_dag, j, l, m),
                        letter(Ladder::b, i, l, m), letter(Ladder::a, j, k, m)}});
    }
  }
  return WordSum(std::move(words));
}

/// E_kl = sum_i ( a_k^{dag i} b_l^i + b_k^{dag i} a_l^i )
inline WordSum E_words(int k, int l, const FockBasis& basis) {
  detail::check_state(k, basis, "build_E");
  detail::check_state(l, basis, "build_E");
  const int m = basis.m();
  using detail::letter;
  std::vector<Word> words;
  for (int i = 1; i <= basis.nu(); ++i) {
    words.push_back({1.0, {letter(Ladder::a_dag, i, k, m), letter(Ladder::b, i, l, m)}});
    words.push_back({1.0, {letter(Ladder::b_dag, i, k, m), letter(Ladder::a, i, l, m)}});
  }
  return WordSum(std::move(words));
}

inline WordSum class_sum_words(const FockBasis& basis) {
  if (basis.nu() < 2) throw DomainError("build_class_sum: needs nu >= 2");
  WordSum out;
  for (int i = 1; i <= basis.nu(); ++i) {
    for (int j = i + 1; j <= basis.nu(); ++j) out += tau_words(i, j, basis);
  }
  return out;
}

// --- assembled operators ---------------------------------------------------

inline ComplexOperator build_tau(int i, int j, const FockBasis& basis) {
  return assemble(tau_words(i, j, basis), basis).op;
}

/// P(2,1^{nu-2}) = sum_{i<j} tau_ij
inline ComplexOperator build_class_sum(const FockBasis& basis) {
  if (basis.nu() < 2) throw DomainError("build_class_sum: needs nu >= 2");
  ComplexOperator p(basis.dimension(), basis.tag());
  for (int i = 1; i <= basis.nu(); ++i) {
    for (int j = i + 1; j <= basis.nu(); ++j) p = p + build_tau(i, j, basis);
  }
  return p;
}

inline ComplexOperator build_E(int k, int l, const FockBasis& basis) {
  return assemble(E_words(k, l, basis), basis).op;
}

/// C1 = sum_l E_ll
inline ComplexOperator build_C1(const FockBasis& basis) {
  ComplexOperator c(basis.dimension(), basis.tag());
  for (int l = 1; l <= basis.m(); ++l) c = c + build_E(l, l, basis);
  return c;
}

/// C2 = sum_{k,l} E_kl E_lk, by sparse products of the assembled generators.
inline ComplexOperator build_C2(const FockBasis& basis) {
  const int m = basis.m();
  std::vector<ComplexOperator> e;
  e.reserve(static_cast<std::size_t>(m * m));
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= m; ++l) e.push_back(build_E(k, l, basis));
  }
  auto at = [&](int k, int l) -> const ComplexOperator& {
    return e[static_cast<std::size_t>((k - 1) * m + (l - 1))];
  };
  ComplexOperator c(basis.dimension(), basis.tag());
  for (int k = 1; k <= m; ++k) {
    for (int l = 1; l <= m; ++l) c = c + at(k, l) * at(l, k);
  }
  return c;
}

/// Diagonal operator with entry f(state) on each basis state.
template <typename F>
ComplexOperator build_diagonal(const FockBasis& basis, F&& f) {
  std::vector<cplx> d(basis.dimension());
  for (std::size_t s = 0; s < basis.dimension(); ++s) d[s] = f(basis.occupations(s));
  return ComplexOperator::diagonal(d, basis.tag());
}

/// sum_{k,i} J(N_k^i) as a diagonal operator (the theorem uses m times this).
inline ComplexOperator build_J_sum(const FockBasis& basis) {
  const auto& order = basis.order();
  return build_diagonal(basis, [&](std::span<const int> occ) {
    double s = 0.0;
    for (int v : occ) s += coupling_J(v, order);
    return cplx{s, 0.0};
  });
}

/// Total particle number sum_{k,i} N_k^i.
inline ComplexOperator build_total_number(const FockBasis& basis) {
  return build_diagonal(basis, [](std::span<const int> occ) {
    double s = 0.0;
    for (int v : occ) s += v;
    return cplx{s, 0.0};
  });
}

/// Per-position total sum_k N_k^i.
inline ComplexOperator build_position_number(int i, const FockBasis& basis) {
  detail::check_position(i, basis, "build_position_number");
  const auto m = static_cast<std::size_t>(basis.m());
  const auto base = static_cast<std::size_t>(i - 1) * m;
  return build_diagonal(basis, [&](std::span<const int> occ) {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += occ[base + k];
    return cplx{s, 0.0};
  });
}

}  // namespace gentile
