#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gentile/fock_basis.hpp"
#include "gentile/scalars.hpp"
#include "gentile/sparse_operator.hpp"

namespace gentile {

enum class Ladder : std::uint8_t { a, b, a_dag, b_dag, num };

/// One ladder operator acting on a single mode |nu>_n.
struct LadderStep {
  int occupation;  // occupation after the step
  cplx amplitude;  // zero if the state is annihilated
};

/// Matrix element of one ladder operator on |v>_n:
///   a^dag|v> = sqrt(<v+1>)|v+1>,  b^dag|v> = sqrt(<v+1>^*)|v+1>,
///   b|v>     = sqrt(<v>)|v-1>,    a|v>     = sqrt(<v>^*)|v-1>,
/// with principal square roots. a^dag|n> = b^dag|n> = 0 exactly.
inline LadderStep ladder_step(Ladder kind, int v, const GentileOrder& order) {
  switch (kind) {
    case Ladder::a_dag:
      if (v >= order.n()) return {v, {}};
      return {v + 1, std::sqrt(bracket_nu(v + 1, order))};
    case Ladder::b_dag:
      if (v >= order.n()) return {v, {}};
      return {v + 1, std::sqrt(std::conj(bracket_nu(v + 1, order)))};
    case Ladder::b:
      if (v <= 0) return {v, {}};
      return {v - 1, std::sqrt(bracket_nu(v, order))};
    case Ladder::a:
      if (v <= 0) return {v, {}};
      return {v - 1, std::sqrt(std::conj(bracket_nu(v, order)))};
    case Ladder::num:
      return {v, cplx{static_cast<double>(v), 0.0}};
  }
  return {v, {}};
}

inline Ladder adjoint(Ladder k) {
  switch (k) {
    case Ladder::a: return Ladder::a_dag;
    case Ladder::a_dag: return Ladder::a;
    case Ladder::b: return Ladder::b_dag;
    case Ladder::b_dag: return Ladder::b;
    case Ladder::num: return Ladder::num;
  }
  return k;
}

/// Entrywise complex conjugate: a = b^*, so conj swaps the a and b families.
inline Ladder conjugate(Ladder k) {
  switch (k) {
    case Ladder::a: return Ladder::b;
    case Ladder::b: return Ladder::a;
    case Ladder::a_dag: return Ladder::b_dag;
    case Ladder::b_dag: return Ladder::a_dag;
    case Ladder::num: return Ladder::num;
  }
  return k;
}

/// The five single-mode matrices of dimension n+1.
struct SingleModeSet {
  ComplexOperator a;
  ComplexOperator b;
  ComplexOperator a_dag;
  ComplexOperator b_dag;
  ComplexOperator num;

  const ComplexOperator& get(Ladder k) const {
    switch (k) {
      case Ladder::a: return a;
      case Ladder::b: return b;
      case Ladder::a_dag: return a_dag;
      case Ladder::b_dag: return b_dag;
      case Ladder::num: return num;
    }
    return num;
  }
};

inline ComplexOperator single_mode_matrix(Ladder kind, const GentileOrder& order) {
  std::vector<Triplet> t;
  for (int v = 0; v <= order.n(); ++v) {
    const auto step = ladder_step(kind, v, order);
    if (step.amplitude != cplx{}) {
      t.push_back({static_cast<std::size_t>(step.occupation), static_cast<std::size_t>(v),
                   step.amplitude});
    }
  }
  return ComplexOperator::from_triplets(static_cast<std::size_t>(order.levels()), std::move(t));
}

inline SingleModeSet single_mode_ops(const GentileOrder& order) {
  return {single_mode_matrix(Ladder::a, order), single_mode_matrix(Ladder::b, order),
          single_mode_matrix(Ladder::a_dag, order), single_mode_matrix(Ladder::b_dag, order),
          single_mode_matrix(Ladder::num, order)};
}

/// Places a single-mode matrix on `mode` of a full-space basis (identity elsewhere).
/// Modes commute: no phase strings are attached between different modes.
inline ComplexOperator embed(const ComplexOperator& op, ModeIndex mode, const FockBasis& basis) {
  if (!basis.is_full()) throw DomainError("embed: basis must be the full Fock space");
  if (op.dim() != static_cast<std::size_t>(basis.order().levels())) {
    throw DomainError("embed: single-mode matrix has dimension " + std::to_string(op.dim()) +
                      ", expected n+1 = " + std::to_string(basis.order().levels()));
  }
  if (mode.position < 1 || mode.position > basis.nu() || mode.state < 1 ||
      mode.state > basis.m()) {
    throw DomainError("embed: mode (" + std::to_string(mode.position) + "," +
                      std::to_string(mode.state) + ") outside basis " + basis.tag());
  }
  std::vector<std::vector<std::pair<int, cplx>>> by_col(op.dim());
  op.for_each([&](std::size_t r, std::size_t c, cplx v) {
    by_col[c].emplace_back(static_cast<int>(r), v);
  });
  const std::size_t f = mode.flat(basis.m());
  std::vector<Triplet> t;
  std::vector<int> occ(basis.modes());
  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    const auto src = basis.occupations(j);
    std::copy(src.begin(), src.end(), occ.begin());
    for (const auto& [r, v] : by_col[static_cast<std::size_t>(src[f])]) {
      occ[f] = r;
      t.push_back({*basis.find(occ), j, v});
    }
  }
  return ComplexOperator::from_triplets(basis.dimension(), std::move(t), basis.tag());
}

struct Restriction {
  ComplexOperator op;
  /// Largest entry magnitude coupling a sector state with a non-sector state.
  double leakage = 0.0;
};

inline Restriction restrict(const ComplexOperator& op, const FockBasis& full,
                            const FockBasis& sector) {
  if (op.dim() != full.dimension()) {
    throw DomainError("restrict: operator dimension does not match the full basis");
  }
  std::vector<std::ptrdiff_t> to_sector(full.dimension(), -1);
  for (std::size_t s = 0; s < sector.dimension(); ++s) {
    const auto idx = full.find(sector.occupations(s));
    if (!idx) throw DomainError("restrict: sector basis is not contained in the full basis");
    to_sector[*idx] = static_cast<std::ptrdiff_t>(s);
  }
  Restriction out;
  std::vector<Triplet> t;
  op.for_each([&](std::size_t r, std::size_t c, cplx v) {
    const auto rs = to_sector[r];
    const auto cs = to_sector[c];
    if (rs >= 0 && cs >= 0) {
      t.push_back({static_cast<std::size_t>(rs), static_cast<std::size_t>(cs), v});
    } else if (rs >= 0 || cs >= 0) {
      out.leakage = std::max(out.leakage, std::abs(v));
    }
  });
  out.op = ComplexOperator::from_triplets(sector.dimension(), std::move(t), sector.tag());
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic ladder words

struct Letter {
  Ladder kind;
  std::size_t mode;  // flattened mode index
};

/// coeff * L_1 L_2 ... L_k; applied to a ket right-to-left (L_k first).
struct Word {
  cplx coeff{1.0, 0.0};
  std::vector<Letter> letters;
};

/// Linear combination of ladder words. Products concatenate in written order.
class WordSum {
 public:
  WordSum() = default;
  explicit WordSum(std::vector<Word> words) : words_(std::move(words)) {}

  static WordSum single(cplx coeff, std::vector<Letter> letters) {
    return WordSum({Word{coeff, std::move(letters)}});
  }

  const std::vector<Word>& words() const noexcept { return words_; }
  bool empty() const noexcept { return words_.empty(); }

  WordSum& operator+=(const WordSum& other) {
    words_.insert(words_.end(), other.words_.begin(), other.words_.end());
    return *this;
  }

  friend WordSum operator+(WordSum a, const WordSum& b) { return a += b; }

  friend WordSum operator*(cplx s, WordSum w) {
    for (auto& word : w.words_) word.coeff *= s;
    return w;
  }

  friend WordSum operator*(const WordSum& x, const WordSum& y) {
    std::vector<Word> out;
    out.reserve(x.words_.size() * y.words_.size());
    for (const auto& wx : x.words_) {
      for (const auto& wy : y.words_) {
        Word w{wx.coeff * wy.coeff, wx.letters};
        w.letters.insert(w.letters.end(), wy.letters.begin(), wy.letters.end());
        out.push_back(std::move(w));
      }
    }
    return WordSum(std::move(out));
  }

  WordSum adjoint() const {
    std::vector<Word> out;
    out.reserve(words_.size());
    for (const auto& w : words_) {
      Word r{std::conj(w.coeff), {}};
      r.letters.reserve(w.letters.size());
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
        r.letters.push_back({gentile::adjoint(it->kind), it->mode});
      }
      out.push_back(std::move(r));
    }
    return WordSum(std::move(out));
  }

  WordSum conjugate() const {
    std::vector<Word> out = words_;
    for (auto& w : out) {
      w.coeff = std::conj(w.coeff);
      for (auto& l : w.letters) l.kind = gentile::conjugate(l.kind);
    }
    return WordSum(std::move(out));
  }

 private:
  std::vector<Word> words_;
};

/// Applies a word to an occupation vector in place; returns the amplitude
/// (zero when some step annihilates the state).
inline cplx apply_word(const Word& word, std::vector<int>& occ, const GentileOrder& order) {
  cplx amp = word.coeff;
  for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
    const auto step = ladder_step(it->kind, occ[it->mode], order);
    if (step.amplitude == cplx{}) return {};
    occ[it->mode] = step.occupation;
    amp *= step.amplitude;
  }
  return amp;
}

struct Assembly {
  ComplexOperator op;
  /// Largest magnitude of an output amplitude that left the basis.
  double leakage = 0.0;
};

/// Matrix of a word sum on `basis`. Intermediate states may leave the basis;
/// only final states are looked up, so sector assembly is exact.
inline Assembly assemble(const WordSum& ws, const FockBasis& basis) {
  const auto& order = basis.order();
  std::vector<Triplet> t;
  Assembly out;
  std::vector<int> occ(basis.modes());
  std::map<std::vector<int>, cplx> outside;
  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    const auto src = basis.occupations(j);
    outside.clear();
    for (const auto& w : ws.words()) {
      std::copy(src.begin(), src.end(), occ.begin());
      const cplx amp = apply_word(w, occ, order);
      if (amp == cplx{}) continue;
      if (const auto idx = basis.find(occ)) {
        t.push_back({*idx, j, amp});
      } else {
        outside[occ] += amp;
      }
    }
    for (const auto& [state, amp] : outside) out.leakage = std::max(out.leakage, std::abs(amp));
  }
  out.op = ComplexOperator::from_triplets(basis.dimension(), std::move(t), basis.tag());
  return out;
}

/// Matrix-free y = W x on `basis`; components leaving the basis are dropped.
inline std::vector<cplx> apply_words(const WordSum& ws, const FockBasis& basis,
                                     std::span<const cplx> x) {
  if (x.size() != basis.dimension()) throw DomainError("apply_words: vector size mismatch");
  const auto& order = basis.order();
  std::vector<cplx> y(basis.dimension(), cplx{});
  std::vector<int> occ(basis.modes());
  for (std::size_t j = 0; j < basis.dimension(); ++j) {
    if (x[j] == cplx{}) continue;
    const auto src = basis.occupations(j);
    for (const auto& w : ws.words()) {
      std::copy(src.begin(), src.end(), occ.begin());
      const cplx amp = apply_word(w, occ, order);
      if (amp == cplx{}) continue;
      if (const auto idx = basis.find(occ)) y[*idx] += amp * x[j];
    }
  }
  return y;
}

}  // namespace gentile
