#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gentile/errors.hpp"
#include "gentile/scalars.hpp"

namespace gentile {

inline constexpr std::size_t kDefaultBasisCap = std::size_t{1} << 20;

/// (position i, state k), both 1-based. Flattening is position-major.
struct ModeIndex {
  int position;
  int state;

  std::size_t flat(int m) const {
    return static_cast<std::size_t>(position - 1) * static_cast<std::size_t>(m) +
           static_cast<std::size_t>(state - 1);
  }

  static ModeIndex from_flat(std::size_t flat, int m) {
    return {static_cast<int>(flat / static_cast<std::size_t>(m)) + 1,
            static_cast<int>(flat % static_cast<std::size_t>(m)) + 1};
  }

  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

/// Occupation numbers N_k^i in position-major flattened order.
struct OccupationState {
  std::vector<int> occupations;

  friend auto operator<=>(const OccupationState&, const OccupationState&) = default;
};

/// Enumerated occupation basis over nu positions x m states, optionally
/// restricted to a uniform per-position particle total (the "sector").
///
/// States are kept in ascending lexicographic order of the flattened
/// occupation sequence. Immutable after construction.
class FockBasis {
 public:
  FockBasis(int nu, int m, GentileOrder order, std::optional<int> sector,
            std::size_t cap = kDefaultBasisCap)
      : nu_(nu), m_(m), order_(order), sector_(sector) {
    if (nu < 1 || m < 1) {
      throw DomainError("FockBasis: nu and m must be >= 1 (nu=" + std::to_string(nu) +
                        ", m=" + std::to_string(m) + ")");
    }
    if (sector && (*sector < 0 || *sector > order.n() * m)) {
      throw DomainError("FockBasis: sector total " + std::to_string(*sector) +
                        " outside [0, n*m]");
    }
    if (sector) {
      build_sector(cap);
    } else {
      build_full(cap);
    }
  }

  int nu() const noexcept { return nu_; }
  int m() const noexcept { return m_; }
  const GentileOrder& order() const noexcept { return order_; }
  std::optional<int> sector() const noexcept { return sector_; }
  bool is_full() const noexcept { return !sector_.has_value(); }
  std::size_t modes() const noexcept { return static_cast<std::size_t>(nu_) * m_; }
  std::size_t dimension() const noexcept { return dim_; }

  /// Identifier used to check that operators act on the same space.
  std::string tag() const {
    std::string t = "n=" + std::to_string(order_.n()) + ",nu=" + std::to_string(nu_) +
                    ",m=" + std::to_string(m_);
    t += sector_ ? ",sector=" + std::to_string(*sector_) : ",full";
    return t;
  }

  std::span<const int> occupations(std::size_t ordinal) const {
    return {storage_.data() + ordinal * modes(), modes()};
  }

  /// Ordinal of an occupation vector, or nullopt if it is not a member.
  std::optional<std::size_t> find(std::span<const int> occ) const {
    if (occ.size() != modes()) return std::nullopt;
    for (int v : occ) {
      if (v < 0 || v > order_.n()) return std::nullopt;
    }
    if (is_full()) {
      std::size_t idx = 0;
      const auto radix = static_cast<std::size_t>(order_.levels());
      for (int v : occ) idx = idx * radix + static_cast<std::size_t>(v);
      return idx;
    }
    for (int i = 0; i < nu_; ++i) {
      int total = 0;
      for (int k = 0; k < m_; ++k) total += occ[static_cast<std::size_t>(i) * m_ + k];
      if (total != *sector_) return std::nullopt;
    }
    std::size_t lo = 0;
    std::size_t hi = dim_;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo) / 2;
      const auto row = occupations(mid);
      if (std::lexicographical_compare(row.begin(), row.end(), occ.begin(), occ.end())) {
        lo = mid + 1;
      } else {
        hi = mid;
      }
    }
    if (lo < dim_ && std::ranges::equal(occupations(lo), occ)) return lo;
    return std::nullopt;
  }

  /// Per-position totals of a basis state.
  std::vector<int> position_totals(std::size_t ordinal) const {
    std::vector<int> totals(static_cast<std::size_t>(nu_), 0);
    const auto occ = occupations(ordinal);
    for (std::size_t f = 0; f < modes(); ++f) totals[f / static_cast<std::size_t>(m_)] += occ[f];
    return totals;
  }

 private:
  [[noreturn]] void sizing_failure(const std::string& dim_text, std::size_t cap) const {
    throw SizingError("basis dimension " + dim_text + " exceeds cap " + std::to_string(cap) +
                      " for (n=" + std::to_string(order_.n()) + ", nu=" + std::to_string(nu_) +
                      ", m=" + std::to_string(m_) + ")");
  }

  void build_full(std::size_t cap) {
    const auto radix = static_cast<std::size_t>(order_.levels());
    std::size_t dim = 1;
    for (std::size_t f = 0; f < modes(); ++f) {
      if (dim > cap / radix) {
        sizing_failure("(" + std::to_string(radix) + ")^" + std::to_string(modes()), cap);
      }
      dim *= radix;
    }
    if (dim > cap) sizing_failure(std::to_string(dim), cap);
    dim_ = dim;
    storage_.assign(dim_ * modes(), 0);
    std::vector<int> occ(modes(), 0);
    for (std::size_t s = 0; s < dim_; ++s) {
      std::copy(occ.begin(), occ.end(), storage_.begin() + static_cast<std::ptrdiff_t>(s * modes()));
      // mixed-radix increment, last mode fastest
      for (std::size_t f = modes(); f-- > 0;) {
        if (++occ[f] <= order_.n()) break;
        occ[f] = 0;
      }
    }
  }

  // Compositions of `total` into m parts each in [0, n], ascending lexicographic.
  std::vector<std::vector<int>> position_patterns() const {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(m_), 0);
    const int n = order_.n();
    auto rec = [&](auto&& self, int k, int remaining) -> void {
      if (k == m_ - 1) {
        if (remaining <= n) {
          cur[static_cast<std::size_t>(k)] = remaining;
          out.push_back(cur);
        }
        return;
      }
      for (int v = 0; v <= std::min(n, remaining); ++v) {
        cur[static_cast<std::size_t>(k)] = v;
        self(self, k + 1, remaining - v);
      }
    };
    rec(rec, 0, *sector_);
    return out;
  }

  void build_sector(std::size_t cap) {
    const auto patterns = position_patterns();
    const std::size_t per = patterns.size();
    std::size_t dim = 1;
    for (int i = 0; i < nu_; ++i) {
      if (per != 0 && dim > cap / per) {
        sizing_failure("(" + std::to_string(per) + ")^" + std::to_string(nu_), cap);
      }
      dim *= per;
    }
    if (per == 0) dim = 0;
    if (dim > cap) sizing_failure(std::to_string(dim), cap);
    dim_ = dim;
    storage_.reserve(dim_ * modes());
    std::vector<std::size_t> pick(static_cast<std::size_t>(nu_), 0);
    for (std::size_t s = 0; s < dim_; ++s) {
      for (int i = 0; i < nu_; ++i) {
        const auto& p = patterns[pick[static_cast<std::size_t>(i)]];
        storage_.insert(storage_.end(), p.begin(), p.end());
      }
      for (std::size_t i = pick.size(); i-- > 0;) {
        if (++pick[i] < per) break;
        pick[i] = 0;
      }
    }
  }

  int nu_;
  int m_;
  GentileOrder order_;
  std::optional<int> sector_;
  std::size_t dim_ = 0;
  std::vector<int> storage_;
};

/// Enumerates the basis; throws SizingError when the dimension exceeds `cap`.
inline FockBasis enumerate_basis(int nu, int m, const GentileOrder& order,
                                 std::optional<int> sector = std::nullopt,
                                 std::size_t cap = kDefaultBasisCap) {
  return FockBasis(nu, m, order, sector, cap);
}

inline std::size_t state_to_index(const FockBasis& basis, const OccupationState& state) {
  const auto idx = basis.find(state.occupations);
  if (!idx) {
    throw DomainError("state_to_index: state is not a member of basis " + basis.tag());
  }
  return *idx;
}

inline OccupationState index_to_state(const FockBasis& basis, std::size_t ordinal) {
  if (ordinal >= basis.dimension()) {
    throw DomainError("index_to_state: ordinal " + std::to_string(ordinal) +
                      " out of range for dimension " + std::to_string(basis.dimension()));
  }
  const auto occ = basis.occupations(ordinal);
  return {std::vector<int>(occ.begin(), occ.end())};
}

}  // namespace gentile
