#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gentile/errors.hpp"
#include "gentile/scalars.hpp"

namespace gentile {

inline constexpr double kDropTolerance = 1e-14;

struct Triplet {
  std::size_t row;
  std::size_t col;
  cplx value;
};

/// Sparse complex square matrix in CSR form over an enumerated basis.
///
/// Entries below kDropTolerance in magnitude are never stored.
class ComplexOperator {
 public:
  ComplexOperator() = default;

  explicit ComplexOperator(std::size_t dim, std::string basis_tag = {})
      : dim_(dim), tag_(std::move(basis_tag)), row_ptr_(dim + 1, 0) {}

  /// Duplicates are summed; the result is pruned at kDropTolerance.
  static ComplexOperator from_triplets(std::size_t dim, std::vector<Triplet> triplets,
                                       std::string basis_tag = {}) {
    for (const auto& t : triplets) {
      if (t.row >= dim || t.col >= dim) {
        throw DomainError("ComplexOperator: triplet index out of range for dimension " +
                          std::to_string(dim));
      }
    }
    std::ranges::sort(triplets, [](const Triplet& a, const Triplet& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    ComplexOperator op(dim, std::move(basis_tag));
    op.cols_.reserve(triplets.size());
    op.values_.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
      const std::size_t r = triplets[i].row;
      const std::size_t c = triplets[i].col;
      cplx sum = 0.0;
      while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
        sum += triplets[i].value;
        ++i;
      }
      if (std::abs(sum) >= kDropTolerance) {
        op.cols_.push_back(c);
        op.values_.push_back(sum);
        ++op.row_ptr_[r + 1];
      }
    }
    for (std::size_t r = 0; r < dim; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
    return op;
  }

  static ComplexOperator identity(std::size_t dim, std::string basis_tag = {}) {
    std::vector<cplx> d(dim, cplx{1.0, 0.0});
    return diagonal(d, std::move(basis_tag));
  }

  static ComplexOperator diagonal(std::span<const cplx> d, std::string basis_tag = {}) {
    std::vector<Triplet> t;
    t.reserve(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
    return from_triplets(d.size(), std::move(t), std::move(basis_tag));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t nonzeros() const noexcept { return values_.size(); }
  const std::string& basis_tag() const noexcept { return tag_; }

  /// Visits stored entries in row-major order as f(row, col, value).
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) f(r, cols_[p], values_[p]);
    }
  }

  template <typename F>
  void for_each_in_row(std::size_t r, F&& f) const {
    for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) f(cols_[p], values_[p]);
  }

  cplx at(std::size_t r, std::size_t c) const {
    const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r]);
    const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[r + 1]);
    const auto it = std::lower_bound(first, last, c);
    if (it == last || *it != c) return {0.0, 0.0};
    return values_[static_cast<std::size_t>(it - cols_.begin())];
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(nonzeros());
    for_each([&](std::size_t r, std::size_t c, cplx v) { out.push_back({r, c, v}); });
    return out;
  }

  /// y = A x
  std::vector<cplx> apply(std::span<const cplx> x) const {
    if (x.size() != dim_) throw DomainError("ComplexOperator::apply: vector size mismatch");
    std::vector<cplx> y(dim_, cplx{});
    for (std::size_t r = 0; r < dim_; ++r) {
      cplx acc{};
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[cols_[p]];
      y[r] = acc;
    }
    return y;
  }

  /// Largest entry magnitude (0 for the empty operator).
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Induced infinity norm: max over rows of the sum of entry magnitudes.
  double max_row_sum() const {
    double m = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
      double s = 0.0;
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) s += std::abs(values_[p]);
      m = std::max(m, s);
    }
    return m;
  }

 private:
  std::size_t dim_ = 0;
  std::string tag_;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<cplx> values_;
};

namespace detail {

inline const std::string& merged_tag(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("operator dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                      std::to_string(b.dim()));
  }
  if (!a.basis_tag().empty() && !b.basis_tag().empty() && a.basis_tag() != b.basis_tag()) {
    throw DomainError("operator basis mismatch: " + a.basis_tag() + " vs " + b.basis_tag());
  }
  return a.basis_tag().empty() ? b.basis_tag() : a.basis_tag();
}

template <typename F>
ComplexOperator map_entries(const ComplexOperator& a, F&& f) {
  auto t = a.triplets();
  for (auto& e : t) e.value = f(e.value);
  return ComplexOperator::from_triplets(a.dim(), std::move(t), a.basis_tag());
}

}  // namespace detail

/// alpha A + beta B
inline ComplexOperator linear_combination(cplx alpha, const ComplexOperator& a, cplx beta,
                                          const ComplexOperator& b) {
  const auto tag = detail::merged_tag(a, b);
  std::vector<Triplet> t;
  t.reserve(a.nonzeros() + b.nonzeros());
  a.for_each([&](std::size_t r, std::size_t c, cplx v) { t.push_back({r, c, alpha * v}); });
  b.for_each([&](std::size_t r, std::size_t c, cplx v) { t.push_back({r, c, beta * v}); });
  return ComplexOperator::from_triplets(a.dim(), std::move(t), tag);
}

inline ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b) {
  return linear_combination(1.0, a, 1.0, b);
}

inline ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b) {
  return linear_combination(1.0, a, -1.0, b);
}

inline ComplexOperator operator*(cplx s, const ComplexOperator& a) {
  return detail::map_entries(a, [s](cplx v) { return s * v; });
}

/// Sparse product A B (row-wise accumulation with a dense scratch row).
inline ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  const auto tag = detail::merged_tag(a, b);
  const std::size_t n = a.dim();
  std::vector<Triplet> t;
  std::vector<cplx> acc(n, cplx{});
  std::vector<char> touched(n, 0);
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < n; ++r) {
    cols.clear();
    a.for_each_in_row(r, [&](std::size_t k, cplx av) {
      b.for_each_in_row(k, [&](std::size_t c, cplx bv) {
        if (!touched[c]) {
          touched[c] = 1;
          cols.push_back(c);
        }
        acc[c] += av * bv;
      });
    });
    for (std::size_t c : cols) {
      t.push_back({r, c, acc[c]});
      acc[c] = cplx{};
      touched[c] = 0;
    }
  }
  return ComplexOperator::from_triplets(n, std::move(t), tag);
}

inline ComplexOperator adjoint(const ComplexOperator& a) {
  auto t = a.triplets();
  for (auto& e : t) {
    std::swap(e.row, e.col);
    e.value = std::conj(e.value);
  }
  return ComplexOperator::from_triplets(a.dim(), std::move(t), a.basis_tag());
}

inline ComplexOperator entrywise_conjugate(const ComplexOperator& a) {
  return detail::map_entries(a, [](cplx v) { return std::conj(v); });
}

inline ComplexOperator entrywise_real(const ComplexOperator& a) {
  return detail::map_entries(a, [](cplx v) { return cplx{v.real(), 0.0}; });
}

/// (A + A^dagger) / 2
inline ComplexOperator hermitian_part(const ComplexOperator& a) {
  return linear_combination(0.5, a, 0.5, adjoint(a));
}

inline ComplexOperator commutator(const ComplexOperator& x, const ComplexOperator& y) {
  return x * y - y * x;
}

/// n-bracket [X, Y]_n = XY - q YX.
inline ComplexOperator n_bracket(const ComplexOperator& x, const ComplexOperator& y,
                                 const GentileOrder& order) {
  return linear_combination(1.0, x * y, -order.q(), y * x);
}

/// max |A - A^dagger| entry.
inline double hermiticity_defect(const ComplexOperator& a) { return (a - adjoint(a)).max_abs(); }

}  // namespace gentile
