#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "gentile/errors.hpp"

namespace gentile {

using cplx = std::complex<double>;

/// Stand-in for the Bose limit n -> infinity.
inline constexpr int kBoseProxyOrder = 1'000'000;

/// Maximum occupation number n together with the derived phase
/// q = exp(i 2 pi / (n+1)) and angle x = pi / (n+1).
class GentileOrder {
 public:
  explicit GentileOrder(int n) : n_(n) {
    if (n < 1) throw DomainError("Gentile order n must be >= 1, got " + std::to_string(n));
    angle_ = std::numbers::pi / (static_cast<double>(n) + 1.0);
    q_ = std::polar(1.0, 2.0 * angle_);
  }

  int n() const noexcept { return n_; }
  /// Single-mode Hilbert space dimension n+1.
  int levels() const noexcept { return n_ + 1; }
  cplx q() const noexcept { return q_; }
  double angle() const noexcept { return angle_; }

  friend bool operator==(const GentileOrder& a, const GentileOrder& b) noexcept {
    return a.n_ == b.n_;
  }

 private:
  int n_;
  double angle_;
  cplx q_;
};

namespace detail {

inline void check_occupation(int N, const GentileOrder& order, const char* fn) {
  if (N < 0 || N > order.n()) {
    throw DomainError(std::string(fn) + ": occupation " + std::to_string(N) +
                      " outside [0, " + std::to_string(order.n()) + "]");
  }
}

}  // namespace detail

/// q-number <nu>_n = (1 - q^nu) / (1 - q).
///
/// Evaluated through the equivalent polar form sin(nu x)/sin(x) * exp(i (nu-1) x),
/// which does not cancel catastrophically for large n. nu = 0 and nu = n+1 are
/// returned as exact zeros so that ladder truncation at the top state is exact.
inline cplx bracket_nu(int nu, const GentileOrder& order) {
  if (nu < 0) throw DomainError("bracket_nu: nu must be >= 0");
  if (nu == 0 || nu == order.n() + 1) return {0.0, 0.0};
  if (nu == 1) return {1.0, 0.0};
  const double x = order.angle();
  const double magnitude = std::sin(nu * x) / std::sin(x);
  return std::polar(1.0, (nu - 1) * x) * magnitude;
}

/// g(N) = csc(x) sin(N x), the diagonal of a^dagger a.
inline double occ_g(int N, const GentileOrder& order) {
  detail::check_occupation(N, order, "occ_g");
  const double x = order.angle();
  return std::sin(N * x) / std::sin(x);
}

/// f(N) = csc(x)(cos x - 1) sin(N x) + cos(N x), the diagonal of a a^dagger - a^dagger a.
inline double occ_f(int N, const GentileOrder& order) {
  detail::check_occupation(N, order, "occ_f");
  const double x = order.angle();
  return (std::cos(x) - 1.0) * std::sin(N * x) / std::sin(x) + std::cos(N * x);
}

/// J(N) = -2 csc^2(x) sin(x/2) sin(N x) sin((2N + n) x / 2).
inline double coupling_J(int N, const GentileOrder& order) {
  detail::check_occupation(N, order, "coupling_J");
  const double x = order.angle();
  const double s = std::sin(x);
  return -2.0 / (s * s) * std::sin(0.5 * x) * std::sin(N * x) *
         std::sin(0.5 * (2.0 * N + order.n()) * x);
}

}  // namespace gentile
