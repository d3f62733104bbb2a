#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gentile/errors.hpp"
#include "gentile/sparse_operator.hpp"

namespace gentile {

inline constexpr std::size_t kDenseCap = 4096;
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kDegeneracyTolerance = 1e-8;

struct EigenCluster {
  double value;
  std::size_t multiplicity;

  friend bool operator==(const EigenCluster&, const EigenCluster&) = default;
};

using Spectrum = std::vector<EigenCluster>;

inline Eigen::MatrixXcd to_dense(const ComplexOperator& a) {
  const auto n = static_cast<Eigen::Index>(a.dim());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  a.for_each([&](std::size_t r, std::size_t c, cplx v) {
    d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
  });
  return d;
}

/// Groups ascending eigenvalues into clusters whose consecutive gaps are
/// below `degeneracy_tol`; each cluster reports its mean.
inline Spectrum cluster_eigenvalues(const std::vector<double>& ascending, double degeneracy_tol) {
  Spectrum out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= ascending.size(); ++i) {
    if (i == ascending.size() || ascending[i] - ascending[i - 1] >= degeneracy_tol) {
      double sum = 0.0;
      for (std::size_t j = start; j < i; ++j) sum += ascending[j];
      out.push_back({sum / static_cast<double>(i - start), i - start});
      start = i;
    }
  }
  return out;
}

/// Hausdorff distance between two finite sets of reals (infinite if exactly one is empty).
inline double set_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return a.empty() && b.empty() ? 0.0 : INFINITY;
  auto one_way = [](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0.0;
    for (double v : x) {
      double best = INFINITY;
      for (double w : y) best = std::min(best, std::abs(v - w));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

/// Ascending clustered spectrum of a Hermitian operator (dense, dim <= cap).
inline Spectrum eigensolve_hermitian(const ComplexOperator& a,
                                     double degeneracy_tol = kDegeneracyTolerance,
                                     std::size_t dense_cap = kDenseCap) {
  if (a.dim() > dense_cap) {
    throw SizingError("eigensolve_hermitian: dimension " + std::to_string(a.dim()) +
                      " exceeds dense cap " + std::to_string(dense_cap));
  }
  const double asym = hermiticity_defect(a);
  if (asym > kHermiticityTolerance) {
    throw NonHermitianError(
        "eigensolve_hermitian: operator is not Hermitian (max |A - A^dagger| = " +
            std::to_string(asym) + ")",
        asym);
  }
  if (a.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_dense(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigensolve_hermitian: eigen decomposition did not converge");
  }
  const auto& ev = solver.eigenvalues();
  std::vector<double> values(ev.data(), ev.data() + ev.size());
  return cluster_eigenvalues(values, degeneracy_tol);
}

}  // namespace gentile
