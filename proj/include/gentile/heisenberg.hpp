#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gentile/eigensolve.hpp"
#include "gentile/fock_basis.hpp"
#include "gentile/operators.hpp"
#include "gentile/partitions.hpp"
#include "gentile/scalars.hpp"

namespace gentile {

inline constexpr double kSpectrumMatchTolerance = 1e-9;
inline constexpr double kSingularCosine = 1e-12;

/// All-pairs exchange Hamiltonian H = P(2,1^{nu-2}) on a sector basis.
/// The additive constant of the spin model is fixed to 0.
inline ComplexOperator build_hamiltonian(const FockBasis& sector_basis) {
  if (sector_basis.nu() < 2) throw DomainError("build_hamiltonian: needs nu >= 2");
  return build_class_sum(sector_basis);
}

inline ComplexOperator build_hamiltonian(int nu, int m, const GentileOrder& order, int sector_total = 1,
                                         std::size_t cap = kDefaultBasisCap) {
  return build_hamiltonian(FockBasis(nu, m, order, sector_total, cap));
}

inline Spectrum spectrum_ed(const ComplexOperator& h) { return eigensolve_hermitian(h); }

inline double trace(const ComplexOperator& a) {
  double t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) t += a.at(i, i).real();
  return t;
}

enum class LimitForm { bose, fermi, general };

inline const char* to_string(LimitForm f) {
  switch (f) {
    case LimitForm::bose: return "bose";
    case LimitForm::fermi: return "fermi";
    case LimitForm::general: return "general";
  }
  return "?";
}

struct CasimirRoute {
  CasimirVariant variant = CasimirVariant::shifted;
  LimitForm form = LimitForm::bose;

  /// "casimir:shifted" for the Bose form, "casimir:shifted:fermi" otherwise.
  std::string label() const {
    std::string s = std::string("casimir:") + to_string(variant);
    if (form != LimitForm::bose) s += std::string(":") + to_string(form);
    return s;
  }
};

struct CasimirLevel {
  Partition partition;
  double eigenvalue = 0.0;
  std::int64_t weyl_dimension = 0;
};

struct CasimirSpectrum {
  CasimirRoute route;
  /// The general-n prefactor sec(2 pi/(n+1)) has a pole (n = 3); no levels then.
  bool singular = false;
  std::vector<CasimirLevel> levels;
};

/// Energies predicted from Casimir eigenvalues, one level per partition of nu into <= m parts:
///   Bose/Fermi:  E = +/- ( <C2>/2 - (m/2) <C1> )
///   general n:   E = sec(2 pi/(n+1)) ( <C2>/2 - (m/2) <C1> - m nu J(1) )
inline CasimirSpectrum spectrum_casimir(int nu, int m, CasimirRoute route,
                                        std::optional<GentileOrder> order = std::nullopt) {
  if (nu < 1 || m < 1) throw DomainError("spectrum_casimir: nu and m must be >= 1");
  CasimirSpectrum out{route, false, {}};
  double prefactor = route.form == LimitForm::fermi ? -1.0 : 1.0;
  double shift = 0.0;
  if (route.form == LimitForm::general) {
    if (!order) throw DomainError("spectrum_casimir: the general-n form needs an order");
    const double c = std::cos(2.0 * order->angle());
    if (std::abs(c) < kSingularCosine) {
      out.singular = true;
      return out;
    }
    prefactor = 1.0 / c;
    shift = -static_cast<double>(m) * nu * coupling_J(1, *order);
  }
  for (auto& lam : partitions_of(nu, m)) {
    const auto c1 = static_cast<double>(casimir_value(1, lam, m, route.variant));
    const auto c2 = static_cast<double>(casimir_value(2, lam, m, route.variant));
    const double e = prefactor * (0.5 * c2 - 0.5 * m * c1 + shift);
    const auto dim = weyl_dimension(lam, m);
    out.levels.push_back({std::move(lam), e, dim});
  }
  return out;
}

struct PartitionFactor {
  Partition partition;
  /// ED multiplicity divided by the Weyl dimension, when the level is matched uniquely.
  std::optional<double> factor;
};

struct SpectrumMatch {
  CasimirRoute route;
  bool singular = false;
  /// Hausdorff distance between ED eigenvalues and predicted energies.
  double max_deviation = INFINITY;
  /// Same with the predicted energies negated.
  double sign_flipped_deviation = INFINITY;
  int observed_sign = 1;
  bool eigenvalues_match = false;
  bool multiplicities_consistent = false;
  std::vector<PartitionFactor> factors;
  /// max|ED| / max|predicted| and the deviation after rescaling by it.
  std::optional<double> scale;
  double scaled_deviation = INFINITY;
};

namespace detail {

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

/// Compares an ED spectrum with Casimir-route energies as value sets and infers
/// the symmetric-group multiplicity factor of each partition.
inline SpectrumMatch compare_spectra(const Spectrum& ed, const CasimirSpectrum& casimir,
                                     double tol = kSpectrumMatchTolerance) {
  SpectrumMatch out;
  out.route = casimir.route;
  out.singular = casimir.singular;
  if (casimir.singular) return out;

  std::vector<double> ed_values;
  std::size_t ed_dim = 0;
  for (const auto& c : ed) {
    ed_values.push_back(c.value);
    ed_dim += c.multiplicity;
  }
  std::vector<double> predicted;
  for (const auto& l : casimir.levels) predicted.push_back(l.eigenvalue);
  std::vector<double> flipped(predicted.size());
  std::ranges::transform(predicted, flipped.begin(), [](double v) { return -v; });

  out.max_deviation = set_distance(ed_values, predicted);
  out.sign_flipped_deviation = set_distance(ed_values, flipped);
  out.observed_sign = out.sign_flipped_deviation < out.max_deviation ? -1 : 1;
  out.eigenvalues_match = out.max_deviation < tol;

  const double pmax = detail::max_abs(predicted);
  if (pmax > 0.0) {
    const double s = detail::max_abs(ed_values) / pmax;
    std::vector<double> scaled(predicted.size());
    std::ranges::transform(predicted, scaled.begin(), [s](double v) { return s * v; });
    out.scale = s;
    out.scaled_deviation = set_distance(ed_values, scaled);
  }

  double accounted = 0.0;
  bool all_integral = true;
  for (const auto& level : casimir.levels) {
    PartitionFactor pf{level.partition, std::nullopt};
    const auto sharing = std::ranges::count_if(casimir.levels, [&](const CasimirLevel& o) {
      return std::abs(o.eigenvalue - level.eigenvalue) < tol;
    });
    const auto hit = std::ranges::find_if(ed, [&](const EigenCluster& c) {
      return std::abs(c.value - level.eigenvalue) < tol;
    });
    if (sharing == 1 && hit != ed.end() && level.weyl_dimension > 0) {
      const double f = static_cast<double>(hit->multiplicity) / static_cast<double>(level.weyl_dimension);
      pf.factor = f;
      accounted += f * static_cast<double>(level.weyl_dimension);
      if (std::abs(f - std::round(f)) > 1e-12) all_integral = false;
    } else {
      all_integral = false;
    }
    out.factors.push_back(std::move(pf));
  }
  out.multiplicities_consistent = all_integral && std::abs(accounted - static_cast<double>(ed_dim)) < 0.5;
  return out;
}

struct SpectrumReport {
  int n = 1;
  int nu = 2;
  int m = 2;
  std::size_t sector_dimension = 0;
  double hamiltonian_trace = 0.0;
  double hamiltonian_leakage = 0.0;
  Spectrum ed;
  std::vector<CasimirSpectrum> casimir;
  std::vector<SpectrumMatch> matches;
};

/// ED of H on the one-particle-per-position sector plus every Casimir route.
inline SpectrumReport make_spectrum_report(int nu, int m, const GentileOrder& order, bool compare,
                                           std::size_t cap = kDefaultBasisCap) {
  SpectrumReport r;
  r.n = order.n();
  r.nu = nu;
  r.m = m;
  const FockBasis sector(nu, m, order, 1, cap);
  r.sector_dimension = sector.dimension();
  const auto assembled = assemble(class_sum_words(sector), sector);
  r.hamiltonian_leakage = assembled.leakage;
  r.hamiltonian_trace = trace(assembled.op);
  r.ed = spectrum_ed(assembled.op);
  for (auto variant : {CasimirVariant::shifted, CasimirVariant::raw}) {
    for (auto form : {LimitForm::bose, LimitForm::fermi, LimitForm::general}) {
      r.casimir.push_back(spectrum_casimir(nu, m, {variant, form}, order));
    }
  }
  if (compare) {
    for (const auto& c : r.casimir) r.matches.push_back(compare_spectra(r.ed, c));
  }
  return r;
}

}  // namespace gentile
