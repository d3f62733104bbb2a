#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "gentile/eigensolve.hpp"
#include "gentile/errors.hpp"
#include "gentile/expr.hpp"
#include "gentile/fock_basis.hpp"
#include "gentile/ladder.hpp"
#include "gentile/operators.hpp"
#include "gentile/partitions.hpp"
#include "gentile/scalars.hpp"

namespace gentile {

enum class IdentityId {
  NBRACKET_EQ6,
  PHASE_EQ7,
  PHASE_EQ8,
  FG_CONSISTENCY_EQ13_14,
  COMMUTATOR_EQ12,
  BRACKET_FN_EQ19_NBRACKET,
  BRACKET_FN_EQ19_PLAIN,
  QUARTIC_EQ22,
  DUALITY_TAU_E,
  THEOREM_EQ3,
  LIMIT_EQ5,
  HERMITICITY_CASIMIR,
  SECTOR_CONSERVATION,
  CASIMIR_SPECTRUM_MATCH,
};

inline constexpr std::array<IdentityId, 14> kAllIdentities = {
    IdentityId::NBRACKET_EQ6,          IdentityId::PHASE_EQ7,
    IdentityId::PHASE_EQ8,             IdentityId::FG_CONSISTENCY_EQ13_14,
    IdentityId::COMMUTATOR_EQ12,       IdentityId::BRACKET_FN_EQ19_NBRACKET,
    IdentityId::BRACKET_FN_EQ19_PLAIN, IdentityId::QUARTIC_EQ22,
    IdentityId::DUALITY_TAU_E,         IdentityId::THEOREM_EQ3,
    IdentityId::LIMIT_EQ5,             IdentityId::HERMITICITY_CASIMIR,
    IdentityId::SECTOR_CONSERVATION,   IdentityId::CASIMIR_SPECTRUM_MATCH,
};

inline std::string_view to_string(IdentityId id) {
  switch (id) {
    case IdentityId::NBRACKET_EQ6: return "NBRACKET_EQ6";
    case IdentityId::PHASE_EQ7: return "PHASE_EQ7";
    case IdentityId::PHASE_EQ8: return "PHASE_EQ8";
    case IdentityId::FG_CONSISTENCY_EQ13_14: return "FG_CONSISTENCY_EQ13_14";
    case IdentityId::COMMUTATOR_EQ12: return "COMMUTATOR_EQ12";
    case IdentityId::BRACKET_FN_EQ19_NBRACKET: return "BRACKET_FN_EQ19_NBRACKET";
    case IdentityId::BRACKET_FN_EQ19_PLAIN: return "BRACKET_FN_EQ19_PLAIN";
    case IdentityId::QUARTIC_EQ22: return "QUARTIC_EQ22";
    case IdentityId::DUALITY_TAU_E: return "DUALITY_TAU_E";
    case IdentityId::THEOREM_EQ3: return "THEOREM_EQ3";
    case IdentityId::LIMIT_EQ5: return "LIMIT_EQ5";
    case IdentityId::HERMITICITY_CASIMIR: return "HERMITICITY_CASIMIR";
    case IdentityId::SECTOR_CONSERVATION: return "SECTOR_CONSERVATION";
    case IdentityId::CASIMIR_SPECTRUM_MATCH: return "CASIMIR_SPECTRUM_MATCH";
  }
  return "?";
}

inline std::optional<IdentityId> parse_identity(std::string_view s) {
  for (auto id : kAllIdentities) {
    if (to_string(id) == s) return id;
  }
  return std::nullopt;
}

/// Identities that follow from the construction itself and are asserted.
/// Everything else is a claim under test and only reported.
inline bool is_guaranteed(IdentityId id) {
  switch (id) {
    case IdentityId::NBRACKET_EQ6:
    case IdentityId::PHASE_EQ7:
    case IdentityId::FG_CONSISTENCY_EQ13_14:
    case IdentityId::BRACKET_FN_EQ19_PLAIN:
    case IdentityId::HERMITICITY_CASIMIR:
    case IdentityId::SECTOR_CONSERVATION:
      return true;
    default:
      return false;
  }
}

/// Whether the identity lives on a single mode (independent of nu, m, subspace).
inline bool is_single_mode(IdentityId id) {
  switch (id) {
    case IdentityId::NBRACKET_EQ6:
    case IdentityId::PHASE_EQ7:
    case IdentityId::PHASE_EQ8:
    case IdentityId::FG_CONSISTENCY_EQ13_14:
    case IdentityId::BRACKET_FN_EQ19_NBRACKET:
    case IdentityId::BRACKET_FN_EQ19_PLAIN:
    case IdentityId::QUARTIC_EQ22:
      return true;
    default:
      return false;
  }
}

enum class Interpretation { entrywise_real, hermitian_part, not_applicable };

inline std::string_view to_string(Interpretation i) {
  switch (i) {
    case Interpretation::entrywise_real: return "entrywise_real";
    case Interpretation::hermitian_part: return "hermitian_part";
    case Interpretation::not_applicable: return "not_applicable";
  }
  return "?";
}

/// Full Fock space, or the sector with a fixed per-position total.
struct Subspace {
  std::optional<int> sector_total;

  static Subspace full() { return {}; }
  static Subspace sector(int t) { return {t}; }

  std::string str() const { return sector_total ? "sector:" + std::to_string(*sector_total) : "full"; }

  friend auto operator<=>(const Subspace&, const Subspace&) = default;
};

struct EvalMode {
  bool sampled = false;
  std::size_t samples = 64;
  std::uint64_t seed = 42;

  std::string str() const { return sampled ? "sampled" : "dense"; }
};

struct VerifierSettings {
  double tolerance = 1e-10;
  double fine_tolerance = 1e-12;
  std::size_t dense_cap = kDenseCap;
  std::size_t basis_cap = kDefaultBasisCap;
};

struct VerificationTask {
  IdentityId identity = IdentityId::NBRACKET_EQ6;
  int n = 1;
  int nu = 1;
  int m = 1;
  Subspace subspace;
  Interpretation interpretation = Interpretation::not_applicable;
  EvalMode mode;

  auto key() const {
    return std::make_tuple(static_cast<int>(identity), n, nu, m, subspace, static_cast<int>(interpretation));
  }
};

enum class Status { pass, fail, report_only };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::report_only: return "report_only";
  }
  return "?";
}

struct Verdict {
  VerificationTask task;
  double residual = 0.0;
  double tolerance = 0.0;
  Status status = Status::report_only;
  bool guaranteed = false;
  /// Auxiliary numbers (secondary residuals, flags) keyed by name.
  std::map<std::string, double> diagnostics;
  std::string note;
  /// Non-empty when the task could not be evaluated.
  std::string error;
};

inline double tolerance_for(IdentityId id, const VerifierSettings& s) {
  switch (id) {
    case IdentityId::FG_CONSISTENCY_EQ13_14:
    case IdentityId::BRACKET_FN_EQ19_PLAIN:
      return s.fine_tolerance;
    default:
      return s.tolerance;
  }
}

namespace detail {

/// Lazily built operators for one (n, nu, m, subspace) point.
class Workspace {
 public:
  Workspace(int n, int nu, int m, Subspace sub, const VerifierSettings& settings)
      : order_(n), nu_(nu), m_(m), sub_(sub), settings_(settings) {}

  const GentileOrder& order() const { return order_; }
  int m() const { return m_; }
  int nu() const { return nu_; }
  const VerifierSettings& settings() const { return settings_; }

  const std::shared_ptr<const FockBasis>& basis() {
    if (!basis_) {
      basis_ = std::make_shared<const FockBasis>(nu_, m_, order_, sub_.sector_total, settings_.basis_cap);
    }
    return basis_;
  }

  const std::shared_ptr<const FockBasis>& single_mode_basis() {
    if (!single_) {
      single_ = std::make_shared<const FockBasis>(1, 1, order_, std::nullopt, settings_.basis_cap);
    }
    return single_;
  }

  Expr single(Ladder kind) {
    return leaf(WordSum::single(1.0, {Letter{kind, 0}}), single_mode_basis());
  }

  Expr single_diag(double (*fn)(int, const GentileOrder&)) {
    const auto& b = *single_mode_basis();
    return leaf(build_diagonal(b, [&](std::span<const int> occ) { return cplx{fn(occ[0], order_), 0.0}; }));
  }

  Expr single_identity() { return leaf(ComplexOperator::identity(single_mode_basis()->dimension())); }

  Expr E(int k, int l) {
    auto& slot = e_[{k, l}];
    if (!slot) slot = make_word_leaf(E_words(k, l, *basis()));
    return *slot;
  }

  Expr tau(int i, int j) {
    auto& slot = tau_[{i, j}];
    if (!slot) slot = make_word_leaf(tau_words(i, j, *basis()));
    return *slot;
  }

  Expr P() {
    if (!p_) {
      std::vector<std::pair<cplx, Expr>> terms;
      for (int i = 1; i <= nu_; ++i) {
        for (int j = i + 1; j <= nu_; ++j) terms.emplace_back(1.0, tau(i, j));
      }
      if (terms.empty()) throw DomainError("class sum needs nu >= 2");
      p_ = Expr::sum(std::move(terms));
    }
    return *p_;
  }

  Expr C1() {
    if (!c1_) {
      std::vector<std::pair<cplx, Expr>> terms;
      for (int l = 1; l <= m_; ++l) terms.emplace_back(1.0, E(l, l));
      c1_ = Expr::sum(std::move(terms));
    }
    return *c1_;
  }

  Expr C2() {
    if (!c2_) {
      std::vector<std::pair<cplx, Expr>> terms;
      for (int k = 1; k <= m_; ++k) {
        for (int l = 1; l <= m_; ++l) terms.emplace_back(1.0, E(k, l) * E(l, k));
      }
      c2_ = Expr::sum(std::move(terms));
    }
    return *c2_;
  }

  Expr J_sum() {
    if (!j_) j_ = leaf(build_J_sum(*basis()));
    return *j_;
  }

  Expr N_total() {
    if (!ntot_) ntot_ = leaf(build_total_number(*basis()));
    return *ntot_;
  }

  Expr N_position(int i) {
    auto& slot = npos_[i];
    if (!slot) slot = leaf(build_position_number(i, *basis()));
    return *slot;
  }

  /// sum_i [ f(N_l^i) g(N_k^i) - f(N_k^i) g(N_l^i) ]
  Expr fg_correction(int k, int l) {
    const auto& b = *basis();
    const auto m = static_cast<std::size_t>(m_);
    return leaf(build_diagonal(b, [&](std::span<const int> occ) {
      double s = 0.0;
      for (std::size_t i = 0; i < static_cast<std::size_t>(nu_); ++i) {
        const int nk = occ[i * m + static_cast<std::size_t>(k - 1)];
        const int nl = occ[i * m + static_cast<std::size_t>(l - 1)];
        s += occ_f(nl, order_) * occ_g(nk, order_) - occ_f(nk, order_) * occ_g(nl, order_);
      }
      return cplx{s, 0.0};
    }));
  }

  double word_leakage() {
    double leak = 0.0;
    for (const auto& w : word_leaves_) leak = std::max(leak, w->leakage());
    return leak;
  }

 private:
  Expr make_word_leaf(WordSum ws) {
    auto prim = std::make_shared<WordPrimitive>(std::move(ws), basis());
    word_leaves_.push_back(prim);
    return Expr::leaf(prim);
  }

  GentileOrder order_;
  int nu_;
  int m_;
  Subspace sub_;
  VerifierSettings settings_;
  std::shared_ptr<const FockBasis> basis_;
  std::shared_ptr<const FockBasis> single_;
  std::map<std::pair<int, int>, std::optional<Expr>> e_;
  std::map<std::pair<int, int>, std::optional<Expr>> tau_;
  std::map<int, std::optional<Expr>> npos_;
  std::optional<Expr> p_, c1_, c2_, j_, ntot_;
  std::vector<std::shared_ptr<WordPrimitive>> word_leaves_;
};

inline double residual_norm(const Expr& r, const EvalMode& mode, const VerifierSettings& s) {
  if (mode.sampled) {
    if (mode.samples < 32) throw DomainError("sampled mode requires at least 32 vectors");
    return sampled_norm(r, mode.samples, mode.seed);
  }
  if (r.dim() > s.dense_cap) {
    throw SizingError("dense residual: dimension " + std::to_string(r.dim()) + " exceeds dense cap " +
                      std::to_string(s.dense_cap));
  }
  return r.materialize().max_abs();
}

inline Expr commutator(const Expr& x, const Expr& y) { return x * y - y * x; }

inline Expr n_bracket(const Expr& x, const Expr& y, const GentileOrder& o) {
  return Expr::sum({{1.0, x * y}, {-o.q(), y * x}});
}

inline std::vector<double> distinct_values(const Spectrum& s) {
  std::vector<double> v;
  for (const auto& c : s) v.push_back(c.value);
  return v;
}

inline void evaluate(Workspace& ws, const VerificationTask& task, Verdict& out) {
  const auto& o = ws.order();
  const auto& settings = ws.settings();
  const auto& mode = task.mode;
  auto norm = [&](const Expr& r) { return residual_norm(r, mode, settings); };
  const double x = o.angle();
  const int m = ws.m();

  switch (task.identity) {
    case IdentityId::NBRACKET_EQ6: {
      out.residual = norm(n_bracket(ws.single(Ladder::b), ws.single(Ladder::a_dag), o) - ws.single_identity());
      // Cross-mode pair: modes commute, so [b_1, a_2^dag]_n = (1 - q) a_2^dag b_1 is not zero.
      const auto levels = static_cast<std::size_t>(o.levels());
      if (levels * levels <= settings.dense_cap) {
        auto two = std::make_shared<const FockBasis>(1, 2, o, std::nullopt, settings.basis_cap);
        const Expr b1 = leaf(WordSum::single(1.0, {Letter{Ladder::b, 0}}), two);
        const Expr ad2 = leaf(WordSum::single(1.0, {Letter{Ladder::a_dag, 1}}), two);
        out.diagnostics["cross_mode_residual"] = n_bracket(b1, ad2, o).materialize().max_abs();
      }
      out.note = "same-mode pair; cross-mode pair recorded as diagnostic";
      break;
    }
    case IdentityId::PHASE_EQ7: {
      const Expr a = ws.single(Ladder::a), b = ws.single(Ladder::b);
      out.residual = norm(a * b - std::polar(1.0, x) * (b * a));
      break;
    }
    case IdentityId::PHASE_EQ8: {
      const Expr ad = ws.single(Ladder::a_dag), bd = ws.single(Ladder::b_dag);
      out.residual = norm(ad * bd - o.q() * (bd * ad));
      out.diagnostics["residual_with_half_phase"] = norm(ad * bd - std::polar(1.0, x) * (bd * ad));
      break;
    }
    case IdentityId::FG_CONSISTENCY_EQ13_14: {
      const Expr a = ws.single(Ladder::a), ad = ws.single(Ladder::a_dag);
      const double rg = norm(ad * a - ws.single_diag(occ_g));
      const double rf = norm(a * ad - ad * a - ws.single_diag(occ_f));
      out.diagnostics["g_residual"] = rg;
      out.diagnostics["f_residual"] = rf;
      out.residual = std::max(rg, rf);
      break;
    }
    case IdentityId::BRACKET_FN_EQ19_NBRACKET:
    case IdentityId::BRACKET_FN_EQ19_PLAIN: {
      const bool deformed = task.identity == IdentityId::BRACKET_FN_EQ19_NBRACKET;
      auto bracket = [&](const Expr& u, const Expr& v) { return deformed ? n_bracket(u, v, o) : commutator(u, v); };
      const Expr f = ws.single_diag(occ_f);
      const double rb = norm(bracket(ws.single(Ladder::b), ws.single(Ladder::b_dag)) - f);
      const double ra = norm(bracket(ws.single(Ladder::a), ws.single(Ladder::a_dag)) - f);
      out.diagnostics["b_residual"] = rb;
      out.diagnostics["a_residual"] = ra;
      out.residual = std::max(rb, ra);
      break;
    }
    case IdentityId::QUARTIC_EQ22: {
      const Expr a = ws.single(Ladder::a), b = ws.single(Ladder::b);
      const Expr ad = ws.single(Ladder::a_dag), bd = ws.single(Ladder::b_dag);
      const double r1 = norm(n_bracket(ad * bd * ad * bd, bd * ad * bd * ad, o));
      const double r2 = norm(n_bracket(a * b * a * b, b * a * b * a, o));
      out.diagnostics["creation_word_residual"] = r1;
      out.diagnostics["annihilation_word_residual"] = r2;
      out.residual = std::max(r1, r2);
      break;
    }
    case IdentityId::COMMUTATOR_EQ12: {
      double worst = 0.0;
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l)
          for (int p = 1; p <= m; ++p)
            for (int q = 1; q <= m; ++q) {
              std::vector<std::pair<cplx, Expr>> terms{{1.0, commutator(ws.E(k, l), ws.E(p, q))}};
              if (l == p) terms.emplace_back(-1.0, ws.E(k, q));
              if (q == k) terms.emplace_back(1.0, ws.E(p, l));
              if (l == p && q == k) terms.emplace_back(-2.0, ws.fg_correction(k, l));
              worst = std::max(worst, norm(Expr::sum(std::move(terms))));
            }
      out.residual = worst;
      break;
    }
    case IdentityId::DUALITY_TAU_E: {
      double worst = 0.0;
      for (int i = 1; i <= ws.nu(); ++i)
        for (int j = i + 1; j <= ws.nu(); ++j)
          for (int s = 1; s <= m; ++s)
            for (int t = 1; t <= m; ++t) worst = std::max(worst, norm(commutator(ws.tau(i, j), ws.E(s, t))));
      out.residual = worst;
      break;
    }
    case IdentityId::THEOREM_EQ3: {
      const Expr qp = o.q() * ws.P();
      const Expr lhs_re = task.interpretation == Interpretation::hermitian_part ? hermitian_part(qp) : real_part(qp);
      const Expr rhs = Expr::sum({{0.5, ws.C2()}, {-0.5 * m, ws.C1()}});
      out.residual = norm(Expr::sum({{1.0, lhs_re}, {static_cast<double>(m), ws.J_sum()}, {-1.0, rhs}}));
      break;
    }
    case IdentityId::LIMIT_EQ5: {
      const bool fermi = o.n() == 1;
      const double sign = fermi ? -1.0 : 1.0;
      const Expr rhs = Expr::sum({{0.5, ws.C2()}, {-0.5 * m, ws.C1()}});
      const Expr limit = Expr::sum({{sign, ws.P()}, {-static_cast<double>(m), ws.N_total()}, {-1.0, rhs}});
      out.residual = norm(limit);
      out.diagnostics["sign"] = sign;
      out.diagnostics["limit_applies"] = (fermi || o.n() >= kBoseProxyOrder) ? 1.0 : 0.0;
      if (fermi) {
        // At n = 1 the theorem's entrywise-real recipe is algebraically the Fermi form.
        const Expr theorem = Expr::sum(
            {{1.0, real_part(o.q() * ws.P())}, {static_cast<double>(m), ws.J_sum()}, {-1.0, rhs}});
        out.diagnostics["theorem_consistency"] = norm(theorem - limit);
        out.diagnostics["theorem_consistency_tolerance"] = settings.fine_tolerance;
      }
      break;
    }
    case IdentityId::HERMITICITY_CASIMIR: {
      const double r1 = norm(ws.C1() - ws.C1().adjoint());
      const double r2 = norm(ws.C2() - ws.C2().adjoint());
      out.diagnostics["C1_residual"] = r1;
      out.diagnostics["C2_residual"] = r2;
      out.residual = std::max(r1, r2);
      break;
    }
    case IdentityId::SECTOR_CONSERVATION: {
      std::vector<Expr> ops;
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) ops.push_back(ws.E(k, l));
      for (int i = 1; i <= ws.nu(); ++i)
        for (int j = i + 1; j <= ws.nu(); ++j) ops.push_back(ws.tau(i, j));
      if (ws.nu() >= 2) ops.push_back(ws.P());
      ops.push_back(ws.C1());
      ops.push_back(ws.C2());
      double worst = 0.0;
      for (const auto& op : ops)
        for (int i = 1; i <= ws.nu(); ++i) worst = std::max(worst, norm(commutator(op, ws.N_position(i))));
      const double leak = task.subspace.sector_total ? ws.word_leakage() : 0.0;
      out.diagnostics["max_commutator"] = worst;
      out.diagnostics["max_leakage"] = leak;
      out.residual = std::max(worst, leak);
      break;
    }
    case IdentityId::CASIMIR_SPECTRUM_MATCH: {
      const FockBasis sector(ws.nu(), m, o, 1, settings.basis_cap);
      if (!task.subspace.sector_total || *task.subspace.sector_total != 1) {
        out.diagnostics["evaluated_on_sector_total"] = 1.0;
      }
      const auto c1 = distinct_values(eigensolve_hermitian(build_C1(sector), kDegeneracyTolerance, settings.dense_cap));
      const auto c2 = distinct_values(eigensolve_hermitian(build_C2(sector), kDegeneracyTolerance, settings.dense_cap));
      const auto parts = partitions_of(ws.nu(), m);
      double best = INFINITY;
      std::string best_name;
      for (auto variant : {CasimirVariant::raw, CasimirVariant::shifted}) {
        std::set<double> p1, p2;
        for (const auto& lam : parts) {
          p1.insert(static_cast<double>(casimir_value(1, lam, m, variant)));
          p2.insert(static_cast<double>(casimir_value(2, lam, m, variant)));
        }
        const double dev = std::max(set_distance(c1, {p1.begin(), p1.end()}), set_distance(c2, {p2.begin(), p2.end()}));
        out.diagnostics[std::string("deviation_") + to_string(variant)] = dev;
        if (dev < best) {
          best = dev;
          best_name = to_string(variant);
        }
      }
      out.residual = best;
      out.note = "best variant: " + best_name;
      break;
    }
  }
}

inline void finalize(Verdict& v) {
  const auto& d = v.diagnostics;
  if (!v.error.empty()) {
    v.status = Status::fail;
  } else if (v.guaranteed) {
    v.status = std::isfinite(v.residual) && v.residual < v.tolerance ? Status::pass : Status::fail;
  } else {
    v.status = Status::report_only;
    if (const auto it = d.find("theorem_consistency"); it != d.end()) {
      if (!(it->second < d.at("theorem_consistency_tolerance"))) v.status = Status::fail;
    }
  }
}

inline Verdict run_in(Workspace& ws, const VerificationTask& task) {
  Verdict v;
  v.task = task;
  v.guaranteed = is_guaranteed(task.identity);
  v.tolerance = tolerance_for(task.identity, ws.settings());
  try {
    evaluate(ws, task, v);
  } catch (const std::exception& e) {
    v.residual = NAN;
    v.error = e.what();
  }
  finalize(v);
  return v;
}

}  // namespace detail

/// Evaluates one identity residual and classifies it.
inline Verdict run_task(const VerificationTask& task, const VerifierSettings& settings = {}) {
  try {
    detail::Workspace ws(task.n, task.nu, task.m, task.subspace, settings);
    return detail::run_in(ws, task);
  } catch (const std::exception& e) {
    Verdict v;
    v.task = task;
    v.guaranteed = is_guaranteed(task.identity);
    v.tolerance = tolerance_for(task.identity, settings);
    v.residual = NAN;
    v.error = e.what();
    detail::finalize(v);
    return v;
  }
}

struct GridSpec {
  std::vector<int> ns{1, 2, 3};
  std::vector<int> nus{2, 3};
  std::vector<int> ms{2};
  std::vector<Subspace> subspaces{Subspace::full(), Subspace::sector(1)};
  std::vector<Interpretation> interpretations{Interpretation::entrywise_real, Interpretation::hermitian_part};
  std::vector<IdentityId> identities{kAllIdentities.begin(), kAllIdentities.end()};
  EvalMode mode;
  VerifierSettings settings;
};

inline constexpr std::size_t kMaxGridTasks = 10'000;

/// Expands the grid into tasks (THEOREM_EQ3 once per interpretation), sorted by task key.
inline std::vector<VerificationTask> expand_grid(const GridSpec& g) {
  std::vector<VerificationTask> tasks;
  for (int n : g.ns)
    for (int nu : g.nus)
      for (int m : g.ms)
        for (const auto& sub : g.subspaces)
          for (auto id : g.identities) {
            VerificationTask t{id, n, nu, m, sub, Interpretation::not_applicable, g.mode};
            if (id == IdentityId::THEOREM_EQ3) {
              for (auto interp : g.interpretations) {
                t.interpretation = interp;
                tasks.push_back(t);
              }
            } else {
              tasks.push_back(t);
            }
            if (tasks.size() > kMaxGridTasks) {
              throw DomainError("verification grid expands to more than " + std::to_string(kMaxGridTasks) +
                                " tasks");
            }
          }
  std::ranges::sort(tasks, [](const auto& a, const auto& b) { return a.key() < b.key(); });
  return tasks;
}

/// Runs every task of the grid; per-task failures become failed verdicts.
inline std::vector<Verdict> run_grid(const GridSpec& g) {
  const auto tasks = expand_grid(g);
  std::map<std::tuple<int, int, int, Subspace>, std::unique_ptr<detail::Workspace>> spaces;
  std::vector<Verdict> out;
  out.reserve(tasks.size());
  for (const auto& t : tasks) {
    auto& slot = spaces[{t.n, t.nu, t.m, t.subspace}];
    if (!slot) {
      try {
        slot = std::make_unique<detail::Workspace>(t.n, t.nu, t.m, t.subspace, g.settings);
      } catch (const std::exception&) {
        out.push_back(run_task(t, g.settings));
        continue;
      }
    }
    out.push_back(detail::run_in(*slot, t));
  }
  return out;
}

struct GridSummary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t report_only = 0;
  std::size_t errors = 0;
  std::size_t guaranteed_failures = 0;
};

inline std::map<std::string, GridSummary> summarize(const std::vector<Verdict>& verdicts) {
  std::map<std::string, GridSummary> out;
  for (const auto& v : verdicts) {
    auto& s = out[std::string(to_string(v.task.identity))];
    switch (v.status) {
      case Status::pass: ++s.pass; break;
      case Status::fail: ++s.fail; break;
      case Status::report_only: ++s.report_only; break;
    }
    if (!v.error.empty()) ++s.errors;
    if (v.status == Status::fail && v.error.empty()) ++s.guaranteed_failures;
  }
  return out;
}

}  // namespace gentile
