// Acceptance suite: one line per criterion, "[PASS]" or "[FAIL]", with
// indented detail lines for every failing sub-check.
//
//   acceptance                 run all criteria
//   acceptance --criterion N   run criterion N only (exit 0 iff it passes)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gentile/gentile.hpp"

#ifndef GENTILE_CLI_PATH
#error "GENTILE_CLI_PATH must name the CLI executable"
#endif

using namespace gentile;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;
  std::string summary;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back(what);
    }
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Verdict verdict(IdentityId id, int n, int nu, int m, Subspace sub, EvalMode mode = {}) {
  return run_task({id, n, nu, m, sub, Interpretation::not_applicable, mode});
}

// 1. Single-mode algebra for n = 1..8, every residual < 1e-12, under one second.
Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  constexpr double tol = 1e-12;
  double worst = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const GentileOrder order(n);
    const auto v6 = verdict(IdentityId::NBRACKET_EQ6, n, 1, 1, Subspace::full());
    const auto v7 = verdict(IdentityId::PHASE_EQ7, n, 1, 1, Subspace::full());
    const auto v8 = verdict(IdentityId::PHASE_EQ8, n, 1, 1, Subspace::full());
    const auto vfg = verdict(IdentityId::FG_CONSISTENCY_EQ13_14, n, 1, 1, Subspace::full());
    const std::pair<const char*, double> checks[] = {
        {"[b, a^dag]_n = 1", v6.residual},
        {"a b = e^{i pi/(n+1)} b a", v7.residual},
        {"a^dag b^dag = q b^dag a^dag", v8.residual},
        {"a^dag a = diag(g)", vfg.diagnostics.at("g_residual")},
        {"a a^dag - a^dag a = diag(f)", vfg.diagnostics.at("f_residual")},
    };
    for (const auto& [name, r] : checks) {
      worst = std::max(worst, r);
      o.check(std::isfinite(r) && r < tol, std::string(name) + " at n=" + std::to_string(n) + ": residual " + num(r));
    }
    // a^dag |n> = 0 exactly
    const auto ad = single_mode_matrix(Ladder::a_dag, order);
    double top = 0.0;
    for (int r = 0; r <= n; ++r) top = std::max(top, std::abs(ad.at(r, n)));
    o.check(top < tol, "a^dag|n> = 0 at n=" + std::to_string(n) + ": |a^dag|n>| = " + num(top));
  }
  const double dt = seconds_since(t0);
  o.check(dt < 1.0, "runtime " + num(dt) + " s exceeds 1 s");
  o.summary = "single-mode algebra, n=1..8 (max residual " + num(worst) + ", " + num(dt) + " s)";
  return o;
}

// 2. Fermi and Bose limits of J and <N>.
Outcome criterion2() {
  Outcome o;
  const GentileOrder fermi(1), bose(kBoseProxyOrder);
  for (int N = 0; N <= 1; ++N) {
    const double j = coupling_J(N, fermi);
    o.check(std::abs(j + N) < 1e-12, "J(" + std::to_string(N) + ", n=1) = " + num(j));
  }
  double worst = 0.0;
  for (int N = 0; N <= 3; ++N) {
    const double dj = std::abs(coupling_J(N, bose) + N);
    const double db = std::abs(bracket_nu(N, bose) - cplx(N, 0.0));
    worst = std::max({worst, dj, db});
    o.check(dj < 1e-4, "|J(" + std::to_string(N) + ", 1e6) + N| = " + num(dj));
    o.check(db < 1e-4, "|<" + std::to_string(N) + ">_1e6 - N| = " + num(db));
  }
  o.summary = "limits of J and <N> at n=1 and n=1e6 (max Bose deviation " + num(worst) + ")";
  return o;
}

// 3. Conservation and Hermiticity over n in {1,2,3}, nu in {2,3}, m = 2.
Outcome criterion3() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const int m = 2;
  double worst_leak = 0.0, worst_herm = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int nu = 2; nu <= 3; ++nu) {
      const GentileOrder order(n);
      const FockBasis full(nu, m, order, std::nullopt);
      const std::string at = " (n=" + std::to_string(n) + ", nu=" + std::to_string(nu) + ")";
      const bool dense = full.dimension() <= kDenseCap;
      const EvalMode mode{!dense, 64, 42};

      // Every built operator restricted to every sector: leakage must vanish.
      std::vector<std::pair<std::string, ComplexOperator>> ops;
      for (int i = 1; i <= nu; ++i)
        for (int j = i + 1; j <= nu; ++j) ops.emplace_back("tau", build_tau(i, j, full));
      for (int k = 1; k <= m; ++k)
        for (int l = 1; l <= m; ++l) ops.emplace_back("E", build_E(k, l, full));
      ops.emplace_back("C1", build_C1(full));
      ops.emplace_back("C2", build_C2(full));
      for (int t = 0; t <= n * m; ++t) {
        const FockBasis sector(nu, m, order, t);
        for (const auto& [name, op] : ops) {
          const double leak = restrict(op, full, sector).leakage;
          worst_leak = std::max(worst_leak, leak);
          o.check(leak < 1e-12, name + " leaks " + num(leak) + " out of sector " + std::to_string(t) + at);
        }
      }
      // Sector-assembled builds and the verifier's own conservation/Hermiticity verdicts.
      for (auto sub : {Subspace::full(), Subspace::sector(1)}) {
        const auto cons = verdict(IdentityId::SECTOR_CONSERVATION, n, nu, m, sub, mode);
        const auto herm = verdict(IdentityId::HERMITICITY_CASIMIR, n, nu, m, sub, mode);
        worst_leak = std::max(worst_leak, cons.diagnostics.count("max_leakage") ? cons.diagnostics.at("max_leakage") : 0.0);
        worst_herm = std::max(worst_herm, herm.residual);
        o.check(cons.error.empty() && cons.diagnostics.at("max_leakage") < 1e-12 &&
                    cons.diagnostics.at("max_commutator") < 1e-10,
                "sector conservation on " + sub.str() + at + ": " + num(cons.residual) + " " + cons.error);
        o.check(herm.error.empty() && herm.residual < 1e-10,
                "C1/C2 Hermiticity on " + sub.str() + at + ": " + num(herm.residual) + " " + herm.error);
      }
    }
  }
  const double dt = seconds_since(t0);
  o.check(dt < 120.0, "runtime " + num(dt) + " s exceeds 2 min");
  o.summary = "duality-grid conservation and Hermiticity (max leakage " + num(worst_leak) + ", max asymmetry " +
              num(worst_herm) + ", " + num(dt) + " s)";
  return o;
}

std::string spectrum_str(const Spectrum& s) {
  std::string out = "[";
  for (const auto& c : s) out += (out.size() > 1 ? ", (" : "(") + num(c.value) + "," + std::to_string(c.multiplicity) + ")";
  return out + "]";
}

bool spectrum_equals(const Spectrum& s, const Spectrum& expect, double tol) {
  if (s.size() != expect.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::abs(s[i].value - expect[i].value) > tol || s[i].multiplicity != expect[i].multiplicity) return false;
  }
  return true;
}

bool level_is(const CasimirLevel& l, std::vector<int> parts, double e, std::int64_t dim) {
  return l.partition.parts == parts && std::abs(l.eigenvalue - e) < 1e-12 && l.weyl_dimension == dim;
}

// 4. Heisenberg spectrum by ED and by the Casimir route, nu = 2 and 3.
Outcome criterion4() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const GentileOrder order(1);
  const CasimirRoute shifted{CasimirVariant::shifted, LimitForm::bose};

  const auto ed2 = spectrum_ed(build_hamiltonian(2, 2, order));
  o.check(spectrum_equals(ed2, {{-1.0, 1}, {1.0, 3}}, 1e-10),
          "nu=2 ED spectrum " + spectrum_str(ed2) + ", expected [(-1,1), (1,3)]");
  const auto cas2 = spectrum_casimir(2, 2, shifted);
  o.check(cas2.levels.size() == 2 && level_is(cas2.levels[0], {2, 0}, 1.0, 3) && level_is(cas2.levels[1], {1, 1}, -1.0, 1),
          "nu=2 Casimir route levels differ from {(2,0)->+1 dim 3, (1,1)->-1 dim 1}");
  const auto m2 = compare_spectra(ed2, cas2);
  const double d2 = std::min(m2.max_deviation, m2.sign_flipped_deviation);
  o.check(d2 < 1e-9, "nu=2 ED vs Casimir route deviation " + num(d2) + " (up to sign)");

  const auto ed3 = spectrum_ed(build_hamiltonian(3, 2, order));
  o.check(spectrum_equals(ed3, {{0.0, 4}, {3.0, 4}}, 1e-10),
          "nu=3 ED spectrum " + spectrum_str(ed3) + ", expected [(0,4), (3,4)]");
  const auto cas3 = spectrum_casimir(3, 2, shifted);
  o.check(cas3.levels.size() == 2 && level_is(cas3.levels[0], {3, 0}, 3.0, 4) && level_is(cas3.levels[1], {2, 1}, 0.0, 2),
          "nu=3 Casimir route levels differ from {(3,0)->3 dim 4, (2,1)->0 dim 2}");
  const auto m3 = compare_spectra(ed3, cas3);
  o.check(m3.eigenvalues_match, "nu=3 ED vs Casimir route deviation " + num(m3.max_deviation));
  const bool factors_ok = m3.factors.size() == 2 && m3.factors[0].factor && m3.factors[1].factor &&
                          *m3.factors[0].factor == 1.0 && *m3.factors[1].factor == 2.0;
  o.check(factors_ok, "nu=3 multiplicity factors are not {1, 2}");
  if (m3.scale) o.details.push_back("(diagnostic) inferred ED/Casimir scale " + num(*m3.scale));

  const double dt = seconds_since(t0);
  o.check(dt < 10.0, "runtime " + num(dt) + " s exceeds 10 s");
  o.summary = "Heisenberg ED vs Casimir route, nu=2,3 m=2 n=1 (" + num(dt) + " s)";
  if (o.pass) o.details.clear();
  return o;
}

// 5. Partition enumeration and Casimir tables.
Outcome criterion5() {
  Outcome o;
  const auto p = partitions_of(4, 4);
  const std::vector<std::vector<int>> expect{{4, 0, 0, 0}, {3, 1, 0, 0}, {2, 2, 0, 0}, {2, 1, 1, 0}, {1, 1, 1, 1}};
  bool same = p.size() == expect.size();
  for (std::size_t i = 0; same && i < p.size(); ++i) same = p[i].parts == expect[i];
  o.check(same, "partitions_of(4,4) differs from the five-partition listing");
  std::size_t checked = 0;
  for (int N = 0; N <= 12; ++N)
    for (int m = 1; m <= N + 1; ++m)
      for (const auto& lam : partitions_of(N, m)) {
        ++checked;
        if (casimir_Sp(1, lam, m) != N) o.check(false, "S1 of " + lam.str() + " is not " + std::to_string(N));
      }
  o.check(casimir_Sp(2, Partition{{2, 0}}, 2) == 8, "S2(2,0) at m=2 is not 8");
  o.check(casimir_Sp(2, Partition{{1, 1}}, 2) == 4, "S2(1,1) at m=2 is not 4");
  o.summary = "partition and Casimir tables (" + std::to_string(checked) + " partitions checked)";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string strip_timestamp(const std::string& s) {
  std::istringstream in(s);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\": \"") != std::string::npos) continue;
    out += line + '\n';
  }
  return out;
}

// 6. Default verify grid through the CLI: exit 0, contested verdicts present and finite, reproducible.
Outcome criterion6() {
  Outcome o;
  const auto dir = fs::temp_directory_path() / "gentile_acceptance_c6";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto report = dir / "verify.json";
  const std::string cmd = std::string("\"") + GENTILE_CLI_PATH + "\" verify --format json -o \"" + report.string() +
                          "\" > \"" + (dir / "stdout.txt").string() + "\" 2>&1";

  const int first = std::system(cmd.c_str());
  const std::string run1 = slurp(report);
  const int second = std::system(cmd.c_str());
  const std::string run2 = slurp(report);
  o.check(first == 0 && second == 0, "verify exited with status " + std::to_string(first) + "/" + std::to_string(second));
  o.check(!run1.empty() && strip_timestamp(run1) == strip_timestamp(run2), "reruns differ beyond the timestamp");

  std::size_t verdicts = 0;
  try {
    const auto doc = nlohmann::json::parse(run1);
    const auto& vs = doc.at("verdicts");
    verdicts = vs.size();
    auto find = [&](const std::string& id, const std::string& sub, const std::string& interp) {
      std::vector<nlohmann::json> out;
      for (const auto& v : vs)
        if (v["identity"] == id && (sub.empty() || v["subspace"] == sub) &&
            (interp.empty() || v["interpretation"] == interp))
          out.push_back(v);
      return out;
    };
    auto require = [&](const std::string& id, const std::string& sub, const std::string& interp, const char* status) {
      const auto hits = find(id, sub, interp);
      o.check(!hits.empty(), "no " + id + " verdict for " + (sub.empty() ? "any subspace" : sub) + " " + interp);
      for (const auto& v : hits) {
        o.check(v["status"] == status, id + " " + sub + " " + interp + " has status " + v["status"].get<std::string>());
        o.check(v["residual"].is_number() && std::isfinite(v["residual"].get<double>()),
                id + " " + sub + " " + interp + " residual is not finite");
      }
    };
    for (const char* sub : {"full", "sector:1"})
      for (const char* interp : {"entrywise_real", "hermitian_part"}) require("THEOREM_EQ3", sub, interp, "report_only");
    for (const char* id : {"COMMUTATOR_EQ12", "DUALITY_TAU_E", "QUARTIC_EQ22", "BRACKET_FN_EQ19_NBRACKET"})
      require(id, "", "", "report_only");
    // The plain-commutator reading belongs to the guaranteed set; it is emitted with its residual and passes.
    require("BRACKET_FN_EQ19_PLAIN", "", "", "pass");
  } catch (const std::exception& e) {
    o.check(false, std::string("report is not valid JSON: ") + e.what());
  }
  fs::remove_all(dir);
  o.summary = "default verify grid via CLI: exit 0, contested residuals recorded, reproducible (" +
              std::to_string(verdicts) + " verdicts)";
  return o;
}

// 7. At n = 1 the theorem recipe (entrywise) and the Fermi-limit recipe coincide.
Outcome criterion7() {
  Outcome o;
  double worst = 0.0;
  for (int nu = 2; nu <= 3; ++nu)
    for (auto sub : {Subspace::full(), Subspace::sector(1)}) {
      const std::string at = " (nu=" + std::to_string(nu) + ", " + sub.str() + ")";
      const auto limit = verdict(IdentityId::LIMIT_EQ5, 1, nu, 2, sub);
      const auto theorem = run_task({IdentityId::THEOREM_EQ3, 1, nu, 2, sub, Interpretation::entrywise_real, {}});
      const double op_gap = limit.diagnostics.count("theorem_consistency") ? limit.diagnostics.at("theorem_consistency") : INFINITY;
      const double res_gap = std::abs(limit.residual - theorem.residual);
      worst = std::max({worst, op_gap, res_gap});
      o.check(op_gap < 1e-12, "operator difference of the two recipes " + num(op_gap) + at);
      o.check(res_gap < 1e-12, "residuals differ by " + num(res_gap) + at);
    }
  o.summary = "theorem vs Fermi-limit recipes at n=1 (max gap " + num(worst) + ")";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7};
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--criterion" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "unknown criterion " << only << '\n';
    return 2;
  }
  bool all = true;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    if (only && static_cast<int>(c + 1) != only) continue;
    Outcome o;
    try {
      o = criteria[c]();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = "aborted";
      o.details.push_back(e.what());
    }
    std::cout << (o.pass ? "[PASS]" : "[FAIL]") << " criterion " << c + 1 << ": " << o.summary << '\n';
    for (const auto& d : o.details) std::cout << "    " << d << '\n';
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
