#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gentile/gentile.hpp"
#include "gentile/report.hpp"

namespace gentile::cli {

using report::json;

/// Raised for malformed option values; maps to exit code 3.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitGuaranteedFailure = 2;
inline constexpr int kExitConfig = 3;

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

inline int parse_int(const std::string& s, const std::string& what) {
  if (s == "bose") return kBoseProxyOrder;
  int v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != end) throw ConfigError(what + ": not an integer: '" + s + "'");
  return v;
}

/// "2", "1..3", "1,2,5", or any comma list of those; "bose" stands for the Bose proxy order.
inline std::vector<int> parse_int_set(const std::string& spec, const std::string& what) {
  std::vector<int> out;
  for (const auto& tok : split(spec, ',')) {
    if (const auto dots = tok.find(".."); dots != std::string::npos) {
      const int lo = parse_int(tok.substr(0, dots), what);
      const int hi = parse_int(tok.substr(dots + 2), what);
      if (hi < lo) throw ConfigError(what + ": empty range '" + tok + "'");
      if (static_cast<long long>(hi) - lo >= static_cast<long long>(kMaxGridTasks)) {
        throw ConfigError(what + ": range '" + tok + "' is too large");
      }
      for (int v = lo; v <= hi; ++v) out.push_back(v);
    } else {
      out.push_back(parse_int(tok, what));
    }
  }
  return out;
}

inline std::vector<Subspace> parse_subspaces(const std::string& spec) {
  std::vector<Subspace> out;
  for (const auto& tok : split(spec, ',')) {
    if (tok == "full") {
      out.push_back(Subspace::full());
    } else if (tok.rfind("sector:", 0) == 0) {
      const int t = parse_int(tok.substr(7), "--subspace");
      if (t < 0) throw ConfigError("--subspace: sector total must be >= 0");
      out.push_back(Subspace::sector(t));
    } else {
      throw ConfigError("--subspace: expected 'full' or 'sector:<t>', got '" + tok + "'");
    }
  }
  return out;
}

inline std::vector<Interpretation> parse_interpretations(const std::string& spec) {
  if (spec == "both") return {Interpretation::entrywise_real, Interpretation::hermitian_part};
  std::vector<Interpretation> out;
  for (const auto& tok : split(spec, ',')) {
    if (tok == "entrywise_real" || tok == "entrywise") {
      out.push_back(Interpretation::entrywise_real);
    } else if (tok == "hermitian_part" || tok == "hermitian") {
      out.push_back(Interpretation::hermitian_part);
    } else {
      throw ConfigError("--interpretation: unknown value '" + tok + "'");
    }
  }
  return out;
}

inline std::vector<IdentityId> parse_identities(const std::string& spec) {
  if (spec == "all") return {kAllIdentities.begin(), kAllIdentities.end()};
  std::vector<IdentityId> out;
  for (const auto& tok : split(spec, ',')) {
    const auto id = parse_identity(tok);
    if (!id) throw ConfigError("--identities: unknown identity '" + tok + "'");
    out.push_back(*id);
  }
  return out;
}

struct CommonOptions {
  std::string format = "json";
  std::string output;
  bool no_timestamp = false;
};

/// Explicit --output, else $GENTILE_OUTPUT_DIR/<command>.<format>, else ./<command>.<format>.
inline std::filesystem::path resolve_output(const CommonOptions& o, const std::string& command) {
  if (!o.output.empty()) return o.output;
  const char* dir = std::getenv("GENTILE_OUTPUT_DIR");
  const std::filesystem::path base = dir && *dir ? dir : ".";
  return base / (command + "." + o.format);
}

inline void emit(const std::filesystem::path& path, const std::string& content,
                 std::ostream& out) {
  if (path == "-") {
    out << content;
    return;
  }
  report::write_atomic(path, content);
  out << "report written to " << path.string() << '\n';
}

inline json common_json(const CommonOptions& o, const std::filesystem::path& path) {
  return {{"format", o.format}, {"output", path.string()}, {"timestamp", !o.no_timestamp}};
}

struct VerifyOptions {
  std::string n = "1..3";
  std::string nu = "2,3";
  std::string m = "2";
  std::string subspace = "full,sector:1";
  std::string interpretation = "both";
  std::string identities = "all";
  std::string mode = "dense";
  std::size_t samples = 64;
  std::uint64_t seed = 42;
  double tolerance = 1e-10;
  double fine_tolerance = 1e-12;
  std::size_t dense_cap = kDenseCap;
  std::size_t basis_cap = kDefaultBasisCap;
};

inline std::string fixed_width(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

inline void print_verify_summary(const std::vector<Verdict>& verdicts, std::ostream& out) {
  std::map<std::string, double> worst;
  for (const auto& v : verdicts) {
    auto& w = worst[std::string(to_string(v.task.identity))];
    if (std::isfinite(v.residual)) w = std::max(w, v.residual);
  }
  out << fixed_width("identity", 26) << fixed_width("pass", 6) << fixed_width("fail", 6)
      << fixed_width("report", 8) << fixed_width("errors", 8) << "max_residual\n";
  for (const auto& [id, s] : summarize(verdicts)) {
    out << fixed_width(id, 26) << fixed_width(std::to_string(s.pass), 6) << fixed_width(std::to_string(s.fail), 6)
        << fixed_width(std::to_string(s.report_only), 8) << fixed_width(std::to_string(s.errors), 8)
        << report::format_number(worst[id]) << '\n';
  }
}

inline int cmd_verify(const VerifyOptions& v, const CommonOptions& c, std::ostream& out, std::ostream& err) {
  GridSpec g;
  g.ns = parse_int_set(v.n, "--n");
  g.nus = parse_int_set(v.nu, "--nu");
  g.ms = parse_int_set(v.m, "--m");
  g.subspaces = parse_subspaces(v.subspace);
  g.interpretations = parse_interpretations(v.interpretation);
  g.identities = parse_identities(v.identities);
  if (v.mode != "dense" && v.mode != "sampled") throw ConfigError("--mode: expected dense or sampled");
  g.mode = EvalMode{v.mode == "sampled", v.samples, v.seed};
  g.settings = VerifierSettings{v.tolerance, v.fine_tolerance, v.dense_cap, v.basis_cap};
  for (int n : g.ns)
    if (n < 1) throw ConfigError("--n: values must be >= 1");
  for (int nu : g.nus)
    if (nu < 1) throw ConfigError("--nu: values must be >= 1");
  for (int m : g.ms)
    if (m < 1) throw ConfigError("--m: values must be >= 1");
  if (g.mode.sampled && g.mode.samples < 32) throw ConfigError("--samples: sampled mode needs at least 32 vectors");

  const auto tasks = expand_grid(g);  // validates the grid size before any work
  const auto path = resolve_output(c, "verify");

  json config = common_json(c, path);
  config["command"] = "verify";
  config["n"] = g.ns;
  config["nu"] = g.nus;
  config["m"] = g.ms;
  json subs = json::array();
  for (const auto& s : g.subspaces) subs.push_back(s.str());
  config["subspace"] = subs;
  json interps = json::array();
  for (auto i : g.interpretations) interps.push_back(std::string(to_string(i)));
  config["interpretation"] = interps;
  json ids = json::array();
  for (auto id : g.identities) ids.push_back(std::string(to_string(id)));
  config["identities"] = ids;
  config["mode"] = v.mode;
  config["samples"] = v.samples;
  config["seed"] = v.seed;
  config["tolerance"] = v.tolerance;
  config["fine_tolerance"] = v.fine_tolerance;
  config["dense_cap"] = v.dense_cap;
  config["basis_cap"] = v.basis_cap;
  config["task_count"] = tasks.size();

  const auto verdicts = run_grid(g);
  const std::string body = c.format == "csv" ? report::verify_csv(config, verdicts, !c.no_timestamp)
                                             : report::verify_json(config, verdicts, !c.no_timestamp);
  emit(path, body, path == "-" ? err : out);
  print_verify_summary(verdicts, path == "-" ? err : out);

  bool errors = false, guaranteed_failure = false;
  for (const auto& vd : verdicts) {
    if (!vd.error.empty()) {
      errors = true;
      err << "error: " << to_string(vd.task.identity) << " n=" << vd.task.n << " nu=" << vd.task.nu
          << " m=" << vd.task.m << " " << vd.task.subspace.str() << ": " << vd.error << '\n';
    } else if (vd.status == Status::fail && vd.guaranteed) {
      guaranteed_failure = true;
    }
  }
  if (errors) return kExitConfig;
  return guaranteed_failure ? kExitGuaranteedFailure : kExitOk;
}

struct SpectrumOptions {
  std::string nu = "2";
  std::string m = "2";
  std::string n = "1";
  bool compare = false;
  std::size_t basis_cap = kDenseCap;
};

inline int cmd_spectrum(const SpectrumOptions& s, const CommonOptions& c, std::ostream& out, std::ostream&) {
  const auto nus = parse_int_set(s.nu, "--nu");
  const auto ms = parse_int_set(s.m, "--m");
  const auto ns = parse_int_set(s.n, "--n");
  for (int nu : nus)
    if (nu < 2) throw ConfigError("--nu: the exchange model needs nu >= 2");
  for (int m : ms)
    if (m < 1) throw ConfigError("--m: values must be >= 1");
  for (int n : ns)
    if (n < 1) throw ConfigError("--n: values must be >= 1");

  const auto path = resolve_output(c, "spectrum");
  json config = common_json(c, path);
  config["command"] = "spectrum";
  config["nu"] = nus;
  config["m"] = ms;
  config["n"] = ns;
  config["compare"] = s.compare;
  config["sector"] = 1;
  config["dense_cap"] = s.basis_cap;

  std::vector<SpectrumReport> reports;
  for (int nu : nus)
    for (int m : ms)
      for (int n : ns) reports.push_back(make_spectrum_report(nu, m, GentileOrder(n), s.compare, s.basis_cap));

  const std::string body = c.format == "csv" ? report::spectrum_csv(config, reports, !c.no_timestamp)
                                             : report::spectrum_json(config, reports, !c.no_timestamp);
  emit(path, body, out);
  if (path != "-") {
    for (const auto& r : reports) {
      out << "nu=" << r.nu << " m=" << r.m << " n=" << r.n << " ed:";
      for (const auto& cl : r.ed) out << " " << report::format_number(cl.value) << "x" << cl.multiplicity;
      out << '\n';
    }
  }
  return kExitOk;
}

struct PartitionsOptions {
  int N = 0;
  int m = 1;
};

inline int cmd_partitions(const PartitionsOptions& p, const CommonOptions& c, std::ostream& out, std::ostream&) {
  if (p.N < 0) throw ConfigError("--N: must be >= 0");
  if (p.m < 1) throw ConfigError("--m: must be >= 1");
  const auto path = resolve_output(c, "partitions");
  json config = common_json(c, path);
  config["command"] = "partitions";
  config["N"] = p.N;
  config["m"] = p.m;
  const auto rows = report::partition_table(p.N, p.m);
  const std::string body = c.format == "csv" ? report::partitions_csv(config, rows, !c.no_timestamp)
                                             : report::partitions_json(config, rows, !c.no_timestamp);
  emit(path, body, out);
  if (path != "-") {
    for (const auto& r : rows) {
      out << fixed_width(r.partition.str(), 16) << "S1=" << r.s1 << " S2=" << r.s2 << " dim=" << r.weyl << '\n';
    }
  }
  return kExitOk;
}

inline void add_common(CLI::App* sub, CommonOptions& c) {
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output,-o", c.output, "Report path ('-' for stdout; default $GENTILE_OUTPUT_DIR/<command>.<format>)");
  sub->add_flag("--no-timestamp", c.no_timestamp, "Omit the timestamp so reruns are byte-identical");
}

/// Parses argv, dispatches the subcommand and maps failures onto exit codes.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Gentile-statistics operator algebra: identity verification, spectra and partition tables"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonOptions common;
  VerifyOptions vo;
  SpectrumOptions so;
  PartitionsOptions po;

  auto* verify = app.add_subcommand("verify", "Evaluate operator identities over a parameter grid");
  verify->add_option("--n", vo.n, "Max occupation: value, a..b range, comma list ('bose' = 10^6)")->capture_default_str();
  verify->add_option("--nu", vo.nu, "Position count(s)")->capture_default_str();
  verify->add_option("--m", vo.m, "State count(s)")->capture_default_str();
  verify->add_option("--subspace", vo.subspace, "full and/or sector:<t>, comma separated")->capture_default_str();
  verify->add_option("--interpretation", vo.interpretation, "entrywise_real, hermitian_part or both")
      ->capture_default_str();
  verify->add_option("--identities", vo.identities, "Comma list of identity ids, or 'all'")->capture_default_str();
  verify->add_option("--mode", vo.mode, "dense or sampled")->check(CLI::IsMember({"dense", "sampled"}));
  verify->add_option("--samples,-k", vo.samples, "Random vectors in sampled mode")->capture_default_str();
  verify->add_option("--seed", vo.seed, "Seed for sampled mode")->capture_default_str();
  verify->add_option("--tolerance", vo.tolerance, "Pass tolerance")->capture_default_str();
  verify->add_option("--fine-tolerance", vo.fine_tolerance, "Tolerance for the scalar-diagonal identities")
      ->capture_default_str();
  verify->add_option("--dense-cap", vo.dense_cap, "Largest dimension evaluated densely")->capture_default_str();
  verify->add_option("--basis-cap", vo.basis_cap, "Largest basis that may be enumerated")->capture_default_str();
  add_common(verify, common);

  auto* spectrum = app.add_subcommand("spectrum", "Exchange-model spectrum by diagonalization and Casimir route");
  spectrum->add_option("--nu", so.nu, "Position count(s)")->capture_default_str();
  spectrum->add_option("--m", so.m, "State count(s)")->capture_default_str();
  spectrum->add_option("--n", so.n, "Max occupation(s)")->capture_default_str();
  spectrum->add_flag("--compare", so.compare, "Add match rows for every Casimir route");
  spectrum->add_option("--dense-cap", so.basis_cap, "Largest sector diagonalized")->capture_default_str();
  add_common(spectrum, common);

  auto* partitions = app.add_subcommand("partitions", "Partition table with Casimir values and Weyl dimensions");
  partitions->add_option("--N", po.N, "Partitioned integer")->required();
  partitions->add_option("--m", po.m, "Maximum number of parts")->required();
  add_common(partitions, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (*verify) return cmd_verify(vo, common, out, err);
    if (*spectrum) return cmd_spectrum(so, common, out, err);
    return cmd_partitions(po, common, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const SizingError& e) {
    err << "sizing error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitConfig;
}

}  // namespace gentile::cli
