#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "gentile/heisenberg.hpp"
#include "gentile/partitions.hpp"
#include "gentile/verifier.hpp"
#include "gentile/version.hpp"

namespace gentile::report {

using nlohmann::json;

/// Shortest decimal that round-trips to the same double ("nan"/"inf" for non-finite).
inline std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

/// JSON numbers are emitted shortest-round-trip by nlohmann; non-finite values become null.
inline json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v == 0.0 ? json(0.0) : json(v);
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Writes to a sibling temporary file and renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// Top-level document shared by every command.
inline json envelope(const json& config, bool with_timestamp) {
  json doc;
  doc["config"] = config;
  doc["version"] = kVersion;
  if (with_timestamp) doc["timestamp"] = utc_timestamp();
  return doc;
}

// --- verify ----------------------------------------------------------------

inline json to_json(const Verdict& v) {
  json j;
  j["identity"] = to_string(v.task.identity);
  j["n"] = v.task.n;
  j["nu"] = v.task.nu;
  j["m"] = v.task.m;
  j["subspace"] = v.task.subspace.str();
  j["interpretation"] = to_string(v.task.interpretation);
  j["mode"] = v.task.mode.str();
  j["residual"] = number(v.residual);
  j["tolerance"] = number(v.tolerance);
  j["status"] = to_string(v.status);
  j["guaranteed"] = v.guaranteed;
  json diag = json::object();
  for (const auto& [k, d] : v.diagnostics) diag[k] = number(d);
  j["diagnostics"] = diag;
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.error.empty()) j["error"] = v.error;
  return j;
}

inline json summary_json(const std::vector<Verdict>& verdicts) {
  json s = json::object();
  for (const auto& [id, c] : summarize(verdicts)) {
    s[id] = {{"pass", c.pass}, {"fail", c.fail}, {"report_only", c.report_only}, {"errors", c.errors}};
  }
  return s;
}

inline std::string verify_json(const json& config, const std::vector<Verdict>& verdicts, bool with_timestamp) {
  json doc = envelope(config, with_timestamp);
  json arr = json::array();
  for (const auto& v : verdicts) arr.push_back(to_json(v));
  doc["verdicts"] = arr;
  doc["summary"] = summary_json(verdicts);
  return doc.dump(2) + "\n";
}

inline const char* kVerifyCsvHeader =
    "identity,n,nu,m,subspace,interpretation,mode,residual,tolerance,status,guaranteed,diagnostics,note,error";

/// CSV has no envelope; config, version and timestamp go into leading '#' lines.
inline std::string csv_preamble(const json& config, bool with_timestamp) {
  std::string s = "# version: " + std::string(kVersion) + "\n# config: " + config.dump() + "\n";
  if (with_timestamp) s += "# timestamp: " + utc_timestamp() + "\n";
  return s;
}

inline std::string verify_csv(const json& config, const std::vector<Verdict>& verdicts, bool with_timestamp) {
  std::ostringstream out;
  out << csv_preamble(config, with_timestamp) << kVerifyCsvHeader << '\n';
  for (const auto& v : verdicts) {
    std::string diag;
    for (const auto& [k, d] : v.diagnostics) {
      if (!diag.empty()) diag += ';';
      diag += k + "=" + format_number(d);
    }
    out << to_string(v.task.identity) << ',' << v.task.n << ',' << v.task.nu << ',' << v.task.m << ','
        << v.task.subspace.str() << ',' << to_string(v.task.interpretation) << ',' << v.task.mode.str() << ','
        << format_number(v.residual) << ',' << format_number(v.tolerance) << ',' << to_string(v.status) << ','
        << (v.guaranteed ? "true" : "false") << ',' << csv_escape(diag) << ',' << csv_escape(v.note) << ','
        << csv_escape(v.error) << '\n';
  }
  return out.str();
}

// --- spectrum --------------------------------------------------------------

inline json partition_json(const Partition& p) { return json(p.parts); }

inline json to_json(const SpectrumMatch& mt) {
  json j;
  j["source"] = mt.route.label();
  j["singular"] = mt.singular;
  j["max_deviation"] = number(mt.max_deviation);
  j["sign_flipped_deviation"] = number(mt.sign_flipped_deviation);
  j["observed_sign"] = mt.observed_sign;
  j["eigenvalues_match"] = mt.eigenvalues_match;
  j["multiplicities_consistent"] = mt.multiplicities_consistent;
  j["scale"] = mt.scale ? number(*mt.scale) : json(nullptr);
  j["scaled_deviation"] = number(mt.scaled_deviation);
  json factors = json::array();
  for (const auto& f : mt.factors) {
    factors.push_back({{"partition", partition_json(f.partition)},
                       {"factor", f.factor ? number(*f.factor) : json(nullptr)}});
  }
  j["factors"] = factors;
  return j;
}

inline json to_json(const SpectrumReport& r) {
  json j;
  j["n"] = r.n;
  j["nu"] = r.nu;
  j["m"] = r.m;
  j["sector_dimension"] = r.sector_dimension;
  j["hamiltonian_constant"] = 0;
  j["hamiltonian_trace"] = number(r.hamiltonian_trace);
  j["hamiltonian_leakage"] = number(r.hamiltonian_leakage);
  json ed = json::array();
  for (const auto& c : r.ed) ed.push_back({{"eigenvalue", number(c.value)}, {"multiplicity", c.multiplicity}});
  j["ed"] = ed;
  json cas = json::array();
  for (const auto& c : r.casimir) {
    json levels = json::array();
    for (const auto& l : c.levels) {
      levels.push_back({{"partition", partition_json(l.partition)},
                        {"eigenvalue", number(l.eigenvalue)},
                        {"weyl_dimension", l.weyl_dimension}});
    }
    cas.push_back({{"source", c.route.label()}, {"singular", c.singular}, {"levels", levels}});
  }
  j["casimir"] = cas;
  if (!r.matches.empty()) {
    json matches = json::array();
    for (const auto& mt : r.matches) matches.push_back(to_json(mt));
    j["matches"] = matches;
  }
  return j;
}

inline std::string spectrum_json(const json& config, const std::vector<SpectrumReport>& reports, bool with_timestamp) {
  json doc = envelope(config, with_timestamp);
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  doc["spectra"] = arr;
  return doc.dump(2) + "\n";
}

inline const char* kSpectrumCsvHeader = "nu,m,n,source,eigenvalue,multiplicity,partition,flag";

/// Rows: ED levels, Casimir levels (multiplicity column = Weyl dimension),
/// singular-route markers, and one match row per route when compared.
inline std::string spectrum_csv(const json& config, const std::vector<SpectrumReport>& reports, bool with_timestamp) {
  std::ostringstream out;
  out << csv_preamble(config, with_timestamp) << kSpectrumCsvHeader << '\n';
  for (const auto& r : reports) {
    const std::string prefix = std::to_string(r.nu) + ',' + std::to_string(r.m) + ',' + std::to_string(r.n) + ',';
    for (const auto& c : r.ed) out << prefix << "ed," << format_number(c.value) << ',' << c.multiplicity << ",,\n";
    for (const auto& c : r.casimir) {
      if (c.singular) {
        out << prefix << c.route.label() << ",,,,singular\n";
        continue;
      }
      for (const auto& l : c.levels) {
        out << prefix << c.route.label() << ',' << format_number(l.eigenvalue) << ',' << l.weyl_dimension << ','
            << csv_escape(l.partition.str()) << ",\n";
      }
    }
    for (const auto& mt : r.matches) {
      std::string label = mt.route.label();
      label.replace(0, std::string("casimir").size(), "match");
      const char* flag = mt.singular ? "singular" : mt.eigenvalues_match ? "match" : "mismatch";
      out << prefix << label << ',' << format_number(mt.max_deviation) << ",,," << flag << '\n';
    }
  }
  return out.str();
}

// --- partitions ------------------------------------------------------------

struct PartitionRow {
  Partition partition;
  std::int64_t s1, s2, raw_c1, raw_c2, shifted_c1, shifted_c2, weyl;
};

inline std::vector<PartitionRow> partition_table(int N, int m) {
  std::vector<PartitionRow> rows;
  for (auto& p : partitions_of(N, m)) {
    rows.push_back({p, casimir_Sp(1, p, m), casimir_Sp(2, p, m), casimir_value(1, p, m, CasimirVariant::raw),
                    casimir_value(2, p, m, CasimirVariant::raw), casimir_value(1, p, m, CasimirVariant::shifted),
                    casimir_value(2, p, m, CasimirVariant::shifted), weyl_dimension(p, m)});
  }
  return rows;
}

inline std::string partitions_json(const json& config, const std::vector<PartitionRow>& rows, bool with_timestamp) {
  json doc = envelope(config, with_timestamp);
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"partition", partition_json(r.partition)},
                   {"S1", r.s1},
                   {"S2", r.s2},
                   {"raw_C1", r.raw_c1},
                   {"raw_C2", r.raw_c2},
                   {"shifted_C1", r.shifted_c1},
                   {"shifted_C2", r.shifted_c2},
                   {"weyl_dimension", r.weyl}});
  }
  doc["partitions"] = arr;
  return doc.dump(2) + "\n";
}

inline const char* kPartitionsCsvHeader = "partition,S1,S2,raw_C1,raw_C2,shifted_C1,shifted_C2,weyl_dimension";

inline std::string partitions_csv(const json& config, const std::vector<PartitionRow>& rows, bool with_timestamp) {
  std::ostringstream out;
  out << csv_preamble(config, with_timestamp) << kPartitionsCsvHeader << '\n';
  for (const auto& r : rows) {
    out << csv_escape(r.partition.str()) << ',' << r.s1 << ',' << r.s2 << ',' << r.raw_c1 << ',' << r.raw_c2 << ','
        << r.shifted_c1 << ',' << r.shifted_c2 << ',' << r.weyl << '\n';
  }
  return out.str();
}

}  // namespace gentile::report
