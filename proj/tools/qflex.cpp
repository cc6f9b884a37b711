// qflex: flex classification for the two-parameter quartic family.
//
// Exit codes: 0 success, 2 bad or degenerate input, 3 numerical failure,
// 4 table verdict failure (REFUTED, or a failing repro fixture).

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qflex/repro.hpp"
#include "qflex/report.hpp"

namespace {

using namespace qflex;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerdict = 4;

struct Settings {
  std::string a = "0", b = "0";
  std::string format = "text";
  std::string output;
  std::string config;
  double zero_eps = 0.0, cluster_radius = 0.0, point_eps = 0.0;
  std::string a_min = "0", a_max = "0", b_min = "0", b_max = "0";
  int a_steps = 1, b_steps = 1;
  unsigned threads = 0;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::InvalidTolerances:
    case ErrorKind::DegenerateParams:
      return kExitInput;
    default:
      return kExitNumeric;
  }
}

void emit(const Settings& s, const std::string& text) {
  if (s.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(s.output);
  if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + s.output);
  out << text;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string fmt_complex(Complex c) {
  std::ostringstream os;
  os.precision(12);
  os << round12(c.real()) << (c.imag() < 0 ? "-" : "+") << std::abs(round12(c.imag())) << 'i';
  return os.str();
}

int cmd_flexes(const Settings& s, const Tolerances& tol, bool with_orbits) {
  const FamilyParams params(parse_complex(s.a), parse_complex(s.b), tol.zero_eps);
  Report report = make_flex_report(params.a(), params.b(), classify_flexes(build_curve(params), tol));
  if (with_orbits) {
    const bool b_zero = std::abs(params.b()) <= tol.zero_eps;
    const ProjGroup G = close_group(standard_generators(b_zero), 256, tol.point_eps);
    const OrbitPartition part = orbit_partition(G, report.flexes, tol);
    report.orbit_labels = part.labels;
    report.signature = part.signature;
  }
  emit(s, render(report, parse_format(s.format)));
  return kExitOk;
}

int cmd_verify(const Settings& s, const Tolerances& tol) {
  const FamilyParams params(parse_complex(s.a), parse_complex(s.b), tol.zero_eps);
  const VerdictRecord v = verify_family_instance(params, tol);
  emit(s, render(make_verdict_report(v), parse_format(s.format)));
  if (v.verdict == Verdict::Refuted) return kExitVerdict;
  if (v.verdict == Verdict::Degenerate) return kExitNumeric;
  return kExitOk;
}

struct ScanRow {
  Complex a, b;
  std::string status;
  std::string reason;
  std::optional<VerdictRecord> record;
};

Complex grid_value(Complex lo, Complex hi, int k, int steps) {
  return steps == 1 ? lo : lo + (hi - lo) * (static_cast<double>(k) / (steps - 1));
}

int cmd_scan(const Settings& s, const Tolerances& tol) {
  if (s.a_steps < 1 || s.b_steps < 1) throw Error(ErrorKind::InvalidInput, "grid steps must be at least 1");
  const Complex a0 = parse_complex(s.a_min), a1 = parse_complex(s.a_max);
  const Complex b0 = parse_complex(s.b_min), b1 = parse_complex(s.b_max);
  std::vector<ScanRow> rows;
  for (int i = 0; i < s.a_steps; ++i)
    for (int j = 0; j < s.b_steps; ++j)
      rows.push_back({grid_value(a0, a1, i, s.a_steps), grid_value(b0, b1, j, s.b_steps), "", "", std::nullopt});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < rows.size(); k = next++) {
      ScanRow& row = rows[k];
      if (auto factor = degenerate_factor(row.a, row.b, tol.zero_eps)) {
        row.status = "SKIPPED";
        row.reason = "factor " + *factor + " vanishes";
        continue;
      }
      try {
        row.record = verify_family_instance(FamilyParams(row.a, row.b, tol.zero_eps), tol);
        row.status = to_string(row.record->verdict);
      } catch (const Error& e) {
        row.status = "ERROR";
        row.reason = std::string(to_string(e.kind())) + ": " + e.what();
      }
    }
  };
  unsigned n = s.threads ? s.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(rows.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  const Format format = parse_format(s.format);
  std::ostringstream os;
  if (format == Format::Json) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      if (row.record) {
        arr.push_back(to_json(make_verdict_report(*row.record)));
        continue;
      }
      nlohmann::ordered_json j = to_json(make_flex_report(row.a, row.b, {}));
      j["verdict"] = row.status;
      j["reason"] = row.reason;
      arr.push_back(j);
    }
    os << arr.dump(2) << '\n';
  } else if (format == Format::Csv) {
    os << "a_re,a_im,b_re,b_im,verdict,row,ordinary,hyperflex,signature,reason\n";
    for (const auto& row : rows) {
      os << round12(row.a.real()) << ',' << round12(row.a.imag()) << ',' << round12(row.b.real()) << ','
         << round12(row.b.imag()) << ',' << row.status << ',';
      if (row.record)
        os << csv_quote(row.record->predicted.source) << ',' << row.record->computed.ordinary << ','
           << row.record->computed.hyperflex << ',' << csv_quote(row.record->computed.signature.to_string()) << ',';
      else
        os << ",,,,";
      os << csv_quote(row.reason) << '\n';
    }
  } else {
    for (const auto& row : rows) {
      os << "a=" << fmt_complex(row.a) << " b=" << fmt_complex(row.b) << "  " << row.status;
      if (row.record)
        os << "  [" << row.record->predicted.source << "]  " << row.record->computed.ordinary << " ordinary, "
           << row.record->computed.hyperflex << " hyperflex as " << row.record->computed.signature.to_string();
      if (!row.reason.empty()) os << "  (" << row.reason << ")";
      os << '\n';
    }
  }
  emit(s, os.str());
  const bool refuted = std::any_of(rows.begin(), rows.end(), [](const ScanRow& r) { return r.status == "REFUTED"; });
  const bool failed = std::any_of(rows.begin(), rows.end(),
                                  [](const ScanRow& r) { return r.status == "ERROR" || r.status == "DEGENERATE"; });
  return refuted ? kExitVerdict : failed ? kExitNumeric : kExitOk;
}

int cmd_repro(const Settings& s, const Tolerances& tol) {
  std::vector<FixtureResult> results;
  for (const auto& f : repro_fixtures()) results.push_back(run_fixture(f, tol));
  const auto failed = std::count_if(results.begin(), results.end(), [](const FixtureResult& r) { return !r.pass; });
  const Format format = parse_format(s.format);
  std::ostringstream os;
  if (format == Format::Json) {
    nlohmann::ordered_json j;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : results) arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    j["fixtures"] = arr;
    j["passed"] = static_cast<long>(results.size()) - failed;
    j["failed"] = failed;
    os << j.dump(2) << '\n';
  } else if (format == Format::Csv) {
    os << "fixture,result,detail\n";
    for (const auto& r : results) os << csv_quote(r.name) << ',' << (r.pass ? "PASS" : "FAIL") << ',' << csv_quote(r.detail) << '\n';
  } else {
    for (const auto& r : results) os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    os << (results.size() - static_cast<std::size_t>(failed)) << "/" << results.size() << " fixtures passed\n";
  }
  emit(s, os.str());
  return failed ? kExitVerdict : kExitOk;
}

// key=value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    auto trim = [](std::string t) {
      const auto b = t.find_first_not_of(" \t\r");
      const auto e = t.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    if (trim(line).empty()) continue;
    if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flexes and orbit classification of x^4+y^4+z^4+ax^2y^2+b(x^2+y^2)z^2"};
  app.require_subcommand(1);
  Settings s;
  std::map<std::string, CLI::Option*> opts;
  opts["a"] = app.add_option("--a", s.a, "parameter a, e.g. 1.5 or 1.5+0.5i");
  opts["b"] = app.add_option("--b", s.b, "parameter b");
  opts["format"] = app.add_option("--format", s.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  opts["output"] = app.add_option("--output", s.output, "write to this file instead of stdout");
  opts["zero-eps"] = app.add_option("--zero-eps", s.zero_eps, "relative zero threshold");
  opts["cluster-radius"] = app.add_option("--cluster-radius", s.cluster_radius, "root clustering radius");
  opts["point-eps"] = app.add_option("--point-eps", s.point_eps, "projective point equality threshold");
  opts["a-min"] = app.add_option("--a-min", s.a_min, "scan: first a");
  opts["a-max"] = app.add_option("--a-max", s.a_max, "scan: last a");
  opts["a-steps"] = app.add_option("--a-steps", s.a_steps, "scan: grid points along a");
  opts["b-min"] = app.add_option("--b-min", s.b_min, "scan: first b");
  opts["b-max"] = app.add_option("--b-max", s.b_max, "scan: last b");
  opts["b-steps"] = app.add_option("--b-steps", s.b_steps, "scan: grid points along b");
  opts["threads"] = app.add_option("--threads", s.threads, "scan: worker threads (0 = all cores)");
  app.add_option("--config", s.config, "key=value file with any of the options above");
  app.fallthrough();

  auto* flexes = app.add_subcommand("flexes", "list every flex with contact order and kind");
  auto* orbits = app.add_subcommand("orbits", "flexes grouped into orbits of the symmetry group");
  auto* verify = app.add_subcommand("verify", "compare the computed classification with the table row");
  auto* scan = app.add_subcommand("scan", "verify every point of a parameter grid");
  auto* repro = app.add_subcommand("repro", "run the worked-example fixtures");
  for (auto* sub : {flexes, orbits, verify, scan, repro}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (!s.config.empty()) {
      for (const auto& [key, value] : read_config(s.config)) {
        auto it = opts.find(key);
        if (it == opts.end()) throw Error(ErrorKind::InvalidInput, "unknown config key '" + key + "'");
        if (it->second->count() == 0) {
          it->second->clear();
          it->second->add_result(value);
          it->second->run_callback();
        }
      }
    }
    Tolerances tol;
    if (const char* profile = std::getenv("QFLEX_TOLERANCE_PROFILE"); profile && *profile) {
      auto p = Tolerances::profile(profile);
      if (!p) throw Error(ErrorKind::InvalidInput, std::string("unknown tolerance profile '") + profile + "'");
      tol = *p;
    }
    if (opts["zero-eps"]->count()) tol.zero_eps = s.zero_eps;
    if (opts["cluster-radius"]->count()) tol.cluster_radius = s.cluster_radius;
    if (opts["point-eps"]->count()) tol.point_eps = s.point_eps;
    tol.validate();

    if (flexes->parsed()) return cmd_flexes(s, tol, false);
    if (orbits->parsed()) return cmd_flexes(s, tol, true);
    if (verify->parsed()) return cmd_verify(s, tol);
    if (scan->parsed()) return cmd_scan(s, tol);
    return cmd_repro(s, tol);
  } catch (const Error& e) {
    std::cerr << "qflex: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const CLI::Error& e) {
    std::cerr << "qflex: " << e.what() << '\n';
    return kExitInput;
  }
}
