#include "qflex/report.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace qflex {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidInput, "cannot parse complex number '" + std::string(whole) + "'");
  return v;
}

// Point coordinates are normalized to max modulus 1, so anything below this
// is round-off from the solver.
constexpr double kCoordFloor = 1e-12;

double snap(double v) { return std::abs(v) < kCoordFloor ? 0.0 : v; }

Complex snap(Complex c) { return {snap(c.real()), snap(c.imag())}; }

std::string fmt12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round12(v));
  return buf;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty complex number");
  if (s.back() != 'i') return {parse_real(s, text), 0.0};
  s.pop_back();
  // Split before the last sign that is not an exponent sign.
  std::size_t pos = std::string::npos;
  for (std::size_t k = s.size(); k-- > 0;) {
    if ((s[k] == '+' || s[k] == '-') && (k == 0 || (s[k - 1] != 'e' && s[k - 1] != 'E'))) {
      pos = k;
      break;
    }
  }
  const std::string re = pos == std::string::npos ? "" : s.substr(0, pos);
  std::string im = pos == std::string::npos ? s : s.substr(pos);
  if (im.empty() || im == "+") im = "1";
  else if (im == "-") im = "-1";
  return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

double round12(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Report make_flex_report(Complex a, Complex b, std::vector<FlexRecord> flexes) {
  Report r;
  r.a = a;
  r.b = b;
  r.flexes = std::move(flexes);
  return r;
}

Report make_verdict_report(const VerdictRecord& v) {
  Report r;
  r.a = v.a;
  r.b = v.b;
  r.flexes = v.flexes;
  r.orbit_labels = v.orbit_labels;
  if (!v.flexes.empty()) r.signature = v.computed.signature;
  r.verdict = v;
  return r;
}

namespace {

nlohmann::ordered_json complex_json(Complex c) { return {round12(c.real()), round12(c.imag())}; }

nlohmann::ordered_json signature_json(const OrbitSignature& s) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : s.entries())
    arr.push_back({{"orbit_size", e.orbit_size}, {"count", e.count}, {"kind", to_string(e.kind)}});
  return arr;
}

}  // namespace

nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["params"] = {{"a", complex_json(r.a)}, {"b", complex_json(r.b)}};
  auto flexes = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.flexes.size(); ++i) {
    const auto& f = r.flexes[i];
    nlohmann::ordered_json rec;
    rec["point"] = {complex_json(snap(f.point[0])), complex_json(snap(f.point[1])), complex_json(snap(f.point[2]))};
    rec["contact_order"] = f.contact_order;
    rec["weight"] = f.weight;
    rec["kind"] = to_string(f.kind);
    rec["orbit"] = r.orbit_labels.empty() ? nlohmann::ordered_json(nullptr)
                                          : nlohmann::ordered_json(r.orbit_labels[i]);
    flexes.push_back(rec);
  }
  j["flexes"] = flexes;
  j["signature"] = r.signature ? signature_json(*r.signature) : nlohmann::ordered_json::array();
  j["verdict"] = r.verdict ? nlohmann::ordered_json(to_string(r.verdict->verdict)) : nlohmann::ordered_json(nullptr);
  if (r.verdict) {
    const VerdictRecord& v = *r.verdict;
    auto alts = nlohmann::ordered_json::array();
    for (const auto& o : v.predicted.alternatives)
      alts.push_back({{"ordinary", o.ordinary}, {"hyperflex", o.hyperflex}, {"signature", signature_json(o.signature)}});
    j["predicted"] = {{"source", v.predicted.source}, {"alternatives", alts}};
    j["computed"] = {{"ordinary", v.computed.ordinary}, {"hyperflex", v.computed.hyperflex}};
    j["realized"] = v.realized ? nlohmann::ordered_json(*v.realized) : nlohmann::ordered_json(nullptr);
    j["group_order"] = v.group_order;
    j["warnings"] = v.warnings;
  }
  return j;
}

std::string to_csv(const Report& r) {
  std::ostringstream os;
  os << "x_re,x_im,y_re,y_im,z_re,z_im,contact_order,weight,kind,orbit\n";
  for (std::size_t i = 0; i < r.flexes.size(); ++i) {
    const auto& f = r.flexes[i];
    for (int k = 0; k < 3; ++k) os << fmt12(snap(f.point[k].real())) << ',' << fmt12(snap(f.point[k].imag())) << ',';
    os << f.contact_order << ',' << f.weight << ',' << to_string(f.kind) << ',';
    if (!r.orbit_labels.empty()) os << r.orbit_labels[i];
    os << '\n';
  }
  return os.str();
}

std::string to_text(const Report& r) {
  std::ostringstream os;
  auto cx = [](Complex c) { return fmt12(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt12(std::abs(c.imag())) + "i"; };
  os << "a = " << cx(r.a) << ", b = " << cx(r.b) << '\n';
  int ord = 0, hyp = 0;
  for (const auto& f : r.flexes) ++(f.kind == FlexKind::Ordinary ? ord : hyp);
  os << r.flexes.size() << " flexes: " << ord << " ordinary, " << hyp << " hyperflex, weight sum "
     << weight_sum(r.flexes) << '\n';
  for (std::size_t i = 0; i < r.flexes.size(); ++i) {
    const auto& f = r.flexes[i];
    os << "  [" << cx(snap(f.point[0])) << " : " << cx(snap(f.point[1])) << " : " << cx(snap(f.point[2])) << "]  "
       << to_string(f.kind) << " (contact " << f.contact_order << ")";
    if (!r.orbit_labels.empty()) os << "  orbit " << r.orbit_labels[i];
    os << '\n';
  }
  if (r.signature) os << "signature: " << r.signature->to_string() << '\n';
  if (r.verdict) {
    const VerdictRecord& v = *r.verdict;
    os << "table row: " << v.predicted.source << '\n';
    for (std::size_t i = 0; i < v.predicted.alternatives.size(); ++i) {
      const auto& o = v.predicted.alternatives[i];
      os << "  admissible: " << o.ordinary << " ordinary, " << o.hyperflex << " hyperflex as "
         << o.signature.to_string() << (v.realized == i ? "  <- realized" : "") << '\n';
    }
    for (const auto& w : v.warnings) os << "warning: " << w << '\n';
    os << "verdict: " << to_string(v.verdict) << '\n';
  }
  return os.str();
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw Error(ErrorKind::InvalidInput, "unknown format '" + std::string(name) + "'");
}

std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::Json: return to_json(r).dump(2) + "\n";
    case Format::Csv: return to_csv(r);
    case Format::Text: return to_text(r);
  }
  return {};
}

std::vector<RecordRow> rows_from_json(const nlohmann::ordered_json& j) {
  std::vector<RecordRow> out;
  for (const auto& rec : j.at("flexes")) {
    RecordRow row;
    for (std::size_t k = 0; k < 3; ++k) {
      row.coords[2 * k] = rec.at("point")[k][0].get<double>();
      row.coords[2 * k + 1] = rec.at("point")[k][1].get<double>();
    }
    row.contact_order = rec.at("contact_order").get<int>();
    row.weight = rec.at("weight").get<int>();
    row.kind = rec.at("kind").get<std::string>();
    row.orbit = rec.at("orbit").is_null() ? -1 : rec.at("orbit").get<int>();
    out.push_back(row);
  }
  return out;
}

std::vector<RecordRow> rows_from_csv(const std::string& csv) {
  std::vector<RecordRow> out;
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);  // header
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 10) throw Error(ErrorKind::InvalidInput, "malformed CSV row: " + line);
    RecordRow row;
    for (std::size_t k = 0; k < 6; ++k) row.coords[k] = parse_real(cells[k], line);
    row.contact_order = std::stoi(cells[6]);
    row.weight = std::stoi(cells[7]);
    row.kind = cells[8];
    row.orbit = cells[9].empty() ? -1 : std::stoi(cells[9]);
    out.push_back(row);
  }
  return out;
}

}  // namespace qflex
