#include "qflex/kuribayashi.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qflex {

std::optional<std::string> degenerate_factor(Complex a, Complex b, double zero_eps) {
  if (!std::isfinite(std::abs(a)) || !std::isfinite(std::abs(b))) return "non-finite parameter";
  if (std::abs(a * a - 4.0) <= zero_eps) return "a^2-4";
  if (std::abs(b * b - 4.0) <= zero_eps) return "b^2-4";
  if (std::abs(a * a - 1.0) <= zero_eps) return "a^2-1";
  if (std::abs(b * b - a - 2.0) <= zero_eps) return "b^2-a-2";
  return std::nullopt;
}

FamilyParams::FamilyParams(Complex a, Complex b, double zero_eps) : a_(a), b_(b) {
  if (auto factor = degenerate_factor(a, b, zero_eps))
    throw Error(ErrorKind::DegenerateParams, "degenerate parameters: factor " + *factor + " vanishes");
}

TriPoly build_curve(const FamilyParams& params) {
  const Complex a = params.a(), b = params.b();
  return TriPoly(4, {{{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}, {{0, 0, 4}, 1.0}, {{2, 2, 0}, a}, {{2, 0, 2}, b}, {{0, 2, 2}, b}});
}

Complex condition_P(Complex a, Complex b) { return a * a + b * b - a * b * b; }

Complex condition_Q(Complex a, Complex b) { return 36.0 - 12.0 * a + a * a - 10.0 * b * b + 3.0 * a * b * b; }

Complex condition_Q_alt(Complex a, Complex b) { return 36.0 - 12.0 * a + a * a - 10.0 * b * b + 3.0 * a * a; }

bool in_gamma(const FamilyParams& params, const Tolerances& tol) {
  return std::abs(condition_P(params)) <= tol.zero_eps && std::abs(condition_Q(params)) <= tol.zero_eps;
}

std::vector<int> PredictedRow::ordinary_counts() const {
  std::vector<int> out;
  for (const auto& o : alternatives) out.push_back(o.ordinary);
  return out;
}

std::vector<int> PredictedRow::hyperflex_counts() const {
  std::vector<int> out;
  for (const auto& o : alternatives) out.push_back(o.hyperflex);
  return out;
}

namespace {

constexpr FlexKind kOrd = FlexKind::Ordinary;
constexpr FlexKind kHyp = FlexKind::Hyperflex;

Outcome outcome(int ordinary, int hyper, std::vector<SignatureEntry> sig) {
  return {ordinary, hyper, OrbitSignature(std::move(sig))};
}

}  // namespace

PredictedRow predicted_classification(const FamilyParams& params, const Tolerances& tol) {
  const Complex a = params.a(), b = params.b();
  PredictedRow row;
  if (std::abs(b) <= tol.zero_eps) {
    if (std::abs(a) <= tol.zero_eps || std::abs(a - 6.0) <= tol.zero_eps) {
      row.source = "b=0, a in {0,6}";
      row.alternatives = {outcome(0, 12, {{4, 1, kHyp}, {8, 1, kHyp}})};
    } else {
      row.source = "b=0, a not in {0,6}";
      row.alternatives = {outcome(16, 4, {{16, 1, kOrd}, {4, 1, kHyp}})};
    }
    return row;
  }
  const bool p0 = std::abs(condition_P(a, b)) <= tol.zero_eps;
  const bool q0 = std::abs(condition_Q(a, b)) <= tol.zero_eps;
  if (p0 && q0) {
    row.source = "b!=0, (a,b) in Gamma";
    row.alternatives = {outcome(8, 8, {{8, 1, kOrd}, {4, 2, kHyp}})};
  } else if (p0 || q0) {
    row.source = p0 ? "b!=0, P=0, Q!=0" : "b!=0, P!=0, Q=0";
    row.alternatives = {outcome(0, 12, {{4, 1, kHyp}, {8, 1, kHyp}}),
                        outcome(16, 4, {{8, 2, kOrd}, {4, 1, kHyp}})};
  } else {
    row.source = "b!=0, PQ!=0";
    row.alternatives = {outcome(24, 0, {{8, 3, kOrd}}), outcome(8, 8, {{8, 1, kOrd}, {8, 1, kHyp}})};
  }
  return row;
}

std::vector<ProjMap> standard_generators(bool b_is_zero) {
  const Complex i(0.0, 1.0);
  if (b_is_zero) {
    return {ProjMap(Mat3{-1, 0, 0, 0, 1, 0, 0, 0, 1}), ProjMap(Mat3{i, 0, 0, 0, -i, 0, 0, 0, 1}),
            ProjMap(Mat3{0, -1, 0, 1, 0, 0, 0, 0, 1})};
  }
  return {ProjMap(Mat3{0, 1, 0, 1, 0, 0, 0, 0, 1}), ProjMap(Mat3{0, 1, 0, -1, 0, 0, 0, 0, 1})};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Confirmed: return "CONFIRMED";
    case Verdict::Refuted: return "REFUTED";
    case Verdict::Degenerate: return "DEGENERATE";
  }
  return "?";
}

VerdictRecord verify_family_instance(const FamilyParams& params, const Tolerances& tol) {
  VerdictRecord rec;
  rec.a = params.a();
  rec.b = params.b();
  rec.predicted = predicted_classification(params, tol);
  const bool b_zero = std::abs(params.b()) <= tol.zero_eps;
  auto in_band = [&](double v) { return v > tol.zero_eps && v < 1e3 * tol.zero_eps; };
  if (!b_zero) {
    const double p = std::abs(condition_P(params)), q = std::abs(condition_Q(params));
    if (in_band(p) || in_band(q)) {
      rec.near_boundary = true;
      std::ostringstream os;
      os << "NearBoundary: |P| = " << p << ", |Q| = " << q;
      rec.warnings.push_back(os.str());
    }
  }
  try {
    rec.flexes = classify_flexes(build_curve(params), tol);
    const ProjGroup G = close_group(standard_generators(b_zero), 256, tol.point_eps);
    rec.group_order = G.order();
    const OrbitPartition part = orbit_partition(G, rec.flexes, tol);
    rec.orbit_labels = part.labels;
    rec.computed.signature = part.signature;
    for (const auto& f : rec.flexes) ++(f.kind == FlexKind::Ordinary ? rec.computed.ordinary : rec.computed.hyperflex);
  } catch (const Error& e) {
    if (!rec.near_boundary) throw;
    rec.verdict = Verdict::Degenerate;
    rec.warnings.push_back(std::string(to_string(e.kind())) + ": " + e.what());
    return rec;
  }
  for (std::size_t i = 0; i < rec.predicted.alternatives.size(); ++i)
    if (rec.predicted.alternatives[i] == rec.computed) rec.realized = i;
  if (rec.realized) rec.verdict = Verdict::Confirmed;
  else rec.verdict = rec.near_boundary ? Verdict::Degenerate : Verdict::Refuted;
  return rec;
}

std::vector<HyperflexSeed> hyperflex_condition_roots(Complex b) {
  if (std::abs(b) == 0.0) throw Error(ErrorKind::InvalidInput, "hyperflex condition roots need b != 0");
  if (std::abs(b * b - 4.0) <= Tolerances{}.zero_eps)
    throw Error(ErrorKind::DegenerateParams, "degenerate parameters: factor b^2-4 vanishes");
  const Complex i(0.0, 1.0);
  const Complex s = std::sqrt(b * b - 4.0);
  const Complex t = std::sqrt(9.0 * b * b - 32.0);
  const Complex beta = std::sqrt(2.0) / std::sqrt(-b + s);
  const Complex alpha1 = 0.25 * std::sqrt(t - 3.0 * b);
  const Complex alpha3 = 0.25 * i * std::sqrt(t + 3.0 * b);
  return {
      {0.5 * (b * b - b * s), ProjPoint(beta, 0.0, 1.0), "P-"},
      {0.5 * (b * b + b * s), ProjPoint(1.0 / beta, 0.0, 1.0), "P+"},
      {0.5 * (12.0 - 3.0 * b * b - b * t), ProjPoint(alpha1, alpha1, 1.0), "Q-"},
      {0.5 * (12.0 - 3.0 * b * b + b * t), ProjPoint(alpha3, alpha3, 1.0), "Q+"},
  };
}

UniPoly gamma_resultant() {
  // P and Q as polynomials in a with coefficients in b.
  const BiPoly P{{UniPoly{0.0, 0.0, 1.0}, UniPoly{0.0, 0.0, -1.0}, UniPoly{1.0}}};
  const BiPoly Q{{UniPoly{36.0, 0.0, -10.0}, UniPoly{-12.0, 0.0, 3.0}, UniPoly{1.0}}};
  return resultant_eliminate(P, Q);
}

std::vector<std::pair<Complex, Complex>> gamma_points(const Tolerances& tol) {
  std::vector<std::pair<Complex, Complex>> out;
  for (const Root& r : roots_with_multiplicity(gamma_resultant(), tol, {.coefficient_noise = 1e-12}).roots) {
    const Complex b = r.value;
    if (std::abs(b) <= tol.zero_eps) continue;
    // P - Q is linear in a.
    const Complex denom = 12.0 - 4.0 * b * b;
    if (std::abs(denom) <= tol.zero_eps) continue;
    const Complex a = (36.0 - 11.0 * b * b) / denom;
    if (degenerate_factor(a, b, 1e3 * tol.zero_eps)) continue;
    out.emplace_back(a, b);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.second.real() != y.second.real()) return x.second.real() < y.second.real();
    return x.second.imag() < y.second.imag();
  });
  return out;
}

}  // namespace qflex
