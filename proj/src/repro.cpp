#include "qflex/repro.hpp"

#include <cmath>
#include <sstream>

namespace qflex {

std::optional<double> affine_distance(const std::vector<FlexRecord>& flexes, Complex x0, Complex y0) {
  std::optional<double> best;
  for (const auto& f : flexes) {
    if (std::abs(f.point[2]) == 0.0) continue;
    const auto [x, y] = f.point.affine_z();
    const double d = std::max(std::abs(x - x0), std::abs(y - y0));
    if (!best || d < *best) best = d;
  }
  return best;
}

std::vector<Fixture> repro_fixtures() {
  constexpr auto O = FlexKind::Ordinary;
  constexpr auto H = FlexKind::Hyperflex;
  const Complex i(0.0, 1.0);
  auto out = [](int o, int h, std::vector<SignatureEntry> s) { return Outcome{o, h, OrbitSignature(std::move(s))}; };
  return {
      {"example-1 a=6/5 b=6/sqrt(5)", 1.2, 6.0 / std::sqrt(5.0), out(0, 12, {{4, 1, H}, {8, 1, H}}),
       {{0.748 * (1.0 + i), 0.748 * (1.0 - i)}, {1.495 * i, 0.0}}},
      {"example-2 a=3 b=3/sqrt(2)", 3.0, 3.0 / std::sqrt(2.0), out(16, 4, {{8, 2, O}, {4, 1, H}}),
       {{0.841 * i, 0.0}}},
      {"example-3 a=3 b=3", 3.0, 3.0, out(0, 12, {{4, 1, H}, {8, 1, H}}), {}},
      {"example-4 a=0 b=3*sqrt(2/5)", 0.0, 3.0 * std::sqrt(0.4), out(16, 4, {{8, 2, O}, {4, 1, H}}),
       {{0.562 * i, 0.562 * i}}},
      {"example-5 a=4 b=4", 4.0, 4.0, out(24, 0, {{8, 3, O}}), {}},
      {"example-6 a=-5 b=1", -5.0, 1.0, out(8, 8, {{8, 1, O}, {8, 1, H}}), {}},
      {"C_aa a=0", 0.0, 0.0, out(0, 12, {{4, 1, H}, {8, 1, H}}), {}},
      {"C_aa a=3", 3.0, 3.0, out(0, 12, {{4, 1, H}, {8, 1, H}}), {}},
      {"C_aa a=4", 4.0, 4.0, out(24, 0, {{8, 3, O}}), {}},
      {"C_0b b=sqrt(6)", 0.0, std::sqrt(6.0), out(8, 8, {{8, 1, O}, {8, 1, H}}), {}},
      {"C_0b b=sqrt(5)", 0.0, std::sqrt(5.0), out(24, 0, {{8, 3, O}}),
       {{Complex(0.524132, 0.316563), Complex(-0.417502, 0.812472)},
        {Complex(0.524132, -0.316563), Complex(0.417502, 0.812472)},
        {Complex(0.0, -0.410813), Complex(0.0, -1.37547)}}},
      {"C_0b b=3*sqrt(2/5)", 0.0, 3.0 * std::sqrt(0.4), out(16, 4, {{8, 2, O}, {4, 1, H}}), {}},
  };
}

FixtureResult run_fixture(const Fixture& f, const Tolerances& tol) {
  FixtureResult res{f.name, false, ""};
  std::ostringstream os;
  try {
    const VerdictRecord v = verify_family_instance(FamilyParams(f.a, f.b, tol.zero_eps), tol);
    bool ok = v.verdict == Verdict::Confirmed && v.computed == f.expected;
    os << v.computed.ordinary << " ordinary, " << v.computed.hyperflex << " hyperflex as "
       << v.computed.signature.to_string() << ", " << to_string(v.verdict);
    if (!(v.computed == f.expected))
      os << " (expected " << f.expected.ordinary << "/" << f.expected.hyperflex << " as "
         << f.expected.signature.to_string() << ")";
    for (const auto& s : f.spots) {
      const auto d = affine_distance(v.flexes, s.x, s.y);
      const bool near = d && *d <= s.radius;
      ok = ok && near;
      os << "; spot (" << s.x.real() << (s.x.imag() < 0 ? "" : "+") << s.x.imag() << "i, " << s.y.real()
         << (s.y.imag() < 0 ? "" : "+") << s.y.imag() << "i) " << (near ? "found" : "missing");
      if (d) os << " at distance " << *d;
    }
    res.pass = ok;
  } catch (const Error& e) {
    os << to_string(e.kind()) << ": " << e.what();
  }
  res.detail = os.str();
  return res;
}

}  // namespace qflex
