#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qflex/flexlab.hpp"
#include "qflex/kuribayashi.hpp"
#include "support.hpp"

using namespace qflex;

namespace {

UniPoly from_roots(const std::vector<std::pair<Complex, int>>& roots) {
  UniPoly p = UniPoly::constant(1.0);
  for (const auto& [r, m] : roots)
    for (int k = 0; k < m; ++k) p = p * UniPoly{-r, 1.0};
  return p;
}

// Every expected root is matched by a computed root of the same multiplicity.
void check_roots(const RootSet& got, const std::vector<std::pair<Complex, int>>& expect, double eps) {
  CHECK(got.roots.size() == expect.size());
  for (const auto& [r, m] : expect) {
    bool found = false;
    for (const auto& g : got.roots)
      if (std::abs(g.value - r) <= eps && g.multiplicity == m) found = true;
    CHECK_MESSAGE(found, "missing root " << r << " of multiplicity " << m);
  }
}

}  // namespace

TEST_CASE("simple roots") {
  const Tolerances tol;
  const std::vector<std::pair<Complex, int>> expect{{1.0, 1}, {-2.0, 1}, {Complex(0, 1), 1}, {Complex(0.5, -0.3), 1}};
  const RootSet rs = roots_with_multiplicity(from_roots(expect), tol);
  check_roots(rs, expect, 1e-10);
  CHECK(rs.total_multiplicity() == 4);
}

TEST_CASE("multiple roots are clustered") {
  const Tolerances tol;
  const std::vector<std::pair<Complex, int>> expect{{1.0, 3}, {-2.0, 1}, {Complex(0, 1), 2}};
  const RootSet rs = roots_with_multiplicity(from_roots(expect), tol);
  check_roots(rs, expect, 1e-6);
  CHECK(rs.total_multiplicity() == 6);
}

TEST_CASE("quartic with two double roots: x^4 + 2x^2 + 1") {
  const RootSet rs = roots_with_multiplicity(UniPoly{1.0, 0.0, 2.0, 0.0, 1.0}, Tolerances{});
  check_roots(rs, {{Complex(0, 1), 2}, {Complex(0, -1), 2}}, 1e-6);
}

TEST_CASE("a fourfold root at zero and roots of unity") {
  const RootSet z = roots_with_multiplicity(UniPoly::monomial(4), Tolerances{});
  check_roots(z, {{0.0, 4}}, 1e-12);
  std::vector<std::pair<Complex, int>> unity;
  for (int k = 0; k < 8; ++k) unity.push_back({std::polar(1.0, 2.0 * 3.141592653589793 * k / 8.0), 1});
  check_roots(roots_with_multiplicity(UniPoly::monomial(8) - UniPoly::constant(1.0), Tolerances{}), unity, 1e-10);
}

TEST_CASE("random polynomials: multiplicities always sum to the degree") {
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<std::pair<Complex, int>> rts;
    const int n = 1 + trial % 5;
    for (int k = 0; k < n; ++k) rts.push_back({qtest::random_complex(1.5), 1 + (trial + k) % 3});
    const UniPoly p = from_roots(rts);
    const RootSet rs = roots_with_multiplicity(p, Tolerances{});
    CHECK(rs.total_multiplicity() == p.degree());
  }
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_AS(roots_with_multiplicity(UniPoly{}, Tolerances{}), Error);
  CHECK(roots_with_multiplicity(UniPoly::constant(2.0), Tolerances{}).roots.empty());
  const RootSet lin = roots_with_multiplicity(UniPoly{3.0, 2.0}, Tolerances{});
  REQUIRE(lin.roots.size() == 1);
  CHECK(std::abs(lin.roots[0].value - Complex(-1.5)) < 1e-14);
}

TEST_CASE("ProjPoint canonical form and distance") {
  const ProjPoint p(2.0, 4.0, Complex(0, 1));
  CHECK(p.home() == 1);
  CHECK(std::abs(p[1] - Complex(1.0)) < 1e-15);
  CHECK(std::abs(p[0] - Complex(0.5)) < 1e-15);
  const ProjPoint q(Complex(0, 3), Complex(0, 6), -1.5);
  CHECK(distance(p, q) < 1e-14);
  CHECK(approx_equal(p, q, 1e-12));
  CHECK(distance(ProjPoint(1.0, 0.0, 0.0), ProjPoint(0.0, 1.0, 0.0)) > 0.99);
  CHECK_THROWS_AS(ProjPoint(0.0, 0.0, 0.0), Error);
  const auto az = ProjPoint(2.0, 4.0, 2.0).affine_z();
  CHECK(std::abs(az[0] - Complex(1.0)) < 1e-15);
  CHECK(std::abs(az[1] - Complex(2.0)) < 1e-15);
  CHECK_THROWS_AS(ProjPoint(1.0, 1.0, 0.0).affine_z(), Error);
}

TEST_CASE("dedupe_points merges nearby representatives") {
  std::vector<ProjPoint> pts{ProjPoint(1.0, 2.0, 3.0), ProjPoint(2.0, 4.0, 6.0 + 1e-9), ProjPoint(1.0, 0.0, 0.0),
                             ProjPoint(0.0, 1.0, 0.0)};
  const auto d = dedupe_points(pts, 1e-6);
  CHECK(d.size() == 3);
  for (std::size_t k = 1; k < d.size(); ++k) CHECK(canonical_less(d[k - 1], d[k]));
}

TEST_CASE("solve_curve_system on the Fermat quartic") {
  // F = x^4 + y^4 + z^4, H = 1728 x^2 y^2 z^2: each coordinate line meets F in 4 points.
  const TriPoly F(4, {{{4, 0, 0}, 1.0}, {{0, 4, 0}, 1.0}, {{0, 0, 4}, 1.0}});
  const Tolerances tol;
  const auto pts = solve_curve_system(F, hessian(F), tol);
  CHECK(pts.size() == 12);
  for (const auto& p : pts) {
    CHECK(std::abs(eval_tri(F, p.coords())) < 1e-10);
    const int zeros = (std::abs(p[0]) < 1e-8) + (std::abs(p[1]) < 1e-8) + (std::abs(p[2]) < 1e-8);
    CHECK(zeros == 1);
  }
}

TEST_CASE("solve_curve_system is independent of the chart order") {
  const Tolerances tol;
  for (int trial = 0; trial < 4; ++trial) {
    const auto [a, b] = qtest::random_params(trial % 2 == 1);
    const TriPoly F = build_curve(FamilyParams(a, b));
    const TriPoly H = hessian(F);
    const auto p1 = solve_curve_system(F, H, tol, {Var::Z, Var::Y, Var::X});
    const auto p2 = solve_curve_system(F, H, tol, {Var::X, Var::Z, Var::Y});
    const auto p3 = solve_curve_system(F, H, tol, {Var::Y, Var::X, Var::Z});
    CHECK(p1.size() == p2.size());
    CHECK(p1.size() == p3.size());
    CHECK(qtest::hausdorff(p1, p2) < 1e-8);
    CHECK(qtest::hausdorff(p1, p3) < 1e-8);
  }
}

TEST_CASE("solve_curve_system: a line and a conic") {
  // x^2 + y^2 - z^2 meets x = y at [1:1:sqrt2] and [1:1:-sqrt2].
  const TriPoly F(2, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}, {{0, 0, 2}, -1.0}});
  const TriPoly L(1, {{{1, 0, 0}, 1.0}, {{0, 1, 0}, -1.0}});
  const auto pts = solve_curve_system(F, L, Tolerances{});
  REQUIRE(pts.size() == 2);
  const std::vector<ProjPoint> expect{ProjPoint(1.0, 1.0, std::sqrt(2.0)), ProjPoint(1.0, 1.0, -std::sqrt(2.0))};
  CHECK(qtest::hausdorff(pts, expect) < 1e-10);
}

TEST_CASE("smoothness probe") {
  const TriPoly F = build_curve(FamilyParams(1.5, 0.5));
  const auto pts = qflex::solve_curve_system(F, hessian(F), Tolerances{});
  CHECK(smoothness_probe(F, pts, Tolerances{}));
  // y^2 z - x^3 has a cusp at [0:0:1].
  const TriPoly cusp(3, {{{0, 2, 1}, 1.0}, {{3, 0, 0}, -1.0}});
  CHECK_FALSE(smoothness_probe(cusp, {ProjPoint(0.0, 0.0, 1.0)}, Tolerances{}));
  CHECK(gradient_scale(cusp, ProjPoint(0.0, 0.0, 1.0)) < 1e-14);
}
