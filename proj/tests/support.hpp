#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <span>
#include <vector>

#include "qflex/kuribayashi.hpp"

namespace qtest {

using qflex::Complex;

// QFLEX_TEST_SEED overrides the fixed seed.
inline std::mt19937_64& rng() {
  static std::mt19937_64 gen([] {
    const char* s = std::getenv("QFLEX_TEST_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 20240611ull;
  }());
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Complex random_complex(double r = 2.0) { return {uniform(-r, r), uniform(-r, r)}; }

inline qflex::Vec3 random_vec(double r = 1.0) { return {random_complex(r), random_complex(r), random_complex(r)}; }

// Every nondegeneracy factor, P, Q and (optionally) b kept at least `margin`
// away from zero, so double precision can resolve the flex structure.
inline bool well_separated(Complex a, Complex b, double margin, bool need_b) {
  const double f[] = {std::abs(a * a - 4.0), std::abs(b * b - 4.0), std::abs(a * a - 1.0),
                      std::abs(b * b - a - 2.0), std::abs(qflex::condition_P(a, b)),
                      std::abs(qflex::condition_Q(a, b))};
  if (need_b && std::abs(b) < margin) return false;
  return std::all_of(std::begin(f), std::end(f), [&](double v) { return v >= margin; });
}

struct Params {
  Complex a, b;
};

// Half real, half complex.
inline Params random_params(bool complex_values, double margin = 0.05) {
  for (;;) {
    Complex a = complex_values ? random_complex(4.0) : Complex(uniform(-6.0, 6.0), 0.0);
    Complex b = complex_values ? random_complex(4.0) : Complex(uniform(-6.0, 6.0), 0.0);
    if (well_separated(a, b, margin, true)) return {a, b};
  }
}

/// Largest relative deviation of x from c*y, with c fitted by least squares.
inline double proportionality_defect(std::span<const Complex> x, std::span<const Complex> y) {
  const std::size_t n = std::max(x.size(), y.size());
  auto at = [](std::span<const Complex> v, std::size_t k) { return k < v.size() ? v[k] : Complex{}; };
  Complex num{};
  double den = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    num += at(x, k) * std::conj(at(y, k));
    den += std::norm(at(y, k));
    scale = std::max(scale, std::abs(at(x, k)));
  }
  if (den == 0.0 || scale == 0.0) return den == 0.0 && scale == 0.0 ? 0.0 : 1.0;
  const Complex c = num / den;
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(at(x, k) - c * at(y, k)) / scale);
  return worst;
}

/// Hausdorff distance between two point sets under the projective metric.
inline double hausdorff(const std::vector<qflex::ProjPoint>& p, const std::vector<qflex::ProjPoint>& q) {
  auto one_way = [](const auto& from, const auto& to) {
    double worst = 0.0;
    for (const auto& s : from) {
      double best = 1.0;
      for (const auto& t : to) best = std::min(best, qflex::distance(s, t));
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (p.empty() || q.empty()) return p.empty() && q.empty() ? 0.0 : 1.0;
  return std::max(one_way(p, q), one_way(q, p));
}

inline std::vector<qflex::ProjPoint> points_of(const std::vector<qflex::FlexRecord>& flexes) {
  std::vector<qflex::ProjPoint> out;
  for (const auto& f : flexes) out.push_back(f.point);
  return out;
}

/// A point on F: pick random x, y and solve F(x, y, z) = 0 for z.
inline qflex::ProjPoint random_curve_point(const qflex::TriPoly& F, const qflex::Tolerances& tol) {
  const Complex x = random_complex(1.0), y = random_complex(1.0);
  const auto roots = qflex::roots_with_multiplicity(
      qflex::restrict_line(F, {x, y, 0.0}, {0.0, 0.0, 1.0}), tol);
  return qflex::ProjPoint(x, y, roots.roots.front().value);
}

}  // namespace qtest
