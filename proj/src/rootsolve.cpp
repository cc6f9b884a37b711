#include "qflex/rootsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>

namespace qflex {

namespace {

constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2.0;

// ---------------------------------------------------------------------------
// Aberth-Ehrlich iteration

struct Evaluation {
  Complex newton_ratio;  // f(z) / f'(z)
  bool converged = false;
};

class AberthSolver {
 public:
  AberthSolver(std::span<const Complex> c, double noise_abs) : c_(c.begin(), c.end()), noise_(noise_abs) {
    n_ = static_cast<int>(c_.size()) - 1;
    rev_.assign(c_.rbegin(), c_.rend());
  }

  std::optional<std::vector<Complex>> run(int max_sweeps, double angle_offset) const {
    std::vector<Complex> z = initial_guesses(angle_offset);
    std::vector<bool> done(static_cast<std::size_t>(n_), false);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      bool all_done = true;
      for (int i = 0; i < n_; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        if (done[ui]) continue;
        const Evaluation ev = evaluate(z[ui]);
        if (ev.converged) {
          done[ui] = true;
          continue;
        }
        all_done = false;
        Complex sum{};
        for (int j = 0; j < n_; ++j) {
          if (j == i) continue;
          const Complex diff = z[ui] - z[static_cast<std::size_t>(j)];
          if (diff != Complex{}) sum += 1.0 / diff;
        }
        const Complex w = ev.newton_ratio / (1.0 - ev.newton_ratio * sum);
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
          z[ui] *= Complex(1.0 + 1e-3, 1e-3);
          continue;
        }
        const double floor = 4.0 * kUnitRoundoff * std::abs(z[ui]);
        if (std::abs(w) <= floor && std::abs(ev.newton_ratio) > 1e3 * floor) {
          // Collapsed onto another approximation without reaching a root.
          z[ui] += std::polar(1e-3 * (1.0 + std::abs(z[ui])), 1.0 + i);
          continue;
        }
        z[ui] -= w;
        if (std::abs(w) <= floor) done[ui] = true;
      }
      if (all_done) return z;
    }
    if (std::all_of(done.begin(), done.end(), [](bool b) { return b; })) return z;
    return std::nullopt;
  }

 private:
  // Newton-polygon starting radii: one circle per upper-hull segment of
  // (k, log|c_k|).
  std::vector<Complex> initial_guesses(double offset) const {
    std::vector<int> hull;
    for (int k = 0; k <= n_; ++k) {
      if (c_[static_cast<std::size_t>(k)] == Complex{}) continue;
      while (hull.size() >= 2) {
        const int a = hull[hull.size() - 2];
        const int b = hull.back();
        const double la = std::log(std::abs(c_[static_cast<std::size_t>(a)]));
        const double lb = std::log(std::abs(c_[static_cast<std::size_t>(b)]));
        const double lk = std::log(std::abs(c_[static_cast<std::size_t>(k)]));
        if ((lb - la) * (k - a) <= (lk - la) * (b - a)) hull.pop_back();
        else break;
      }
      hull.push_back(k);
    }
    std::vector<Complex> z;
    for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
      const int lo = hull[s];
      const int hi = hull[s + 1];
      const int count = hi - lo;
      const double r = std::pow(std::abs(c_[static_cast<std::size_t>(lo)]) /
                                    std::abs(c_[static_cast<std::size_t>(hi)]),
                                1.0 / count);
      for (int j = 0; j < count; ++j) {
        const double angle = 2.0 * std::numbers::pi * j / count +
                             2.0 * std::numbers::pi * static_cast<double>(z.size()) / n_ + offset;
        z.push_back(std::polar(r, angle));
      }
    }
    return z;
  }

  // Horner in z for |z| <= 1, in 1/z on the reversed polynomial otherwise,
  // together with a running bound on the evaluation error.
  Evaluation evaluate(Complex z) const {
    const bool reversed = std::abs(z) > 1.0;
    const std::vector<Complex>& c = reversed ? rev_ : c_;
    const Complex x = reversed ? 1.0 / z : z;
    const double ax = std::abs(x);
    Complex p{}, dp{};
    double s = 0.0, pw = 0.0;
    for (int k = n_; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + c[static_cast<std::size_t>(k)];
      s = s * ax + std::abs(c[static_cast<std::size_t>(k)]);
      pw = pw * ax + 1.0;
    }
    Evaluation ev;
    const double bound = 4.0 * (n_ + 1) * kUnitRoundoff * s + noise_ * pw;
    ev.converged = std::abs(p) <= bound;
    if (!reversed) {
      ev.newton_ratio = dp == Complex{} ? Complex(1e-3 * (1.0 + std::abs(z))) : p / dp;
    } else {
      // f(z)/f'(z) = z / (n - x q'(x) / q(x)) with x = 1/z, q reversed.
      const Complex denom = static_cast<double>(n_) - x * dp / p;
      ev.newton_ratio = p == Complex{} ? Complex{} : z / denom;
    }
    return ev;
  }

  std::vector<Complex> c_;
  std::vector<Complex> rev_;
  double noise_;
  int n_ = 0;
};

// ---------------------------------------------------------------------------
// Cluster analysis

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

class ClusterTest {
 public:
  ClusterTest(const UniPoly& f, double noise_abs) : f_(f), noise_(noise_abs) {}

  // Taylor coefficients below order m vanish to within their error bound;
  // the order-m coefficient does not.
  bool is_multiple_root(Complex c, int m) const {
    const std::vector<Complex> t = f_.taylor(c);
    const int n = f_.degree();
    const double ac = std::abs(c);
    for (int k = 0; k <= m && k <= n; ++k) {
      double s = 0.0, w = 0.0;
      for (int j = k; j <= n; ++j) {
        const double term = binomial(j, k) * std::pow(ac, j - k);
        s += std::abs(f_.coeff(j)) * term;
        w += term;
      }
      const double bound = 16.0 * ((2.0 * n + 2.0) * kUnitRoundoff * s + noise_ * w);
      const double tk = std::abs(t[static_cast<std::size_t>(k)]);
      if (k < m && tk > bound) return false;
      if (k == m && tk <= bound) return false;
    }
    return true;
  }

  // Newton on f^(m-1), which has a simple root at an m-fold root of f.
  Complex polish(Complex start, int m) const {
    const UniPoly g = f_.derivative(m - 1);
    const UniPoly dg = g.derivative();
    Complex x = start;
    double last = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 30; ++it) {
      const Complex d = dg(x);
      if (d == Complex{}) break;
      const Complex step = g(x) / d;
      const double a = std::abs(step);
      if (!std::isfinite(a) || a >= last) break;
      x -= step;
      last = a;
      if (a <= 2.0 * kUnitRoundoff * std::abs(x)) break;
    }
    return x;
  }

 private:
  const UniPoly& f_;
  double noise_;
};

}  // namespace

int RootSet::total_multiplicity() const {
  int s = 0;
  for (const auto& r : roots) s += r.multiplicity;
  return s;
}

RootSet roots_with_multiplicity(const UniPoly& f, const Tolerances& tol, const RootOptions& options) {
  if (f.is_zero()) throw Error(ErrorKind::InvalidInput, "root finding on the zero polynomial");
  RootSet out;
  // Exact zero roots first.
  int zeros = 0;
  while (f.coeff(zeros) == Complex{}) ++zeros;
  if (zeros > 0) out.roots.push_back({0.0, zeros});
  const std::vector<Complex> shifted(f.coeffs().begin() + zeros, f.coeffs().end());
  const UniPoly g(shifted);
  const int n = g.degree();
  if (n == 0) return out;
  const double noise_abs = options.coefficient_noise * g.max_abs();
  if (n == 1) {
    out.roots.push_back({-g.coeff(0) / g.coeff(1), 1});
    return out;
  }

  const AberthSolver solver(g.coeffs(), noise_abs);
  std::optional<std::vector<Complex>> approx;
  for (int attempt = 0; attempt < 3 && !approx; ++attempt)
    approx = solver.run(options.max_sweeps, 0.4 + 0.9 * attempt);
  if (!approx)
    throw Error(ErrorKind::NoConvergence, "Aberth iteration did not converge within the sweep cap");

  std::vector<Complex> z = *approx;
  std::sort(z.begin(), z.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  const ClusterTest test(g, noise_abs);
  std::vector<bool> used(z.size(), false);
  std::vector<Root> found;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (used[i]) continue;
    std::vector<std::size_t> near;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (!used[j]) near.push_back(j);
    std::stable_sort(near.begin(), near.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(z[a] - z[i]) < std::abs(z[b] - z[i]);
    });

    int best_m = 1;
    Complex best_c = test.polish(z[i], 1);
    if (std::abs(best_c - z[i]) > tol.cluster_radius + 1e-8 * std::abs(z[i])) best_c = z[i];
    Complex centroid = z[i];
    for (std::size_t m = 2; m <= near.size(); ++m) {
      centroid = (centroid * static_cast<double>(m - 1) + z[near[m - 1]]) / static_cast<double>(m);
      double spread = 0.0;
      for (std::size_t q = 0; q < m; ++q) spread = std::max(spread, std::abs(z[near[q]] - centroid));
      const Complex c = test.polish(centroid, static_cast<int>(m));
      if (std::abs(c - centroid) > 2.0 * spread + tol.cluster_radius) continue;
      // The members must be the approximations nearest to c, clearly
      // separated from all others.
      double inner = 0.0;
      for (std::size_t q = 0; q < m; ++q) inner = std::max(inner, std::abs(z[near[q]] - c));
      double outer = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < z.size(); ++j)
        if (std::find(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(m), j) ==
            near.begin() + static_cast<std::ptrdiff_t>(m))
          outer = std::min(outer, std::abs(z[j] - c));
      if (inner > 0.5 * outer) continue;
      if (test.is_multiple_root(c, static_cast<int>(m))) {
        best_m = static_cast<int>(m);
        best_c = c;
      }
    }
    // Approximations inside the cluster radius always merge.
    std::size_t forced = 0;
    while (forced < near.size() && std::abs(z[near[forced]] - z[i]) <= tol.cluster_radius) ++forced;
    if (static_cast<int>(forced) > best_m) {
      Complex c{};
      for (std::size_t q = 0; q < forced; ++q) c += z[near[q]];
      best_m = static_cast<int>(forced);
      best_c = c / static_cast<double>(forced);
    }
    for (int q = 0; q < best_m; ++q) used[near[static_cast<std::size_t>(q)]] = true;
    found.push_back({best_c, best_m});
  }

  // Distinct roots stay farther apart than the cluster radius.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < found.size() && !merged; ++a)
      for (std::size_t b = a + 1; b < found.size() && !merged; ++b)
        if (std::abs(found[a].value - found[b].value) <= tol.cluster_radius) {
          const int m = found[a].multiplicity + found[b].multiplicity;
          found[a].value = (found[a].value * static_cast<double>(found[a].multiplicity) +
                            found[b].value * static_cast<double>(found[b].multiplicity)) /
                           static_cast<double>(m);
          found[a].multiplicity = m;
          found.erase(found.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
        }
  }
  if (zeros > 0) {
    // A numerically zero root found by iteration joins the exact one.
    for (auto it = found.begin(); it != found.end();) {
      if (std::abs(it->value) <= tol.cluster_radius) {
        out.roots[0].multiplicity += it->multiplicity;
        it = found.erase(it);
      } else {
        ++it;
      }
    }
  }
  out.roots.insert(out.roots.end(), found.begin(), found.end());
  return out;
}

// ---------------------------------------------------------------------------
// ProjPoint

ProjPoint::ProjPoint(const Vec3& coords) {
  const double m = max_abs(coords);
  if (!(m > 0.0) || !std::isfinite(m))
    throw Error(ErrorKind::InvalidInput, "projective point needs a finite nonzero representative");
  home_ = 0;
  while (std::abs(coords[static_cast<std::size_t>(home_)]) < m * (1.0 - 1e-9)) ++home_;
  const Complex s = coords[static_cast<std::size_t>(home_)];
  for (std::size_t i = 0; i < 3; ++i) coords_[i] = coords[i] / s;
  coords_[static_cast<std::size_t>(home_)] = 1.0;
}

std::array<Complex, 2> ProjPoint::affine_z() const {
  if (coords_[2] == Complex{}) throw Error(ErrorKind::InvalidInput, "point lies on z = 0");
  return {coords_[0] / coords_[2], coords_[1] / coords_[2]};
}

double distance(const ProjPoint& p, const ProjPoint& q) {
  return norm2(cross(p.coords(), q.coords())) / (norm2(p.coords()) * norm2(q.coords()));
}

bool approx_equal(const ProjPoint& p, const ProjPoint& q, double eps) { return distance(p, q) <= eps; }

bool canonical_less(const ProjPoint& p, const ProjPoint& q) {
  for (int i = 0; i < 3; ++i) {
    if (p[i].real() != q[i].real()) return p[i].real() < q[i].real();
    if (p[i].imag() != q[i].imag()) return p[i].imag() < q[i].imag();
  }
  return false;
}

std::vector<ProjPoint> dedupe_points(std::vector<ProjPoint> pts, double eps) {
  std::vector<ProjPoint> out;
  for (const auto& p : pts)
    if (std::none_of(out.begin(), out.end(), [&](const ProjPoint& q) { return approx_equal(p, q, eps); }))
      out.push_back(p);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

// ---------------------------------------------------------------------------
// Curve system solving

namespace {

std::array<int, 2> free_indices(int chart) {
  switch (chart) {
    case 0: return {1, 2};
    case 1: return {0, 2};
    default: return {0, 1};
  }
}

class IntersectionRefiner {
 public:
  IntersectionRefiner(const TriPoly& F, const TriPoly& H, const Tolerances& tol) : F_(F), H_(H), tol_(tol) {
    for (int v = 0; v < 3; ++v) {
      dF_[static_cast<std::size_t>(v)] = partial(F, static_cast<Var>(v));
      dH_[static_cast<std::size_t>(v)] = partial(H, static_cast<Var>(v));
    }
    for (int k = 0; k < 3; ++k) {
      const auto [i, j] = free_indices(k);
      const auto uk = static_cast<std::size_t>(k);
      jac_det_[uk] = dF_[static_cast<std::size_t>(i)] * dH_[static_cast<std::size_t>(j)] -
                     dF_[static_cast<std::size_t>(j)] * dH_[static_cast<std::size_t>(i)];
      for (int v = 0; v < 3; ++v)
        d_jac_det_[uk][static_cast<std::size_t>(v)] = partial(jac_det_[uk], static_cast<Var>(v));
      scale_det_[uk] = std::max(jac_det_[uk].coeff_norm(), 1e-300);
    }
    scale_F_ = std::max(F.coeff_norm(), 1e-300);
    scale_H_ = std::max(H.coeff_norm(), 1e-300);
  }

  std::optional<ProjPoint> refine(Vec3 p) const {
    if (!normalize(p)) return std::nullopt;
    double tangency = 1.0;
    for (int it = 0; it < 120; ++it) {
      if (!normalize(p)) return std::nullopt;
      const int k = home(p);
      const auto [i, j] = free_indices(k);
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const Complex f = F_(p), h = H_(p);
      const Complex a = dF_[ui](p), b = dF_[uj](p), c = dH_[ui](p), d = dH_[uj](p);
      const Complex det = a * d - b * c;
      const double ng = std::hypot(std::abs(a), std::abs(b)) * std::hypot(std::abs(c), std::abs(d));
      tangency = ng > 0.0 ? std::abs(det) / ng : 0.0;
      if (det == Complex{}) break;
      const Complex di = (-f * d + h * b) / det;
      const Complex dj = (-a * h + c * f) / det;
      if (!std::isfinite(std::abs(di)) || !std::isfinite(std::abs(dj))) return std::nullopt;
      p[ui] += di;
      p[uj] += dj;
      if (std::max(std::abs(di), std::abs(dj)) <= 1e-15) break;
    }
    if (!normalize(p)) return std::nullopt;
    if (tangency < 1e-4) {
      Vec3 q = p;
      if (deflated_refine(q) && residual(q, true) <= 1e-11) p = q;
    }
    if (std::abs(F_(p)) / scale_F_ > 10.0 * tol_.zero_eps) return std::nullopt;
    if (std::abs(H_(p)) / scale_H_ > 100.0 * tol_.zero_eps) return std::nullopt;
    return ProjPoint(p);
  }

 private:
  static int home(const Vec3& p) {
    int k = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(p[static_cast<std::size_t>(i)]) > std::abs(p[static_cast<std::size_t>(k)])) k = i;
    return k;
  }

  static bool normalize(Vec3& p) {
    const int k = home(p);
    const Complex s = p[static_cast<std::size_t>(k)];
    if (s == Complex{} || !std::isfinite(std::abs(s))) return false;
    for (auto& c : p) c /= s;
    return true;
  }

  double residual(const Vec3& p, bool with_det) const {
    double r = std::max(std::abs(F_(p)) / scale_F_, std::abs(H_(p)) / scale_H_);
    if (with_det) {
      const auto k = static_cast<std::size_t>(home(p));
      r = std::max(r, std::abs(jac_det_[k](p)) / scale_det_[k]);
    }
    return r;
  }

  // Gauss-Newton on {F, H, det J}: regular at a simple tangency, where
  // plain Newton on {F, H} only converges linearly.
  bool deflated_refine(Vec3& p) const {
    for (int it = 0; it < 60; ++it) {
      if (!normalize(p)) return false;
      const int k = home(p);
      const auto uk = static_cast<std::size_t>(k);
      const auto [i, j] = free_indices(k);
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      const std::array<Complex, 3> r{F_(p) / scale_F_, H_(p) / scale_H_, jac_det_[uk](p) / scale_det_[uk]};
      const std::array<std::array<Complex, 2>, 3> J{{
          {dF_[ui](p) / scale_F_, dF_[uj](p) / scale_F_},
          {dH_[ui](p) / scale_H_, dH_[uj](p) / scale_H_},
          {d_jac_det_[uk][ui](p) / scale_det_[uk], d_jac_det_[uk][uj](p) / scale_det_[uk]},
      }};
      Complex a00{}, a01{}, a11{}, b0{}, b1{};
      for (std::size_t row = 0; row < 3; ++row) {
        a00 += std::conj(J[row][0]) * J[row][0];
        a01 += std::conj(J[row][0]) * J[row][1];
        a11 += std::conj(J[row][1]) * J[row][1];
        b0 -= std::conj(J[row][0]) * r[row];
        b1 -= std::conj(J[row][1]) * r[row];
      }
      const Complex a10 = std::conj(a01);
      const Complex det = a00 * a11 - a01 * a10;
      if (std::abs(det) == 0.0) return false;
      const Complex di = (b0 * a11 - a01 * b1) / det;
      const Complex dj = (a00 * b1 - a10 * b0) / det;
      if (!std::isfinite(std::abs(di)) || !std::isfinite(std::abs(dj))) return false;
      p[ui] += di;
      p[uj] += dj;
      if (std::max(std::abs(di), std::abs(dj)) <= 1e-15) break;
    }
    return normalize(p);
  }

  const TriPoly& F_;
  const TriPoly& H_;
  const Tolerances& tol_;
  std::array<TriPoly, 3> dF_, dH_;
  std::array<TriPoly, 3> jac_det_;
  std::array<std::array<TriPoly, 3>, 3> d_jac_det_;
  std::array<double, 3> scale_det_{};
  double scale_F_ = 1.0, scale_H_ = 1.0;
};

// Candidates outside |u|,|v| <= 1 + slack belong to another chart.
constexpr double kChartSlack = 0.5;

}  // namespace

std::vector<ProjPoint> solve_curve_system(const TriPoly& F, const TriPoly& H, const Tolerances& tol,
                                          std::array<Var, 3> chart_order) {
  const IntersectionRefiner refiner(F, H, tol);
  std::vector<ProjPoint> found;
  int usable_charts = 0;
  for (Var chart : chart_order) {
    const int k = index_of(chart);
    const auto [u, v] = free_indices(k);
    const BiPoly fb = to_bivariate(F, chart, static_cast<Var>(v));
    const BiPoly hb = to_bivariate(H, chart, static_cast<Var>(v));
    if (fb.is_zero() || hb.is_zero()) continue;
    UniPoly resultant;
    try {
      resultant = resultant_eliminate(fb, hb);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::DegenerateLeading) continue;
      throw;
    }
    if (resultant.is_zero()) continue;
    ++usable_charts;
    if (resultant.degree() == 0) continue;

    const RootSet u_roots = roots_with_multiplicity(resultant, tol, {.coefficient_noise = 1e-12});
    for (const Root& ur : u_roots.roots) {
      if (std::abs(ur.value) > 1.0 + kChartSlack) continue;
      const UniPoly fv = fb.at_inner(ur.value).trimmed(1e-14);
      if (fv.degree() < 1) continue;
      // Every back-substituted root of F(u0, v) is polished; the residual
      // test in the refiner discards those that do not land on H = 0.
      for (const Root& vr : roots_with_multiplicity(fv, tol).roots) {
        if (std::abs(vr.value) > 1.0 + kChartSlack) continue;
        Vec3 p{};
        p[static_cast<std::size_t>(k)] = 1.0;
        p[static_cast<std::size_t>(u)] = ur.value;
        p[static_cast<std::size_t>(v)] = vr.value;
        if (auto q = refiner.refine(p)) found.push_back(*q);
      }
    }
  }
  if (usable_charts == 0)
    throw Error(ErrorKind::DegenerateSystem, "resultant vanishes identically on every chart");
  return dedupe_points(std::move(found), tol.point_eps);
}

double gradient_scale(const TriPoly& F, const ProjPoint& p) {
  double g = 0.0;
  for (int v = 0; v < 3; ++v) g = std::max(g, std::abs(partial(F, static_cast<Var>(v))(p.coords())));
  const double s = F.coeff_norm();
  return s > 0.0 ? g / s : 0.0;
}

bool smoothness_probe(const TriPoly& F, const std::vector<ProjPoint>& pts, const Tolerances& tol) {
  return std::all_of(pts.begin(), pts.end(),
                     [&](const ProjPoint& p) { return gradient_scale(F, p) > tol.zero_eps; });
}

}  // namespace qflex
