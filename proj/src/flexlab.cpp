#include "qflex/flexlab.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace qflex {

const char* to_string(FlexKind kind) { return kind == FlexKind::Ordinary ? "ordinary" : "hyperflex"; }

std::array<int, 3> gap_sequence(FlexKind kind) {
  return kind == FlexKind::Ordinary ? std::array<int, 3>{1, 2, 4} : std::array<int, 3>{1, 2, 5};
}

TriPoly hessian(const TriPoly& F) {
  if (F.degree() < 2) throw Error(ErrorKind::InvalidInput, "Hessian needs degree at least 2");
  std::array<TriPoly, 3> first;
  for (int i = 0; i < 3; ++i) first[static_cast<std::size_t>(i)] = partial(F, static_cast<Var>(i));
  std::array<TriPoly, 9> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m[static_cast<std::size_t>(3 * i + j)] = partial(first[static_cast<std::size_t>(i)], static_cast<Var>(j));
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

ProjLine tangent_line(const TriPoly& F, const ProjPoint& p, const Tolerances& tol) {
  Vec3 g;
  for (int i = 0; i < 3; ++i) g[static_cast<std::size_t>(i)] = partial(F, static_cast<Var>(i))(p.coords());
  if (max_abs(g) <= tol.zero_eps * F.coeff_norm())
    throw Error(ErrorKind::SingularPoint, "gradient vanishes at the point");
  return ProjLine(g);
}

int contact_order_along(const TriPoly& F, const ProjPoint& p, const Vec3& dir, const Tolerances& tol) {
  const UniPoly g = restrict_line(F, p.coords(), dir);
  const double top = g.max_abs();
  if (g.is_zero() || top == 0.0) throw Error(ErrorKind::DegenerateLine, "curve contains the line");
  for (int k = 0; k <= g.degree(); ++k)
    if (std::abs(g.coeff(k)) > tol.zero_eps * top) return k;
  return g.degree();
}

namespace {

// Basis directions of the line: w_j = e_j - (l_j / l_k) e_k with k the
// dominant coefficient. Returns the j whose w_j is farthest from p.
int pick_direction(const Vec3& l, int k, const Vec3& p) {
  int best = -1;
  double best_sep = -1.0;
  for (int j = 0; j < 3; ++j) {
    if (j == k) continue;
    Vec3 w{};
    w[static_cast<std::size_t>(j)] = 1.0;
    w[static_cast<std::size_t>(k)] = -l[static_cast<std::size_t>(j)] / l[static_cast<std::size_t>(k)];
    const double sep = norm2(cross(p, w)) / (norm2(p) * norm2(w));
    if (sep > best_sep) {
      best_sep = sep;
      best = j;
    }
  }
  return best;
}

Vec3 direction(const Vec3& l, int k, int j) {
  Vec3 w{};
  w[static_cast<std::size_t>(j)] = 1.0;
  w[static_cast<std::size_t>(k)] = -l[static_cast<std::size_t>(j)] / l[static_cast<std::size_t>(k)];
  const double s = max_abs(w);
  for (auto& c : w) c /= s;
  return w;
}

// Polishes a suspected hyperflex on {F, c2, c3}, the Taylor coefficients of
// F along a fixed-rule tangent direction. This system stays regular when
// the Hessian meets the curve with multiplicity, where Newton on {F, H}
// stalls. Jacobian by central differences.
class HyperflexPolisher {
 public:
  explicit HyperflexPolisher(const TriPoly& F) : F_(F), scale_(F.coeff_norm()) {
    for (int i = 0; i < 3; ++i) grad_[static_cast<std::size_t>(i)] = partial(F, static_cast<Var>(i));
  }

  std::optional<ProjPoint> polish(const ProjPoint& start) const {
    Vec3 p = start.coords();
    const int home = start.home();
    const Vec3 l0 = gradient(p);
    const int k = ProjLine(l0).home();
    const int j = pick_direction(l0, k, p);
    const auto [a, b] = free_pair(home);
    for (int it = 0; it < 40; ++it) {
      const std::array<Complex, 3> r = residual(p, k, j);
      std::array<std::array<Complex, 2>, 3> J{};
      const double h = 1e-6;
      for (int c = 0; c < 2; ++c) {
        const auto idx = static_cast<std::size_t>(c == 0 ? a : b);
        Vec3 plus = p, minus = p;
        plus[idx] += h;
        minus[idx] -= h;
        const auto rp = residual(plus, k, j);
        const auto rm = residual(minus, k, j);
        for (std::size_t row = 0; row < 3; ++row)
          J[row][static_cast<std::size_t>(c)] = (rp[row] - rm[row]) / (2.0 * h);
      }
      Complex a00{}, a01{}, a11{}, b0{}, b1{};
      for (std::size_t row = 0; row < 3; ++row) {
        a00 += std::conj(J[row][0]) * J[row][0];
        a01 += std::conj(J[row][0]) * J[row][1];
        a11 += std::conj(J[row][1]) * J[row][1];
        b0 -= std::conj(J[row][0]) * r[row];
        b1 -= std::conj(J[row][1]) * r[row];
      }
      const Complex det = a00 * a11 - a01 * std::conj(a01);
      if (std::abs(det) == 0.0) return std::nullopt;
      const Complex da = (b0 * a11 - a01 * b1) / det;
      const Complex db = (a00 * b1 - std::conj(a01) * b0) / det;
      if (!std::isfinite(std::abs(da)) || !std::isfinite(std::abs(db))) return std::nullopt;
      p[static_cast<std::size_t>(a)] += da;
      p[static_cast<std::size_t>(b)] += db;
      if (std::max(std::abs(da), std::abs(db)) <= 1e-15) break;
    }
    const auto r = residual(p, k, j);
    if (std::max({std::abs(r[0]), std::abs(r[1]), std::abs(r[2])}) > 1e-12) return std::nullopt;
    return ProjPoint(p);
  }

 private:
  static std::array<int, 2> free_pair(int home) {
    if (home == 0) return {1, 2};
    if (home == 1) return {0, 2};
    return {0, 1};
  }

  Vec3 gradient(const Vec3& p) const {
    return {grad_[0](p), grad_[1](p), grad_[2](p)};
  }

  std::array<Complex, 3> residual(const Vec3& p, int k, int j) const {
    const Vec3 w = direction(gradient(p), k, j);
    const UniPoly g = restrict_line(F_, p, w);
    const double top = std::max(g.max_abs(), 1e-300);
    return {F_(p) / scale_, g.coeff(2) / top, g.coeff(3) / top};
  }

  const TriPoly& F_;
  double scale_;
  std::array<TriPoly, 3> grad_;
};

}  // namespace

int contact_order(const TriPoly& F, const ProjLine& line, const ProjPoint& p, const Tolerances& tol) {
  const int k = line.home();
  const int j = pick_direction(line.coords(), k, p.coords());
  return contact_order_along(F, p, direction(line.coords(), k, j), tol);
}

int weight_sum(const std::vector<FlexRecord>& records) {
  int s = 0;
  for (const auto& r : records) s += r.weight;
  return s;
}

std::vector<FlexRecord> classify_flexes(const TriPoly& F, const Tolerances& tol) {
  tol.validate();
  const TriPoly H = hessian(F);
  const std::vector<ProjPoint> pts = solve_curve_system(F, H, tol);
  if (!smoothness_probe(F, pts, tol))
    throw Error(ErrorKind::SingularPoint, "curve is singular at a Hessian intersection");
  const HyperflexPolisher polisher(F);
  std::vector<FlexRecord> out;
  out.reserve(pts.size());
  for (const auto& found : pts) {
    ProjPoint p = found;
    FlexRecord r{p, tangent_line(F, p, tol)};
    r.contact_order = contact_order(F, r.tangent, p, tol);
    if (r.contact_order == 3) {
      const int k = r.tangent.home();
      const UniPoly g = restrict_line(F, p.coords(), direction(r.tangent.coords(), k,
                                                                pick_direction(r.tangent.coords(), k, p.coords())));
      if (std::abs(g.coeff(3)) < 1e-4 * g.max_abs()) {
        if (auto q = polisher.polish(p); q && distance(*q, p) < 1e-4) {
          p = *q;
          r = FlexRecord{p, tangent_line(F, p, tol)};
          r.contact_order = contact_order(F, r.tangent, p, tol);
        }
      }
    }
    if (r.contact_order < 3 || r.contact_order > 4)
      throw Error(ErrorKind::WeightSumMismatch,
                  "contact order " + std::to_string(r.contact_order) + " at a Hessian point of a quartic");
    r.weight = r.contact_order - 2;
    r.kind = r.weight == 1 ? FlexKind::Ordinary : FlexKind::Hyperflex;
    out.push_back(r);
  }
  const int total = weight_sum(out);
  if (F.degree() == 4 && total != 24)
    throw Error(ErrorKind::WeightSumMismatch, "flex weights sum to " + std::to_string(total) + ", expected 24");
  return out;
}

}  // namespace qflex
