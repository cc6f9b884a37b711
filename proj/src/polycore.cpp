#include "qflex/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qflex {

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(std::vector<Complex> coeffs, double rel_eps) : coeffs_(std::move(coeffs)) {
  double cutoff = 0.0;
  if (rel_eps > 0.0) cutoff = rel_eps * max_abs();
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= cutoff) coeffs_.pop_back();
}

UniPoly UniPoly::monomial(int power, Complex c) {
  std::vector<Complex> v(static_cast<std::size_t>(power) + 1, Complex{});
  v.back() = c;
  return UniPoly(std::move(v));
}

Complex UniPoly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return {};
  return coeffs_[static_cast<std::size_t>(k)];
}

double UniPoly::max_abs() const {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex UniPoly::operator()(Complex x) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UniPoly UniPoly::derivative(int order) const {
  std::vector<Complex> c = coeffs_;
  for (int r = 0; r < order && !c.empty(); ++r) {
    std::vector<Complex> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    c = std::move(d);
  }
  return UniPoly(std::move(c));
}

std::vector<Complex> UniPoly::taylor(Complex c) const {
  std::vector<Complex> t = coeffs_;
  const std::size_t n = t.size();
  // Repeated synthetic division by (x - c).
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j > k; --j) t[j - 1] += c * t[j];
  return t;
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + Complex(-1.0) * b; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return UniPoly(std::move(c));
}

UniPoly operator*(Complex s, const UniPoly& a) {
  std::vector<Complex> c = a.coeffs_;
  for (auto& x : c) x *= s;
  return UniPoly(std::move(c));
}

// ---------------------------------------------------------------------------
// TriPoly

TriPoly::TriPoly(int degree, std::map<Exponent, Complex> terms, double prune_eps)
    : degree_(degree), terms_(std::move(terms)) {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  const double cutoff = prune_eps * m;
  std::erase_if(terms_, [&](const auto& kv) {
    return kv.second == Complex{} || std::abs(kv.second) <= cutoff;
  });
}

TriPoly TriPoly::variable(Var v) {
  Exponent e{0, 0, 0};
  e[static_cast<std::size_t>(index_of(v))] = 1;
  return TriPoly(1, {{e, 1.0}});
}

Complex TriPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Complex{} : it->second;
}

double TriPoly::coeff_norm() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += std::abs(c);
  return s;
}

Complex TriPoly::operator()(const Vec3& pt) const {
  // Small powers table; quartics and sextics only need a handful.
  std::array<std::vector<Complex>, 3> pw;
  for (std::size_t v = 0; v < 3; ++v) {
    pw[v].resize(static_cast<std::size_t>(degree_) + 1);
    pw[v][0] = 1.0;
    for (int k = 1; k <= degree_; ++k) pw[v][static_cast<std::size_t>(k)] = pw[v][k - 1] * pt[v];
  }
  Complex acc{};
  for (const auto& [e, c] : terms_)
    acc += c * pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])] *
           pw[2][static_cast<std::size_t>(e[2])];
  return acc;
}

TriPoly operator+(const TriPoly& a, const TriPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree_ != b.degree_)
    throw Error(ErrorKind::InvalidInput, "adding homogeneous polynomials of different degree");
  auto terms = a.terms_;
  for (const auto& [e, c] : b.terms_) terms[e] += c;
  return TriPoly(a.degree_, std::move(terms));
}

TriPoly operator-(const TriPoly& a, const TriPoly& b) { return a + Complex(-1.0) * b; }

TriPoly operator*(const TriPoly& a, const TriPoly& b) {
  std::map<Exponent, Complex> terms;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      terms[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
  return TriPoly(a.degree_ + b.degree_, std::move(terms));
}

TriPoly operator*(Complex s, const TriPoly& a) {
  auto terms = a.terms_;
  for (auto& [e, c] : terms) c *= s;
  return TriPoly(a.degree_, std::move(terms));
}

// ---------------------------------------------------------------------------
// BiPoly

bool BiPoly::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const UniPoly& p) { return p.is_zero(); });
}

UniPoly BiPoly::at_inner(Complex u) const {
  std::vector<Complex> c;
  c.reserve(coeffs.size());
  for (const auto& p : coeffs) c.push_back(p(u));
  return UniPoly(std::move(c));
}

BiPoly BiPoly::transposed() const {
  int inner_deg = -1;
  for (const auto& p : coeffs) inner_deg = std::max(inner_deg, p.degree());
  BiPoly out;
  for (int j = 0; j <= inner_deg; ++j) {
    std::vector<Complex> c;
    for (const auto& p : coeffs) c.push_back(p.coeff(j));
    out.coeffs.emplace_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free operations

Complex eval_tri(const TriPoly& p, const Vec3& pt) { return p(pt); }

TriPoly partial(const TriPoly& p, Var var) {
  const auto v = static_cast<std::size_t>(index_of(var));
  std::map<Exponent, Complex> terms;
  for (const auto& [e, c] : p.terms()) {
    if (e[v] == 0) continue;
    Exponent d = e;
    d[v] -= 1;
    terms[d] += static_cast<double>(e[v]) * c;
  }
  return TriPoly(std::max(p.degree() - 1, 0), std::move(terms));
}

namespace {

Vec3 substitution(Var chart, Var free, Complex fixed) {
  Vec3 pt{fixed, fixed, fixed};
  pt[static_cast<std::size_t>(index_of(chart))] = 1.0;
  pt[static_cast<std::size_t>(index_of(free))] = 0.0;
  return pt;
}

}  // namespace

UniPoly restrict_chart(const TriPoly& p, Var chart, Var free, Complex fixed) {
  if (chart == free)
    throw Error(ErrorKind::InvalidInput, "chart and free variable must be distinct");
  Vec3 base = substitution(chart, free, fixed);
  Vec3 dir{0.0, 0.0, 0.0};
  dir[static_cast<std::size_t>(index_of(free))] = 1.0;
  return restrict_line(p, base, dir);
}

UniPoly restrict_diagonal(const TriPoly& p) { return restrict_line(p, {0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}); }

UniPoly restrict_line(const TriPoly& p, const Vec3& base, const Vec3& dir) {
  const int d = p.degree();
  std::array<std::vector<UniPoly>, 3> pw;
  for (std::size_t v = 0; v < 3; ++v) {
    const UniPoly lin({base[v], dir[v]});
    pw[v].push_back(UniPoly::constant(1.0));
    for (int k = 1; k <= d; ++k) pw[v].push_back(pw[v].back() * lin);
  }
  std::vector<Complex> acc(static_cast<std::size_t>(d) + 1);
  for (const auto& [e, c] : p.terms()) {
    const UniPoly m = pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])] *
                      pw[2][static_cast<std::size_t>(e[2])];
    for (int k = 0; k <= m.degree(); ++k) acc[static_cast<std::size_t>(k)] += c * m.coeff(k);
  }
  return UniPoly(std::move(acc));
}

TriPoly compose_linear(const TriPoly& p, const Mat3& m) {
  const int d = p.degree();
  std::array<std::vector<TriPoly>, 3> pw;
  for (std::size_t r = 0; r < 3; ++r) {
    const TriPoly lin(1, {{{1, 0, 0}, m[3 * r]}, {{0, 1, 0}, m[3 * r + 1]}, {{0, 0, 1}, m[3 * r + 2]}});
    pw[r].push_back(TriPoly(0, {{{0, 0, 0}, 1.0}}));
    for (int k = 1; k <= d; ++k) pw[r].push_back(pw[r].back() * lin);
  }
  std::map<Exponent, Complex> acc;
  for (const auto& [e, c] : p.terms()) {
    const TriPoly t = pw[0][static_cast<std::size_t>(e[0])] * pw[1][static_cast<std::size_t>(e[1])] *
                      pw[2][static_cast<std::size_t>(e[2])];
    for (const auto& [et, ct] : t.terms()) acc[et] += c * ct;
  }
  return TriPoly(d, std::move(acc));
}

BiPoly to_bivariate(const TriPoly& p, Var chart, Var outer) {
  if (chart == outer)
    throw Error(ErrorKind::InvalidInput, "chart and outer variable must be distinct");
  const auto o = static_cast<std::size_t>(index_of(outer));
  const auto in = static_cast<std::size_t>(3 - index_of(outer) - index_of(chart));
  const int d = p.degree();
  std::vector<std::vector<Complex>> raw(static_cast<std::size_t>(d) + 1,
                                        std::vector<Complex>(static_cast<std::size_t>(d) + 1));
  for (const auto& [e, c] : p.terms())
    raw[static_cast<std::size_t>(e[o])][static_cast<std::size_t>(e[in])] += c;
  BiPoly out;
  for (auto& r : raw) out.coeffs.emplace_back(std::move(r));
  while (!out.coeffs.empty() && out.coeffs.back().is_zero()) out.coeffs.pop_back();
  return out;
}

namespace {

// LU with partial pivoting on a dense row-major n x n matrix.
Complex dense_determinant(std::vector<Complex> a, std::size_t n) {
  Complex det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (a[piv * n + col] == Complex{}) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      det = -det;
    }
    const Complex p = a[col * n + col];
    det *= p;
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex f = a[r * n + col] / p;
      if (f == Complex{}) continue;
      for (std::size_t c = col + 1; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return det;
}

std::vector<Complex> sylvester_matrix(std::span<const Complex> f, std::span<const Complex> g,
                                      double* hadamard) {
  const std::size_t m = f.size() - 1;
  const std::size_t n = g.size() - 1;
  const std::size_t size = m + n;
  std::vector<Complex> a(size * size);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= m; ++j) a[i * size + i + j] = f[m - j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= n; ++j) a[(n + i) * size + i + j] = g[n - j];
  if (hadamard) {
    double nf = 0.0, ng = 0.0;
    for (const auto& c : f) nf += std::norm(c);
    for (const auto& c : g) ng += std::norm(c);
    *hadamard = std::pow(std::sqrt(nf), static_cast<double>(n)) *
                std::pow(std::sqrt(ng), static_cast<double>(m));
  }
  return a;
}

}  // namespace

Complex sylvester_determinant(std::span<const Complex> f, std::span<const Complex> g) {
  if (f.empty() || g.empty()) return 0.0;
  const std::size_t size = f.size() + g.size() - 2;
  if (size == 0) return 1.0;
  return dense_determinant(sylvester_matrix(f, g, nullptr), size);
}

Complex sylvester_resultant(const UniPoly& f, const UniPoly& g) {
  if (f.is_zero() && g.is_zero()) throw Error(ErrorKind::BothZero, "resultant of two zero polynomials");
  if (f.is_zero()) return g.degree() == 0 ? Complex(1.0) : Complex{};
  if (g.is_zero()) return f.degree() == 0 ? Complex(1.0) : Complex{};
  return sylvester_determinant(f.coeffs(), g.coeffs());
}

// Samples must exceed the estimated rounding level by this factor.
constexpr double kResultantNoiseFactor = 16.0;

UniPoly resultant_eliminate(const BiPoly& f_in, const BiPoly& g_in, Eliminate eliminate, double* noise) {
  if (noise) *noise = 0.0;
  if (f_in.is_zero() && g_in.is_zero())
    throw Error(ErrorKind::BothZero, "resultant of two zero polynomials");
  const BiPoly f = eliminate == Eliminate::Outer ? f_in : f_in.transposed();
  const BiPoly g = eliminate == Eliminate::Outer ? g_in : g_in.transposed();
  if (f.is_zero() || g.is_zero()) return {};
  if (f.coeffs.back().is_zero() || g.coeffs.back().is_zero())
    throw Error(ErrorKind::DegenerateLeading,
                "leading coefficient in the eliminated variable is identically zero");

  const int m = f.outer_degree();
  const int n = g.outer_degree();
  int inner_f = 0, inner_g = 0, total_f = 0, total_g = 0;
  for (int k = 0; k <= m; ++k) {
    inner_f = std::max(inner_f, f.coeffs[static_cast<std::size_t>(k)].degree());
    total_f = std::max(total_f, f.coeffs[static_cast<std::size_t>(k)].degree() + k);
  }
  for (int k = 0; k <= n; ++k) {
    inner_g = std::max(inner_g, g.coeffs[static_cast<std::size_t>(k)].degree());
    total_g = std::max(total_g, g.coeffs[static_cast<std::size_t>(k)].degree() + k);
  }
  const int bound = std::min(n * inner_f + m * inner_g, total_f * total_g);

  // Evaluate at the (bound+1)-th roots of unity and interpolate; the degree
  // bound rules out aliasing and the unit circle matches the chart region
  // the solver cares about.
  const auto samples = static_cast<std::size_t>(bound) + 1;
  std::vector<Complex> values(samples);
  std::vector<Complex> nodes(samples);
  double scale = 0.0;
  double peak = 0.0;
  double spread = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    nodes[k] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(samples));
    std::vector<Complex> fa(static_cast<std::size_t>(m) + 1), ga(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= m; ++j) fa[static_cast<std::size_t>(j)] = f.coeffs[static_cast<std::size_t>(j)](nodes[k]);
    for (int j = 0; j <= n; ++j) ga[static_cast<std::size_t>(j)] = g.coeffs[static_cast<std::size_t>(j)](nodes[k]);
    double hadamard = 0.0;
    const std::size_t size = static_cast<std::size_t>(m + n);
    if (size == 0) {
      values[k] = 1.0;
      scale = 1.0;
    } else {
      // Eliminating the transpose rounds differently; the discrepancy
      // estimates the rounding error of this sample.
      std::vector<Complex> a = sylvester_matrix(fa, ga, &hadamard);
      std::vector<Complex> at(a.size());
      for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) at[c * size + r] = a[r * size + c];
      values[k] = dense_determinant(std::move(a), size);
      spread = std::max(spread, std::abs(values[k] - dense_determinant(std::move(at), size)));
      scale = std::max(scale, hadamard);
    }
    peak = std::max(peak, std::abs(values[k]));
  }
  // Identically zero when no sample rises clearly above the rounding level.
  const double rounding = std::max(spread, 1e-19 * scale);
  if (peak <= kResultantNoiseFactor * rounding) return {};

  std::vector<Complex> coeffs(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    Complex acc{};
    for (std::size_t k = 0; k < samples; ++k)
      acc += values[k] * std::conj(nodes[(k * j) % samples]);
    coeffs[j] = acc / static_cast<double>(samples);
  }
  UniPoly out(std::move(coeffs), 1e-12);
  if (noise && !out.is_zero()) *noise = rounding / out.max_abs();
  return out;
}

}  // namespace qflex
