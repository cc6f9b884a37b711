#pragma once

#include <initializer_list>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qflex/types.hpp"

namespace qflex {

/// Dense univariate polynomial with complex coefficients in ascending order.
///
/// The leading coefficient is nonzero, or the coefficient list is empty for
/// the zero polynomial.
class UniPoly {
 public:
  UniPoly() = default;

  /// Drops trailing coefficients whose modulus is at most rel_eps times the
  /// largest coefficient modulus (rel_eps = 0 drops exact zeros only).
  explicit UniPoly(std::vector<Complex> coeffs, double rel_eps = 0.0);
  UniPoly(std::initializer_list<Complex> coeffs) : UniPoly(std::vector<Complex>(coeffs)) {}

  static UniPoly constant(Complex c) { return UniPoly(std::vector<Complex>{c}); }
  static UniPoly monomial(int power, Complex c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  Complex coeff(int k) const;
  Complex leading() const { return coeffs_.empty() ? Complex{} : coeffs_.back(); }
  double max_abs() const;

  Complex operator()(Complex x) const;
  UniPoly derivative(int order = 1) const;

  /// Taylor coefficients at c: f(c + t) = sum_k taylor[k] t^k.
  std::vector<Complex> taylor(Complex c) const;

  UniPoly trimmed(double rel_eps) const { return UniPoly(coeffs_, rel_eps); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(Complex s, const UniPoly& a);

 private:
  std::vector<Complex> coeffs_;
};

/// Exponent triple (i, j, k) of the monomial x^i y^j z^k.
using Exponent = std::array<int, 3>;

/// Homogeneous trivariate polynomial of fixed degree; every stored term
/// satisfies i + j + k == degree().
class TriPoly {
 public:
  /// Relative threshold applied when pruning coefficients at construction.
  static constexpr double kPruneEps = 1e-13;

  explicit TriPoly(int degree = 0) : degree_(degree) {}
  TriPoly(int degree, std::map<Exponent, Complex> terms, double prune_eps = kPruneEps);
  TriPoly(int degree, std::initializer_list<std::pair<const Exponent, Complex>> terms)
      : TriPoly(degree, std::map<Exponent, Complex>(terms)) {}

  /// x, y or z as a degree-1 polynomial.
  static TriPoly variable(Var v);

  int degree() const { return degree_; }
  const std::map<Exponent, Complex>& terms() const { return terms_; }
  Complex coeff(const Exponent& e) const;
  bool is_zero() const { return terms_.empty(); }

  /// Sum of coefficient moduli; bounds |p(q)| for max|q_i| <= 1.
  double coeff_norm() const;

  Complex operator()(const Vec3& pt) const;

  friend TriPoly operator+(const TriPoly& a, const TriPoly& b);
  friend TriPoly operator-(const TriPoly& a, const TriPoly& b);
  friend TriPoly operator*(const TriPoly& a, const TriPoly& b);
  friend TriPoly operator*(Complex s, const TriPoly& a);

 private:
  int degree_ = 0;
  std::map<Exponent, Complex> terms_;
};

/// Bivariate polynomial viewed as a polynomial in an outer variable whose
/// coefficients are univariate polynomials in an inner variable:
/// p(u, v) = sum_k coeffs[k](u) v^k.
struct BiPoly {
  std::vector<UniPoly> coeffs;

  int outer_degree() const { return static_cast<int>(coeffs.size()) - 1; }
  bool is_zero() const;
  /// Specialize the inner variable, leaving a polynomial in the outer one.
  UniPoly at_inner(Complex u) const;
  /// Swap the roles of the inner and outer variables.
  BiPoly transposed() const;
};

Complex eval_tri(const TriPoly& p, const Vec3& pt);

/// Formal partial derivative; the zero polynomial of degree d-1 when d == 0
/// or the variable does not occur.
TriPoly partial(const TriPoly& p, Var var);

/// Sets `chart` to 1 and the remaining variable (neither chart nor free) to
/// `fixed`, leaving a polynomial in `free`.
UniPoly restrict_chart(const TriPoly& p, Var chart, Var free, Complex fixed);

/// p(x, x, 1).
UniPoly restrict_diagonal(const TriPoly& p);

/// t -> p(base + t * dir).
UniPoly restrict_line(const TriPoly& p, const Vec3& base, const Vec3& dir);

/// q -> p(m q), i.e. substitute each variable by the matching row of m.
TriPoly compose_linear(const TriPoly& p, const Mat3& m);

/// Sets `chart` to 1; the result is a polynomial in `outer` whose
/// coefficients are polynomials in the remaining variable.
BiPoly to_bivariate(const TriPoly& p, Var chart, Var outer);

/// Determinant of the Sylvester matrix of f and g at their actual degrees.
/// A constant argument gives c^deg(other). Throws BothZero if f = g = 0.
Complex sylvester_resultant(const UniPoly& f, const UniPoly& g);

/// Determinant of the Sylvester matrix built from coefficient lists taken at
/// face value (formal degrees size()-1, leading entries may vanish).
Complex sylvester_determinant(std::span<const Complex> f, std::span<const Complex> g);

enum class Eliminate { Outer, Inner };

/// Resultant of two bivariate polynomials with respect to the chosen
/// variable, returned as a polynomial in the surviving one.
///
/// Throws BothZero when both inputs vanish and DegenerateLeading when the
/// leading coefficient in the eliminated variable is identically zero.
/// When `noise` is given it receives the estimated rounding error of the
/// result relative to its largest coefficient.
UniPoly resultant_eliminate(const BiPoly& f, const BiPoly& g,
                            Eliminate eliminate = Eliminate::Outer, double* noise = nullptr);

}  // namespace qflex
