#pragma once

#include <array>
#include <vector>

#include "qflex/polycore.hpp"
#include "qflex/tolerances.hpp"

namespace qflex {

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Roots of a univariate polynomial, multiple roots merged.
/// Multiplicities sum to the degree; distinct values are farther apart
/// than the cluster radius used to build the set.
struct RootSet {
  std::vector<Root> roots;

  int total_multiplicity() const;
};

struct RootOptions {
  /// Absolute coefficient noise, relative to the largest coefficient
  /// modulus (e.g. interpolation error of a computed resultant).
  double coefficient_noise = 0.0;
  int max_sweeps = 200;
};

/// Aberth-Ehrlich simultaneous iteration followed by cluster detection.
/// A cluster of m approximations is accepted as an m-fold root when the
/// Taylor coefficients of f below order m vanish at the polished centre
/// (to within the rounding/noise bound) and the order-m coefficient does
/// not. Throws NoConvergence when the iteration cap is hit.
RootSet roots_with_multiplicity(const UniPoly& f, const Tolerances& tol,
                                const RootOptions& options = {});

/// Point of the complex projective plane in canonical form: the coordinate
/// of largest modulus is 1 (near-ties resolved towards the smaller index).
class ProjPoint {
 public:
  /// Throws Error(InvalidInput) on the zero vector.
  explicit ProjPoint(const Vec3& coords);
  ProjPoint(Complex x, Complex y, Complex z) : ProjPoint(Vec3{x, y, z}) {}

  const Vec3& coords() const { return coords_; }
  Complex operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  /// Index of the coordinate normalised to 1.
  int home() const { return home_; }

  /// The affine representative with z = 1; requires z != 0.
  std::array<Complex, 2> affine_z() const;

 private:
  Vec3 coords_;
  int home_ = 0;
};

/// Projective distance: sine of the Hermitian angle between representatives.
double distance(const ProjPoint& p, const ProjPoint& q);

bool approx_equal(const ProjPoint& p, const ProjPoint& q, double eps);

/// Lexicographic order on canonical coordinates (real, then imaginary part).
bool canonical_less(const ProjPoint& p, const ProjPoint& q);

/// Sorts canonically and drops points within eps of an earlier one.
std::vector<ProjPoint> dedupe_points(std::vector<ProjPoint> pts, double eps);

/// Every solution of F = H = 0 in the projective plane, each reported once.
///
/// Each affine chart (fixing one coordinate to 1) eliminates one variable
/// by a resultant, back-substitutes its roots, and polishes candidates with
/// Newton's method; tangential intersections are polished on the deflated
/// system {F, H, det J}. Only candidates whose home chart is the current
/// chart are kept, so points at infinity surface in the x=1 / y=1 charts.
/// Throws DegenerateSystem if every chart's resultant vanishes identically.
std::vector<ProjPoint> solve_curve_system(const TriPoly& F, const TriPoly& H, const Tolerances& tol,
                                          std::array<Var, 3> chart_order = {Var::Z, Var::Y,
                                                                            Var::X});

/// True iff grad F is nonzero (relative to the coefficient norm) at every
/// point.
bool smoothness_probe(const TriPoly& F, const std::vector<ProjPoint>& pts, const Tolerances& tol);

/// Canonical gradient magnitude used by smoothness_probe.
double gradient_scale(const TriPoly& F, const ProjPoint& p);

}  // namespace qflex
