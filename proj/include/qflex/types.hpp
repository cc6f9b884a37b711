#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace qflex {

using Complex = std::complex<double>;

/// Homogeneous coordinates or line coefficients in the projective plane.
using Vec3 = std::array<Complex, 3>;

/// Row-major 3x3 complex matrix.
using Mat3 = std::array<Complex, 9>;

enum class Var { X = 0, Y = 1, Z = 2 };

inline constexpr int index_of(Var v) { return static_cast<int>(v); }

char var_name(Var v);

enum class ErrorKind {
  InvalidInput,
  InvalidTolerances,
  BothZero,
  DegenerateLeading,
  NoConvergence,
  DegenerateSystem,
  SingularPoint,
  DegenerateLine,
  WeightSumMismatch,
  CapExceeded,
  NotInvariant,
  InvarianceViolation,
  DegenerateParams,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` lets
/// callers (and the CLI exit-code mapping) distinguish them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

Complex dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm2(const Vec3& v);
double max_abs(const Vec3& v);
Vec3 apply(const Mat3& m, const Vec3& v);
Mat3 multiply(const Mat3& a, const Mat3& b);
Complex determinant(const Mat3& m);
Mat3 identity_matrix();

}  // namespace qflex
