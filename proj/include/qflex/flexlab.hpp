#pragma once

#include <vector>

#include "qflex/polycore.hpp"
#include "qflex/rootsolve.hpp"
#include "qflex/tolerances.hpp"

namespace qflex {

enum class FlexKind { Ordinary, Hyperflex };

const char* to_string(FlexKind kind);

/// Weierstrass gap sequence attached to each kind: {1,2,4} or {1,2,5}.
std::array<int, 3> gap_sequence(FlexKind kind);

/// Line coefficients (l0, l1, l2) of l0 x + l1 y + l2 z = 0, canonicalized
/// the same way as points.
using ProjLine = ProjPoint;

struct FlexRecord {
  ProjPoint point;
  ProjLine tangent;
  int contact_order = 3;
  int weight = 1;
  FlexKind kind = FlexKind::Ordinary;
};

/// Determinant of the matrix of second partials; degree 3(d-2).
/// Throws InvalidInput for d < 2.
TriPoly hessian(const TriPoly& F);

/// Gradient of F at p. Throws SingularPoint if it vanishes.
ProjLine tangent_line(const TriPoly& F, const ProjPoint& p, const Tolerances& tol);

/// Multiplicity of t = 0 in F(p + t w) for w a direction in `line`
/// independent of p. Throws DegenerateLine if the restriction vanishes.
int contact_order(const TriPoly& F, const ProjLine& line, const ProjPoint& p, const Tolerances& tol);

/// Same, with the caller choosing the direction (must satisfy line . dir = 0).
int contact_order_along(const TriPoly& F, const ProjPoint& p, const Vec3& dir, const Tolerances& tol);

/// Every flex of a smooth quartic, sorted canonically.
/// Throws WeightSumMismatch when the weights do not sum to 24 or a contact
/// order falls outside {3, 4}; SingularPoint if the curve is singular at a
/// solution.
std::vector<FlexRecord> classify_flexes(const TriPoly& F, const Tolerances& tol);

int weight_sum(const std::vector<FlexRecord>& records);

}  // namespace qflex
