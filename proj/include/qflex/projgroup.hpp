#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qflex/flexlab.hpp"
#include "qflex/polycore.hpp"
#include "qflex/rootsolve.hpp"
#include "qflex/tolerances.hpp"

namespace qflex {

/// Projective linear map, stored with its largest-modulus entry scaled to 1
/// (near-ties resolved towards the smaller row-major index).
class ProjMap {
 public:
  /// Throws InvalidInput for a (numerically) singular matrix.
  explicit ProjMap(const Mat3& m);

  static ProjMap identity() { return ProjMap(identity_matrix()); }

  const Mat3& matrix() const { return m_; }
  ProjMap inverse() const;
  bool approx_equal(const ProjMap& other, double eps) const;
  bool is_identity(double eps) const { return approx_equal(identity(), eps); }

  /// Composition: (g * h) acts as g after h.
  friend ProjMap operator*(const ProjMap& g, const ProjMap& h) { return ProjMap(multiply(g.m_, h.m_)); }

 private:
  Mat3 m_;
};

ProjPoint act(const ProjMap& g, const ProjPoint& p);

class ProjGroup {
 public:
  ProjGroup(std::vector<ProjMap> elements, std::vector<std::size_t> generator_indices, double eps);

  const std::vector<ProjMap>& elements() const { return elements_; }
  const std::vector<std::size_t>& generator_indices() const { return generators_; }
  std::size_t order() const { return elements_.size(); }
  double eps() const { return eps_; }

  std::optional<std::size_t> find(const ProjMap& m) const;
  bool is_abelian() const;

  /// Order of each element, in element order.
  std::vector<int> element_orders() const;
  /// Element order -> number of elements of that order.
  std::map<int, int> order_histogram() const;

 private:
  std::vector<ProjMap> elements_;
  std::vector<std::size_t> generators_;
  double eps_;
};

/// Breadth-first closure modulo scalars; element 0 is the identity.
/// Throws CapExceeded if more than `cap` elements appear.
ProjGroup close_group(const std::vector<ProjMap>& generators, std::size_t cap = 256, double eps = 1e-6);

/// Distinct images of p, sorted canonically.
std::vector<ProjPoint> orbit(const ProjGroup& G, const ProjPoint& p);

/// Elements fixing p. Throws InvarianceViolation if |orbit| * |stabilizer|
/// differs from |G| (tolerance failure).
std::vector<ProjMap> stabilizer(const ProjGroup& G, const ProjPoint& p);

struct FixedPoint {
  ProjPoint point;
  int stabilizer_order = 1;
};

/// Throws NotInvariant unless F o g is proportional to F for every generator.
void check_invariant(const ProjGroup& G, const TriPoly& F, const Tolerances& tol);

/// Curve points with nontrivial stabilizer, from the eigenstructure of each
/// non-identity element: isolated eigenvectors on the curve, plus the
/// intersections of fixed lines with the curve. Sorted canonically.
std::vector<FixedPoint> fixed_locus(const ProjGroup& G, const TriPoly& F, const Tolerances& tol);

struct SignatureEntry {
  int orbit_size = 0;
  int count = 0;
  FlexKind kind = FlexKind::Ordinary;

  friend bool operator==(const SignatureEntry&, const SignatureEntry&) = default;
};

/// Multiset of orbit sizes per kind, written like "2_8 ordinary + 1_4 hyperflex".
class OrbitSignature {
 public:
  OrbitSignature() = default;
  /// Merges equal (size, kind) entries and sorts (ordinary first, then size).
  explicit OrbitSignature(std::vector<SignatureEntry> entries);

  const std::vector<SignatureEntry>& entries() const { return entries_; }

  /// Sum of orbit_size * count * weight(kind).
  int weighted_total() const;
  int point_count(FlexKind kind) const;
  std::string to_string() const;

  friend bool operator==(const OrbitSignature&, const OrbitSignature&) = default;

 private:
  std::vector<SignatureEntry> entries_;
};

struct OrbitPartition {
  OrbitSignature signature;
  /// labels[i] is the orbit id of records[i]; ids follow first appearance.
  std::vector<int> labels;
  int orbit_count = 0;
};

/// Throws InvarianceViolation if some element maps a flex to a non-flex or
/// changes its kind.
OrbitPartition orbit_partition(const ProjGroup& G, const std::vector<FlexRecord>& records, const Tolerances& tol);

}  // namespace qflex
