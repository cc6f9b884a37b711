#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qflex/flexlab.hpp"
#include "qflex/projgroup.hpp"

namespace qflex {

/// Parameters of x^4 + y^4 + z^4 + a x^2 y^2 + b (x^2 + y^2) z^2.
class FamilyParams {
 public:
  /// Throws DegenerateParams naming the vanishing factor of
  /// (a^2-4)(b^2-4)(a^2-1)(b^2-a-2).
  FamilyParams(Complex a, Complex b, double zero_eps = Tolerances{}.zero_eps);

  Complex a() const { return a_; }
  Complex b() const { return b_; }

 private:
  Complex a_, b_;
};

/// The first vanishing nondegeneracy factor, e.g. "a^2-4", or nullopt.
std::optional<std::string> degenerate_factor(Complex a, Complex b, double zero_eps);

TriPoly build_curve(const FamilyParams& params);

Complex condition_P(Complex a, Complex b);
Complex condition_Q(Complex a, Complex b);
/// The variant with 3a^2 in place of 3ab^2.
Complex condition_Q_alt(Complex a, Complex b);

inline Complex condition_P(const FamilyParams& p) { return condition_P(p.a(), p.b()); }
inline Complex condition_Q(const FamilyParams& p) { return condition_Q(p.a(), p.b()); }

bool in_gamma(const FamilyParams& params, const Tolerances& tol);

struct Outcome {
  int ordinary = 0;
  int hyperflex = 0;
  OrbitSignature signature;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// The admissible outcomes of one classification-table row.
struct PredictedRow {
  std::vector<Outcome> alternatives;
  std::string source;

  std::vector<int> ordinary_counts() const;
  std::vector<int> hyperflex_counts() const;
};

PredictedRow predicted_classification(const FamilyParams& params, const Tolerances& tol);

/// {sigma, tau, rho} (b = 0) or {sigma1, tau1} (b != 0).
std::vector<ProjMap> standard_generators(bool b_is_zero);

enum class Verdict { Confirmed, Refuted, Degenerate };

const char* to_string(Verdict v);

struct VerdictRecord {
  Complex a, b;
  PredictedRow predicted;
  std::vector<FlexRecord> flexes;
  std::vector<int> orbit_labels;
  Outcome computed;
  std::size_t group_order = 0;
  Verdict verdict = Verdict::Refuted;
  /// Index into predicted.alternatives of the realized outcome.
  std::optional<std::size_t> realized;
  bool near_boundary = false;
  std::vector<std::string> warnings;
};

/// Classifies the curve, partitions flexes into orbits of the standard group
/// and compares with the table row. Inside the near-boundary band
/// (zero_eps < |P| or |Q| < 1e3 zero_eps) a mismatch or a numerical failure
/// yields Degenerate instead of Refuted or an exception.
VerdictRecord verify_family_instance(const FamilyParams& params, const Tolerances& tol);

struct HyperflexSeed {
  Complex a;
  ProjPoint seed;
  std::string branch;
};

/// The four values of a (for fixed b != 0) at which a point with nontrivial
/// stabilizer becomes a hyperflex, paired with that point:
/// a = (b^2 -+ b sqrt(b^2-4)) / 2 with [beta:0:1], [1/beta:0:1], and
/// a = (12 - 3b^2 -+ b sqrt(9b^2-32)) / 2 with [alpha1:alpha1:1],
/// [alpha3:alpha3:1]. Throws InvalidInput for b = 0.
std::vector<HyperflexSeed> hyperflex_condition_roots(Complex b);

/// Res_a(P, Q) as a polynomial in b.
UniPoly gamma_resultant();

/// The points of Gamma with b != 0 and nondegenerate parameters.
std::vector<std::pair<Complex, Complex>> gamma_points(const Tolerances& tol);

}  // namespace qflex
