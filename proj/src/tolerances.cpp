#include "qflex/tolerances.hpp"

#include <sstream>

#include "qflex/types.hpp"

namespace qflex {

char var_name(Var v) {
  switch (v) {
    case Var::X: return 'x';
    case Var::Y: return 'y';
    case Var::Z: return 'z';
  }
  return '?';
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::InvalidTolerances: return "InvalidTolerances";
    case ErrorKind::BothZero: return "BothZero";
    case ErrorKind::DegenerateLeading: return "DegenerateLeading";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DegenerateSystem: return "DegenerateSystem";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::DegenerateLine: return "DegenerateLine";
    case ErrorKind::WeightSumMismatch: return "WeightSumMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::InvarianceViolation: return "InvarianceViolation";
    case ErrorKind::DegenerateParams: return "DegenerateParams";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  // cluster_radius == point_eps is allowed: both default to 1e-6.
  if (!(0.0 < zero_eps && zero_eps < cluster_radius && cluster_radius <= point_eps &&
        point_eps < 1.0)) {
    std::ostringstream os;
    os << "tolerances must satisfy 0 < zero_eps < cluster_radius <= point_eps < 1 (got "
       << zero_eps << ", " << cluster_radius << ", " << point_eps << ")";
    throw Error(ErrorKind::InvalidTolerances, os.str());
  }
}

Tolerances Tolerances::strict() { return {1e-12, 1e-8, 1e-8}; }

Tolerances Tolerances::loose() { return {1e-8, 1e-5, 1e-4}; }

std::optional<Tolerances> Tolerances::profile(std::string_view name) {
  if (name == "strict") return strict();
  if (name == "default") return Tolerances{};
  if (name == "loose") return loose();
  return std::nullopt;
}

}  // namespace qflex
