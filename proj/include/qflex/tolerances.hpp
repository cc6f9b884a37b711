#pragma once

#include <optional>
#include <string_view>

namespace qflex {

/// Numerical thresholds shared by every stage of the pipeline.
///
/// zero_eps is a relative magnitude (scaled by the coefficient norm of the
/// polynomial involved), cluster_radius bounds the distance at which root
/// approximations are merged into one multiple root, and point_eps is the
/// projective-equality threshold for points and maps.
struct Tolerances {
  double zero_eps = 1e-10;
  double cluster_radius = 1e-6;
  double point_eps = 1e-6;

  /// Throws Error(InvalidTolerances) unless
  /// 0 < zero_eps < cluster_radius <= point_eps < 1.
  void validate() const;

  static Tolerances strict();
  static Tolerances loose();

  /// "strict", "default" or "loose"; nullopt for anything else.
  static std::optional<Tolerances> profile(std::string_view name);
};

}  // namespace qflex
