#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qflex/kuribayashi.hpp"

namespace qflex {

/// Affine distance max(|x - x0|, |y - y0|) from the closest flex with z != 0
/// (in the z = 1 chart) to (x0, y0); nullopt if no flex has z != 0.
std::optional<double> affine_distance(const std::vector<FlexRecord>& flexes, Complex x0, Complex y0);

struct SpotCheck {
  Complex x, y;
  double radius = 1e-3;
};

struct Fixture {
  std::string name;
  Complex a, b;
  Outcome expected;
  std::vector<SpotCheck> spots;
};

struct FixtureResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The worked examples and the one-parameter specializations.
std::vector<Fixture> repro_fixtures();

FixtureResult run_fixture(const Fixture& f, const Tolerances& tol);

}  // namespace qflex
