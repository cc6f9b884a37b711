#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qflex/kuribayashi.hpp"

namespace qflex {

/// "1.5", "-2i", "i", "1.5+0.5i", "3-i", "1e-3+2e-1i". Throws InvalidInput.
Complex parse_complex(std::string_view text);

/// Rounds to 12 significant digits; -0 becomes 0.
double round12(double v);

struct Report {
  Complex a, b;
  std::vector<FlexRecord> flexes;
  std::vector<int> orbit_labels;  // empty when orbits were not computed
  std::optional<OrbitSignature> signature;
  std::optional<VerdictRecord> verdict;
};

Report make_flex_report(Complex a, Complex b, std::vector<FlexRecord> flexes);
Report make_verdict_report(const VerdictRecord& v);

nlohmann::ordered_json to_json(const Report& r);
std::string to_csv(const Report& r);
std::string to_text(const Report& r);

enum class Format { Json, Csv, Text };

/// Throws InvalidInput for an unknown name.
Format parse_format(std::string_view name);
std::string render(const Report& r, Format f);

/// One flex record as it appears in either encoding, after rounding.
struct RecordRow {
  std::array<double, 6> coords{};
  int contact_order = 0;
  int weight = 0;
  std::string kind;
  int orbit = -1;

  auto operator<=>(const RecordRow&) const = default;
};

std::vector<RecordRow> rows_from_json(const nlohmann::ordered_json& j);
std::vector<RecordRow> rows_from_csv(const std::string& csv);

}  // namespace qflex
