#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mlca_cli/rule_parser.hpp"

namespace mlca::cli {

struct AsymptoticEntry {
  std::uint64_t length;
  std::string orbits;          // P_l, decimal
  std::string main_term;       // exact rational "num/den"
  std::string residual_ratio;  // decimal, 6 digits
  friend bool operator==(const AsymptoticEntry&, const AsymptoticEntry&) = default;
};

struct OracleVerdict {
  std::uint64_t n;
  std::int64_t closed_form;
  std::size_t exponent;
  bool attained;
  std::size_t attained_at;  // 0 when not attained
  bool sides_agree;
  bool within_bound;
  std::vector<std::size_t> periods;
  friend bool operator==(const OracleVerdict&, const OracleVerdict&) = default;
};

// Everything `mlca analyze` reports. Big integers are decimal strings.
struct AnalysisReport {
  RuleSpec spec;
  std::string rule;  // G(Z) as a matrix of entry expressions
  bool confined = false;
  std::int64_t a = 0;
  std::uint64_t varpi = 1;
  std::map<std::uint64_t, std::int64_t> t;
  std::uint64_t n_checked = 0;
  std::vector<std::int64_t> log_fix_counts;             // n = 1..n_checked
  std::vector<std::optional<std::string>> fix_counts;   // null above the size threshold
  std::string zeta_kind;
  std::vector<std::string> zeta_series;
  std::vector<std::string> orbit_counts;
  std::vector<AsymptoticEntry> asymptotics;             // empty when a = 0
  std::optional<double> max_residual_ratio;
  std::vector<OracleVerdict> oracle;
  std::uint64_t seed = 0;
  double seconds = 0.0;

  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// Decimal counts are written out while p^e has at most this many digits.
inline constexpr double kDecimalDigitLimit = 60;

nlohmann::json spec_to_json(const RuleSpec& spec);
RuleSpec spec_from_json(const nlohmann::json& j);

// Throws InconsistencyError unless the stored counts obey
// log_p #Fix(g^n) = n a - t_{gcd(n, varpi)} p^{v_p(n)}.
void check_consistency(const AnalysisReport& report);

// Serialization re-checks consistency first.
nlohmann::json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);

}  // namespace mlca::cli
