#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "alttrace/group_oracle.hpp"
#include "alttrace/trace_lab.hpp"

namespace alttrace {

struct MembershipResult {
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::vector<std::pair<std::uint64_t, std::int64_t>> offenders;  // (t index, T(t))

  mpq_class rate() const;
};

/// Requires an integral table (throws InvariantViolation otherwise).
MembershipResult spectrum_membership(const TraceTable& table, const SpectrumTable& oracle);

/// ½ Σ_v |freq(v) − prob(v)| over the union of supports.
mpq_class distribution_distance(const TraceTable& table, const SpectrumTable& oracle);

/// Empirical thresholds; the tolerances only bite once the field is large.
struct Tolerances {
  double tv_max = 0.05;
  std::uint64_t tv_min_field = 2187;  // TV threshold applies at max degree when #L ≥ this
  double m3_max = 0.2;
  std::uint64_t m3_min_field = 2187;  // M₃ threshold applies to every degree with #L ≥ this

  friend bool operator==(const Tolerances&, const Tolerances&) = default;
};

struct VerdictRow {
  int degree = 0;
  std::uint64_t size = 0;
  MonodromyRegime regime;
  MembershipResult membership;
  mpq_class tv;
  mpq_class m2, m3, m2_target, m3_target;
  double m3_deviation = 0.0;
  bool m3_checked = false;
  bool m3_ok = true;
  bool tv_checked = false;
  bool tv_ok = true;
};

struct VerdictReport {
  SystemParams params;
  int max_degree = 0;
  Tolerances tolerances;
  std::vector<VerdictRow> rows;
  bool membership_ok = false;
  bool m3_ok = false;
  bool tv_ok = false;
  bool tv_decreasing = false;  // TV at max degree < TV at degree 1
  bool pass = false;
};

VerdictRow verdict_row(const TraceTable& table, const Tolerances& tol, bool is_max_degree);

VerdictReport verdict(const SystemParams& params, int max_degree, const Tolerances& tol,
                      const TraceCache* cache, unsigned threads = 1,
                      const EngineOptions& opts = {});

/// JSON text of the report, "generator" first. Exact quantities are strings
/// "num/den"; floats appear only in deviation fields.
std::string verdict_json(const VerdictReport& report, const std::string& generator);
/// Fixed-width human summary.
std::string verdict_table(const VerdictReport& report);

}  // namespace alttrace
