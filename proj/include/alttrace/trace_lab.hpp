#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "alttrace/characters.hpp"
#include "alttrace/cycint.hpp"
#include "alttrace/field.hpp"
#include "alttrace/group_oracle.hpp"

namespace alttrace {

/// Parameters of the local system G(k, 2q-1, ψ): q = p^f, k = F_{p^f0},
/// ψ_k(x) = ζ^{Tr(c·x)} with c given by its packed polynomial index in k.
struct SystemParams {
  std::uint32_t p = 3;
  int f = 1;
  int f0 = 1;
  std::uint64_t psi_multiplier = 1;

  std::uint64_t q() const;
  std::int64_t n() const { return 2 * static_cast<std::int64_t>(q()) - 1; }
  void validate() const;
  /// "p=3 f=1 f0=1 psi=1"
  std::string canonical() const;
  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

CharacterContext make_context(const SystemParams& params);

/// Which monodromy coset governs Frobenius at degree D: Alt(2q) on V when -1
/// is a square in k or D is even, otherwise the odd coset of Sym(2q) acting
/// through V ⊗ sgn.
struct MonodromyRegime {
  Regime regime = Regime::Alt;
  Twist twist = Twist::Plain;
};
MonodromyRegime monodromy_regime(const SystemParams& params, int degree);

/// One normalized trace T(t) = numerator / denominator with the denominator
/// kept as #L (unreduced).
struct TraceEntry {
  mpz_class numerator;
  mpz_class denominator;
  bool is_integer = false;

  mpq_class value() const;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct TraceTable {
  SystemParams params;
  int degree = 0;
  FieldDescriptor field;
  std::vector<TraceEntry> entries;  // indexed by the packed index of t
  double wall_seconds = 0.0;
  std::string strategy;

  std::uint64_t size() const { return entries.size(); }
  bool all_integral() const;
  /// Integer traces; throws InvariantViolation on the first non-integer.
  std::vector<std::int64_t> integer_traces() const;
};

struct EngineOptions {
  std::uint64_t budget = std::uint64_t{1} << 24;
};

/// Evaluates S(t) = Σ_{x∈L} ψ_{L/k}(x^n + t x) χ_{2,L}(x) and the normalized
/// trace T(t) = -S(t)/A(L) on a fixed extension L of degree D over k.
class TraceEngine {
 public:
  TraceEngine(const SystemParams& params, int degree, const EngineOptions& opts = {});

  const SystemParams& params() const { return params_; }
  int degree() const { return degree_; }
  const Extension& extension() const { return ext_; }
  const FiniteField& field() const { return *ext_.field(); }
  const GaussSum& gauss() const { return gauss_; }

  /// Bucket-counting kernel: counts of ±1 per exponent of ζ, one CycInt at the end.
  std::vector<std::int64_t> bucket_counts(FieldElement t) const;
  CycInt raw_sum(FieldElement t) const;
  /// Term-by-term CycInt accumulation.
  CycInt raw_sum_naive(FieldElement t) const;
  /// -S(t)·conj(A); rational for every t.
  CycInt scaled_numerator(FieldElement t) const;
  TraceEntry normalized_trace(FieldElement t) const;
  /// -Σ_{x∈L^×} ψ_{L/k}(x^n/t + x) χ_{2,L}(x/t), t ≠ 0.
  CycInt descent_trace(FieldElement t) const;
  std::optional<mpz_class> descent_trace_rational(FieldElement t) const;

  /// Every T(t), t enumerated by packed index; parallel over t-ranges.
  TraceTable table(unsigned threads = 1) const;

 private:
  SystemParams params_;
  int degree_;
  Extension ext_;
  GaussSum gauss_;
  std::vector<std::uint32_t> xn_exponent_;  // by log of x: ψ-exponent of x^n
};

/// Evaluates one table without keeping the engine around.
TraceTable trace_table(const SystemParams& params, int degree, unsigned threads = 1,
                       const EngineOptions& opts = {});

/// On-disk cache of trace tables, one CSV file per (params, degree), with a
/// trailing FNV-1a checksum of the data rows.
class TraceCache {
 public:
  explicit TraceCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const SystemParams& params, int degree) const;
  void store(const TraceTable& table) const;
  /// nullopt when absent; throws CacheError on checksum or header mismatch.
  std::optional<TraceTable> load(const SystemParams& params, int degree) const;

 private:
  std::filesystem::path dir_;
};

std::string serialize_table(const TraceTable& table);
TraceTable parse_table(const std::string& text, const SystemParams& params, int degree);
std::uint64_t fnv1a64(std::string_view data);

/// Cache hit or compute-and-store.
TraceTable load_or_compute(const SystemParams& params, int degree, unsigned threads,
                           const TraceCache* cache, const EngineOptions& opts = {});

/// (1/#L) Σ_t T(t)^m, exact.
mpq_class empirical_moment(const TraceTable& table, int m);

struct MomentRow {
  int degree = 0;
  std::uint64_t size = 0;
  bool odd_degree = false;
  MonodromyRegime regime;
  std::array<mpq_class, 4> moments;  // M1..M4
  std::array<mpq_class, 4> targets;  // exact group moments of the regime
  double m3_deviation = 0.0;
};

struct MomentReport {
  SystemParams params;
  std::vector<MomentRow> rows;
};

MomentRow moment_row(const TraceTable& table);
MomentReport moment_scan(const SystemParams& params, int max_degree, unsigned threads,
                         const TraceCache* cache, const EngineOptions& opts = {});

}  // namespace alttrace
