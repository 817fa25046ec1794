#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "alttrace/cycint.hpp"
#include "alttrace/field.hpp"
#include "alttrace/trace_lab.hpp"

namespace alttrace {

/// Affine point counts N_L(t) of xy(x+y)∏_{h∈P_f} h(x,y)² = t, t indexed by
/// packed index in L.
struct CurveCount {
  SystemParams params;
  int degree = 0;
  FieldDescriptor field;
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
};

struct CurveOptions {
  std::uint64_t max_field_size = 4096;
};

/// Evaluates f on every pair (x, y) ∈ L², split by x-range across threads.
CurveCount count_points(const SystemParams& params, int degree, unsigned threads = 1,
                        const CurveOptions& opts = {});

/// f(x, y) on L, coefficients of P_f pushed in from F_p.
class CurveForm {
 public:
  CurveForm(std::uint64_t q, FieldPtr field);
  FieldElement operator()(FieldElement x, FieldElement y) const;
  const FiniteField& field() const { return *field_; }

 private:
  FieldPtr field_;
  // each factor h as coefficients of x^i y^{e-i}, i = 0..e
  std::vector<std::vector<FieldElement>> factors_;
};

struct ModifiedMomentReport {
  int degree = 0;
  std::uint64_t size = 0;
  mpq_class modified;    // (χ2(-1)/g)³ Σ_{t≠0} ψ(t)χ2(-t)N(t) / #L² ... normalized as M₃
  mpq_class direct;      // (1/#L) Σ T(t)³
  mpq_class difference;  // modified - direct
  double bound = 0.0;    // q/√#L
  bool within_bound = false;  // decided exactly: difference² ≤ q²/#L
  bool fiber_sum_ok = false;  // Σ N(t) = #L²
};

/// Weighted sum W = Σ_{t∈L^×} ψ_{L/k}(t) χ_{2,L}(-t) N_L(t) as a cyclotomic integer.
CycInt weighted_count_sum(const Extension& ext, const CurveCount& counts);

ModifiedMomentReport modified_third_moment(const SystemParams& params, int degree,
                                           const CurveCount& counts, const TraceTable& table);

std::string serialize_counts(const CurveCount& counts);

}  // namespace alttrace
