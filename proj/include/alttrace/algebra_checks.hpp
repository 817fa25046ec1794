#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "alttrace/field.hpp"

namespace alttrace {

/// Univariate polynomial over a finite field, constant term first, no
/// trailing zeros.
class FieldPoly {
 public:
  explicit FieldPoly(FieldPtr field, std::vector<FieldElement> coeffs = {});

  static FieldPoly monomial(FieldPtr field, int degree, FieldElement c);
  /// (x + c)
  static FieldPoly linear(FieldPtr field, FieldElement c);

  const FieldPtr& field() const { return field_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  FieldElement coeff(int i) const;
  FieldElement leading() const;

  FieldPoly operator+(const FieldPoly& o) const;
  FieldPoly operator-(const FieldPoly& o) const;
  FieldPoly operator*(const FieldPoly& o) const;
  FieldPoly pow(unsigned e) const;
  FieldPoly derivative() const;
  FieldElement evaluate(FieldElement x) const;
  /// Quotient and remainder; the divisor must be nonzero.
  std::pair<FieldPoly, FieldPoly> divmod(const FieldPoly& divisor) const;
  bool operator==(const FieldPoly& o) const { return coeffs_ == o.coeffs_; }

 private:
  void trim();
  FieldPtr field_;
  std::vector<FieldElement> coeffs_;
};

/// Σ c_{ij} x^i y^j over a finite field; zero coefficients are never stored.
class BivariatePoly {
 public:
  using Monomial = std::pair<int, int>;

  explicit BivariatePoly(FieldPtr field);
  static BivariatePoly term(FieldPtr field, int i, int j, FieldElement c);
  /// x - a·y
  static BivariatePoly x_minus(FieldPtr field, FieldElement a);

  const FieldPtr& field() const { return field_; }
  const std::map<Monomial, FieldElement>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add_term(int i, int j, FieldElement c);
  BivariatePoly operator+(const BivariatePoly& o) const;
  BivariatePoly operator*(const BivariatePoly& o) const;
  BivariatePoly pow(unsigned e) const;
  bool operator==(const BivariatePoly& o) const { return terms_ == o.terms_; }

  bool is_homogeneous(int degree) const;
  bool coefficients_in_prime_field() const;
  /// Reinterpret prime-field coefficients in `prime` (F_p). Throws otherwise.
  BivariatePoly descend(FieldPtr prime) const;
  /// Dehomogenize at y = 1.
  FieldPoly at_y_one() const;
  /// Evaluate with coefficients pushed into the larger field through `emb`.
  FieldElement evaluate(const Embedding& emb, FieldElement x, FieldElement y) const;
  /// Human-readable first monomial where the two differ, or "" when equal.
  std::string first_difference(const BivariatePoly& o) const;
  std::string to_string() const;

 private:
  FieldPtr field_;
  std::map<Monomial, FieldElement> terms_;
};

/// Binomial coefficient modulo p by Lucas' theorem.
std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p);

/// q = p^f with p an odd prime; returns {p, f} or throws.
std::pair<std::uint32_t, int> split_prime_power(std::uint64_t q);

/// x^{2q-1} + y^{2q-1} + (-x-y)^{2q-1} by binomial expansion.
BivariatePoly power_sum_form(FieldPtr field, std::uint64_t q);

struct IdentityReport {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  int f = 0;
  bool homogeneous = false;
  bool holds = false;
  std::string mismatch;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
};

/// LHS against xy(x+y)∏_{α∈F_q∖{0,-1}}(x-αy)² in F_q[x,y].
IdentityReport verify_identity_split(std::uint64_t q);

struct GroupedIdentityReport {
  IdentityReport base;
  std::vector<std::vector<std::uint32_t>> p_f;  // h(x,1) as F_p coefficient lists
  std::vector<int> orbit_sizes;
  int degree_sum = 0;             // must equal q - 2
  bool all_irreducible = false;
  bool product_matches_split = false;
  bool descends = false;
  bool matches_enumeration = false;  // P_f equals all monic irreducibles of degree | f minus x, x+1
  bool ok() const {
    return base.holds && all_irreducible && product_matches_split && descends &&
           matches_enumeration && degree_sum == static_cast<int>(base.q) - 2;
  }
};

GroupedIdentityReport verify_identity_grouped(std::uint64_t q);

/// The irreducible homogeneous factors h ∈ F_p[x,y] (monic in x, not x or
/// x+y) of the identity, one per Frobenius orbit of F_q∖{0,-1}.
std::vector<BivariatePoly> grouped_factors(std::uint64_t q, const FieldPtr& prime);

struct DerivativeReport {
  std::uint64_t q = 0;
  int degree = 0;
  std::uint32_t leading_coefficient = 0;
  bool degree_ok = false;          // deg P = 2q - 2 with leading coefficient 1
  bool vanishes_on_fq = false;     // P(β) = 0 for β ∈ F_q
  bool derivative_form_ok = false; // P' = -x^{2q-2} + (x+1)^{2q-2}
  bool derivative_vanishes = false;// P'(α) = 0 for α, α+1 ∈ F_q^×
  bool double_roots = false;       // (x-α)² | P
  bool factorization_ok = false;   // P = x(x+1)∏(x-α)²
  bool ok() const {
    return degree_ok && vanishes_on_fq && derivative_form_ok && derivative_vanishes &&
           double_roots && factorization_ok;
  }
};

DerivativeReport verify_derivative_steps(std::uint64_t q);

struct WildInertiaReport {
  std::uint64_t q = 0;
  std::uint32_t p = 0;
  int f = 0;
  FieldDescriptor field;            // F_{q²}
  std::uint64_t zeta_log = 0;       // chosen primitive (2q-2)-th root
  int span_dimension = 0;
  std::vector<std::uint64_t> basis;  // packed indices, reduced echelon form
  bool trace_zero = false;          // Tr_{F_{q²}/F_q}(ζ) = 0
  bool roots_in_decomposition = false;  // μ_{2q-2} ⊂ F_q + ζF_q
  bool decomposition_in_span = false;   // F_q + ζF_q ⊂ span
  bool direct_sum = false;              // dim(F_q + ζF_q) = 2f
  bool ok() const {
    return span_dimension == 2 * f && trace_zero && roots_in_decomposition &&
           decomposition_in_span && direct_sum;
  }
};

/// choice selects the choice-th primitive (2q-2)-th root by discrete log.
WildInertiaReport wild_inertia_span(std::uint64_t q, int choice = 0);

struct GeneralSpanReport {
  std::uint32_t p = 0;
  std::int64_t n = 0;
  int field_degree = 0;  // smallest e with μ_{n-1} ⊂ F_{p^e}
  int span_dimension = 0;
};

/// F_p-span of μ_{n-1} in the smallest field containing it (n odd,
/// gcd(n(n-1), p) = 1).
GeneralSpanReport roots_of_unity_span(std::uint32_t p, std::int64_t n);

/// F_p-rank of vectors given as packed field indices.
int span_rank(const FiniteField& field, const std::vector<std::uint64_t>& vectors,
              std::vector<std::uint64_t>* basis = nullptr);

struct VirtualCharacterRow {
  std::string label;
  bool first_zero = false;
  bool second_zero = false;
  std::int64_t value = 0;
  std::uint64_t count = 0;  // number of group elements of this kind
};

/// Reg ⊕ Reg - 1 on F_q ⊕ F_q by element type.
std::vector<VirtualCharacterRow> virtual_character_values(std::uint64_t q);

}  // namespace alttrace
