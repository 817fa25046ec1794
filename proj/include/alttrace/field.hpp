#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace alttrace {

/// Polynomial over F_p, constant term first. Used both for field moduli and for
/// the polynomial representation of field elements (length = degree).
using Coeffs = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Canonical description of F_{p^d}: the defining modulus is the
/// lexicographically smallest primitive monic polynomial of degree d,
/// comparing coefficient tuples with the constant term first.
struct FieldDescriptor {
  std::uint32_t p = 0;
  int d = 0;
  Coeffs modulus;  // length d + 1, monic
  bool generator_is_x = true;

  /// "p=3 d=2 modulus=[2,1,1]"
  std::string canonical() const;
  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;
};

struct FieldOptions {
  int max_degree = 12;
  std::uint64_t table_threshold = std::uint64_t{1} << 24;
};

/// A field element as a discrete logarithm relative to the generator x.
class FieldElement {
 public:
  static constexpr std::uint64_t kZeroLog = ~std::uint64_t{0};

  constexpr FieldElement() = default;
  static constexpr FieldElement zero() { return FieldElement(); }
  static constexpr FieldElement from_log(std::uint64_t log) { return FieldElement(log); }

  constexpr bool is_zero() const { return log_ == kZeroLog; }
  constexpr std::uint64_t log() const { return log_; }

  friend constexpr auto operator<=>(const FieldElement&, const FieldElement&) = default;

 private:
  constexpr explicit FieldElement(std::uint64_t log) : log_(log) {}
  std::uint64_t log_ = kZeroLog;
};

/// F_{p^d} with Zech-logarithm tables (when p^d is below the table threshold)
/// and plain polynomial arithmetic (always). Immutable after construction.
class FiniteField {
 public:
  static std::shared_ptr<const FiniteField> build(std::uint32_t p, int d,
                                                  const FieldOptions& opts = {});

  const FieldDescriptor& descriptor() const { return desc_; }
  std::uint32_t p() const { return desc_.p; }
  int degree() const { return desc_.d; }
  std::uint64_t order() const { return order_; }
  std::uint64_t group_order() const { return order_ - 1; }
  bool has_tables() const { return !exp_.empty(); }

  // Log-indexed arithmetic; requires tables.
  FieldElement one() const { return FieldElement::from_log(0); }
  FieldElement generator() const { return FieldElement::from_log(1 % group_order()); }
  FieldElement minus_one() const { return FieldElement::from_log(group_order() / 2); }
  FieldElement from_int(std::int64_t n) const;
  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  /// a^(p^k)
  FieldElement frobenius(FieldElement a, int k = 1) const;
  /// Multiplicative order of a nonzero element.
  std::uint64_t element_order(FieldElement a) const;

  /// +1 / -1 by discrete-log parity, 0 at zero.
  int chi2(FieldElement a) const {
    if (a.is_zero()) return 0;
    return (a.log() & 1U) == 0 ? 1 : -1;
  }

  /// Absolute trace Tr_{F_{p^d}/F_p}(a) in [0, p).
  std::uint32_t abs_trace(FieldElement a) const {
    if (a.is_zero()) return 0;
    require_tables();
    return abs_trace_[a.log()];
  }
  /// Absolute traces indexed by discrete log; empty without tables.
  std::span<const std::uint32_t> abs_trace_table() const { return abs_trace_; }
  /// Tr down to the subfield of degree sub_degree, as an element of this field.
  FieldElement trace_to(int sub_degree, FieldElement a) const;
  /// Norm down to the subfield of degree sub_degree.
  FieldElement norm_to(int sub_degree, FieldElement a) const;
  bool in_subfield(int sub_degree, FieldElement a) const;

  // Conversions between log and polynomial (packed base-p) representation.
  std::uint64_t to_index(FieldElement a) const;
  FieldElement from_index(std::uint64_t index) const;
  Coeffs to_coeffs(FieldElement a) const { return unpack(to_index(a)); }
  FieldElement from_coeffs(const Coeffs& c) const { return from_index(pack(c)); }
  std::uint64_t pack(const Coeffs& c) const;
  Coeffs unpack(std::uint64_t index) const;

  // Polynomial-representation arithmetic; valid for every field size.
  Coeffs poly_add(const Coeffs& a, const Coeffs& b) const;
  Coeffs poly_mul(const Coeffs& a, const Coeffs& b) const;
  Coeffs poly_pow(const Coeffs& a, std::uint64_t e) const;
  /// Frobenius a ↦ a^p as the precomputed d×d matrix acting on coefficients.
  Coeffs poly_frobenius(const Coeffs& a) const;
  std::uint32_t poly_abs_trace(const Coeffs& a) const;

 private:
  FiniteField() = default;
  void build_tables();
  void require_tables() const;

  FieldDescriptor desc_;
  std::uint64_t order_ = 0;
  std::vector<std::uint32_t> exp_;   // log -> packed index
  std::vector<std::int32_t> log_;    // packed index -> log, -1 at zero
  std::vector<std::int32_t> zech_;   // i -> log(1 + x^i), -1 when that is zero
  std::vector<std::uint32_t> abs_trace_;  // log -> absolute trace
  std::vector<Coeffs> frob_matrix_;  // column j = (x^j)^p
  Coeffs basis_trace_;               // Tr(x^j)
};

using FieldPtr = std::shared_ptr<const FiniteField>;

/// Convenience wrapper for FiniteField::build.
inline FieldPtr build_field(std::uint32_t p, int d, const FieldOptions& opts = {}) {
  return FiniteField::build(p, d, opts);
}

/// Field homomorphism F_{p^e} -> F_{p^D} (e | D). The generator of the
/// subfield goes to the root of its modulus in the larger field with the
/// smallest discrete log, which is a power g^(k(p^D-1)/(p^e-1)).
class Embedding {
 public:
  Embedding(FieldPtr sub, FieldPtr sup);

  FieldElement operator()(FieldElement x) const;
  /// Inverse on the image; throws when y is not in the subfield.
  FieldElement pull_back(FieldElement y) const;

  const FieldPtr& sub() const { return sub_; }
  const FieldPtr& sup() const { return sup_; }
  std::uint64_t log_multiplier() const { return multiplier_; }

 private:
  FieldPtr sub_;
  FieldPtr sup_;
  std::uint64_t multiplier_ = 0;  // log in sup = log in sub * multiplier_
};

FieldElement embed(const FieldPtr& sub, const FieldPtr& sup, FieldElement x);

}  // namespace alttrace
