#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace alttrace {

/// Exact element of Z[ζ_p] in the basis ζ^0, ..., ζ^{p-2}; ζ^{p-1} is reduced as
/// -(1 + ζ + ... + ζ^{p-2}). Coefficients are arbitrary precision.
class CycInt {
 public:
  CycInt() = default;
  explicit CycInt(std::uint32_t p);

  static CycInt from_int(std::uint32_t p, const mpz_class& n);
  static CycInt zeta_power(std::uint32_t p, std::uint64_t k);
  /// Σ_a counts[a] ζ^a with counts.size() == p.
  static CycInt from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts);
  static CycInt from_exponent_counts(std::uint32_t p, std::span<const mpz_class> counts);

  std::uint32_t p() const { return p_; }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }

  CycInt& operator+=(const CycInt& other);
  CycInt& operator-=(const CycInt& other);
  CycInt& operator*=(const CycInt& other);
  CycInt& operator*=(const mpz_class& k);
  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(const CycInt& a, const CycInt& b);
  friend CycInt operator*(CycInt a, const mpz_class& k) { return a *= k; }
  friend CycInt operator*(const mpz_class& k, CycInt a) { return a *= k; }
  CycInt operator-() const;
  friend bool operator==(const CycInt& a, const CycInt& b);

  CycInt pow(unsigned e) const;
  /// ζ ↦ ζ^{-1}
  CycInt conj() const;
  /// Galois automorphism ζ ↦ ζ^a, a prime to p.
  CycInt galois(std::uint32_t a) const;

  bool is_zero() const;
  std::optional<mpz_class> as_rational() const;
  /// Value under ζ_p ↦ exp(2πi/p).
  std::complex<double> to_complex() const;
  /// "[c0,c1,...]"
  std::string to_string() const;
  std::vector<std::string> coeff_strings() const;

 private:
  void require_same(const CycInt& other) const;

  std::uint32_t p_ = 0;
  std::vector<mpz_class> coeffs_;
};

}  // namespace alttrace
