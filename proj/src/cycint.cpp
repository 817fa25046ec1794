#include "alttrace/cycint.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace alttrace {

namespace {

// Reduce a length-p exponent vector onto the basis ζ^0..ζ^{p-2}.
std::vector<mpz_class> reduce_full(std::vector<mpz_class> full) {
  const std::size_t p = full.size();
  const mpz_class top = full[p - 1];
  full.pop_back();
  if (top != 0) {
    for (auto& c : full) c -= top;
  }
  return full;
}

}  // namespace

CycInt::CycInt(std::uint32_t p) : p_(p), coeffs_(p - 1) {
  if (p < 3) throw std::invalid_argument("CycInt: p must be an odd prime");
}

CycInt CycInt::from_int(std::uint32_t p, const mpz_class& n) {
  CycInt r(p);
  r.coeffs_[0] = n;
  return r;
}

CycInt CycInt::zeta_power(std::uint32_t p, std::uint64_t k) {
  std::vector<mpz_class> full(p);
  full[k % p] = 1;
  CycInt r(p);
  r.coeffs_ = reduce_full(std::move(full));
  return r;
}

CycInt CycInt::from_exponent_counts(std::uint32_t p, std::span<const std::int64_t> counts) {
  if (counts.size() != p) throw std::invalid_argument("from_exponent_counts: need p counts");
  CycInt r(p);
  const std::int64_t top = counts[p - 1];
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    r.coeffs_[i] = mpz_class(static_cast<long>(counts[i])) - mpz_class(static_cast<long>(top));
  }
  return r;
}

CycInt CycInt::from_exponent_counts(std::uint32_t p, std::span<const mpz_class> counts) {
  if (counts.size() != p) throw std::invalid_argument("from_exponent_counts: need p counts");
  CycInt r(p);
  r.coeffs_ = reduce_full(std::vector<mpz_class>(counts.begin(), counts.end()));
  return r;
}

void CycInt::require_same(const CycInt& other) const {
  if (p_ != other.p_) throw std::invalid_argument("CycInt: mismatched p");
}

CycInt& CycInt::operator+=(const CycInt& other) {
  require_same(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& other) {
  require_same(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
  a.require_same(b);
  const std::uint32_t p = a.p_;
  std::vector<mpz_class> full(p);
  for (std::uint32_t i = 0; i + 1 < p; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
      if (b.coeffs_[j] == 0) continue;
      full[(i + j) % p] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  CycInt r(p);
  r.coeffs_ = reduce_full(std::move(full));
  return r;
}

CycInt& CycInt::operator*=(const CycInt& other) {
  *this = *this * other;
  return *this;
}

CycInt& CycInt::operator*=(const mpz_class& k) {
  for (auto& c : coeffs_) c *= k;
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const CycInt& a, const CycInt& b) {
  return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
}

CycInt CycInt::pow(unsigned e) const {
  CycInt result = from_int(p_, 1);
  CycInt base = *this;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

CycInt CycInt::conj() const { return galois(p_ - 1); }

CycInt CycInt::galois(std::uint32_t a) const {
  if (a % p_ == 0) throw std::invalid_argument("galois: exponent must be prime to p");
  std::vector<mpz_class> full(p_);
  for (std::uint32_t i = 0; i + 1 < p_; ++i) {
    full[static_cast<std::uint64_t>(i) * a % p_] += coeffs_[i];
  }
  CycInt r(p_);
  r.coeffs_ = reduce_full(std::move(full));
  return r;
}

bool CycInt::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

std::optional<mpz_class> CycInt::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return std::nullopt;
  }
  return coeffs_.empty() ? mpz_class(0) : coeffs_[0];
}

std::complex<double> CycInt::to_complex() const {
  std::complex<double> z{0.0, 0.0};
  for (std::uint32_t i = 0; i < coeffs_.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi * i / p_;
    z += coeffs_[i].get_d() * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return z;
}

std::vector<std::string> CycInt::coeff_strings() const {
  std::vector<std::string> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_str());
  return out;
}

std::string CycInt::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ',';
    os << coeffs_[i].get_str();
  }
  os << ']';
  return os.str();
}

}  // namespace alttrace
