#include "alttrace/field.hpp"

#include <limits>
#include <numeric>
#include <utility>
#include <sstream>

namespace alttrace {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

// Multiply two residues modulo a monic modulus of degree d = modulus.size() - 1.
Coeffs mul_mod(const Coeffs& a, const Coeffs& b, const Coeffs& modulus, std::uint32_t p) {
  const std::size_t d = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  for (std::size_t k = prod.size(); k-- > d;) {
    const std::uint64_t c = prod[k] % p;
    if (c == 0) continue;
    // x^k = x^(k-d) * x^d and x^d = -sum modulus[j] x^j
    for (std::size_t j = 0; j < d; ++j) {
      prod[k - d + j] = (prod[k - d + j] + (p - c) * modulus[j]) % p;
    }
    prod[k] = 0;
  }
  Coeffs out(d);
  for (std::size_t i = 0; i < d; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % p);
  return out;
}

Coeffs one_mod(std::size_t d) {
  Coeffs c(d, 0);
  c[0] = 1;
  return c;
}

Coeffs x_mod(const Coeffs& modulus, std::uint32_t p) {
  const std::size_t d = modulus.size() - 1;
  Coeffs c(d, 0);
  if (d == 1) {
    c[0] = (p - modulus[0]) % p;
  } else {
    c[1] = 1;
  }
  return c;
}

Coeffs pow_mod(Coeffs base, std::uint64_t e, const Coeffs& modulus, std::uint32_t p) {
  Coeffs result = one_mod(modulus.size() - 1);
  while (e > 0) {
    if (e & 1U) result = mul_mod(result, base, modulus, p);
    e >>= 1U;
    if (e > 0) base = mul_mod(base, base, modulus, p);
  }
  return result;
}

bool x_is_primitive(const Coeffs& modulus, std::uint32_t p, std::uint64_t group_order,
                    const std::vector<std::uint64_t>& factors) {
  if (modulus[0] == 0) return false;
  const Coeffs x = x_mod(modulus, p);
  const Coeffs one = one_mod(modulus.size() - 1);
  if (pow_mod(x, group_order, modulus, p) != one) return false;
  for (std::uint64_t r : factors) {
    if (pow_mod(x, group_order / r, modulus, p) == one) return false;
  }
  return true;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::invalid_argument("inverse_mod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("ipow overflow");
    }
    r *= base;
  }
  return r;
}

std::string FieldDescriptor::canonical() const {
  std::ostringstream os;
  os << "p=" << p << " d=" << d << " modulus=[";
  for (std::size_t i = 0; i < modulus.size(); ++i) {
    if (i) os << ',';
    os << modulus[i];
  }
  os << ']';
  return os.str();
}

std::shared_ptr<const FiniteField> FiniteField::build(std::uint32_t p, int d,
                                                      const FieldOptions& opts) {
  if (p == 2 || p % 2 == 0) throw std::invalid_argument("build_field: p must be odd");
  if (!is_prime(p)) throw std::invalid_argument("build_field: p is not prime");
  if (d < 1 || d > opts.max_degree) {
    throw std::invalid_argument("build_field: degree out of range");
  }
  std::uint64_t order = 0;
  try {
    order = ipow(p, static_cast<unsigned>(d));
  } catch (const std::overflow_error&) {
    throw std::invalid_argument("build_field: p^d does not fit in 64 bits");
  }
  if (order > (std::uint64_t{1} << 62)) {
    throw std::invalid_argument("build_field: p^d does not fit in 62 bits");
  }

  std::shared_ptr<FiniteField> field(new FiniteField());
  field->order_ = order;
  field->desc_.p = p;
  field->desc_.d = d;

  // Enumerate (c0, ..., c_{d-1}) in lexicographic order; c0 is the most
  // significant digit of the counter.
  const std::uint64_t group_order = order - 1;
  const auto factors = prime_factors(group_order);
  Coeffs modulus(static_cast<std::size_t>(d) + 1, 0);
  modulus[d] = 1;
  bool found = false;
  for (std::uint64_t counter = 0; counter < order && !found; ++counter) {
    std::uint64_t rest = counter;
    for (int i = d - 1; i >= 0; --i) {
      modulus[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    found = x_is_primitive(modulus, p, group_order, factors);
  }
  if (!found) throw std::logic_error("build_field: no primitive polynomial found");
  field->desc_.modulus = modulus;
  field->desc_.generator_is_x = true;

  // Frobenius matrix and traces of the power basis.
  field->frob_matrix_.resize(d);
  Coeffs basis = one_mod(d);
  const Coeffs x = x_mod(modulus, p);
  for (int j = 0; j < d; ++j) {
    field->frob_matrix_[j] = pow_mod(basis, p, modulus, p);
    basis = mul_mod(basis, x, modulus, p);
  }
  field->basis_trace_.assign(d, 0);
  basis = one_mod(d);
  for (int j = 0; j < d; ++j) {
    Coeffs conj = basis;
    Coeffs sum(d, 0);
    for (int i = 0; i < d; ++i) {
      for (int c = 0; c < d; ++c) sum[c] = (sum[c] + conj[c]) % p;
      conj = field->poly_frobenius(conj);
    }
    field->basis_trace_[j] = sum[0];
    basis = mul_mod(basis, x, modulus, p);
  }

  if (order <= opts.table_threshold) field->build_tables();
  return field;
}

void FiniteField::build_tables() {
  const std::uint32_t p = desc_.p;
  const int d = desc_.d;
  const std::uint64_t n = group_order();
  exp_.assign(n, 0);
  log_.assign(order_, -1);
  abs_trace_.assign(n, 0);

  Coeffs cur = one_mod(d);
  const Coeffs x = x_mod(desc_.modulus, p);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t idx = pack(cur);
    exp_[i] = static_cast<std::uint32_t>(idx);
    log_[idx] = static_cast<std::int32_t>(i);
    std::uint64_t tr = 0;
    for (int j = 0; j < d; ++j) tr += std::uint64_t{cur[j]} * basis_trace_[j];
    abs_trace_[i] = static_cast<std::uint32_t>(tr % p);
    cur = mul_mod(cur, x, desc_.modulus, p);
  }
  zech_.assign(n, -1);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t idx = exp_[i];
    const std::uint64_t c0 = idx % p;
    const std::uint64_t plus_one = idx - c0 + (c0 + 1) % p;
    zech_[i] = log_[plus_one];
  }
}

void FiniteField::require_tables() const {
  if (!has_tables()) {
    throw std::logic_error("field " + desc_.canonical() +
                           " is above the table threshold; use the polynomial API");
  }
}

FieldElement FiniteField::from_int(std::int64_t n) const {
  require_tables();
  const auto p = static_cast<std::int64_t>(desc_.p);
  const std::int64_t r = ((n % p) + p) % p;
  if (r == 0) return FieldElement::zero();
  return FieldElement::from_log(static_cast<std::uint64_t>(log_[static_cast<std::size_t>(r)]));
}

FieldElement FiniteField::add(FieldElement a, FieldElement b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  require_tables();
  const std::uint64_t n = group_order();
  const std::uint64_t diff = (b.log() + n - a.log()) % n;
  const std::int32_t z = zech_[diff];
  if (z < 0) return FieldElement::zero();
  return FieldElement::from_log((a.log() + static_cast<std::uint64_t>(z)) % n);
}

FieldElement FiniteField::neg(FieldElement a) const {
  if (a.is_zero()) return a;
  return FieldElement::from_log((a.log() + group_order() / 2) % group_order());
}

FieldElement FiniteField::mul(FieldElement a, FieldElement b) const {
  if (a.is_zero() || b.is_zero()) return FieldElement::zero();
  return FieldElement::from_log((a.log() + b.log()) % group_order());
}

FieldElement FiniteField::inv(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("inverse of zero");
  return FieldElement::from_log((group_order() - a.log()) % group_order());
}

FieldElement FiniteField::pow(FieldElement a, std::uint64_t e) const {
  if (a.is_zero()) return e == 0 ? one() : FieldElement::zero();
  return FieldElement::from_log(mulmod(a.log(), e % group_order(), group_order()));
}

FieldElement FiniteField::frobenius(FieldElement a, int k) const {
  if (a.is_zero()) return a;
  std::uint64_t e = 1;
  for (int i = 0; i < k; ++i) e = mulmod(e, desc_.p, group_order());
  return FieldElement::from_log(mulmod(a.log(), e, group_order()));
}

std::uint64_t FiniteField::element_order(FieldElement a) const {
  if (a.is_zero()) throw std::domain_error("order of zero");
  return group_order() / std::gcd(group_order(), a.log());
}

FieldElement FiniteField::trace_to(int sub_degree, FieldElement a) const {
  if (sub_degree < 1 || desc_.d % sub_degree != 0) {
    throw std::invalid_argument("trace_to: sub_degree must divide the field degree");
  }
  require_tables();
  FieldElement sum = FieldElement::zero();
  FieldElement conj = a;
  for (int i = 0; i < desc_.d / sub_degree; ++i) {
    sum = add(sum, conj);
    conj = frobenius(conj, sub_degree);
  }
  return sum;
}

FieldElement FiniteField::norm_to(int sub_degree, FieldElement a) const {
  if (sub_degree < 1 || desc_.d % sub_degree != 0) {
    throw std::invalid_argument("norm_to: sub_degree must divide the field degree");
  }
  if (a.is_zero()) return a;
  const std::uint64_t sub_order = ipow(desc_.p, static_cast<unsigned>(sub_degree)) - 1;
  return pow(a, group_order() / sub_order);
}

bool FiniteField::in_subfield(int sub_degree, FieldElement a) const {
  return frobenius(a, sub_degree) == a;
}

std::uint64_t FiniteField::to_index(FieldElement a) const {
  require_tables();
  return a.is_zero() ? 0 : exp_[a.log()];
}

FieldElement FiniteField::from_index(std::uint64_t index) const {
  require_tables();
  if (index >= order_) throw std::out_of_range("from_index: index out of range");
  const std::int32_t l = log_[index];
  return l < 0 ? FieldElement::zero() : FieldElement::from_log(static_cast<std::uint64_t>(l));
}

std::uint64_t FiniteField::pack(const Coeffs& c) const {
  if (c.size() != static_cast<std::size_t>(desc_.d)) {
    throw std::invalid_argument("pack: wrong coefficient count");
  }
  std::uint64_t idx = 0;
  for (std::size_t i = c.size(); i-- > 0;) idx = idx * desc_.p + c[i] % desc_.p;
  return idx;
}

Coeffs FiniteField::unpack(std::uint64_t index) const {
  Coeffs c(desc_.d);
  for (int i = 0; i < desc_.d; ++i) {
    c[i] = static_cast<std::uint32_t>(index % desc_.p);
    index /= desc_.p;
  }
  return c;
}

Coeffs FiniteField::poly_add(const Coeffs& a, const Coeffs& b) const {
  Coeffs c(desc_.d);
  for (int i = 0; i < desc_.d; ++i) c[i] = (a[i] + b[i]) % desc_.p;
  return c;
}

Coeffs FiniteField::poly_mul(const Coeffs& a, const Coeffs& b) const {
  return mul_mod(a, b, desc_.modulus, desc_.p);
}

Coeffs FiniteField::poly_pow(const Coeffs& a, std::uint64_t e) const {
  return pow_mod(a, e, desc_.modulus, desc_.p);
}

Coeffs FiniteField::poly_frobenius(const Coeffs& a) const {
  Coeffs out(desc_.d, 0);
  for (int j = 0; j < desc_.d; ++j) {
    if (a[j] == 0) continue;
    for (int i = 0; i < desc_.d; ++i) {
      out[i] = static_cast<std::uint32_t>(
          (out[i] + std::uint64_t{a[j]} * frob_matrix_[j][i]) % desc_.p);
    }
  }
  return out;
}

std::uint32_t FiniteField::poly_abs_trace(const Coeffs& a) const {
  std::uint64_t tr = 0;
  for (int j = 0; j < desc_.d; ++j) tr += std::uint64_t{a[j]} * basis_trace_[j];
  return static_cast<std::uint32_t>(tr % desc_.p);
}

Embedding::Embedding(FieldPtr sub, FieldPtr sup) : sub_(std::move(sub)), sup_(std::move(sup)) {
  if (sub_->p() != sup_->p()) throw std::invalid_argument("embed: characteristics differ");
  if (sup_->degree() % sub_->degree() != 0) {
    throw std::invalid_argument("embed: subfield degree does not divide field degree");
  }
  const std::uint64_t q1 = sub_->group_order();
  const std::uint64_t step = sup_->group_order() / q1;
  const Coeffs& m = sub_->descriptor().modulus;
  for (std::uint64_t k = 1; k <= q1; ++k) {
    if (std::gcd(k, q1) != 1) continue;
    const FieldElement r = FieldElement::from_log((k * step) % sup_->group_order());
    FieldElement acc = FieldElement::zero();
    for (std::size_t i = m.size(); i-- > 0;) {
      acc = sup_->add(sup_->mul(acc, r), sup_->from_int(m[i]));
    }
    if (acc.is_zero()) {
      multiplier_ = (k * step) % sup_->group_order();
      return;
    }
  }
  throw std::logic_error("embed: no root of the subfield modulus found");
}

FieldElement Embedding::operator()(FieldElement x) const {
  if (x.is_zero()) return x;
  if (x.log() >= sub_->group_order()) throw std::out_of_range("embed: invalid element");
  return FieldElement::from_log(mulmod(x.log(), multiplier_, sup_->group_order()));
}

FieldElement Embedding::pull_back(FieldElement y) const {
  if (y.is_zero()) return y;
  const std::uint64_t q1 = sub_->group_order();
  const std::uint64_t step = sup_->group_order() / q1;
  if (y.log() % step != 0) throw std::invalid_argument("pull_back: element not in subfield");
  const std::uint64_t k = multiplier_ / step;
  const std::uint64_t k_inv = q1 == 1 ? 0 : inverse_mod(k % q1, q1);
  return FieldElement::from_log(mulmod(y.log() / step, k_inv, q1));
}

FieldElement embed(const FieldPtr& sub, const FieldPtr& sup, FieldElement x) {
  return Embedding(sub, sup)(x);
}

}  // namespace alttrace
