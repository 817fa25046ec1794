#include "alttrace/algebra_checks.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "alttrace/errors.hpp"

namespace alttrace {

namespace {

constexpr std::uint64_t kMaxIdentityQ = 343;

FieldPtr identity_field(std::uint64_t q, std::uint32_t* p_out, int* f_out) {
  const auto [p, f] = split_prime_power(q);
  if (q > kMaxIdentityQ) throw std::invalid_argument("identity checks require q <= 343");
  *p_out = p;
  *f_out = f;
  return build_field(p, f);
}

std::vector<FieldElement> nonzero_elements(const FiniteField& field) {
  std::vector<FieldElement> out;
  for (std::uint64_t i = 0; i < field.group_order(); ++i) out.push_back(FieldElement::from_log(i));
  return out;
}

std::vector<FieldElement> all_elements(const FiniteField& field) {
  std::vector<FieldElement> out{FieldElement::zero()};
  for (auto e : nonzero_elements(field)) out.push_back(e);
  return out;
}

// Monic polynomials of the given degree over F_p, as coefficient lists.
std::vector<std::vector<std::uint32_t>> monic_polys(std::uint32_t p, int degree) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::uint64_t count = ipow(p, static_cast<unsigned>(degree));
  for (std::uint64_t c = 0; c < count; ++c) {
    std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(degree) + 1, 0);
    std::uint64_t rest = c;
    for (int i = 0; i < degree; ++i) {
      coeffs[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    coeffs[degree] = 1;
    out.push_back(std::move(coeffs));
  }
  return out;
}

FieldPoly from_prime_coeffs(const FieldPtr& prime, const std::vector<std::uint32_t>& c) {
  std::vector<FieldElement> coeffs;
  for (auto v : c) coeffs.push_back(prime->from_int(v));
  return FieldPoly(prime, std::move(coeffs));
}

std::vector<std::uint32_t> prime_coeff_list(const FieldPoly& poly) {
  std::vector<std::uint32_t> out;
  for (auto c : poly.coeffs()) out.push_back(static_cast<std::uint32_t>(poly.field()->to_index(c)));
  return out;
}

// Trial division by every monic polynomial of degree <= deg/2.
bool irreducible_over_prime(const FieldPoly& poly) {
  const int deg = poly.degree();
  if (deg < 1) return false;
  const std::uint32_t p = poly.field()->p();
  for (int e = 1; 2 * e <= deg; ++e) {
    for (const auto& c : monic_polys(p, e)) {
      if (poly.divmod(from_prime_coeffs(poly.field(), c)).second.is_zero()) return false;
    }
  }
  return true;
}

BivariatePoly x_var(const FieldPtr& f) { return BivariatePoly::term(f, 1, 0, f->one()); }
BivariatePoly y_var(const FieldPtr& f) { return BivariatePoly::term(f, 0, 1, f->one()); }

BivariatePoly split_product_form(const FieldPtr& fq) {
  BivariatePoly rhs = x_var(fq) * y_var(fq) * BivariatePoly::x_minus(fq, fq->minus_one());
  for (auto alpha : nonzero_elements(*fq)) {
    if (alpha == fq->minus_one()) continue;
    rhs = rhs * BivariatePoly::x_minus(fq, alpha).pow(2);
  }
  return rhs;
}

// Frobenius orbits of F_q∖{0,-1}, each as a list of elements.
std::vector<std::vector<FieldElement>> frobenius_orbits(const FiniteField& fq) {
  std::vector<std::vector<FieldElement>> orbits;
  std::set<FieldElement> seen;
  for (auto alpha : nonzero_elements(fq)) {
    if (alpha == fq.minus_one() || seen.count(alpha)) continue;
    std::vector<FieldElement> orbit;
    FieldElement beta = alpha;
    do {
      orbit.push_back(beta);
      seen.insert(beta);
      beta = fq.frobenius(beta);
    } while (beta != alpha);
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

BivariatePoly orbit_polynomial(const FieldPtr& fq, const std::vector<FieldElement>& orbit) {
  BivariatePoly h = BivariatePoly::term(fq, 0, 0, fq->one());
  for (auto beta : orbit) h = h * BivariatePoly::x_minus(fq, beta);
  return h;
}

std::vector<std::uint64_t> row_reduce(const FiniteField& field,
                                      std::vector<Coeffs> rows, int* rank) {
  const std::uint32_t p = field.p();
  const int d = field.degree();
  int r = 0;
  for (int col = d - 1; col >= 0 && r < static_cast<int>(rows.size()); --col) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    // scale to 1: inverse by Fermat
    std::uint64_t inv = 1, base = rows[r][col];
    for (std::uint64_t e = p - 2; e > 0; e >>= 1U) {
      if (e & 1U) inv = inv * base % p;
      base = base * base % p;
    }
    for (auto& v : rows[r]) v = static_cast<std::uint32_t>(v * inv % p);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const std::uint64_t factor = rows[i][col];
      for (int c = 0; c < d; ++c) {
        rows[i][c] = static_cast<std::uint32_t>((rows[i][c] + (p - factor) * rows[r][c]) % p);
      }
    }
    ++r;
  }
  *rank = r;
  std::vector<std::uint64_t> basis;
  for (int i = 0; i < r; ++i) basis.push_back(field.pack(rows[i]));
  return basis;
}

}  // namespace

// ---------------------------------------------------------------- FieldPoly

FieldPoly::FieldPoly(FieldPtr field, std::vector<FieldElement> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  trim();
}

FieldPoly FieldPoly::monomial(FieldPtr field, int degree, FieldElement c) {
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(degree) + 1);
  coeffs[degree] = c;
  return FieldPoly(std::move(field), std::move(coeffs));
}

FieldPoly FieldPoly::linear(FieldPtr field, FieldElement c) {
  const FieldElement one = field->one();
  return FieldPoly(std::move(field), {c, one});
}

void FieldPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement FieldPoly::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : FieldElement::zero();
}

FieldElement FieldPoly::leading() const {
  return coeffs_.empty() ? FieldElement::zero() : coeffs_.back();
}

FieldPoly FieldPoly::operator+(const FieldPoly& o) const {
  std::vector<FieldElement> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = field_->add(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  }
  return FieldPoly(field_, std::move(out));
}

FieldPoly FieldPoly::operator-(const FieldPoly& o) const {
  std::vector<FieldElement> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = field_->sub(coeff(static_cast<int>(i)), o.coeff(static_cast<int>(i)));
  }
  return FieldPoly(field_, std::move(out));
}

FieldPoly FieldPoly::operator*(const FieldPoly& o) const {
  if (is_zero() || o.is_zero()) return FieldPoly(field_);
  std::vector<FieldElement> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      out[i + j] = field_->add(out[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
    }
  }
  return FieldPoly(field_, std::move(out));
}

FieldPoly FieldPoly::pow(unsigned e) const {
  FieldPoly result(field_, {field_->one()});
  FieldPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

FieldPoly FieldPoly::derivative() const {
  std::vector<FieldElement> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    out.push_back(field_->mul(field_->from_int(static_cast<std::int64_t>(i)), coeffs_[i]));
  }
  return FieldPoly(field_, std::move(out));
}

FieldElement FieldPoly::evaluate(FieldElement x) const {
  FieldElement acc = FieldElement::zero();
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), coeffs_[i]);
  return acc;
}

std::pair<FieldPoly, FieldPoly> FieldPoly::divmod(const FieldPoly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<FieldElement> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {FieldPoly(field_), *this};
  std::vector<FieldElement> quot(static_cast<std::size_t>(degree() - dd) + 1);
  const FieldElement lead_inv = field_->inv(divisor.leading());
  for (int k = degree(); k >= dd; --k) {
    const FieldElement c = field_->mul(rem[k], lead_inv);
    if (c.is_zero()) continue;
    quot[k - dd] = c;
    for (int j = 0; j <= dd; ++j) {
      rem[k - dd + j] = field_->sub(rem[k - dd + j], field_->mul(c, divisor.coeffs_[j]));
    }
  }
  return {FieldPoly(field_, std::move(quot)), FieldPoly(field_, std::move(rem))};
}

// ------------------------------------------------------------ BivariatePoly

BivariatePoly::BivariatePoly(FieldPtr field) : field_(std::move(field)) {}

BivariatePoly BivariatePoly::term(FieldPtr field, int i, int j, FieldElement c) {
  BivariatePoly out(std::move(field));
  out.add_term(i, j, c);
  return out;
}

BivariatePoly BivariatePoly::x_minus(FieldPtr field, FieldElement a) {
  BivariatePoly out(field);
  out.add_term(1, 0, field->one());
  out.add_term(0, 1, field->neg(a));
  return out;
}

void BivariatePoly::add_term(int i, int j, FieldElement c) {
  if (c.is_zero()) return;
  auto it = terms_.find({i, j});
  if (it == terms_.end()) {
    terms_.emplace(Monomial{i, j}, c);
    return;
  }
  it->second = field_->add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
  BivariatePoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m.first, m.second, c);
  return out;
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
  BivariatePoly out(field_);
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      out.add_term(m1.first + m2.first, m1.second + m2.second, field_->mul(c1, c2));
    }
  }
  return out;
}

BivariatePoly BivariatePoly::pow(unsigned e) const {
  BivariatePoly result = term(field_, 0, 0, field_->one());
  for (unsigned i = 0; i < e; ++i) result = result * *this;
  return result;
}

bool BivariatePoly::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return t.first.first + t.first.second == degree; });
}

bool BivariatePoly::coefficients_in_prime_field() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return field_->to_index(t.second) < field_->p(); });
}

BivariatePoly BivariatePoly::descend(FieldPtr prime) const {
  if (prime->p() != field_->p() || prime->degree() != 1) {
    throw std::invalid_argument("descend: target must be the prime field");
  }
  BivariatePoly out(prime);
  for (const auto& [m, c] : terms_) {
    const std::uint64_t idx = field_->to_index(c);
    if (idx >= field_->p()) throw std::invalid_argument("descend: coefficient not in F_p");
    out.add_term(m.first, m.second, prime->from_int(static_cast<std::int64_t>(idx)));
  }
  return out;
}

FieldPoly BivariatePoly::at_y_one() const {
  int deg = 0;
  for (const auto& [m, c] : terms_) deg = std::max(deg, m.first);
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(deg) + 1);
  for (const auto& [m, c] : terms_) coeffs[m.first] = field_->add(coeffs[m.first], c);
  return FieldPoly(field_, std::move(coeffs));
}

FieldElement BivariatePoly::evaluate(const Embedding& emb, FieldElement x, FieldElement y) const {
  const FiniteField& L = *emb.sup();
  FieldElement acc = FieldElement::zero();
  for (const auto& [m, c] : terms_) {
    const FieldElement term = L.mul(emb(c), L.mul(L.pow(x, m.first), L.pow(y, m.second)));
    acc = L.add(acc, term);
  }
  return acc;
}

std::string BivariatePoly::first_difference(const BivariatePoly& o) const {
  std::set<Monomial> monomials;
  for (const auto& [m, c] : terms_) monomials.insert(m);
  for (const auto& [m, c] : o.terms_) monomials.insert(m);
  for (const auto& m : monomials) {
    auto a = terms_.find(m);
    auto b = o.terms_.find(m);
    const FieldElement ca = a == terms_.end() ? FieldElement::zero() : a->second;
    const FieldElement cb = b == o.terms_.end() ? FieldElement::zero() : b->second;
    if (ca != cb) {
      std::ostringstream os;
      os << "x^" << m.first << " y^" << m.second << ": " << field_->to_index(ca) << " vs "
         << o.field_->to_index(cb);
      return os.str();
    }
  }
  return "";
}

std::string BivariatePoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << '[' << field_->to_index(it->second) << "]x^" << it->first.first << "y^"
       << it->first.second;
  }
  return first ? "0" : os.str();
}

// ------------------------------------------------------------------- checks

std::uint32_t binomial_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t result = 1;
  while (n > 0 || k > 0) {
    const std::uint64_t ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // small binomial C(ni, ki) mod p by multiplicative formula with inverses
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < ki; ++i) {
      num = num * ((ni - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    std::uint64_t inv = 1, base = den;
    for (std::uint64_t e = p - 2; e > 0; e >>= 1U) {
      if (e & 1U) inv = inv * base % p;
      base = base * base % p;
    }
    result = result * (num * inv % p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(result);
}

std::pair<std::uint32_t, int> split_prime_power(std::uint64_t q) {
  if (q < 3) throw std::invalid_argument("q must be a power of an odd prime");
  const auto factors = prime_factors(q);
  if (factors.size() != 1 || factors[0] == 2) {
    throw std::invalid_argument("q must be a power of an odd prime");
  }
  const auto p = static_cast<std::uint32_t>(factors[0]);
  int f = 0;
  for (std::uint64_t r = q; r > 1; r /= p) ++f;
  return {p, f};
}

BivariatePoly power_sum_form(FieldPtr field, std::uint64_t q) {
  const std::uint64_t n = 2 * q - 1;
  const int ni = static_cast<int>(n);
  BivariatePoly out(field);
  out.add_term(ni, 0, field->one());
  out.add_term(0, ni, field->one());
  // (-x-y)^n = -(x+y)^n for odd n
  for (std::uint64_t i = 0; i <= n; ++i) {
    const std::uint32_t c = binomial_mod_p(n, i, field->p());
    out.add_term(static_cast<int>(i), static_cast<int>(n - i), field->neg(field->from_int(c)));
  }
  return out;
}

IdentityReport verify_identity_split(std::uint64_t q) {
  IdentityReport report;
  report.q = q;
  const FieldPtr fq = identity_field(q, &report.p, &report.f);
  const BivariatePoly lhs = power_sum_form(fq, q);
  const BivariatePoly rhs = split_product_form(fq);
  const int degree = static_cast<int>(2 * q - 1);
  report.homogeneous = lhs.is_homogeneous(degree) && rhs.is_homogeneous(degree);
  report.lhs_terms = lhs.size();
  report.rhs_terms = rhs.size();
  report.mismatch = lhs.first_difference(rhs);
  report.holds = report.mismatch.empty();
  return report;
}

std::vector<BivariatePoly> grouped_factors(std::uint64_t q, const FieldPtr& prime) {
  std::uint32_t p = 0;
  int f = 0;
  const FieldPtr fq = identity_field(q, &p, &f);
  std::vector<BivariatePoly> out;
  for (const auto& orbit : frobenius_orbits(*fq)) {
    out.push_back(orbit_polynomial(fq, orbit).descend(prime));
  }
  return out;
}

GroupedIdentityReport verify_identity_grouped(std::uint64_t q) {
  GroupedIdentityReport report;
  report.base.q = q;
  const FieldPtr fq = identity_field(q, &report.base.p, &report.base.f);
  const FieldPtr fp = build_field(report.base.p, 1);
  const int degree = static_cast<int>(2 * q - 1);

  BivariatePoly orbit_product = BivariatePoly::term(fq, 0, 0, fq->one());
  BivariatePoly h_squares = BivariatePoly::term(fp, 0, 0, fp->one());
  report.descends = true;
  report.all_irreducible = true;
  std::set<std::vector<std::uint32_t>> from_orbits;
  for (const auto& orbit : frobenius_orbits(*fq)) {
    const BivariatePoly h = orbit_polynomial(fq, orbit);
    orbit_product = orbit_product * h;
    report.orbit_sizes.push_back(static_cast<int>(orbit.size()));
    if (!h.coefficients_in_prime_field()) {
      report.descends = false;
      continue;
    }
    const BivariatePoly h_p = h.descend(fp);
    const FieldPoly univariate = h_p.at_y_one();
    report.all_irreducible = report.all_irreducible && irreducible_over_prime(univariate);
    report.degree_sum += univariate.degree();
    report.p_f.push_back(prime_coeff_list(univariate));
    from_orbits.insert(report.p_f.back());
    h_squares = h_squares * h_p.pow(2);
  }

  BivariatePoly linear_product = BivariatePoly::term(fq, 0, 0, fq->one());
  for (auto alpha : nonzero_elements(*fq)) {
    if (alpha == fq->minus_one()) continue;
    linear_product = linear_product * BivariatePoly::x_minus(fq, alpha);
  }
  report.product_matches_split = orbit_product == linear_product;
  report.descends = report.descends && linear_product.coefficients_in_prime_field();

  // Independent description: every monic irreducible of degree dividing f,
  // other than x and x + 1.
  std::set<std::vector<std::uint32_t>> enumerated;
  for (int e = 1; e <= report.base.f; ++e) {
    if (report.base.f % e != 0) continue;
    for (const auto& c : monic_polys(report.base.p, e)) {
      if (c == std::vector<std::uint32_t>{0, 1} || c == std::vector<std::uint32_t>{1, 1}) continue;
      if (irreducible_over_prime(from_prime_coeffs(fp, c))) enumerated.insert(c);
    }
  }
  report.matches_enumeration = enumerated == from_orbits;

  const BivariatePoly lhs = power_sum_form(fp, q);
  const BivariatePoly rhs =
      x_var(fp) * y_var(fp) * BivariatePoly::x_minus(fp, fp->minus_one()) * h_squares;
  report.base.homogeneous = lhs.is_homogeneous(degree) && rhs.is_homogeneous(degree);
  report.base.lhs_terms = lhs.size();
  report.base.rhs_terms = rhs.size();
  report.base.mismatch = lhs.first_difference(rhs);
  report.base.holds = report.base.mismatch.empty();
  return report;
}

DerivativeReport verify_derivative_steps(std::uint64_t q) {
  DerivativeReport report;
  report.q = q;
  std::uint32_t p = 0;
  int f = 0;
  const FieldPtr fq = identity_field(q, &p, &f);
  const std::uint64_t n = 2 * q - 1;

  // P(x) = x^n + 1 - (x+1)^n by binomial expansion
  std::vector<FieldElement> coeffs(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) {
    coeffs[i] = fq->neg(fq->from_int(binomial_mod_p(n, i, p)));
  }
  coeffs[0] = fq->add(coeffs[0], fq->one());
  coeffs[n] = fq->add(coeffs[n], fq->one());
  const FieldPoly P(fq, coeffs);

  report.degree = P.degree();
  report.leading_coefficient =
      P.is_zero() ? 0 : static_cast<std::uint32_t>(fq->to_index(P.leading()));
  report.degree_ok = report.degree == static_cast<int>(2 * q - 2) && report.leading_coefficient == 1;

  report.vanishes_on_fq = true;
  for (auto beta : all_elements(*fq)) {
    report.vanishes_on_fq = report.vanishes_on_fq && P.evaluate(beta).is_zero();
  }

  const FieldPoly x_plus_one = FieldPoly::linear(fq, fq->one());
  const FieldPoly expected_derivative =
      x_plus_one.pow(static_cast<unsigned>(n - 1)) -
      FieldPoly::monomial(fq, static_cast<int>(n - 1), fq->one());
  const FieldPoly dP = P.derivative();
  report.derivative_form_ok = dP == expected_derivative;

  report.derivative_vanishes = true;
  report.double_roots = true;
  FieldPoly product = FieldPoly::monomial(fq, 1, fq->one()) * x_plus_one;
  for (auto alpha : nonzero_elements(*fq)) {
    if (alpha == fq->minus_one()) continue;
    report.derivative_vanishes = report.derivative_vanishes && dP.evaluate(alpha).is_zero();
    const FieldPoly square = FieldPoly::linear(fq, fq->neg(alpha)).pow(2);
    report.double_roots = report.double_roots && P.divmod(square).second.is_zero();
    product = product * square;
  }
  report.factorization_ok = product == P;
  return report;
}

int span_rank(const FiniteField& field, const std::vector<std::uint64_t>& vectors,
              std::vector<std::uint64_t>* basis) {
  std::vector<Coeffs> rows;
  for (auto v : vectors) rows.push_back(field.unpack(v));
  int rank = 0;
  auto b = row_reduce(field, std::move(rows), &rank);
  if (basis) *basis = std::move(b);
  return rank;
}

WildInertiaReport wild_inertia_span(std::uint64_t q, int choice) {
  WildInertiaReport report;
  report.q = q;
  const auto [p, f] = split_prime_power(q);
  report.p = p;
  report.f = f;
  const FieldPtr field = build_field(p, 2 * f);
  const FiniteField& F = *field;
  report.field = F.descriptor();
  const std::uint64_t root_order = 2 * q - 2;
  const std::uint64_t step = F.group_order() / root_order;  // (q+1)/2

  int seen = -1;
  for (std::uint64_t k = 1; k < root_order; ++k) {
    if (std::gcd(k, root_order) != 1) continue;
    if (++seen == choice) {
      report.zeta_log = k * step;
      break;
    }
  }
  if (seen != choice) throw std::invalid_argument("wild_inertia_span: choice out of range");
  const FieldElement zeta = FieldElement::from_log(report.zeta_log);

  std::vector<std::uint64_t> roots;
  for (std::uint64_t j = 0; j < root_order; ++j) {
    roots.push_back(F.to_index(FieldElement::from_log(j * step)));
  }
  report.span_dimension = span_rank(F, roots, &report.basis);
  report.trace_zero = F.trace_to(f, zeta).is_zero();

  // F_q-basis 1, β, ..., β^{f-1} with β generating F_q^×, then ζ times it.
  const FieldElement beta = FieldElement::from_log(q + 1);
  std::vector<std::uint64_t> generators;
  for (int i = 0; i < f; ++i) generators.push_back(F.to_index(F.pow(beta, i)));
  for (int i = 0; i < f; ++i) generators.push_back(F.to_index(F.mul(zeta, F.pow(beta, i))));
  const int gen_rank = span_rank(F, generators);
  report.direct_sum = gen_rank == 2 * f;

  report.roots_in_decomposition = true;
  for (auto r : roots) {
    auto extended = generators;
    extended.push_back(r);
    report.roots_in_decomposition = report.roots_in_decomposition && span_rank(F, extended) == gen_rank;
  }
  auto combined = roots;
  combined.insert(combined.end(), generators.begin(), generators.end());
  report.decomposition_in_span = span_rank(F, combined) == report.span_dimension;
  return report;
}

GeneralSpanReport roots_of_unity_span(std::uint32_t p, std::int64_t n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("n must be odd and >= 3");
  if (n % p == 0 || (n - 1) % p == 0) throw std::invalid_argument("n(n-1) must be prime to p");
  GeneralSpanReport report;
  report.p = p;
  report.n = n;
  const auto m = static_cast<std::uint64_t>(n - 1);
  std::uint64_t power = p % m;
  int e = 1;
  while (power != 1 % m) {
    power = power * p % m;
    ++e;
  }
  report.field_degree = e;
  const FieldPtr field = build_field(p, e);
  const std::uint64_t step = field->group_order() / m;
  std::vector<std::uint64_t> roots;
  for (std::uint64_t j = 0; j < m; ++j) roots.push_back(field->to_index(FieldElement::from_log(j * step)));
  report.span_dimension = span_rank(*field, roots);
  return report;
}

std::vector<VirtualCharacterRow> virtual_character_values(std::uint64_t q) {
  split_prime_power(q);
  const auto qi = static_cast<std::int64_t>(q);
  auto reg = [&](bool zero) { return zero ? qi : std::int64_t{0}; };
  std::vector<VirtualCharacterRow> rows;
  for (bool a_zero : {true, false}) {
    for (bool b_zero : {true, false}) {
      VirtualCharacterRow row;
      row.first_zero = a_zero;
      row.second_zero = b_zero;
      row.value = reg(a_zero) + reg(b_zero) - 1;
      row.count = (a_zero ? 1 : q - 1) * (b_zero ? 1 : q - 1);
      row.label = std::string("(") + (a_zero ? "0" : "a") + "," + (b_zero ? "0" : "b") + ")";
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace alttrace
