#include "alttrace/characters.hpp"

#include <stdexcept>

namespace alttrace {

CharacterContext::CharacterContext(FieldPtr base, FieldElement multiplier)
    : base_(std::move(base)), multiplier_(multiplier) {
  if (multiplier_.is_zero()) throw std::invalid_argument("psi multiplier must be nonzero");
  if (multiplier_.log() >= base_->group_order()) {
    throw std::invalid_argument("psi multiplier is not an element of the base field");
  }
}

Extension::Extension(const CharacterContext& ctx, int relative_degree)
    : field_(build_field(ctx.p(), ctx.base()->degree() * relative_degree)),
      embedding_(ctx.base(), field_),
      relative_degree_(relative_degree),
      multiplier_(embedding_(ctx.multiplier())) {
  if (relative_degree < 1) throw std::invalid_argument("extension degree must be >= 1");
}

int chi2(const FiniteField& field, FieldElement x) { return field.chi2(x); }

CycInt psi(const Extension& ext, FieldElement x) {
  return CycInt::zeta_power(ext.p(), ext.psi_exponent(x));
}

CycInt psi_via_relative_trace(const CharacterContext& ctx, const Extension& ext,
                              FieldElement x) {
  const FiniteField& L = *ext.field();
  const FieldElement down = L.trace_to(ctx.base()->degree(), x);
  const FieldElement in_k = ext.base_embedding().pull_back(down);
  const FiniteField& k = *ctx.base();
  return CycInt::zeta_power(ctx.p(), k.abs_trace(k.mul(ctx.multiplier(), in_k)));
}

int normalization_sign(const FiniteField& field, std::int64_t n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("n must be odd and positive");
  const std::int64_t d = (n - 1) / 2;
  FieldElement arg = field.from_int(n);
  if (arg.is_zero()) throw std::invalid_argument("n must be prime to p");
  if (d % 2 == 1) arg = field.neg(arg);
  return -field.chi2(arg);
}

GaussSum gauss_sum(const Extension& ext, std::optional<std::int64_t> n) {
  const FiniteField& L = *ext.field();
  const std::uint32_t p = L.p();
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint64_t i = 0; i < L.group_order(); ++i) {
    const FieldElement x = FieldElement::from_log(i);
    counts[ext.psi_exponent(x)] += L.chi2(x);
  }
  GaussSum out;
  out.field = L.descriptor();
  out.value = CycInt::from_exponent_counts(p, counts);
  out.n = n;
  if (n) {
    const int eps = normalization_sign(L, *n);
    // conj(g) = Σ ψ(-x) χ2(x) = χ2(-1)·g
    const int chi_minus_one = L.chi2(L.minus_one());
    out.a_value = out.value * mpz_class(eps);
    out.a_conj = out.value * mpz_class(eps * chi_minus_one);
  }
  return out;
}

std::vector<HasseDavenportRow> hasse_davenport_check(const CharacterContext& ctx,
                                                     std::int64_t n,
                                                     const std::vector<int>& degrees) {
  const GaussSum base = gauss_sum(Extension(ctx, 1), n);
  std::vector<HasseDavenportRow> rows;
  for (int d : degrees) {
    if (d < 1) throw std::invalid_argument("hasse_davenport_check: degrees must be >= 1");
    HasseDavenportRow row;
    row.degree = d;
    row.direct = gauss_sum(Extension(ctx, d), n).a_value;
    row.via_power = base.a_value.pow(static_cast<unsigned>(d));
    row.equal = row.direct == row.via_power;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace alttrace
