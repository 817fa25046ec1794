#include "doctest.h"
#include "oracles.hpp"
#include "alttrace/characters.hpp"
#include "alttrace/curve_oracle.hpp"
#include "alttrace/errors.hpp"

using namespace alttrace;

namespace {

SystemParams params(std::uint32_t p, int f) {
  SystemParams s;
  s.p = p;
  s.f = f;
  return s;
}

// (χ2(-1)/g)³ Σ_{x+y+z=0} ψ(x^n + y^n + z^n) χ2(xyz), optionally only over
// pairs off the lines x = αy (α ∈ F_q), which needs F_q ⊂ L.
mpq_class triple_sum(const SystemParams& sp, int degree, bool off_lines) {
  const Extension ext(make_context(sp), degree);
  const auto& L = *ext.field();
  const std::uint64_t n = static_cast<std::uint64_t>(sp.n());
  const auto Fq = build_field(sp.p, sp.f);
  std::vector<FieldElement> lines;
  for (std::uint64_t i = 1; i < Fq->order(); ++i) {
    const auto a = Fq->from_index(i);
    if (a != Fq->minus_one()) lines.push_back(embed(Fq, ext.field(), a));
  }
  std::vector<std::int64_t> counts(L.p(), 0);
  for (std::uint64_t i = 0; i < L.order(); ++i) {
    for (std::uint64_t j = 0; j < L.order(); ++j) {
      const auto x = L.from_index(i), y = L.from_index(j);
      const auto z = L.neg(L.add(x, y));
      const int chi = L.chi2(x) * L.chi2(y) * L.chi2(z);
      if (chi == 0) continue;
      if (off_lines) {
        bool on_line = false;
        for (auto a : lines) on_line = on_line || L.sub(x, L.mul(a, y)).is_zero();
        if (on_line) continue;
      }
      const std::uint32_t e =
          (ext.psi_exponent(L.pow(x, n)) + ext.psi_exponent(L.pow(y, n)) + ext.psi_exponent(L.pow(z, n))) % L.p();
      counts[e] += chi;
    }
  }
  const GaussSum g = gauss_sum(ext);
  const CycInt scaled = g.value.conj().pow(3) * CycInt::from_exponent_counts(L.p(), counts) *
                        mpz_class(L.chi2(L.minus_one()));
  const auto num = scaled.as_rational();
  REQUIRE(num.has_value());
  const mpz_class size = static_cast<unsigned long>(L.order());
  mpq_class out(*num, size * size * size);
  out.canonicalize();
  return out;
}

}  // namespace

TEST_CASE("fibre sums and the zero fibre") {
  for (auto [sp, maxd] : {std::pair{params(3, 1), 5}, {params(5, 1), 3}, {params(3, 2), 4}, {params(7, 1), 2}}) {
    for (int d = 1; d <= maxd; ++d) {
      const CurveCount c = count_points(sp, d, 2);
      const std::uint64_t size = c.counts.size();
      CHECK(c.total() == size * size);
      CHECK(c.counts[0] >= 3 * size - 2);
    }
  }
}

TEST_CASE("counts are invariant under t -> λ^n t") {
  for (auto [sp, d] : {std::pair{params(3, 1), 3}, {params(3, 1), 4}, {params(3, 2), 2}, {params(5, 1), 2}}) {
    const CurveCount c = count_points(sp, d);
    const auto L = build_field(sp.p, sp.f0 * d);
    const std::uint64_t n = static_cast<std::uint64_t>(sp.n());
    for (std::uint64_t li = 1; li < L->order(); ++li) {
      const auto scale = L->pow(L->from_index(li), n);
      for (std::uint64_t ti = 1; ti < L->order(); ++ti) {
        const auto t = L->from_index(ti);
        CHECK(c.counts[ti] == c.counts[L->to_index(L->mul(scale, t))]);
      }
    }
  }
}

TEST_CASE("curve form equals the split product when F_q sits in L") {
  for (auto [sp, d] : {std::pair{params(3, 2), 2}, {params(3, 2), 4}, {params(5, 1), 2}}) {
    const auto L = build_field(sp.p, sp.f0 * d);
    const auto Fq = build_field(sp.p, sp.f);
    const CurveForm form(sp.q(), L);
    for (std::uint64_t i = 0; i < L->order(); ++i) {
      for (std::uint64_t j = 0; j < L->order(); j += 3) {
        const auto x = L->from_index(i), y = L->from_index(j);
        FieldElement v = L->mul(L->mul(x, y), L->add(x, y));
        for (std::uint64_t a = 1; a < Fq->order(); ++a) {
          const auto alpha = Fq->from_index(a);
          if (alpha == Fq->minus_one()) continue;
          const auto h = L->sub(x, L->mul(embed(Fq, L, alpha), y));
          v = L->mul(v, L->mul(h, h));
        }
        CHECK(form(x, y) == v);
      }
    }
  }
}

TEST_CASE("modified moment matches the triple sum") {
  for (auto [sp, d] : {std::pair{params(3, 1), 2}, {params(3, 2), 2}, {params(3, 2), 4}, {params(3, 1), 3}, {params(5, 1), 2}}) {
    CAPTURE(sp.canonical());
    CAPTURE(d);
    const CurveCount c = count_points(sp, d);
    const TraceTable t = trace_table(sp, d);
    const auto r = modified_third_moment(sp, d, c, t);
    CHECK(r.modified == triple_sum(sp, d, true));
    CHECK(r.direct == triple_sum(sp, d, false));
    CHECK(r.fiber_sum_ok);
    CHECK(r.within_bound);
  }
}

TEST_CASE("modified moment is within q/sqrt(#L) of M3") {
  for (auto [sp, maxd] : {std::pair{params(3, 1), 4}, {params(5, 1), 2}, {params(3, 2), 3}}) {
    for (int d = 1; d <= maxd; ++d) {
      const auto r = modified_third_moment(sp, d, count_points(sp, d), trace_table(sp, d));
      CHECK(r.within_bound);
      CHECK(std::abs(r.difference.get_d()) <= r.bound);
      CHECK(r.modified.get_den() > 0);
    }
  }
}

TEST_CASE("curve counting is thread independent and budgeted") {
  const auto one = count_points(params(3, 1), 5, 1);
  CHECK(count_points(params(3, 1), 5, 3).counts == one.counts);
  CHECK(count_points(params(3, 1), 5, 8).counts == one.counts);
  CHECK_THROWS_AS(count_points(params(3, 1), 8), BudgetExceeded);
  CurveOptions big;
  big.max_field_size = 10;
  CHECK_THROWS_AS(count_points(params(3, 1), 3, 1, big), BudgetExceeded);
}

TEST_CASE("mismatched inputs are rejected") {
  const auto c = count_points(params(3, 1), 2);
  CHECK_THROWS_AS(modified_third_moment(params(3, 1), 2, c, trace_table(params(3, 1), 3)),
                  std::invalid_argument);
}

TEST_CASE("count CSV") {
  const auto text = serialize_counts(count_points(params(3, 1), 1));
  CHECK(text.rfind("# alttrace 0.1.0 curves p=3 f=1 f0=1 psi=1 degree=1\nt_index,count\n", 0) == 0);
}
