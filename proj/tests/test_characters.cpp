#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "alttrace/characters.hpp"

using namespace alttrace;

namespace {

struct Case {
  std::uint32_t p;
  int f0;
  std::uint64_t c;  // multiplier index in k
  int degree;
};

const std::vector<Case> kCases{{3, 1, 1, 1}, {3, 1, 2, 3}, {3, 1, 1, 4}, {3, 2, 1, 2},
                               {3, 2, 5, 1}, {5, 1, 1, 2}, {5, 1, 3, 3}, {7, 1, 1, 2},
                               {3, 1, 1, 6}, {11, 1, 1, 1}};

CharacterContext context(const Case& c) {
  auto k = build_field(c.p, c.f0);
  return CharacterContext(k, k->from_index(c.c));
}

}  // namespace

TEST_CASE("psi is additive and agrees with the relative-trace path") {
  for (const auto& c : kCases) {
    CAPTURE(c.p);
    CAPTURE(c.degree);
    const auto ctx = context(c);
    const Extension ext(ctx, c.degree);
    const auto& L = *ext.field();
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(L.order(), 300); ++i) {
      const auto x = L.from_index(i);
      const auto y = L.from_index((i * 5 + 1) % L.order());
      CHECK(psi(ext, L.add(x, y)) == psi(ext, x) * psi(ext, y));
      CHECK(psi(ext, x) == psi_via_relative_trace(ctx, ext, x));
    }
  }
}

TEST_CASE("character orthogonality") {
  for (const auto& c : kCases) {
    const Extension ext(context(c), c.degree);
    const auto& L = *ext.field();
    CycInt sum(ext.p());
    int chi_sum = 0;
    for (std::uint64_t i = 0; i < L.order(); ++i) {
      sum += psi(ext, L.from_index(i));
      chi_sum += chi2(L, L.from_index(i));
    }
    CHECK(sum.is_zero());
    CHECK(chi_sum == 0);
  }
}

TEST_CASE("Gauss sum magnitude and square") {
  for (const auto& c : kCases) {
    CAPTURE(c.p);
    CAPTURE(c.degree);
    const Extension ext(context(c), c.degree);
    const auto& L = *ext.field();
    const GaussSum g = gauss_sum(ext);
    const mpz_class size = static_cast<unsigned long>(L.order());
    const auto norm = (g.value * g.value.conj()).as_rational();
    REQUIRE(norm.has_value());
    CHECK(*norm == size);
    const auto sq = (g.value * g.value).as_rational();
    REQUIRE(sq.has_value());
    CHECK(*sq == chi2(L, L.minus_one()) * size);
    // conj(g) = χ2(-1)·g
    CHECK(g.value.conj() == g.value * mpz_class(chi2(L, L.minus_one())));
    // complex check straight from the definition
    std::complex<double> direct = 0;
    for (std::uint64_t i = 1; i < L.order(); ++i) {
      const auto x = L.from_index(i);
      direct += static_cast<double>(L.chi2(x)) * oracle::zeta(L.p(), ext.psi_exponent(x));
    }
    CHECK(std::abs(direct - g.value.to_complex()) < 1e-6 * (1 + std::abs(direct)));
  }
}

TEST_CASE("normalization constant A") {
  for (const auto& c : kCases) {
    const Extension ext(context(c), c.degree);
    const auto& L = *ext.field();
    for (std::int64_t n : {5, 9, 17}) {
      if (n % L.p() == 0) {
        CHECK_THROWS(gauss_sum(ext, n));
        continue;
      }
      const GaussSum g = gauss_sum(ext, n);
      const std::int64_t d = (n - 1) / 2;
      const auto sign_arg = L.mul(L.from_int(n), d % 2 == 0 ? L.one() : L.minus_one());
      const int eps = -L.chi2(sign_arg);
      CHECK(normalization_sign(L, n) == eps);
      CHECK(g.a_value == g.value * mpz_class(eps));
      CHECK(g.a_conj == g.a_value.conj());
    }
  }
}

TEST_CASE("Hasse-Davenport over F_3 and F_5") {
  {
    const CharacterContext ctx(build_field(3, 1));
    for (const auto& row : hasse_davenport_check(ctx, 5, {1, 2, 3, 4, 5, 6})) {
      CAPTURE(row.degree);
      CHECK(row.equal);
      CHECK(row.direct == row.via_power);
    }
  }
  {
    const CharacterContext ctx(build_field(5, 1));
    for (const auto& row : hasse_davenport_check(ctx, 9, {1, 2, 3, 4})) CHECK(row.equal);
  }
  {
    auto k = build_field(3, 2);
    const CharacterContext ctx(k, k->from_index(4));
    for (const auto& row : hasse_davenport_check(ctx, 17, {1, 2, 3})) CHECK(row.equal);
  }
}

TEST_CASE("minus one is a square exactly when #k = 1 mod 4") {
  CHECK_FALSE(CharacterContext(build_field(3, 1)).minus_one_is_square());
  CHECK(CharacterContext(build_field(3, 2)).minus_one_is_square());
  CHECK(CharacterContext(build_field(5, 1)).minus_one_is_square());
  CHECK_FALSE(CharacterContext(build_field(7, 1)).minus_one_is_square());
  for (auto [p, d] : {std::pair{3u, 1}, {3u, 2}, {5u, 1}, {7u, 1}, {3u, 3}}) {
    auto F = build_field(p, d);
    CHECK((F->chi2(F->minus_one()) == 1) == CharacterContext(F).minus_one_is_square());
  }
}

TEST_CASE("zero multiplier is rejected") {
  auto k = build_field(3, 1);
  CHECK_THROWS_AS(CharacterContext(k, FieldElement::zero()), std::invalid_argument);
}
