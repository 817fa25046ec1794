#include "doctest.h"
#include "oracles.hpp"
#include "alttrace/group_oracle.hpp"

using namespace alttrace;

TEST_CASE("class sizes add up to m!") {
  for (int m = 1; m <= 12; ++m) {
    mpz_class total = 0, fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    mpz_class even = 0;
    for (const auto& c : enumerate_classes(m)) {
      total += c.size;
      if (c.sign == 1) even += c.size;
    }
    CHECK(total == fact);
    if (m >= 2) CHECK(even * 2 == fact);
  }
  CHECK(partitions(6).size() == 11);
  CHECK(partitions(10).size() == 42);
  CHECK(partitions(30).size() == 5604);
}

TEST_CASE("class moments match brute force over permutations") {
  for (int m = 5; m <= 8; ++m) {
    const GroupStats stats = build_stats(m);
    for (int power = 1; power <= 4; ++power) {
      CAPTURE(m);
      CAPTURE(power);
      CHECK(exact_moment(stats, Regime::Sym, Twist::Plain, power) ==
            oracle::brute_force_moment(m, 0, false, power));
      CHECK(exact_moment(stats, Regime::Alt, Twist::Plain, power) ==
            oracle::brute_force_moment(m, 1, false, power));
      CHECK(exact_moment(stats, Regime::OddCoset, Twist::Sgn, power) ==
            oracle::brute_force_moment(m, -1, true, power));
      CHECK(exact_moment(stats, Regime::OddCoset, Twist::Plain, power) ==
            oracle::brute_force_moment(m, -1, false, power));
    }
  }
}

TEST_CASE("Sym moments count singleton-free set partitions") {
  CHECK(oracle::singleton_free_partitions(2) == 1);
  CHECK(oracle::singleton_free_partitions(3) == 1);
  CHECK(oracle::singleton_free_partitions(4) == 4);
  CHECK(oracle::singleton_free_partitions(5) == 11);
  for (int m : {6, 10, 14}) {
    const GroupStats stats = build_stats(m);
    for (int power = 1; power <= 4; ++power) {
      CHECK(exact_moment(stats, Regime::Sym, Twist::Plain, power) ==
            mpq_class(oracle::singleton_free_partitions(power)));
    }
  }
}

TEST_CASE("third moments of the two cosets") {
  for (int q : {3, 5, 7}) {
    const GroupStats stats = build_stats(2 * q);
    CHECK(exact_moment(stats, Regime::Alt, Twist::Plain, 3) == 1);
    CHECK(exact_moment(stats, Regime::OddCoset, Twist::Sgn, 3) == -1);
    CHECK(exact_moment(stats, Regime::Alt, Twist::Plain, 2) == 1);
    CHECK(exact_moment(stats, Regime::OddCoset, Twist::Sgn, 2) == 1);
    CHECK(exact_moment(stats, Regime::Alt, Twist::Plain, 1) == 0);
  }
}

TEST_CASE("spectra") {
  const GroupStats s6 = build_stats(6);
  const SpectrumTable alt = spectrum(s6, Regime::Alt, Twist::Plain);
  mpq_class total = 0;
  for (const auto& [v, pr] : alt.probability) {
    total += pr;
    CHECK((v == -1 || v == 0 || v == 1 || v == 2 || v == 3 || v == 5));
  }
  CHECK(total == 1);
  CHECK(alt.contains(5));
  CHECK_FALSE(alt.contains(3));  // four fixed points means a transposition
  CHECK(alt.probability.at(5) == mpq_class(1, 360));

  const SpectrumTable odd = spectrum(s6, Regime::OddCoset, Twist::Sgn);
  total = 0;
  for (const auto& [v, pr] : odd.probability) total += pr;
  CHECK(total == 1);
  CHECK(odd.contains(-3));  // transposition: -(4 - 1)
  CHECK_FALSE(odd.contains(5));
}

TEST_CASE("hook lengths and Murnaghan-Nakayama") {
  CHECK(specht_dim(std::vector<int>{3, 2}) == 5);
  CHECK(specht_dim(std::vector<int>{4, 2, 1}) == 35);
  CHECK(specht_dim(std::vector<int>{}) == 1);
  CHECK_THROWS_AS(specht_dim(std::vector<int>{2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(specht_dim(std::vector<int>{2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(mn_character(std::vector<int>{3}, std::vector<int>{2}), std::invalid_argument);
  for (int m = 1; m <= 7; ++m) {
    const auto classes = enumerate_classes(m);
    const auto lambdas = partitions(m);
    mpz_class sum_sq = 0;
    for (const auto& lambda : lambdas) {
      const mpz_class dim = specht_dim(lambda);
      const Partition identity(m, 1);
      CHECK(mpz_class(static_cast<long>(mn_character(lambda, identity))) == dim);
      sum_sq += dim * dim;
      // row orthogonality: Σ |C| χ(C)² = m!
      mpz_class norm = 0;
      for (const auto& c : classes) {
        const long v = mn_character(lambda, c.cycle_type);
        norm += c.size * v * v;
      }
      mpz_class fact = 1;
      for (int i = 2; i <= m; ++i) fact *= i;
      CHECK(norm == fact);
    }
    mpz_class fact = 1;
    for (int i = 2; i <= m; ++i) fact *= i;
    CHECK(sum_sq == fact);
  }
  // the deleted permutation character
  for (const auto& c : enumerate_classes(6)) {
    CHECK(mn_character(std::vector<int>{5, 1}, c.cycle_type) == c.fix - 1);
    CHECK(mn_character(std::vector<int>{1, 1, 1, 1, 1, 1}, c.cycle_type) == c.sign);
  }
}

TEST_CASE("tensor square decomposition") {
  for (int n : {5, 9, 13}) {
    const auto r = tensor_square_check(n);
    CHECK(r.dims_ok);
    CHECK(r.formula_dims_match);
    CHECK(r.dim_sum == n * n);
    CHECK(r.ok());
  }
  const auto r5 = tensor_square_check(5);
  CHECK(r5.pointwise_checked);
  CHECK(r5.pointwise_ok);
  CHECK(r5.rows.size() == 11);
  CHECK_FALSE(tensor_square_check(13).pointwise_checked);
  CHECK_THROWS_AS(tensor_square_check(2), std::invalid_argument);
}

TEST_CASE("build_stats range") {
  CHECK_THROWS_AS(build_stats(4), std::invalid_argument);
  CHECK_THROWS_AS(build_stats(31), std::invalid_argument);
  CHECK_NOTHROW(build_stats(30));
}
