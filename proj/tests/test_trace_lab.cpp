#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "temp_dir.hpp"
#include "alttrace/errors.hpp"
#include "alttrace/trace_lab.hpp"

using namespace alttrace;

namespace {

SystemParams params(std::uint32_t p, int f, int f0 = 1, std::uint64_t c = 1) {
  SystemParams s;
  s.p = p;
  s.f = f;
  s.f0 = f0;
  s.psi_multiplier = c;
  return s;
}

// T(t) in floating point straight from the definition.
std::complex<double> float_trace(const TraceEngine& engine, FieldElement t) {
  const auto& L = engine.field();
  const auto& ext = engine.extension();
  const std::uint64_t n = static_cast<std::uint64_t>(engine.params().n());
  std::complex<double> s = 0;
  for (std::uint64_t i = 1; i < L.order(); ++i) {
    const auto x = L.from_index(i);
    const auto arg = L.add(L.pow(x, n), L.mul(t, x));
    s += static_cast<double>(L.chi2(x)) * oracle::zeta(L.p(), ext.psi_exponent(arg));
  }
  return -s / engine.gauss().a_value.to_complex();
}

}  // namespace

TEST_CASE("system parameters") {
  CHECK(params(3, 1).q() == 3);
  CHECK(params(3, 2).n() == 17);
  CHECK(params(5, 1).canonical() == "p=5 f=1 f0=1 psi=1");
  CHECK_THROWS_AS(params(4, 1).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(3, 0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(3, 1, 1, 0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(3, 1, 1, 3).validate(), std::invalid_argument);
  CHECK_NOTHROW(params(3, 1, 2, 8).validate());
}

TEST_CASE("regime by degree parity") {
  for (int d = 1; d <= 8; ++d) {
    const auto r = monodromy_regime(params(3, 1), d);
    if (d % 2 == 0) {
      CHECK(r.regime == Regime::Alt);
      CHECK(r.twist == Twist::Plain);
    } else {
      CHECK(r.regime == Regime::OddCoset);
      CHECK(r.twist == Twist::Sgn);
    }
    CHECK(monodromy_regime(params(5, 1), d).regime == Regime::Alt);
    CHECK(monodromy_regime(params(3, 1, 2), d).regime == Regime::Alt);
  }
}

TEST_CASE("bucket kernel matches term-by-term and floating point") {
  for (auto sp : {params(3, 1), params(3, 2), params(5, 1), params(3, 1, 2, 4), params(7, 1)}) {
    for (int d : {1, 2, 3}) {
      if (ipow(sp.p, sp.f0 * d) > 400) continue;
      CAPTURE(sp.canonical());
      CAPTURE(d);
      const TraceEngine engine(sp, d);
      const auto& L = engine.field();
      for (std::uint64_t i = 0; i < L.order(); ++i) {
        const auto t = L.from_index(i);
        CHECK(engine.raw_sum(t) == engine.raw_sum_naive(t));
        const auto e = engine.normalized_trace(t);
        const double v = e.value().get_d();
        const auto z = float_trace(engine, t);
        CHECK(std::abs(z - std::complex<double>(v, 0)) < 1e-6);
      }
    }
  }
}

TEST_CASE("F_9 traces at q = 3") {
  const TraceTable t = trace_table(params(3, 1), 2);
  CHECK(t.size() == 9);
  CHECK(t.all_integral());
  CHECK(t.integer_traces() == std::vector<std::int64_t>{1, -1, 2, 0, 0, -1, 0, -1, 0});
  CHECK(t.field.canonical() == "p=3 d=2 modulus=[2,1,1]");
}

TEST_CASE("traces are integers bounded by 2q - 1") {
  for (auto [sp, maxd] : {std::pair{params(3, 1), 6}, {params(5, 1), 4}, {params(3, 2), 4},
                         {params(7, 1), 3}, {params(3, 1, 2, 1), 3}, {params(3, 1, 1, 2), 5}}) {
    for (int d = 1; d <= maxd; ++d) {
      CAPTURE(sp.canonical());
      CAPTURE(d);
      const TraceTable table = trace_table(sp, d, 2);
      REQUIRE(table.all_integral());
      const auto values = table.integer_traces();
      std::int64_t sum = 0;
      std::int64_t sq = 0;
      for (auto v : values) {
        CHECK(std::llabs(v) <= sp.n());
        sum += v;
        sq += v * v;
      }
      // first moment vanishes; Parseval gives Σ T² = #L - 1
      CHECK(sum == 0);
      CHECK(sq == static_cast<std::int64_t>(table.size()) - 1);
      CHECK(empirical_moment(table, 1) == 0);
    }
  }
}

TEST_CASE("descent pullback") {
  for (auto sp : {params(3, 1), params(5, 1), params(3, 2)}) {
    for (int d : {1, 2, 3}) {
      const TraceEngine engine(sp, d);
      const auto& L = engine.field();
      for (std::uint64_t i = 1; i < L.order(); ++i) {
        const auto u = L.from_index(i);
        CHECK(engine.descent_trace(L.pow(u, static_cast<std::uint64_t>(sp.n()))) == -engine.raw_sum(u));
      }
      CHECK_THROWS_AS(engine.descent_trace(FieldElement::zero()), std::invalid_argument);
    }
  }
}

TEST_CASE("descent second moment matches") {
  // Σ_u |S(u)|² = Σ_t |D(t)|² · #{u : u^n = t}
  for (auto sp : {params(3, 1), params(5, 1)}) {
    for (int d : {2, 3}) {
      const TraceEngine engine(sp, d);
      const auto& L = engine.field();
      const std::uint64_t n = static_cast<std::uint64_t>(sp.n());
      std::vector<int> fibre(L.order(), 0);
      CycInt lhs(L.p()), rhs(L.p());
      for (std::uint64_t i = 1; i < L.order(); ++i) {
        const auto u = L.from_index(i);
        ++fibre[L.to_index(L.pow(u, n))];
        const CycInt s = engine.raw_sum(u);
        lhs += s * s.conj();
      }
      for (std::uint64_t i = 1; i < L.order(); ++i) {
        if (fibre[i] == 0) continue;
        const CycInt dt = engine.descent_trace(L.from_index(i));
        rhs += dt * dt.conj() * mpz_class(fibre[i]);
      }
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("tables do not depend on the thread count") {
  const TraceTable one = trace_table(params(3, 1), 6, 1);
  for (unsigned threads : {2u, 3u, 8u}) {
    const TraceTable many = trace_table(params(3, 1), 6, threads);
    CHECK(many.entries == one.entries);
    CHECK(serialize_table(many) == serialize_table(one));
  }
}

TEST_CASE("budget") {
  EngineOptions opts;
  opts.budget = 100;
  CHECK_THROWS_AS(TraceEngine(params(3, 1), 5, opts), BudgetExceeded);
  CHECK_NOTHROW(TraceEngine(params(3, 1), 4, opts));
  CHECK_THROWS_AS(TraceEngine(params(3, 1), 0), std::invalid_argument);
}

TEST_CASE("serialization round trip") {
  const TraceTable t = trace_table(params(5, 1), 2);
  const std::string text = serialize_table(t);
  CHECK(text.rfind("# alttrace 0.1.0 trace-table p=5 f=1 f0=1 psi=1 degree=2\n", 0) == 0);
  const TraceTable back = parse_table(text, params(5, 1), 2);
  CHECK(back.entries == t.entries);
  CHECK(back.field == t.field);
  CHECK_THROWS_AS(parse_table(text, params(5, 1), 3), CacheError);
  CHECK_THROWS_AS(parse_table(text, params(5, 1, 1, 2), 2), CacheError);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("cache store, load and tamper detection") {
  TempDir tmp;
  const TraceCache cache(tmp.path);
  const auto sp = params(3, 1);
  CHECK_FALSE(cache.load(sp, 3).has_value());
  const TraceTable computed = load_or_compute(sp, 3, 1, &cache);
  REQUIRE(std::filesystem::exists(cache.path_for(sp, 3)));
  CHECK(cache.path_for(sp, 3).filename() == "trace_p3_f1_f01_psi1_D3.csv");
  const auto loaded = cache.load(sp, 3);
  REQUIRE(loaded.has_value());
  CHECK(loaded->entries == computed.entries);
  CHECK(load_or_compute(sp, 3, 4, &cache).entries == computed.entries);

  // flip one numerator
  std::string text;
  {
    std::ifstream is(cache.path_for(sp, 3));
    std::stringstream ss;
    ss << is.rdbuf();
    text = ss.str();
  }
  const auto pos = text.find("\n1,");
  REQUIRE(pos != std::string::npos);
  std::string tampered = text;
  const auto comma = tampered.find(',', pos + 3);
  tampered.insert(comma, "0");
  {
    std::ofstream os(cache.path_for(sp, 3), std::ios::trunc);
    os << tampered;
  }
  CHECK_THROWS_AS(cache.load(sp, 3), CacheError);
  CHECK_THROWS_AS(load_or_compute(sp, 3, 1, &cache), CacheError);

  // truncated file
  {
    std::ofstream os(cache.path_for(sp, 3), std::ios::trunc);
    os << text.substr(0, text.size() / 2);
  }
  CHECK_THROWS_AS(cache.load(sp, 3), CacheError);
}

TEST_CASE("moment scan targets") {
  const MomentReport r = moment_scan(params(3, 1), 6, 1, nullptr);
  REQUIRE(r.rows.size() == 6);
  for (const auto& row : r.rows) {
    CHECK(row.targets[0] == 0);
    CHECK(row.targets[1] == 1);
    CHECK(row.targets[2] == (row.degree % 2 == 0 ? 1 : -1));
    CHECK(row.moments[1] == mpq_class(mpz_class(static_cast<unsigned long>(row.size - 1)),
                                      mpz_class(static_cast<unsigned long>(row.size))));
  }
  CHECK(r.rows[5].m3_deviation < r.rows[1].m3_deviation);
}
