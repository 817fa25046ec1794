// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "oracles.hpp"
#include "temp_dir.hpp"
#include "alttrace/algebra_checks.hpp"
#include "alttrace/characters.hpp"
#include "alttrace/cli.hpp"
#include "alttrace/compare.hpp"
#include "alttrace/curve_oracle.hpp"
#include "alttrace/group_oracle.hpp"
#include "alttrace/trace_lab.hpp"

using namespace alttrace;

namespace {

// pinned tolerances
constexpr double kM3Tolerance = 0.2;
constexpr int kM3FromDegree = 7;
constexpr double kTvTolerance = 0.05;
constexpr double kRuntimeLimitSeconds = 600.0;

SystemParams params(std::uint32_t p, int f) {
  SystemParams s;
  s.p = p;
  s.f = f;
  return s;
}

struct Tables {
  std::vector<TraceTable> f3;  // degrees 1..8
  std::vector<TraceTable> f5;  // degrees 1..5
  double seconds = 0;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " [" << id << "] " << name << ": " << detail << std::endl;
  if (!ok) ++failures;
}

void guarded(int id, const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
  try {
    auto [ok, detail] = fn();
    report(id, name, ok, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  Tables tables;
  {
    const auto start = std::chrono::steady_clock::now();
    for (int d = 1; d <= 8; ++d) tables.f3.push_back(trace_table(params(3, 1), d, 1));
    for (int d = 1; d <= 5; ++d) tables.f5.push_back(trace_table(params(5, 1), d, 1));
    tables.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  guarded(1, "integrality", [&] {
    std::uint64_t total = 0, integral = 0;
    for (const auto* set : {&tables.f3, &tables.f5}) {
      for (const auto& t : *set) {
        total += t.size();
        for (const auto& e : t.entries) integral += e.is_integer ? 1 : 0;
      }
    }
    const bool ok = total == integral && tables.seconds < kRuntimeLimitSeconds;
    return std::pair{ok, std::to_string(integral) + "/" + std::to_string(total) +
                             " traces integral (F_3 deg 1-8, F_5 deg 1-5) in " +
                             fmt(tables.seconds, 2) + " s"};
  });

  guarded(2, "third moment", [&] {
    std::ostringstream detail;
    bool ok = true;
    std::vector<double> dev(9, 0.0);
    for (const auto& t : tables.f3) {
      const mpq_class m3 = empirical_moment(t, 3);
      const int target = t.degree % 2 == 0 ? 1 : -1;
      dev[t.degree] = std::fabs(m3.get_d() - target);
      ok = ok && monodromy_regime(t.params, t.degree).regime ==
                     (target == 1 ? Regime::Alt : Regime::OddCoset);
      if (t.degree >= kM3FromDegree) ok = ok && dev[t.degree] <= kM3Tolerance;
      detail << "D" << t.degree << "=" << fmt(m3.get_d(), 3) << " ";
    }
    const bool shrinking = std::max(dev[6], dev[8]) < std::min(dev[2], dev[4]);
    ok = ok && shrinking;
    const GroupStats s10 = build_stats(10);
    for (const auto& t : tables.f5) {
      const auto r = monodromy_regime(t.params, t.degree);
      ok = ok && exact_moment(s10, r.regime, r.twist, 3) == 1;
    }
    const double f5_dev = std::fabs(empirical_moment(tables.f5.back(), 3).get_d() - 1.0);
    ok = ok && f5_dev <= kM3Tolerance;
    detail << "| dev6,8 < dev2,4: " << (shrinking ? "yes" : "no") << " | F_5 D5 dev=" << fmt(f5_dev);
    return std::pair{ok, detail.str()};
  });

  guarded(3, "spectrum membership", [&] {
    std::uint64_t checked = 0, passed = 0;
    const GroupStats s6 = build_stats(6), s10 = build_stats(10);
    for (const auto& t : tables.f3) {
      const auto r = monodromy_regime(t.params, t.degree);
      const auto m = spectrum_membership(t, spectrum(s6, r.regime, r.twist));
      checked += m.checked;
      passed += m.passed;
    }
    for (const auto& t : tables.f5) {
      const auto r = monodromy_regime(t.params, t.degree);
      if (r.regime != Regime::Alt) return std::pair{false, std::string("F_5 left the Alt regime")};
      const auto m = spectrum_membership(t, spectrum(s10, r.regime, r.twist));
      checked += m.checked;
      passed += m.passed;
    }
    return std::pair{checked == passed, std::to_string(passed) + "/" + std::to_string(checked) +
                                            " traces in the oracle spectrum"};
  });

  guarded(4, "equidistribution proxy", [&] {
    const GroupStats s6 = build_stats(6);
    auto tv = [&](const TraceTable& t) {
      const auto r = monodromy_regime(t.params, t.degree);
      return distribution_distance(t, spectrum(s6, r.regime, r.twist));
    };
    const mpq_class tv8 = tv(tables.f3[7]);
    const mpq_class tv1 = tv(tables.f3[0]);
    const bool ok = tv8.get_d() <= kTvTolerance && tv8 < tv1;
    return std::pair{ok, "TV(D8)=" + fmt(tv8.get_d()) + " TV(D1)=" + fmt(tv1.get_d()) +
                             " tolerance " + fmt(kTvTolerance, 2)};
  });

  guarded(5, "polynomial identity", [&] {
    bool ok = true;
    std::ostringstream detail;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t q : {3, 5, 7, 9, 11, 25, 27}) {
      const auto split = verify_identity_split(q);
      const auto grouped = verify_identity_grouped(q);
      const auto deriv = verify_derivative_steps(q);
      const bool good = split.holds && split.homogeneous && grouped.ok() && deriv.ok();
      ok = ok && good;
      detail << "q=" << q << (good ? " ok" : " BAD") << " (deg P=" << deriv.degree << ") ";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    detail << "in " << fmt(secs, 2) << " s";
    return std::pair{ok, detail.str()};
  });

  guarded(6, "Gauss sum identities", [&] {
    int fields = 0;
    bool ok = true;
    auto check_field = [&](const SystemParams& sp, int d) {
      const Extension ext(make_context(sp), d);
      const auto& L = *ext.field();
      const GaussSum g = gauss_sum(ext);
      const mpz_class size = static_cast<unsigned long>(L.order());
      const auto norm = (g.value * g.value.conj()).as_rational();
      const auto sq = (g.value * g.value).as_rational();
      ok = ok && norm && *norm == size && sq && *sq == L.chi2(L.minus_one()) * size;
      ++fields;
    };
    for (int d = 1; d <= 8; ++d) check_field(params(3, 1), d);
    for (int d = 1; d <= 5; ++d) check_field(params(5, 1), d);
    for (int d = 1; d <= 4; ++d) check_field(params(3, 2), d);
    int hd = 0;
    for (const auto& row : hasse_davenport_check(CharacterContext(build_field(3, 1)), 5, {1, 2, 3, 4, 5, 6})) {
      ok = ok && row.equal;
      ++hd;
    }
    for (const auto& row : hasse_davenport_check(CharacterContext(build_field(5, 1)), 9, {1, 2, 3, 4})) {
      ok = ok && row.equal;
      ++hd;
    }
    return std::pair{ok, std::to_string(fields) + " fields with g*conj(g)=#L and g^2=chi2(-1)#L; " +
                             std::to_string(hd) + " Hasse-Davenport rows equal"};
  });

  guarded(7, "group oracle", [&] {
    bool ok = true;
    for (int q : {3, 5, 7}) {
      const GroupStats s = build_stats(2 * q);
      ok = ok && exact_moment(s, Regime::Alt, Twist::Plain, 3) == 1 &&
           exact_moment(s, Regime::OddCoset, Twist::Sgn, 3) == -1;
    }
    // q = 3 three ways
    const GroupStats s6 = build_stats(6);
    const bool brute = oracle::brute_force_moment(6, 1, false, 3) == 1 &&
                       oracle::brute_force_moment(6, -1, true, 3) == -1 &&
                       exact_moment(s6, Regime::Sym, Twist::Plain, 3) == oracle::brute_force_moment(6, 0, false, 3);
    bool partition_formula = true;
    for (int k = 1; k <= 4; ++k) {
      partition_formula = partition_formula && exact_moment(s6, Regime::Sym, Twist::Plain, k) ==
                                                   mpq_class(oracle::singleton_free_partitions(k));
    }
    // Sym(6) average of the two cosets; odd powers flip sign under the sgn twist
    const mpq_class sym3 = exact_moment(s6, Regime::Sym, Twist::Plain, 3);
    partition_formula = partition_formula &&
                        sym3 * 2 == exact_moment(s6, Regime::Alt, Twist::Plain, 3) -
                                        exact_moment(s6, Regime::OddCoset, Twist::Sgn, 3);
    bool tensor = true;
    for (int n : {5, 9, 13}) tensor = tensor && tensor_square_check(n).ok();
    const auto t5 = tensor_square_check(5);
    tensor = tensor && t5.pointwise_checked && t5.pointwise_ok;
    ok = ok && brute && partition_formula && tensor;
    return std::pair{ok, std::string("M3 = +1/-1 for q=3,5,7; brute force ") + (brute ? "ok" : "BAD") +
                             ", partition formula " + (partition_formula ? "ok" : "BAD") +
                             ", tensor square " + (tensor ? "ok" : "BAD")};
  });

  guarded(8, "wild inertia span", [&] {
    bool ok = true;
    std::ostringstream detail;
    for (std::uint64_t q : {3, 5, 9, 27}) {
      const auto w = wild_inertia_span(q);
      ok = ok && w.ok() && w.span_dimension == 2 * w.f && w.trace_zero;
      detail << "q=" << q << " dim=" << w.span_dimension << "/" << 2 * w.f
             << (w.trace_zero ? " tr=0 " : " tr!=0 ");
    }
    return std::pair{ok, detail.str()};
  });

  guarded(9, "curve-oracle consistency", [&] {
    bool ok = true;
    double worst = 0;
    int rows = 0;
    for (auto [sp, maxd, set] : {std::tuple{params(3, 1), 4, &tables.f3}, {params(5, 1), 2, &tables.f5}}) {
      for (int d = 1; d <= maxd; ++d) {
        const auto r = modified_third_moment(sp, d, count_points(sp, d), (*set)[d - 1]);
        ok = ok && r.within_bound && r.fiber_sum_ok;
        worst = std::max(worst, std::fabs(r.difference.get_d()) / r.bound);
        ++rows;
      }
    }
    return std::pair{ok, std::to_string(rows) + " fields, fibre sums exact, worst |diff|/bound=" + fmt(worst)};
  });

  guarded(10, "determinism", [&] {
    TempDir tmp;
    std::vector<std::filesystem::path> dirs;
    for (int threads : {1, 4, 8}) {
      const auto dir = tmp.path / ("threads" + std::to_string(threads));
      std::ostringstream out, err;
      const int code = run_cli({"all", "--p", "3", "--f", "1", "--max-degree", "8", "--threads",
                                std::to_string(threads), "--out-dir", dir.string()},
                               out, err);
      if (code != 0) return std::pair{false, "all exited with " + std::to_string(code) + ": " + err.str()};
      dirs.push_back(dir);
    }
    int files = 0;
    bool same = true;
    for (const auto& entry : std::filesystem::directory_iterator(dirs[0])) {
      ++files;
      const std::string ref = slurp(entry.path());
      for (std::size_t i = 1; i < dirs.size(); ++i) same = same && ref == slurp(dirs[i] / entry.path().filename());
    }
    for (const auto& dir : dirs) {
      same = same && std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == files;
    }
    return std::pair{same && files > 0, std::to_string(files) + " files byte-identical across 1, 4, 8 threads"};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
