#include "alttrace/compare.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace alttrace {

namespace {

constexpr std::size_t kMaxOffenders = 20;

std::string q_str(const mpq_class& v) { return v.get_str(); }

std::map<std::int64_t, std::uint64_t> histogram(const TraceTable& table) {
  std::map<std::int64_t, std::uint64_t> h;
  for (auto v : table.integer_traces()) ++h[v];
  return h;
}

}  // namespace

mpq_class MembershipResult::rate() const {
  if (checked == 0) return 1;
  mpq_class r(mpz_class(static_cast<unsigned long>(passed)), mpz_class(static_cast<unsigned long>(checked)));
  r.canonicalize();
  return r;
}

MembershipResult spectrum_membership(const TraceTable& table, const SpectrumTable& oracle) {
  MembershipResult out;
  const auto values = table.integer_traces();
  for (std::size_t i = 0; i < values.size(); ++i) {
    ++out.checked;
    const std::int64_t v = values[i];
    const bool in = v >= INT32_MIN && v <= INT32_MAX && oracle.contains(static_cast<int>(v));
    if (in) {
      ++out.passed;
    } else if (out.offenders.size() < kMaxOffenders) {
      out.offenders.emplace_back(i, v);
    }
  }
  return out;
}

mpq_class distribution_distance(const TraceTable& table, const SpectrumTable& oracle) {
  const auto hist = histogram(table);
  const mpz_class total = mpz_class(static_cast<unsigned long>(table.size()));
  std::set<std::int64_t> support;
  for (const auto& [v, c] : hist) support.insert(v);
  for (const auto& [v, pr] : oracle.probability) support.insert(v);
  mpq_class sum = 0;
  for (auto v : support) {
    mpq_class freq = 0;
    if (auto it = hist.find(v); it != hist.end()) {
      freq = mpq_class(mpz_class(static_cast<unsigned long>(it->second)), total);
    }
    mpq_class prob = 0;
    if (auto it = oracle.probability.find(static_cast<int>(v)); it != oracle.probability.end()) {
      prob = it->second;
    }
    sum += abs(freq - prob);
  }
  mpq_class out = sum / 2;
  out.canonicalize();
  return out;
}

VerdictRow verdict_row(const TraceTable& table, const Tolerances& tol, bool is_max_degree) {
  VerdictRow row;
  row.degree = table.degree;
  row.size = table.size();
  row.regime = monodromy_regime(table.params, table.degree);
  const GroupStats stats = build_stats(static_cast<int>(2 * table.params.q()));
  const SpectrumTable oracle = spectrum(stats, row.regime.regime, row.regime.twist);
  row.membership = spectrum_membership(table, oracle);
  row.tv = distribution_distance(table, oracle);
  row.m2 = empirical_moment(table, 2);
  row.m3 = empirical_moment(table, 3);
  row.m2_target = exact_moment(stats, row.regime.regime, row.regime.twist, 2);
  row.m3_target = exact_moment(stats, row.regime.regime, row.regime.twist, 3);
  row.m3_deviation = std::fabs(mpq_class(row.m3 - row.m3_target).get_d());
  row.m3_checked = row.size >= tol.m3_min_field;
  row.m3_ok = !row.m3_checked || row.m3_deviation <= tol.m3_max;
  row.tv_checked = is_max_degree && row.size >= tol.tv_min_field;
  row.tv_ok = !row.tv_checked || row.tv.get_d() <= tol.tv_max;
  return row;
}

VerdictReport verdict(const SystemParams& params, int max_degree, const Tolerances& tol,
                      const TraceCache* cache, unsigned threads, const EngineOptions& opts) {
  if (max_degree < 1) throw std::invalid_argument("max degree must be >= 1");
  VerdictReport report;
  report.params = params;
  report.max_degree = max_degree;
  report.tolerances = tol;
  for (int d = 1; d <= max_degree; ++d) {
    report.rows.push_back(
        verdict_row(load_or_compute(params, d, threads, cache, opts), tol, d == max_degree));
  }
  report.membership_ok = true;
  report.m3_ok = true;
  report.tv_ok = true;
  for (const auto& row : report.rows) {
    report.membership_ok = report.membership_ok && row.membership.passed == row.membership.checked;
    report.m3_ok = report.m3_ok && row.m3_ok;
    report.tv_ok = report.tv_ok && row.tv_ok;
  }
  report.tv_decreasing = max_degree == 1 || report.rows.back().tv < report.rows.front().tv;
  report.pass = report.membership_ok && report.m3_ok && report.tv_ok && report.tv_decreasing;
  return report;
}

std::string verdict_json(const VerdictReport& report, const std::string& generator) {
  nlohmann::ordered_json j;
  j["generator"] = generator;
  j["params"] = {{"p", report.params.p},
                 {"f", report.params.f},
                 {"f0", report.params.f0},
                 {"psi", report.params.psi_multiplier},
                 {"q", report.params.q()}};
  j["max_degree"] = report.max_degree;
  j["tolerances"] = {{"tv_max", report.tolerances.tv_max},
                     {"tv_min_field", report.tolerances.tv_min_field},
                     {"m3_max", report.tolerances.m3_max},
                     {"m3_min_field", report.tolerances.m3_min_field}};
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["degree"] = r.degree;
    row["size"] = r.size;
    row["parity"] = r.degree % 2 == 0 ? "even" : "odd";
    row["regime"] = to_string(r.regime.regime);
    row["twist"] = to_string(r.regime.twist);
    row["membership"] = {{"checked", r.membership.checked},
                         {"passed", r.membership.passed},
                         {"rate", q_str(r.membership.rate())}};
    auto offenders = nlohmann::ordered_json::array();
    for (const auto& [idx, v] : r.membership.offenders) offenders.push_back({{"t_index", idx}, {"trace", v}});
    row["membership"]["offenders"] = offenders;
    row["tv"] = q_str(r.tv);
    row["tv_approx"] = r.tv.get_d();
    row["m2"] = q_str(r.m2);
    row["m2_target"] = q_str(r.m2_target);
    row["m3"] = q_str(r.m3);
    row["m3_target"] = q_str(r.m3_target);
    row["m3_deviation"] = r.m3_deviation;
    row["m3_checked"] = r.m3_checked;
    row["m3_ok"] = r.m3_ok;
    row["tv_checked"] = r.tv_checked;
    row["tv_ok"] = r.tv_ok;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["membership_ok"] = report.membership_ok;
  j["m3_ok"] = report.m3_ok;
  j["tv_ok"] = report.tv_ok;
  j["tv_decreasing"] = report.tv_decreasing;
  j["verdict"] = report.pass ? "PASS" : "FAIL";
  return j.dump(2) + "\n";
}

std::string verdict_table(const VerdictReport& report) {
  std::ostringstream os;
  os << "params " << report.params.canonical() << " q=" << report.params.q()
     << " max_degree=" << report.max_degree << '\n';
  os << std::left << std::setw(4) << "D" << std::setw(10) << "#L" << std::setw(16) << "regime"
     << std::setw(10) << "member" << std::setw(10) << "TV" << std::setw(10) << "M2"
     << std::setw(10) << "M3" << std::setw(8) << "target" << "dev\n";
  os << std::fixed << std::setprecision(4);
  for (const auto& r : report.rows) {
    const std::string regime = to_string(r.regime.regime) + "/" + to_string(r.regime.twist);
    os << std::setw(4) << r.degree << std::setw(10) << r.size << std::setw(16) << regime
       << std::setw(10) << r.membership.rate().get_d() << std::setw(10) << r.tv.get_d()
       << std::setw(10) << r.m2.get_d() << std::setw(10) << r.m3.get_d() << std::setw(8)
       << r.m3_target.get_str() << r.m3_deviation << (r.m3_checked ? (r.m3_ok ? " ok" : " FAIL") : "")
       << '\n';
  }
  os << "membership " << (report.membership_ok ? "ok" : "FAIL") << ", m3 "
     << (report.m3_ok ? "ok" : "FAIL") << ", tv " << (report.tv_ok ? "ok" : "FAIL")
     << ", tv decreasing " << (report.tv_decreasing ? "ok" : "FAIL") << '\n';
  os << "verdict " << (report.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace alttrace
