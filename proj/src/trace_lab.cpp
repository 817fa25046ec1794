#include "alttrace/trace_lab.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "alttrace/errors.hpp"
#include "alttrace/version.hpp"

namespace alttrace {

namespace {

Extension checked_extension(const SystemParams& params, int degree, const EngineOptions& opts) {
  params.validate();
  if (degree < 1) throw std::invalid_argument("extension degree must be >= 1");
  std::uint64_t size = 0;
  try {
    size = ipow(params.p, static_cast<unsigned>(params.f0 * degree));
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("field size overflows 64 bits");
  }
  if (size > opts.budget) {
    throw BudgetExceeded("field of size " + std::to_string(size) + " exceeds budget " +
                         std::to_string(opts.budget));
  }
  return Extension(make_context(params), degree);
}

std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

std::string header_line(const SystemParams& params, int degree) {
  return std::string("# ") + kToolName + " " + kVersion + " trace-table " + params.canonical() +
         " degree=" + std::to_string(degree);
}

}  // namespace

std::uint64_t SystemParams::q() const { return ipow(p, static_cast<unsigned>(f)); }

void SystemParams::validate() const {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (f < 1) throw std::invalid_argument("f must be >= 1");
  if (f0 < 1) throw std::invalid_argument("f0 must be >= 1");
  if (psi_multiplier == 0) throw std::invalid_argument("psi multiplier must be nonzero");
  if (psi_multiplier >= ipow(p, static_cast<unsigned>(f0))) {
    throw std::invalid_argument("psi multiplier is not an element index of k");
  }
}

std::string SystemParams::canonical() const {
  return "p=" + std::to_string(p) + " f=" + std::to_string(f) + " f0=" + std::to_string(f0) +
         " psi=" + std::to_string(psi_multiplier);
}

CharacterContext make_context(const SystemParams& params) {
  params.validate();
  FieldPtr k = build_field(params.p, params.f0);
  return CharacterContext(k, k->from_index(params.psi_multiplier));
}

MonodromyRegime monodromy_regime(const SystemParams& params, int degree) {
  const bool minus_one_square = ipow(params.p, static_cast<unsigned>(params.f0)) % 4 == 1;
  if (minus_one_square || degree % 2 == 0) return {Regime::Alt, Twist::Plain};
  return {Regime::OddCoset, Twist::Sgn};
}

mpq_class TraceEntry::value() const {
  mpq_class v(numerator, denominator);
  v.canonicalize();
  return v;
}

bool TraceTable::all_integral() const {
  for (const auto& e : entries) {
    if (!e.is_integer) return false;
  }
  return true;
}

std::vector<std::int64_t> TraceTable::integer_traces() const {
  std::vector<std::int64_t> out;
  out.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (!e.is_integer) {
      throw InvariantViolation("non-integral trace at t_index=" + std::to_string(i) + " on " +
                               field.canonical() + ": " + e.value().get_str());
    }
    const mpz_class v = e.numerator / e.denominator;
    out.push_back(v.get_si());
  }
  return out;
}

TraceEngine::TraceEngine(const SystemParams& params, int degree, const EngineOptions& opts)
    : params_(params),
      degree_(degree),
      ext_(checked_extension(params, degree, opts)),
      gauss_(gauss_sum(ext_, params.n())) {
  const FiniteField& L = field();
  const std::uint64_t n_mod = static_cast<std::uint64_t>(params_.n()) % L.group_order();
  xn_exponent_.resize(L.group_order());
  for (std::uint64_t i = 0; i < L.group_order(); ++i) {
    const FieldElement xn = FieldElement::from_log(i * n_mod % L.group_order());
    xn_exponent_[i] = ext_.psi_exponent(xn);
  }
}

std::vector<std::int64_t> TraceEngine::bucket_counts(FieldElement t) const {
  const FiniteField& L = field();
  const std::uint32_t p = L.p();
  const std::uint64_t n = L.group_order();
  std::vector<std::int64_t> counts(p, 0);
  if (t.is_zero()) {
    for (std::uint64_t i = 0; i < n; ++i) {
      counts[xn_exponent_[i]] += 1 - 2 * static_cast<std::int64_t>(i & 1U);
    }
    return counts;
  }
  // ψ(x^n + t x) = ζ^{Tr(c x^n) + Tr(c t x)}; log(c t x) = log(c t) + log x.
  const auto tr = L.abs_trace_table();
  const std::uint64_t shift = L.mul(ext_.multiplier(), t).log();
  std::uint64_t idx = shift;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint32_t a = xn_exponent_[i] + tr[idx];
    if (a >= p) a -= p;
    counts[a] += 1 - 2 * static_cast<std::int64_t>(i & 1U);
    if (++idx == n) idx = 0;
  }
  return counts;
}

CycInt TraceEngine::raw_sum(FieldElement t) const {
  const auto counts = bucket_counts(t);
  return CycInt::from_exponent_counts(field().p(), counts);
}

CycInt TraceEngine::raw_sum_naive(FieldElement t) const {
  const FiniteField& L = field();
  const std::int64_t n = params_.n();
  CycInt sum(L.p());
  for (std::uint64_t idx = 0; idx < L.order(); ++idx) {
    const FieldElement x = L.from_index(idx);
    const int chi = L.chi2(x);
    if (chi == 0) continue;
    const FieldElement arg = L.add(L.pow(x, static_cast<std::uint64_t>(n)), L.mul(t, x));
    const CycInt term = psi(ext_, arg);
    if (chi > 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

CycInt TraceEngine::scaled_numerator(FieldElement t) const {
  return -(raw_sum(t) * gauss_.a_conj);
}

TraceEntry TraceEngine::normalized_trace(FieldElement t) const {
  const CycInt numerator = scaled_numerator(t);
  const auto rational = numerator.as_rational();
  if (!rational) {
    throw InvariantViolation("non-rational trace numerator at t_index=" +
                             std::to_string(field().to_index(t)) + " on " +
                             field().descriptor().canonical() + ": " + numerator.to_string());
  }
  TraceEntry e;
  e.numerator = *rational;
  e.denominator = field().order();
  e.is_integer = mpz_divisible_p(e.numerator.get_mpz_t(), e.denominator.get_mpz_t()) != 0;
  return e;
}

CycInt TraceEngine::descent_trace(FieldElement t) const {
  if (t.is_zero()) throw std::invalid_argument("descent_trace: t must be nonzero");
  const FiniteField& L = field();
  const std::uint32_t p = L.p();
  const std::uint64_t n = L.group_order();
  const auto tr = L.abs_trace_table();
  const std::uint64_t n_mod = static_cast<std::uint64_t>(params_.n()) % n;
  const std::uint64_t c_log = ext_.multiplier().log();
  const std::int64_t chi_t = L.chi2(t);
  std::vector<std::int64_t> counts(p, 0);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t l1 = (c_log + i * n_mod % n + n - t.log()) % n;  // c x^n / t
    const std::uint64_t l2 = (c_log + i) % n;                            // c x
    std::uint32_t a = tr[l1] + tr[l2];
    if (a >= p) a -= p;
    counts[a] -= chi_t * (1 - 2 * static_cast<std::int64_t>(i & 1U));
  }
  return CycInt::from_exponent_counts(p, counts);
}

std::optional<mpz_class> TraceEngine::descent_trace_rational(FieldElement t) const {
  return descent_trace(t).as_rational();
}

TraceTable TraceEngine::table(unsigned threads) const {
  const auto start = std::chrono::steady_clock::now();
  const FiniteField& L = field();
  const std::uint64_t size = L.order();
  TraceTable out;
  out.params = params_;
  out.degree = degree_;
  out.field = L.descriptor();
  out.entries.resize(size);
  out.strategy = "bucket-count";

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(size)));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    const std::uint64_t lo = size * w / threads;
    const std::uint64_t hi = size * (w + 1) / threads;
    try {
      for (std::uint64_t idx = lo; idx < hi; ++idx) {
        out.entries[idx] = normalized_trace(L.from_index(idx));
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

TraceTable trace_table(const SystemParams& params, int degree, unsigned threads,
                       const EngineOptions& opts) {
  return TraceEngine(params, degree, opts).table(threads);
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize_table(const TraceTable& table) {
  std::string payload;
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const auto& e = table.entries[i];
    payload += std::to_string(i);
    payload += ',';
    payload += e.numerator.get_str();
    payload += ',';
    payload += e.denominator.get_str();
    payload += e.is_integer ? ",1\n" : ",0\n";
  }
  std::ostringstream os;
  os << header_line(table.params, table.degree) << '\n';
  os << "field=" << table.field.canonical() << " psi=" << table.params.psi_multiplier
     << " n=" << table.params.n() << '\n';
  os << "t_index,numerator,denominator,is_integer\n";
  os << payload;
  os << "checksum=fnv1a64:" << hex64(fnv1a64(payload)) << '\n';
  return os.str();
}

TraceTable parse_table(const std::string& text, const SystemParams& params, int degree) {
  std::istringstream in(text);
  std::string line;
  auto next = [&](const char* what) {
    if (!std::getline(in, line)) throw CacheError(std::string("truncated cache file: ") + what);
  };
  next("header");
  if (line != header_line(params, degree)) throw CacheError("cache header mismatch: " + line);
  next("field");
  const std::string field_prefix = "field=";
  if (line.rfind(field_prefix, 0) != 0) throw CacheError("cache field line malformed");
  const std::string suffix = " psi=" + std::to_string(params.psi_multiplier) +
                             " n=" + std::to_string(params.n());
  if (line.size() < suffix.size() ||
      line.compare(line.size() - suffix.size(), suffix.size(), suffix) != 0) {
    throw CacheError("cache field line does not match parameters");
  }
  const std::string descriptor =
      line.substr(field_prefix.size(), line.size() - field_prefix.size() - suffix.size());
  next("columns");
  if (line != "t_index,numerator,denominator,is_integer") throw CacheError("cache columns");

  TraceTable table;
  table.params = params;
  table.degree = degree;
  table.strategy = "cache";
  std::string payload;
  bool have_checksum = false;
  std::string checksum_line;
  while (std::getline(in, line)) {
    if (line.rfind("checksum=", 0) == 0) {
      have_checksum = true;
      checksum_line = line;
      break;
    }
    payload += line;
    payload += '\n';
    std::istringstream row(line);
    std::string idx, num, den, flag;
    if (!std::getline(row, idx, ',') || !std::getline(row, num, ',') ||
        !std::getline(row, den, ',') || !std::getline(row, flag)) {
      throw CacheError("malformed cache row: " + line);
    }
    if (idx != std::to_string(table.entries.size())) throw CacheError("cache rows out of order");
    TraceEntry e;
    try {
      e.numerator = mpz_class(num);
      e.denominator = mpz_class(den);
    } catch (const std::invalid_argument&) {
      throw CacheError("malformed number in cache row: " + line);
    }
    if (flag != "0" && flag != "1") throw CacheError("malformed integrality flag: " + line);
    e.is_integer = flag == "1";
    if (e.denominator <= 0 || e.is_integer != (e.numerator % e.denominator == 0)) {
      throw CacheError("inconsistent cache row: " + line);
    }
    table.entries.push_back(std::move(e));
  }
  if (!have_checksum) throw CacheError("cache file has no checksum line");
  if (std::getline(in, line)) throw CacheError("trailing data after cache checksum");
  if (checksum_line != "checksum=fnv1a64:" + hex64(fnv1a64(payload))) {
    throw CacheError("cache checksum mismatch");
  }
  const std::uint64_t expected = ipow(params.p, static_cast<unsigned>(params.f0 * degree));
  if (table.entries.size() != expected) throw CacheError("cache row count mismatch");
  const FieldPtr L = build_field(params.p, params.f0 * degree);
  if (L->descriptor().canonical() != descriptor) throw CacheError("cache field mismatch");
  table.field = L->descriptor();
  return table;
}

TraceCache::TraceCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path TraceCache::path_for(const SystemParams& params, int degree) const {
  return dir_ / ("trace_p" + std::to_string(params.p) + "_f" + std::to_string(params.f) +
                 "_f0" + std::to_string(params.f0) + "_psi" +
                 std::to_string(params.psi_multiplier) + "_D" + std::to_string(degree) +
                 ".csv");
}

void TraceCache::store(const TraceTable& table) const {
  std::filesystem::create_directories(dir_);
  const auto path = path_for(table.params, table.degree);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write cache file " + tmp);
    out << serialize_table(table);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<TraceTable> TraceCache::load(const SystemParams& params, int degree) const {
  const auto path = path_for(params, degree);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_table(buf.str(), params, degree);
  } catch (const CacheError& e) {
    throw CacheError(path.string() + ": " + e.what());
  }
}

TraceTable load_or_compute(const SystemParams& params, int degree, unsigned threads,
                           const TraceCache* cache, const EngineOptions& opts) {
  if (cache) {
    if (auto hit = cache->load(params, degree)) return std::move(*hit);
  }
  TraceTable table = trace_table(params, degree, threads, opts);
  if (cache) cache->store(table);
  return table;
}

mpq_class empirical_moment(const TraceTable& table, int m) {
  if (m < 1 || m > 4) throw std::invalid_argument("empirical_moment: m must be in 1..4");
  mpq_class sum = 0;
  for (const auto& e : table.entries) {
    const mpq_class v = e.value();
    mpq_class vp = 1;
    for (int i = 0; i < m; ++i) vp *= v;
    sum += vp;
  }
  mpq_class out = sum / mpq_class(mpz_class(table.entries.size()));
  out.canonicalize();
  return out;
}

MomentRow moment_row(const TraceTable& table) {
  MomentRow row;
  row.degree = table.degree;
  row.size = table.size();
  row.odd_degree = table.degree % 2 == 1;
  row.regime = monodromy_regime(table.params, table.degree);
  const GroupStats stats = build_stats(static_cast<int>(2 * table.params.q()));
  for (int m = 1; m <= 4; ++m) {
    row.moments[m - 1] = empirical_moment(table, m);
    row.targets[m - 1] = exact_moment(stats, row.regime.regime, row.regime.twist, m);
  }
  row.m3_deviation = std::fabs(mpq_class(row.moments[2] - row.targets[2]).get_d());
  return row;
}

MomentReport moment_scan(const SystemParams& params, int max_degree, unsigned threads,
                         const TraceCache* cache, const EngineOptions& opts) {
  MomentReport report;
  report.params = params;
  for (int d = 1; d <= max_degree; ++d) {
    report.rows.push_back(moment_row(load_or_compute(params, d, threads, cache, opts)));
  }
  return report;
}

}  // namespace alttrace
