#include "alttrace/curve_oracle.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "alttrace/algebra_checks.hpp"
#include "alttrace/characters.hpp"
#include "alttrace/errors.hpp"
#include "alttrace/version.hpp"

namespace alttrace {

std::uint64_t CurveCount::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

CurveForm::CurveForm(std::uint64_t q, FieldPtr field) : field_(std::move(field)) {
  const FieldPtr prime = build_field(field_->p(), 1);
  for (const auto& h : grouped_factors(q, prime)) {
    int e = 0;
    for (const auto& [m, c] : h.terms()) e = std::max(e, m.first + m.second);
    std::vector<FieldElement> coeffs(static_cast<std::size_t>(e) + 1);
    for (const auto& [m, c] : h.terms()) {
      coeffs[m.first] = field_->from_int(static_cast<std::int64_t>(prime->to_index(c)));
    }
    factors_.push_back(std::move(coeffs));
  }
}

FieldElement CurveForm::operator()(FieldElement x, FieldElement y) const {
  const FiniteField& L = *field_;
  FieldElement value = L.mul(L.mul(x, y), L.add(x, y));
  if (value.is_zero()) return value;
  for (const auto& h : factors_) {
    // homogeneous Horner: Σ c_i x^i y^{e-i}
    FieldElement acc = FieldElement::zero();
    for (std::size_t i = h.size(); i-- > 0;) acc = L.add(L.mul(acc, x), L.mul(h[i], L.pow(y, h.size() - 1 - i)));
    value = L.mul(value, L.mul(acc, acc));
    if (value.is_zero()) break;
  }
  return value;
}

CurveCount count_points(const SystemParams& params, int degree, unsigned threads,
                        const CurveOptions& opts) {
  params.validate();
  if (degree < 1) throw std::invalid_argument("extension degree must be >= 1");
  const std::uint64_t size = ipow(params.p, static_cast<unsigned>(params.f0 * degree));
  if (size > opts.max_field_size) {
    throw BudgetExceeded("curve counts over a field of size " + std::to_string(size) +
                         " exceed budget " + std::to_string(opts.max_field_size));
  }
  const FieldPtr L = build_field(params.p, params.f0 * degree);
  const CurveForm form(params.q(), L);

  CurveCount out;
  out.params = params;
  out.degree = degree;
  out.field = L->descriptor();
  out.counts.assign(size, 0);

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(size)));
  std::vector<std::vector<std::uint64_t>> hist(threads, std::vector<std::uint64_t>(size, 0));
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      const std::uint64_t lo = size * w / threads;
      const std::uint64_t hi = size * (w + 1) / threads;
      for (std::uint64_t xi = lo; xi < hi; ++xi) {
        const FieldElement x = L->from_index(xi);
        for (std::uint64_t yi = 0; yi < size; ++yi) {
          ++hist[w][L->to_index(form(x, L->from_index(yi)))];
        }
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
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (const auto& h : hist) {
    for (std::uint64_t i = 0; i < size; ++i) out.counts[i] += h[i];
  }
  return out;
}

CycInt weighted_count_sum(const Extension& ext, const CurveCount& counts) {
  const FiniteField& L = *ext.field();
  if (counts.counts.size() != L.order()) throw std::invalid_argument("counts do not match field");
  std::vector<std::int64_t> buckets(ext.p(), 0);
  const FieldElement minus_one = L.minus_one();
  for (std::uint64_t i = 1; i < L.order(); ++i) {
    const FieldElement t = L.from_index(i);
    const auto n = static_cast<std::int64_t>(counts.counts[i]);
    buckets[ext.psi_exponent(t)] += L.chi2(L.mul(minus_one, t)) * n;
  }
  return CycInt::from_exponent_counts(ext.p(), buckets);
}

ModifiedMomentReport modified_third_moment(const SystemParams& params, int degree,
                                           const CurveCount& counts, const TraceTable& table) {
  if (counts.params != params || counts.degree != degree || table.params != params ||
      table.degree != degree) {
    throw std::invalid_argument("modified_third_moment: inputs describe different systems");
  }
  const Extension ext(make_context(params), degree);
  const FiniteField& L = *ext.field();
  const GaussSum g = gauss_sum(ext);
  const int chi_minus_one = L.chi2(L.minus_one());

  const CycInt g_conj = g.value.conj();
  const CycInt scaled = g_conj.pow(3) * weighted_count_sum(ext, counts) * chi_minus_one;
  const auto numerator = scaled.as_rational();
  if (!numerator) {
    throw InvariantViolation("modified third moment is not rational at degree " +
                             std::to_string(degree) + ": " + scaled.to_string());
  }
  const mpz_class size = mpz_class(static_cast<unsigned long>(L.order()));

  ModifiedMomentReport report;
  report.degree = degree;
  report.size = L.order();
  report.modified = mpq_class(*numerator, size * size * size);
  report.modified.canonicalize();
  report.direct = empirical_moment(table, 3);
  report.difference = report.modified - report.direct;
  const auto q = static_cast<double>(params.q());
  report.bound = q / std::sqrt(static_cast<double>(L.order()));
  const mpq_class q_sq = mpq_class(mpz_class(static_cast<unsigned long>(params.q() * params.q())), size);
  report.within_bound = report.difference * report.difference <= q_sq;
  report.fiber_sum_ok = mpz_class(static_cast<unsigned long>(counts.total())) == size * size;
  return report;
}

std::string serialize_counts(const CurveCount& counts) {
  std::ostringstream os;
  os << "# " << kToolName << ' ' << kVersion << " curves " << counts.params.canonical()
     << " degree=" << counts.degree << '\n';
  os << "t_index,count\n";
  for (std::size_t i = 0; i < counts.counts.size(); ++i) os << i << ',' << counts.counts[i] << '\n';
  return os.str();
}

}  // namespace alttrace
