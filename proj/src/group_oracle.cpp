#include "alttrace/group_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace alttrace {

namespace {

mpz_class factorial(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void partitions_rec(int remaining, int max_part, Partition& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

void require_partition(std::span<const int> lambda) {
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] <= 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && lambda[i] > lambda[i - 1]) {
      throw std::invalid_argument("partition parts must be nonincreasing");
    }
  }
}

std::int64_t mn_beads(std::vector<int>& beads, std::span<const int> mu, std::size_t pos) {
  if (pos == mu.size()) return 1;
  const int r = mu[pos];
  std::int64_t total = 0;
  // beads is sorted ascending; moving bead b to b - r removes a rim hook of
  // length r, with sign (-1)^(beads strictly between).
  for (std::size_t i = 0; i < beads.size(); ++i) {
    const int b = beads[i];
    const int target = b - r;
    if (target < 0) continue;
    if (std::binary_search(beads.begin(), beads.end(), target)) continue;
    int between = 0;
    for (int other : beads) {
      if (other > target && other < b) ++between;
    }
    std::vector<int> next = beads;
    next[i] = target;
    std::sort(next.begin(), next.end());
    const std::int64_t sub = mn_beads(next, mu, pos + 1);
    total += (between % 2 == 0) ? sub : -sub;
  }
  return total;
}

}  // namespace

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Alt: return "alt";
    case Regime::OddCoset: return "odd-coset";
    case Regime::Sym: return "sym";
  }
  return "?";
}

std::string to_string(Twist t) { return t == Twist::Plain ? "plain" : "sgn"; }

mpz_class GroupStats::order() const { return factorial(m); }

std::vector<Partition> partitions(int m) {
  std::vector<Partition> out;
  Partition cur;
  partitions_rec(m, m, cur, out);
  return out;
}

std::vector<ConjugacyClass> enumerate_classes(int m) {
  const mpz_class m_fact = factorial(m);
  std::vector<ConjugacyClass> out;
  for (auto& lambda : partitions(m)) {
    ConjugacyClass c;
    mpz_class centralizer = 1;
    std::map<int, int> mult;
    for (int part : lambda) ++mult[part];
    for (auto [part, a] : mult) {
      for (int i = 0; i < a; ++i) centralizer *= part;
      centralizer *= factorial(a);
    }
    c.size = m_fact / centralizer;
    c.fix = mult.count(1) ? mult[1] : 0;
    const int even_parts = static_cast<int>(std::count_if(
        lambda.begin(), lambda.end(), [](int part) { return part % 2 == 0; }));
    c.sign = even_parts % 2 == 0 ? 1 : -1;
    bool distinct_odd = true;
    for (auto [part, a] : mult) distinct_odd = distinct_odd && part % 2 == 1 && a == 1;
    c.splits_in_alt = c.sign == 1 && distinct_odd;
    c.cycle_type = std::move(lambda);
    out.push_back(std::move(c));
  }
  return out;
}

GroupStats build_stats(int m) {
  if (m < 5 || m > 30) throw std::invalid_argument("build_stats: m must be in [5, 30]");
  return GroupStats{m, enumerate_classes(m)};
}

int character_value(const ConjugacyClass& c, Twist twist) {
  const int v = c.fix - 1;
  return twist == Twist::Sgn ? c.sign * v : v;
}

bool in_regime(const ConjugacyClass& c, Regime regime) {
  switch (regime) {
    case Regime::Alt: return c.sign == 1;
    case Regime::OddCoset: return c.sign == -1;
    case Regime::Sym: return true;
  }
  return false;
}

mpq_class exact_moment(const GroupStats& stats, Regime regime, Twist twist, int power) {
  if (power < 0) throw std::invalid_argument("exact_moment: power must be >= 0");
  mpz_class total = 0;
  mpz_class weight = 0;
  for (const auto& c : stats.classes) {
    if (!in_regime(c, regime)) continue;
    mpz_class v = character_value(c, twist);
    mpz_class vp;
    mpz_pow_ui(vp.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(power));
    total += c.size * vp;
    weight += c.size;
  }
  if (weight == 0) throw std::invalid_argument("exact_moment: empty regime");
  mpq_class r(total, weight);
  r.canonicalize();
  return r;
}

SpectrumTable spectrum(const GroupStats& stats, Regime regime, Twist twist) {
  SpectrumTable table;
  table.regime = regime;
  table.twist = twist;
  std::map<int, mpz_class> weight;
  mpz_class total = 0;
  for (const auto& c : stats.classes) {
    if (!in_regime(c, regime)) continue;
    weight[character_value(c, twist)] += c.size;
    total += c.size;
  }
  for (auto& [value, w] : weight) {
    mpq_class prob(w, total);
    prob.canonicalize();
    table.probability.emplace(value, prob);
  }
  return table;
}

mpz_class specht_dim(std::span<const int> partition) {
  require_partition(partition);
  if (partition.empty()) return 1;
  int m = 0;
  for (int part : partition) m += part;
  mpz_class hooks = 1;
  for (std::size_t i = 0; i < partition.size(); ++i) {
    for (int j = 0; j < partition[i]; ++j) {
      int leg = 0;
      for (std::size_t k = i + 1; k < partition.size() && partition[k] > j; ++k) ++leg;
      hooks *= (partition[i] - j - 1) + leg + 1;
    }
  }
  return factorial(m) / hooks;
}

std::int64_t mn_character(std::span<const int> lambda, std::span<const int> mu) {
  require_partition(lambda);
  int m_lambda = 0, m_mu = 0;
  for (int part : lambda) m_lambda += part;
  for (int part : mu) {
    if (part <= 0) throw std::invalid_argument("cycle type parts must be positive");
    m_mu += part;
  }
  if (m_lambda != m_mu) throw std::invalid_argument("mn_character: sizes differ");
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beads;
  for (int i = 0; i < len; ++i) beads.push_back(lambda[i] + (len - 1 - i));
  std::sort(beads.begin(), beads.end());
  return mn_beads(beads, mu, 0);
}

TensorSquareReport tensor_square_check(int n) {
  if (n < 3) throw std::invalid_argument("tensor_square_check: n must be >= 3");
  TensorSquareReport report;
  report.n = n;
  report.constituents = {{n + 1}, {n, 1}, {n - 1, 2}, {n - 1, 1, 1}};
  report.dim_sum = 0;
  for (const auto& lambda : report.constituents) {
    report.dims.push_back(specht_dim(lambda));
    report.dim_sum += report.dims.back();
  }
  const mpz_class nn = n;
  report.formula_dims_match = report.dims[0] == 1 && report.dims[1] == nn &&
                              report.dims[2] == (nn + 1) * (nn - 2) / 2 &&
                              report.dims[3] == nn * (nn - 1) / 2;
  report.dims_ok = report.dim_sum == nn * nn;

  if (n + 1 <= 10) {
    report.pointwise_checked = true;
    report.pointwise_ok = true;
    for (const auto& c : enumerate_classes(n + 1)) {
      TensorSquareRow row;
      row.cycle_type = c.cycle_type;
      row.lhs = static_cast<std::int64_t>(c.fix - 1) * (c.fix - 1);
      for (const auto& lambda : report.constituents) row.rhs += mn_character(lambda, c.cycle_type);
      report.pointwise_ok = report.pointwise_ok && row.lhs == row.rhs;
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace alttrace
