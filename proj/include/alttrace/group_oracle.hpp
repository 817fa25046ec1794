#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace alttrace {

using Partition = std::vector<int>;  // nonincreasing positive parts

enum class Regime { Alt, OddCoset, Sym };
enum class Twist { Plain, Sgn };

std::string to_string(Regime r);
std::string to_string(Twist t);

struct ConjugacyClass {
  Partition cycle_type;
  mpz_class size;
  int fix = 0;   // number of 1-cycles
  int sign = 1;
  bool splits_in_alt = false;  // even, with distinct odd parts
};

/// Conjugacy classes of Sym(m) with sizes m!/∏ i^{a_i} a_i!.
struct GroupStats {
  int m = 0;
  std::vector<ConjugacyClass> classes;

  mpz_class order() const;
};

/// All partitions of m in reverse lexicographic order.
std::vector<Partition> partitions(int m);

/// Classes of Sym(m) for any m >= 1 (no range check).
std::vector<ConjugacyClass> enumerate_classes(int m);

/// 5 <= m <= 30.
GroupStats build_stats(int m);

/// fix(σ) - 1, times sgn(σ) under the sgn twist.
int character_value(const ConjugacyClass& c, Twist twist);
bool in_regime(const ConjugacyClass& c, Regime regime);

/// Class-size weighted mean of character_value^power over the regime.
mpq_class exact_moment(const GroupStats& stats, Regime regime, Twist twist, int power);

struct SpectrumTable {
  Regime regime = Regime::Alt;
  Twist twist = Twist::Plain;
  std::map<int, mpq_class> probability;  // value -> exact probability, support only

  bool contains(int value) const { return probability.count(value) != 0; }
};

SpectrumTable spectrum(const GroupStats& stats, Regime regime, Twist twist);

/// Hook length formula. Throws on an invalid partition.
mpz_class specht_dim(std::span<const int> partition);

/// χ^λ at a class of cycle type μ (Murnaghan–Nakayama, via bead moves on
/// the beta-set of λ). Intended for small m.
std::int64_t mn_character(std::span<const int> lambda, std::span<const int> mu);

struct TensorSquareRow {
  Partition cycle_type;
  std::int64_t lhs = 0;  // (fix - 1)^2
  std::int64_t rhs = 0;  // sum of the four constituents
};

struct TensorSquareReport {
  int n = 0;  // V_n is the deleted permutation representation of Sym(n+1)
  std::vector<Partition> constituents;
  std::vector<mpz_class> dims;
  mpz_class dim_sum;
  bool formula_dims_match = false;  // 1, n, (n+1)(n-2)/2, n(n-1)/2
  bool dims_ok = false;             // dim_sum == n^2
  bool pointwise_checked = false;   // only for n + 1 <= 10
  bool pointwise_ok = false;
  std::vector<TensorSquareRow> rows;

  bool ok() const { return dims_ok && formula_dims_match && (!pointwise_checked || pointwise_ok); }
};

TensorSquareReport tensor_square_check(int n);

}  // namespace alttrace
