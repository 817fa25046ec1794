#pragma once

#include <optional>
#include <vector>

#include "alttrace/cycint.hpp"
#include "alttrace/field.hpp"

namespace alttrace {

/// The base field k = F_{p^f0} and the additive character
/// ψ_k(x) = ζ_p^{Tr_{k/F_p}(c·x)} with multiplier c ≠ 0.
class CharacterContext {
 public:
  explicit CharacterContext(FieldPtr base, FieldElement multiplier = FieldElement::from_log(0));

  const FieldPtr& base() const { return base_; }
  FieldElement multiplier() const { return multiplier_; }
  std::uint32_t p() const { return base_->p(); }
  /// True when #k ≡ 1 mod 4.
  bool minus_one_is_square() const { return base_->order() % 4 == 1; }

 private:
  FieldPtr base_;
  FieldElement multiplier_;
};

/// A finite extension L/k together with the embedding of k. ψ_{L/k} is
/// evaluated as ζ^{Tr_{L/F_p}(c·x)}, which equals ψ_k(Tr_{L/k}(x)) because the
/// traces compose and c lies in k.
class Extension {
 public:
  Extension(const CharacterContext& ctx, int relative_degree);

  const FieldPtr& field() const { return field_; }
  const Embedding& base_embedding() const { return embedding_; }
  int relative_degree() const { return relative_degree_; }
  std::uint32_t p() const { return field_->p(); }
  std::uint64_t size() const { return field_->order(); }
  /// c embedded in L.
  FieldElement multiplier() const { return multiplier_; }

  /// Exponent a with ψ_{L/k}(x) = ζ^a.
  std::uint32_t psi_exponent(FieldElement x) const {
    return field_->abs_trace(field_->mul(multiplier_, x));
  }

 private:
  FieldPtr field_;
  Embedding embedding_;
  int relative_degree_;
  FieldElement multiplier_;
};

int chi2(const FiniteField& field, FieldElement x);
CycInt psi(const Extension& ext, FieldElement x);
/// ψ_k(Tr_{L/k}(x)) evaluated literally through the relative trace; slower
/// path kept for cross-checking psi().
CycInt psi_via_relative_trace(const CharacterContext& ctx, const Extension& ext,
                              FieldElement x);

struct GaussSum {
  FieldDescriptor field;
  CycInt value;                // g_L = Σ_{x∈L^×} ψ_{L/k}(x) χ_{2,L}(x)
  std::optional<std::int64_t> n;
  CycInt a_value;              // A(L, n, ψ_{L/k}), set when n is
  CycInt a_conj;               // conj(A), computed through conj(g) = χ2(-1)·g
};

/// Sign ε = -χ_{2,L}(n·(-1)^d), d = (n-1)/2, so that A = ε·g.
int normalization_sign(const FiniteField& field, std::int64_t n);

GaussSum gauss_sum(const Extension& ext, std::optional<std::int64_t> n = std::nullopt);

struct HasseDavenportRow {
  int degree = 0;
  bool equal = false;
  CycInt direct;     // A(L) computed over L
  CycInt via_power;  // A(k)^degree
};

std::vector<HasseDavenportRow> hasse_davenport_check(const CharacterContext& ctx,
                                                     std::int64_t n,
                                                     const std::vector<int>& degrees);

}  // namespace alttrace
