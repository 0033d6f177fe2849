#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thetablocks/arith.hpp"

namespace thetablocks {

constexpr int kMaxRank = 8;

// Numerators of a zeta exponent over a denominator owned by the enclosing series.
using ExponentKey = std::array<std::int32_t, kMaxRank>;

struct ExponentKeyHash {
  std::size_t operator()(const ExponentKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : k) {
      h ^= static_cast<std::uint32_t>(v);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

using CoefficientAccumulator = std::unordered_map<ExponentKey, Integer, ExponentKeyHash>;

ExponentKey add_keys(const ExponentKey& a, const ExponentKey& b);
ExponentKey scale_key(const ExponentKey& a, std::int32_t s);

// Finite Laurent polynomial in zeta_1..zeta_r with integer coefficients; terms sorted by key.
class LaurentCoefficient {
 public:
  using Term = std::pair<ExponentKey, Integer>;

  LaurentCoefficient() = default;
  LaurentCoefficient(int rank, std::int64_t zeta_den) : rank_(rank), zeta_den_(zeta_den) {}
  static LaurentCoefficient from_accumulator(int rank, std::int64_t zeta_den,
                                             CoefficientAccumulator&& acc);
  static LaurentCoefficient from_terms(int rank, std::int64_t zeta_den, std::vector<Term> terms);

  int rank() const { return rank_; }
  std::int64_t zeta_denominator() const { return zeta_den_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(const ExponentKey& key) const;
  Integer coefficient(const std::vector<Rational>& exponent) const;
  std::vector<Rational> exponent(const ExponentKey& key) const;
  LaurentCoefficient rescaled(std::int64_t zeta_den) const;

  bool operator==(const LaurentCoefficient& other) const;

 private:
  int rank_ = 0;
  std::int64_t zeta_den_ = 1;
  std::vector<Term> terms_;
};

LaurentCoefficient operator*(const LaurentCoefficient& a, const LaurentCoefficient& b);
LaurentCoefficient operator+(const LaurentCoefficient& a, const LaurentCoefficient& b);
LaurentCoefficient operator-(const LaurentCoefficient& a, const LaurentCoefficient& b);
void accumulate_product(CoefficientAccumulator& acc, const LaurentCoefficient& a,
                        const LaurentCoefficient& b, const ExponentKey& shift = {});

// sign * zeta^shift * (1 - zeta^(-direction))
struct BinomialFactor {
  std::vector<Rational> shift;
  std::vector<Rational> direction;
  int sign = 1;
};

LaurentCoefficient expand_factors(int rank, const std::vector<BinomialFactor>& factors);

// Truncated series sum c(n, l) q^n zeta^l with n in (1/q_den)Z, l in (1/zeta_den)Z^rank,
// known for n < q_prec.
class PuiseuxSeries {
 public:
  struct Level {
    std::int64_t q_num;
    LaurentCoefficient coeff;
  };

  PuiseuxSeries() = default;
  PuiseuxSeries(int rank, Rational q_prec, std::int64_t q_den = 1, std::int64_t zeta_den = 1);

  static PuiseuxSeries constant(int rank, const Integer& c, const Rational& q_prec);
  static PuiseuxSeries monomial(int rank, const Rational& n, const std::vector<Rational>& l,
                                const Integer& c, const Rational& q_prec);

  int rank() const { return rank_; }
  std::int64_t q_denominator() const { return q_den_; }
  std::int64_t zeta_denominator() const { return zeta_den_; }
  const Rational& q_prec() const { return q_prec_; }
  const std::vector<Level>& levels() const { return levels_; }
  bool is_zero() const { return levels_.empty(); }
  std::size_t num_terms() const;

  Rational q_exponent(std::int64_t q_num) const { return ratio(q_num, q_den_); }
  std::vector<Rational> zeta_exponent(const ExponentKey& key) const;
  // Exponent of the lowest nonzero level, nullopt for the zero series.
  std::optional<Rational> order() const;
  // order(), or q_prec for the zero series.
  Rational valuation() const;

  Integer coefficient(const Rational& n, const std::vector<Rational>& l) const;
  LaurentCoefficient level(const Rational& n) const;
  const LaurentCoefficient* find_level(std::int64_t q_num) const;

  PuiseuxSeries rescaled(std::int64_t q_den, std::int64_t zeta_den) const;
  PuiseuxSeries truncated(const Rational& q_prec) const;
  // Smallest denominators representing the same series.
  PuiseuxSeries normalized() const;

  template <typename F>
  void for_each_term(F&& f) const {
    for (const auto& lv : levels_)
      for (const auto& [key, c] : lv.coeff.terms()) f(lv.q_num, key, c);
  }

  // Same precision and same coefficients.
  bool operator==(const PuiseuxSeries& other) const;

  friend class SeriesBuilder;

 private:
  int rank_ = 0;
  std::int64_t q_den_ = 1;
  std::int64_t zeta_den_ = 1;
  Rational q_prec_ = 0;
  std::vector<Level> levels_;
};

// Accumulates terms with fixed denominators; drops terms at or beyond q_prec.
class SeriesBuilder {
 public:
  SeriesBuilder(int rank, Rational q_prec, std::int64_t q_den, std::int64_t zeta_den);
  void add(std::int64_t q_num, const ExponentKey& key, const Integer& c);
  void add(const Rational& n, const std::vector<Rational>& l, const Integer& c);
  CoefficientAccumulator& level(std::int64_t q_num) { return levels_[q_num]; }
  bool in_range(std::int64_t q_num) const;
  PuiseuxSeries build();

 private:
  int rank_;
  Rational q_prec_;
  std::int64_t q_den_, zeta_den_;
  std::int64_t bound_;
  std::map<std::int64_t, CoefficientAccumulator> levels_;
};

std::pair<PuiseuxSeries, PuiseuxSeries> common_denominators(const PuiseuxSeries& a,
                                                            const PuiseuxSeries& b);

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries operator-(const PuiseuxSeries& a);
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries scale(const PuiseuxSeries& a, const Integer& c);
// Exact division of every coefficient; throws NotDivisible otherwise.
PuiseuxSeries divide_exact(const PuiseuxSeries& a, const Integer& c);

// Precision min(a.prec + ord(b), b.prec + ord(a)).
PuiseuxSeries ps_mul(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries ps_pow(const PuiseuxSeries& a, int e);
// Requires a unit leading monomial (+-zeta^w).
PuiseuxSeries ps_invert(const PuiseuxSeries& a);
// num / den where den's leading coefficient equals +-(product of the given factors).
// An empty factor list means the leading coefficient must be a unit monomial.
PuiseuxSeries ps_exact_div(const PuiseuxSeries& num, const PuiseuxSeries& den,
                           const std::vector<BinomialFactor>& leading_factors = {});

PuiseuxSeries multiply_monomial(const PuiseuxSeries& a, const Rational& n,
                                const std::vector<Rational>& l);
// q -> q^b
PuiseuxSeries substitute_q(const PuiseuxSeries& a, std::int64_t b);
// zeta exponents l -> m * l for a (target_rank x rank) rational matrix m
PuiseuxSeries map_zeta(const PuiseuxSeries& a, const RatMatrix& m);
// Same coefficients in a higher-rank variable space (extra variables absent).
PuiseuxSeries embed_rank(const PuiseuxSeries& a, int rank);

// q^(1/24) prod (1 - q^n), via the pentagonal number theorem.
PuiseuxSeries eta(const Rational& q_prec, int rank = 0);
// prod_b eta(b tau)^(r_b)
PuiseuxSeries eta_quotient(const std::map<int, int>& shape, const Rational& q_prec, int rank = 0);
Rational eta_quotient_order(const std::map<int, int>& shape);
// Odd Jacobi theta function at z = <form, z>: sum_{n odd} (-4|n) q^(n^2/8) zeta^(n/2 form).
PuiseuxSeries jtheta_linear(const std::vector<Rational>& form, const Rational& q_prec);

}  // namespace thetablocks
