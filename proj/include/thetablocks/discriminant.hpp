#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thetablocks/arith.hpp"
#include "thetablocks/cyclotomic.hpp"
#include "thetablocks/lattice.hpp"

namespace thetablocks {

// Finite quadratic module (D, q) presented as a direct sum of cyclic groups Z/orders_i with chosen
// generators. Elements are indexed in mixed radix (first generator fastest). q and b are stored as
// numerators over the level N.
class DiscriminantForm {
 public:
  DiscriminantForm() = default;
  // q_gen[i] = q(g_i), b_gen(i, j) = b(g_i, g_j) (diagonal ignored), both mod 1.
  DiscriminantForm(std::vector<long> orders, std::vector<Rational> q_gen, const RatMatrix& b_gen);

  static DiscriminantForm of_lattice(const GramLattice& even_lattice);
  // e.g. "2_II^{+2}5^{+3}", "2_3^{-1}4_1^{+1}8_II^{-2}", "3^{-3}"
  static DiscriminantForm from_genus_symbol(std::string_view symbol);

  long size() const { return size_; }
  long level() const { return level_; }
  const std::vector<long>& orders() const { return orders_; }
  std::vector<long> element(long index) const;
  long index(const std::vector<long>& coords) const;
  long add(long a, long b) const;
  long neg(long a) const;
  long mul(long a, long k) const;
  long order(long a) const;

  long q_num(long a) const { return q_num_[a]; }  // q(a) = q_num / level mod 1
  long b_num(long a, long b) const;
  Rational q(long a) const { return ratio(q_num_[a], level_); }
  Rational b(long a, long b) const { return ratio(b_num(a, b), level_); }

  std::vector<long> invariant_factors() const;
  std::vector<long> isotropic_elements() const;
  Cyclotomic gauss_sum() const;  // sum e(q(gamma)) in Q(zeta_level)

  // Class of a dual lattice vector given by its pairings with the lattice basis (lattice forms only).
  long class_of_pairings(const RatVector& e) const;
  // Same for integral pairings, without rational arithmetic.
  long class_of_integral_pairings(const std::int64_t* e) const;
  bool has_lattice() const { return to_coords_.has_value(); }

  // Subgroup generated by the given elements, assumed to be an internal direct sum with the given orders.
  DiscriminantForm subform(const std::vector<long>& generators, std::vector<long>* embedding = nullptr) const;
  // p-primary part (p prime) or the part of order prime to p (complement = true).
  DiscriminantForm primary_part(long p, bool complement, std::vector<long>* embedding = nullptr) const;
  DiscriminantForm negated() const;
  friend DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b);

 private:
  std::vector<long> orders_;
  long size_ = 1;
  long level_ = 1;
  std::vector<long> q_num_;
  std::vector<Rational> q_gen_;
  RatMatrix b_gen_;
  std::optional<RatMatrix> to_coords_;  // pairings -> generator coordinates
  std::vector<std::vector<std::int64_t>> int_coords_;
  void build();
};

DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b);
// Hyperbolic plane U(N): Z/N x Z/N with q = 0 on generators and b = 1/N.
DiscriminantForm hyperbolic_discriminant(long n);

// Signature mod 8 via the Milgram formula; throws if the Gauss sum is inconsistent.
int milgram_signature(const DiscriminantForm& d);

struct FiniteQuadraticInvariants {
  std::vector<long> invariant_factors;
  long level = 1;
  int signature = 0;
  std::map<std::pair<long, Rational>, long> norm_counts;  // (order, q) -> count
  bool operator==(const FiniteQuadraticInvariants& o) const {
    return invariant_factors == o.invariant_factors && level == o.level && signature == o.signature &&
           norm_counts == o.norm_counts;
  }
};
FiniteQuadraticInvariants finite_qf_invariants(const DiscriminantForm& d);

// Jordan components of a genus symbol.
struct JordanComponent {
  long prime;
  long power;  // p^power
  int sign;    // epsilon
  int rank;
  std::optional<int> oddity;  // odd 2-adic components only
};
std::vector<JordanComponent> parse_genus_symbol(std::string_view symbol);

// Kronecker symbol (a / n) for n > 0.
int kronecker(long a, long n);

}  // namespace thetablocks
