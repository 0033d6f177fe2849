#pragma once

#include <functional>

#include "thetablocks/arith.hpp"
#include "thetablocks/roots.hpp"

namespace thetablocks {

// Positive definite lattice Z^n with the given Gram matrix (rational for duals).
struct GramLattice {
  RatMatrix gram;

  int rank() const { return static_cast<int>(gram.rows()); }
  bool is_integral() const;
  bool is_even() const;
  Rational determinant() const;
  bool operator==(const GramLattice&) const = default;
};

GramLattice gram_lattice(const IntMatrix& gram);
GramLattice rescaled(const GramLattice& l, const Rational& factor);
GramLattice direct_sum(const GramLattice& a, const GramLattice& b);

// Index lattice of the root theta function: sum over positive roots of gamma gamma^T.
GramLattice gram_underline_R(const RootDatum& datum);

// Sublattice spanned by the columns of basis (coordinates in the parent).
struct SublatticeEmbedding {
  GramLattice lattice;
  IntMatrix basis;
  Integer index;
};
SublatticeEmbedding even_sublattice(const GramLattice& l);
SublatticeEmbedding trivial_embedding(const GramLattice& l);

// Dual lattice in the dual basis: Gram = inverse Gram.
GramLattice dual_lattice(const GramLattice& l);

// Shadow coset s + L^vee in dual-basis coordinates: s_f = (b_f, b_f)/2 mod 1.
RatVector shadow_shift(const GramLattice& l);

// A dual vector is given by its pairings e_f = (lambda, b_f) with the basis (zeta-exponent coordinates).
Rational dual_norm(const GramLattice& l, const RatVector& e);
Integer order_in_discriminant(const GramLattice& l, const RatVector& e);
RatVector restrict_pairings(const SublatticeEmbedding& sub, const RatVector& e);

struct OrderAndNorm {
  Integer order_l;
  Integer order_lev;
  Rational norm;
};
OrderAndNorm order_and_norm(const GramLattice& l, const SublatticeEmbedding& ev, const RatVector& e);

// All x in shift + Z^n with x^T G x <= bound (G positive definite).
void enumerate_coset(const RatMatrix& gram, const RatVector& shift, const Rational& bound,
                     const std::function<void(const RatVector& x, const Rational& norm)>& visit);

}  // namespace thetablocks
