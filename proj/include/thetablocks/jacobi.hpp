#pragma once

#include <map>
#include <string>
#include <vector>

#include "thetablocks/discriminant.hpp"
#include "thetablocks/lattice.hpp"
#include "thetablocks/roots.hpp"
#include "thetablocks/series.hpp"

namespace thetablocks {

// Fourier expansion sum c(n, l) q^n zeta^l of a Jacobi form. Exponents l are pairings with the
// variable basis, so (l, l) = l^T G^-1 l for the index Gram G.
struct JacobiForm {
  GramLattice index;
  Rational weight;
  int character = 0;  // exponent of nu_eta mod 24
  PuiseuxSeries series;
  std::vector<BinomialFactor> leading_factors;  // leading coefficient = product of these (theta blocks)

  int rank() const { return index.rank(); }
};

// eta^eta_power * prod theta(tau, <form, z>)^mult
struct ThetaBlockSpec {
  int eta_power = 0;
  std::vector<std::pair<std::vector<Rational>, int>> factors;

  // eta^f0 prod (theta_a / eta)^f(a)
  static ThetaBlockSpec from_exponents(int f0, const std::vector<std::pair<std::vector<Rational>, int>>& f);
  int rank() const;
  int theta_count() const;
  Rational weight() const { return ratio(eta_power + theta_count(), 2); }
  Rational q_order() const { return ratio(eta_power, 24) + ratio(theta_count(), 8); }
  int character() const { return static_cast<int>(mod_floor(eta_power + 3 * theta_count(), 24)); }
  RatMatrix index_gram() const;  // sum mult form form^T
};

JacobiForm theta_block(const ThetaBlockSpec& spec, const Rational& q_prec);
ThetaBlockSpec theta_R_spec(const RootDatum& datum);
JacobiForm theta_R(const RootDatum& datum, const Rational& q_prec);

// (phi | T_-(m)) with c'(n, l) = sum_{a | (m, n, l)} a^(k-1) c(nm/a^2, l/a); throws NotDivisible when the
// result is not integral (weight 0). The scaled variant returns m * (phi | T_-(m)).
JacobiForm hecke_Tminus(const JacobiForm& phi, int m);
JacobiForm hecke_Tminus_scaled(const JacobiForm& phi, int m);

// zeta^l -> zeta^((l, x)) for x in the index lattice; index becomes (x, x).
JacobiForm specialize(const JacobiForm& phi, const IntVector& x);
// Restriction to the sublattice spanned by the columns of basis.
JacobiForm restrict_to(const JacobiForm& phi, const IntMatrix& basis);

// Computes (l, l) for exponent keys of a series.
class NormEvaluator {
 public:
  NormEvaluator(const RatMatrix& gram, std::int64_t zeta_den);
  Rational norm(const ExponentKey& key) const;

 private:
  int rank_;
  std::vector<std::int64_t> adj_;  // inverse Gram times den_
  Integer den_;
};

struct SingularTerm {
  Rational n;
  std::vector<Rational> l;
  Integer c;
  Rational hyperbolic_norm;  // 2n - (l, l)
};
std::vector<SingularTerm> singular_part(const JacobiForm& phi);

// F_gamma(tau) = sum_{l in gamma + L} c(n, l) q^(n - (l, l)/2) for an even index lattice L.
struct ThetaDecomposition {
  DiscriminantForm form;
  std::vector<Rational> min_norm;                    // per class
  std::vector<std::vector<std::int64_t>> shortest;  // a pairing vector of minimal norm per class
  std::vector<Rational> precision;                   // per class, exclusive
  std::vector<std::map<Rational, Integer>> components;
  std::vector<std::string> violations;
  std::size_t terms_checked = 0;

  bool consistent() const { return violations.empty(); }
  // Coefficient of q^e in F_gamma; throws PrecisionError beyond the known range.
  Integer coefficient(long cls, const Rational& e) const;
};
ThetaDecomposition theta_decompose(const JacobiForm& phi);

// Minimal norm and a shortest pairing vector for every class of D(L).
void class_minima(const GramLattice& even_lattice, const DiscriminantForm& d, std::vector<Rational>& min_norm,
                  std::vector<std::vector<std::int64_t>>& shortest);

}  // namespace thetablocks
