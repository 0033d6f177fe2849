#pragma once

#include <vector>

#include "thetablocks/cyclotomic.hpp"
#include "thetablocks/discriminant.hpp"

namespace thetablocks {

using CycVector = std::vector<Cyclotomic>;

// rho_D(T) e_g = e(-q(g)) e_g and rho_D(S) e_g = e(sign/8)/sqrt|D| sum_b e(b(g, b)) e_b,
// all over Q(zeta_M), M = lcm(8, level). The S scalar equals e(sign/4) conj(G) / |D| for the Gauss sum G.
class WeilRep {
 public:
  explicit WeilRep(DiscriminantForm d);

  const DiscriminantForm& form() const { return d_; }
  int order() const { return m_; }
  int signature() const { return sign_; }
  const Cyclotomic& s_scalar() const { return s_scalar_; }

  long t_exponent(long g) const;            // rho(T)_gg = zeta_M^t
  long s_exponent(long b, long g) const;    // rho(S)_bg = s_scalar * zeta_M^s
  Cyclotomic t_entry(long g) const { return Cyclotomic::root_of_unity(m_, t_exponent(g)); }
  Cyclotomic s_entry(long b, long g) const;

  CycVector apply_T(const CycVector& v) const;
  CycVector apply_S(const CycVector& v) const;
  CycVector basis_vector(long g) const;

 private:
  DiscriminantForm d_;
  int m_;
  int sign_;
  Cyclotomic s_scalar_;
};

struct InvariantSpace {
  long dimension = 0;
  std::vector<std::vector<Rational>> basis;  // rational vectors indexed by D, reduced echelon form
  std::vector<long> support;                 // isotropic elements (T-fixed coordinates)
  long checked_rank_bound = 0;               // kernel dimension mod p (upper bound over the field)
};

// Joint fixed space of rho(S) and rho(T). The rational basis is computed modulo a prime p = 1 mod M,
// reconstructed and verified exactly; the mod-p kernel dimension bounds the dimension over Q(zeta_M).
// Throws if the reconstructed vectors do not certify the dimension.
InvariantSpace invariant_subspace(const WeilRep& w);
bool is_invariant(const WeilRep& w, const std::vector<Rational>& v);

// chi_D(a) = (a / |D|) e((a - 1) oddity / 8)
Cyclotomic chi_D(const DiscriminantForm& d, long a);
int oddity(const DiscriminantForm& d);

}  // namespace thetablocks
