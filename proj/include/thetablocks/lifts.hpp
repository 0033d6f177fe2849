#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thetablocks/jacobi.hpp"

namespace thetablocks {

// sum_m phi_m(tau, z) xi^m / denominator, each layer known for q-exponents <= q_max.
struct TripleSeries {
  int rank = 0;
  int q_max = 0;
  int xi_max = 0;
  Integer denominator = 1;
  std::map<int, PuiseuxSeries> layers;  // only nonzero layers

  PuiseuxSeries layer(int m) const;
  std::size_t num_terms() const;
  void set_layer(int m, PuiseuxSeries s);
};

struct TripleMismatch {
  Rational n;
  std::vector<Rational> l;
  int m = 0;
  Integer lhs, rhs;
};

struct TripleComparison {
  std::size_t compared = 0;  // distinct monomials inspected
  std::size_t mismatch_count = 0;
  std::vector<TripleMismatch> mismatches;  // first few, in monomial order
  bool equal() const { return mismatch_count == 0; }
};

// Coefficientwise comparison within the common truncation.
TripleComparison compare(const TripleSeries& a, const TripleSeries& b, std::size_t keep = 10);

// G_k = -B_k / (2k) + sum sigma_{k-1}(n) q^n, returned as numerator / denominator.
struct ScaledSeries {
  PuiseuxSeries numerator;
  Integer denominator;
};
ScaledSeries eisenstein_Gk(int k, const Rational& q_prec, int rank = 0);
Rational bernoulli(int n);

// sum_{m=1}^{xi_max} (phi | T_-(m)) xi^m, plus f(0,0) G_k at xi^0.
TripleSeries gritsenko_lift(const JacobiForm& phi, int q_max, int xi_max);

struct BorcherdsInput {
  JacobiForm psi;                                    // weight 0
  std::map<std::vector<Rational>, Integer> f0;       // f(0, l)
  Rational C;
  ThetaBlockSpec prefactor;
  std::vector<Rational> positivity;                  // l > 0 iff (positivity, l) > 0, lexicographic on ties
};

bool is_positive(const std::vector<Rational>& l, const std::vector<Rational>& positivity);
std::vector<Rational> default_positivity(int rank);

// psi = -(theta | T_-(2)) / theta with the Weyl vector data read off f(0, *).
BorcherdsInput borcherds_input(const JacobiForm& theta);
BorcherdsInput borcherds_input(const JacobiForm& psi, const std::vector<Rational>& positivity);

// Theta_{f(0,*)} xi^C prod_{m >= 1, n >= 0, l} (1 - q^n zeta^l xi^m)^{f(nm, l)}.
TripleSeries borcherds_product(const BorcherdsInput& in, int q_max, int xi_max);
// Only the product part prod (...)^{f(nm, l)} in xi^0 .. xi^k_max, q-exponents <= q_max.
std::vector<PuiseuxSeries> borcherds_factor_layers(const PuiseuxSeries& psi, int q_max, int k_max);
// exp(-sum_m (psi | T_-(m)) xi^m) layers via m E_m = -sum_j (j psi | T_-(j)) E_{m-j}.
std::vector<PuiseuxSeries> exponential_layers(const JacobiForm& psi, int k_max);

struct ExpCrossCheck {
  int q_max = 0;
  int k_max = 0;
  bool agree = false;
  std::string detail;
};
ExpCrossCheck exp_cross_check(const BorcherdsInput& in, int k_max);

// Theta precision needed for verify_main_identity at (q_max, xi_max).
Rational required_theta_precision(int q_max, int xi_max);

struct MainIdentityReport {
  std::string root_system;
  int q_max = 0;
  int xi_max = 0;
  Rational theta_precision;
  Rational C;
  bool prefactor_matches = false;   // Theta_{f(0,*)} = theta_R
  bool first_layer_matches = false; // xi^{C+1} layer = -Theta psi
  Integer f00;
  ExpCrossCheck exp_check;
  TripleComparison comparison;
  std::size_t lift_terms = 0;
  std::size_t product_terms = 0;
  bool pass() const;
};

// theta_R restricted to the even sublattice, the coordinates used by all lifts.
JacobiForm theta_R_even(const RootDatum& datum, const Rational& q_prec);

MainIdentityReport verify_main_identity(const std::string& root_system, int q_max, int xi_max);
MainIdentityReport verify_main_identity(const JacobiForm& theta_even, const std::string& label, int q_max,
                                        int xi_max, const JacobiForm* psi_override = nullptr);

// mult D_v = sum_{d >= 1} F_{d gamma}(d^2 e) for the class gamma and e = n - (l, l)/2 < 0.
Integer divisor_multiplicity(const ThetaDecomposition& psi, long cls, const Rational& e);
Integer divisor_multiplicity(const ThetaDecomposition& psi, const JacobiForm& psi_form, const Rational& n,
                             const std::vector<Rational>& l);

struct DivisorClass {
  long cls = 0;
  long order = 0;
  Rational e;     // n - (l, l)/2
  Rational norm;  // 2n - (l, l)
  Integer multiplicity;
};

struct ReflectivityReport {
  Rational norm_bound;
  std::vector<DivisorClass> nonzero;
  std::size_t classes_checked = 0;
  bool multiplicities_in_01 = false;
  std::map<std::pair<long, Rational>, long> table;  // (order, norm) -> count of nonzero classes
};
ReflectivityReport reflectivity_report(const ThetaDecomposition& psi, const Rational& norm_bound);

struct PrincipalPartReport {
  std::string root_system;
  Integer constant_term;
  long expected_constant = 0;
  std::map<Rational, long> singular_counts;  // exponent -> number of classes with coefficient 1
  long choices = 0;                          // admissible choices of the special elements
  long matching_choices = 0;
  std::vector<std::string> offending;        // for the best choice, plus precision problems
  bool pass() const { return matching_choices > 0 && offending.empty(); }
};
PrincipalPartReport principal_part_check(const std::string& root_system, const ThetaDecomposition& psi);

}  // namespace thetablocks
