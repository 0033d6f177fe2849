#pragma once

// Slow reference computations shared by the unit tests and the acceptance binary.

#include <map>
#include <stdexcept>
#include <string>

#include "thetablocks/cyclotomic.hpp"
#include "thetablocks/jacobi.hpp"
#include "thetablocks/linalg.hpp"

namespace oracle {

using namespace thetablocks;

// m^-1 sum_{ad=m, b mod d} a^k phi((a tau + b)/d, a z), with the root of unity sums done in Q(zeta_d).
inline PuiseuxSeries hecke_by_definition(const PuiseuxSeries& s, int m, int k) {
  SeriesBuilder out(s.rank(), s.q_prec() / m, s.q_denominator(), s.zeta_denominator());
  for (int a = 1; a <= m; ++a) {
    if (m % a) continue;
    const int d = m / a;
    s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) {
      Rational n = s.q_exponent(qn);
      if (!is_integral(n)) throw std::logic_error("coset oracle needs integral q-exponents");
      Cyclotomic sum(d);
      for (int b = 0; b < d; ++b) sum += Cyclotomic::root_of_unity(d, mod_floor(to_int64(n) * b, d));
      Rational r = sum.coefficients()[0];
      for (std::size_t i = 1; i < sum.coefficients().size(); ++i)
        if (sum.coefficients()[i] != 0) throw std::logic_error("root of unity sum is not rational");
      if (r == 0) return;
      Rational target = a * n / d;
      if (target >= s.q_prec() / m) return;
      std::vector<Rational> l = s.zeta_exponent(key);
      for (auto& x : l) x *= a;
      Rational coeff = r * c * Rational(pow(Integer(a), k)) / m;
      if (!is_integral(coeff)) throw std::logic_error("coset oracle gave a non-integral coefficient");
      out.add(target, l, coeff.get_num());
    });
  }
  return out.build();
}

using Bivariate = std::map<std::pair<long, long>, long>;  // (8 * q exponent, 2 * zeta exponent)

inline Bivariate bmul(const Bivariate& a, const Bivariate& b, long qmax) {
  Bivariate r;
  for (auto& [ka, ca] : a)
    for (auto& [kb, cb] : b) {
      long q = ka.first + kb.first;
      if (q >= qmax) continue;
      r[{q, ka.second + kb.second}] += ca * cb;
    }
  std::erase_if(r, [](const auto& t) { return t.second == 0; });
  return r;
}

// q^(1/8) (zeta^(1/2) - zeta^(-1/2)) prod (1 - q^n)(1 - q^n zeta)(1 - q^n zeta^-1), q-exponents below qmax / 8.
inline Bivariate triple_product(long qmax) {
  Bivariate prod{{{1, 1}, 1}, {{1, -1}, -1}};
  for (long n = 1; 8 * n < qmax; ++n) {
    prod = bmul(prod, {{{0, 0}, 1}, {{8 * n, 0}, -1}}, qmax);
    prod = bmul(prod, {{{0, 0}, 1}, {{8 * n, 2}, -1}}, qmax);
    prod = bmul(prod, {{{0, 0}, 1}, {{8 * n, -2}, -1}}, qmax);
  }
  return prod;
}

// Number of coefficients compared and the first violation of
// c(n + (l, x) + (x, x)/2, l + G x) = (-1)^(x, x) c(n, l)
// over the basis vectors x = +-e_i of the index lattice, within the known range.
struct InvarianceResult {
  long compared = 0;
  std::string violation;
};

inline InvarianceResult class_invariance(const JacobiForm& f) {
  InvarianceResult r;
  const auto& s = f.series;
  const RatMatrix& g = f.index.gram;
  const int rank = f.rank();
  s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) {
    if (!r.violation.empty()) return;
    Rational n = s.q_exponent(qn);
    auto l = s.zeta_exponent(key);
    for (int i = 0; i < rank; ++i) {
      if (!is_integral(g(i, i))) throw std::logic_error("index lattice is not integral");
      const Integer expected = mpz_odd_p(g(i, i).get_num_mpz_t()) ? Integer(-c) : c;
      for (int sign : {1, -1}) {
        Rational n2 = n + sign * l[i] + g(i, i) / 2;
        if (n2 >= s.q_prec()) continue;
        auto l2 = l;
        for (int j = 0; j < rank; ++j) l2[j] += sign * g(j, i);
        ++r.compared;
        if (s.coefficient(n2, l2) != expected) {
          r.violation = "c(" + to_string(n) + ", ...) = " + c.get_str() + " but the translate by " +
                        (sign > 0 ? "+" : "-") + "e" + std::to_string(i) + " differs";
          return;
        }
      }
    }
  });
  return r;
}

}  // namespace oracle
