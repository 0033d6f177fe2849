#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "thetablocks/arith.hpp"

namespace thetablocks {

// Q(zeta_M) in the power basis 1, zeta, ..., zeta^(phi(M)-1).
struct CyclotomicField {
  int order;
  int degree;
  std::vector<Integer> modulus;                  // Phi_M, monic, low to high
  std::vector<std::vector<Integer>> power_table;  // zeta^k reduced, 0 <= k < M

  static std::shared_ptr<const CyclotomicField> get(int order);
};

std::vector<Integer> cyclotomic_polynomial(int n);

class Cyclotomic {
 public:
  Cyclotomic() = default;
  explicit Cyclotomic(int order);
  static Cyclotomic root_of_unity(int order, long k);
  static Cyclotomic rational(int order, const Rational& r);
  // sum_k counts[k] zeta^k with counts indexed by k mod M
  static Cyclotomic from_powers(int order, const std::vector<Rational>& counts);

  int order() const { return field_->order; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const;
  bool is_rational() const;
  Cyclotomic conj() const;
  std::complex<double> to_complex() const;
  // Same element in Q(zeta_order) for a multiple of the current order.
  Cyclotomic lift(int order) const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r);
  bool operator==(const Cyclotomic& o) const;

 private:
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;
};

}  // namespace thetablocks
