#include "thetablocks/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <numbers>

namespace thetablocks {

namespace {

std::vector<Integer> divide_poly(std::vector<Integer> p, const std::vector<Integer>& f) {
  std::vector<Integer> q(p.size() - f.size() + 1, Integer(0));
  for (int i = static_cast<int>(p.size()) - 1; i >= static_cast<int>(f.size()) - 1; --i) {
    Integer c = p[i];
    int shift = i - static_cast<int>(f.size()) + 1;
    q[shift] = c;
    for (std::size_t j = 0; j < f.size(); ++j) p[shift + j] -= c * f[j];
  }
  return q;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(int n) {
  if (n <= 0) throw InvalidInput("cyclotomic order must be positive");
  // Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e over the divisors d of n
  std::map<int, std::vector<Integer>> phi;
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    std::vector<Integer> p(d + 1, Integer(0));
    p[0] = -1;
    p[d] = 1;
    for (const auto& [e, f] : phi)
      if (d % e == 0) p = divide_poly(p, f);
    phi[d] = p;
  }
  return phi[n];
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(int order) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<CyclotomicField>();
  f->order = order;
  f->modulus = cyclotomic_polynomial(order);
  f->degree = static_cast<int>(f->modulus.size()) - 1;
  std::vector<Integer> cur(f->degree, Integer(0));
  cur[0] = 1;
  for (int k = 0; k < order; ++k) {
    f->power_table.push_back(cur);
    // multiply by zeta and reduce
    Integer top = cur[f->degree - 1];
    for (int i = f->degree - 1; i > 0; --i) cur[i] = cur[i - 1] - top * f->modulus[i];
    cur[0] = -top * f->modulus[0];
  }
  cache[order] = f;
  return f;
}

Cyclotomic::Cyclotomic(int order)
    : field_(CyclotomicField::get(order)), coeffs_(field_->degree, Rational(0)) {}

Cyclotomic Cyclotomic::root_of_unity(int order, long k) {
  Cyclotomic r(order);
  const auto& row = r.field_->power_table[mod_floor(k, order)];
  for (int i = 0; i < r.field_->degree; ++i) r.coeffs_[i] = Rational(row[i]);
  return r;
}

Cyclotomic Cyclotomic::rational(int order, const Rational& x) {
  Cyclotomic r(order);
  r.coeffs_[0] = x;
  return r;
}

Cyclotomic Cyclotomic::from_powers(int order, const std::vector<Rational>& counts) {
  Cyclotomic r(order);
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k] == 0) continue;
    const auto& row = r.field_->power_table[k % order];
    for (int i = 0; i < r.field_->degree; ++i)
      if (row[i] != 0) r.coeffs_[i] += counts[k] * row[i];
  }
  return r;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rational> counts(order(), Rational(0));
  for (int i = 0; i < field_->degree; ++i) counts[mod_floor(-i, order())] += coeffs_[i];
  return from_powers(order(), counts);
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  for (int i = 0; i < field_->degree; ++i) {
    double ang = 2.0 * std::numbers::pi * i / order();
    z += coeffs_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

Cyclotomic Cyclotomic::lift(int new_order) const {
  if (new_order % order() != 0) throw InvalidInput("cyclotomic lift to a non-multiple order");
  int f = new_order / order();
  std::vector<Rational> counts(new_order, Rational(0));
  for (int i = 0; i < field_->degree; ++i) counts[i * f] = coeffs_[i];
  return from_powers(new_order, counts);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (o.order() != order()) throw InvalidInput("cyclotomic order mismatch");
  for (int i = 0; i < field_->degree; ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  if (o.order() != order()) throw InvalidInput("cyclotomic order mismatch");
  for (int i = 0; i < field_->degree; ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() != b.order()) throw InvalidInput("cyclotomic order mismatch");
  const int m = a.order();
  std::vector<Rational> counts(m, Rational(0));
  for (int i = 0; i < a.field_->degree; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (int j = 0; j < b.field_->degree; ++j)
      if (b.coeffs_[j] != 0) counts[(i + j) % m] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Cyclotomic::from_powers(m, counts);
}

Cyclotomic operator*(Cyclotomic a, const Rational& r) {
  for (auto& c : a.coeffs_) c *= r;
  return a;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  if (o.order() == order()) return coeffs_ == o.coeffs_;
  int m = std::lcm(order(), o.order());
  return lift(m).coeffs_ == o.lift(m).coeffs_;
}

}  // namespace thetablocks
