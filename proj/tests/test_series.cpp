#include <doctest.h>

#include <map>

#include "thetablocks/series.hpp"
#include "oracles.hpp"

using namespace thetablocks;

namespace {

// Naive truncated power series in q with integer exponents.
std::vector<long> naive_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<long> euler_product(int len, int b, int power) {
  std::vector<long> r(len, 0);
  r[0] = 1;
  for (int n = 1; n * b < len; ++n) {
    std::vector<long> f(len, 0);
    if (power > 0) {
      f[0] = 1;
      f[n * b] = -1;
      for (int k = 0; k < power; ++k) r = naive_mul(r, f);
    } else {
      for (int k = 0; k * n * b < len; ++k) f[k * n * b] = 1;
      for (int k = 0; k < -power; ++k) r = naive_mul(r, f);
    }
  }
  return r;
}

}  // namespace

TEST_CASE("eta matches the product expansion") {
  auto e = eta(Rational(30));
  auto naive = euler_product(30, 1, 1);
  for (int n = 0; n < 30; ++n) CHECK(e.coefficient(ratio(1, 24) + n, {}) == naive[n]);
  CHECK(e.order() == ratio(1, 24));
  CHECK_THROWS_AS(e.coefficient(Rational(30), {}), PrecisionError);
}

TEST_CASE("eta quotient of shape 1^-8 2^16 has order 1 and matches the naive product") {
  std::map<int, int> shape{{1, -8}, {2, 16}};
  CHECK(eta_quotient_order(shape) == 1);
  auto f = eta_quotient(shape, Rational(12));
  CHECK(f.order() == 1);
  auto naive = naive_mul(euler_product(11, 2, 16), euler_product(11, 1, -8));
  for (int n = 0; n < 11; ++n) CHECK(f.coefficient(Rational(1 + n), {}) == naive[n]);
  CHECK(f.q_prec() == 12);
}

TEST_CASE("odd Jacobi theta agrees with the triple product") {
  const long qmax = 8 * 12;
  auto prod = oracle::triple_product(qmax);
  auto th = jtheta_linear({Rational(1)}, Rational(12));
  std::size_t count = 0;
  th.for_each_term([&](std::int64_t qn, const ExponentKey& k, const Integer& c) {
    long q8 = static_cast<long>(qn * 8 / th.q_denominator());
    long z2 = static_cast<long>(k[0] * 2 / th.zeta_denominator());
    auto it = prod.find({q8, z2});
    REQUIRE(it != prod.end());
    CHECK(c == it->second);
    ++count;
  });
  CHECK(count == prod.size());
}

TEST_CASE("multiplication truncates at the product precision") {
  auto a = PuiseuxSeries::monomial(1, Rational(1), {Rational(1)}, 2, Rational(5));
  auto b = PuiseuxSeries::monomial(1, ratio(1, 2), {Rational(-1)}, 3, Rational(3));
  auto p = ps_mul(a, b);
  CHECK(p.q_prec() == Rational(4));
  CHECK(p.coefficient(ratio(3, 2), {Rational(0)}) == 6);
}

TEST_CASE("inversion and exact division") {
  auto th = jtheta_linear({Rational(1), Rational(-1)}, Rational(10));
  auto e = eta(Rational(10), 2);
  auto inv = ps_invert(e);
  auto one = ps_mul(e, inv);
  CHECK(one.order() == 0);
  CHECK(one.num_terms() == 1);
  CHECK(inv.q_prec() == Rational(10) - ratio(2, 24));

  auto x = ps_mul(th, e);
  BinomialFactor f{{ratio(1, 2), ratio(-1, 2)}, {Rational(1), Rational(-1)}, 1};
  auto back = ps_exact_div(x, th, {f});
  auto expected = e.truncated(back.q_prec());
  CHECK(back == expected);

  auto bad = PuiseuxSeries::monomial(2, Rational(1), {Rational(0), Rational(0)}, 1, Rational(5));
  CHECK_THROWS_AS(ps_exact_div(bad, th, {f}), NotDivisible);
  BinomialFactor wrong{{Rational(1), Rational(0)}, {Rational(1), Rational(0)}, 1};
  CHECK_THROWS_AS(ps_exact_div(x, th, {wrong}), InvalidInput);
}

TEST_CASE("zeta substitution sums colliding terms") {
  auto th = jtheta_linear({Rational(1), Rational(1)}, Rational(4));
  RatMatrix m(1, 2);
  m << Rational(1), Rational(1);
  auto s = map_zeta(th, m);
  auto direct = jtheta_linear({Rational(2)}, Rational(4));
  CHECK(s == direct);
}

TEST_CASE("pow matches repeated multiplication") {
  auto th = jtheta_linear({Rational(1)}, Rational(6));
  auto p3 = ps_pow(th, 3);
  auto m3 = ps_mul(ps_mul(th, th), th);
  CHECK(p3 == m3);
  CHECK(p3.order() == ratio(3, 8));
}
