#include <doctest.h>

#include "thetablocks/cyclotomic.hpp"
#include "thetablocks/jacobi.hpp"
#include "thetablocks/weilrep.hpp"
#include "oracles.hpp"

using namespace thetablocks;

namespace {

const char* kSystems[] = {"A4", "A1+B3", "A1+C3", "B2+G2", "3A2", "3A1+A3", "2A1+A2+B2", "8A1"};

}  // namespace

TEST_CASE("root theta functions have q-order one and holomorphic singular part") {
  for (const char* name : kSystems) {
    CAPTURE(name);
    auto datum = root_datum(name);
    auto f = theta_R(datum, Rational(3));
    CHECK(f.series.order() == Rational(1));
    CHECK(f.series.normalized().q_denominator() == 1);
    CHECK(f.weight == ratio(datum.rank, 2));
    CHECK(f.character == 0);
    CHECK(singular_part(f).empty());
    CHECK(f.series.level(Rational(1)) == expand_factors(datum.rank, f.leading_factors));
  }
}

TEST_CASE("Hecke operator agrees with the coset definition") {
  auto a4 = theta_R(root_datum("A4"), Rational(9));
  for (int m : {2, 3, 4}) {
    CAPTURE(m);
    auto t = hecke_Tminus(a4, m);
    CHECK(t.series == oracle::hecke_by_definition(a4.series.normalized(), m, 2));
    CHECK(t.index.gram == a4.index.gram * Rational(m));
    CHECK(hecke_Tminus_scaled(a4, m).series == scale(t.series, Integer(m)));
  }
  ThetaBlockSpec s;
  s.factors.emplace_back(std::vector<Rational>{1}, 8);
  auto th8 = theta_block(s, Rational(13));
  CHECK(th8.weight == 4);
  for (int m : {2, 3, 4}) CHECK(hecke_Tminus(th8, m).series == oracle::hecke_by_definition(th8.series.normalized(), m, 4));
}

TEST_CASE("specialization equals the theta block of the paired forms") {
  auto datum = root_datum("A4");
  auto f = theta_R(datum, Rational(5));
  IntVector x(4);
  x << 1, 2, -1, 3;
  ThetaBlockSpec s = theta_R_spec(datum);
  for (auto& [form, mult] : s.factors) {
    Rational v = 0;
    for (int i = 0; i < 4; ++i) v += form[i] * Rational(x(i));
    form = {v};
  }
  auto direct = theta_block(s, Rational(5));
  auto spec = specialize(f, x);
  CHECK(spec.series == direct.series.normalized());
  CHECK(spec.index.gram == direct.index.gram);
}

TEST_CASE("theta squared decomposes into the two unary theta series") {
  ThetaBlockSpec s;
  s.factors.emplace_back(std::vector<Rational>{1}, 2);
  auto f = theta_block(s, Rational(10));
  auto dec = theta_decompose(f);
  CHECK(dec.consistent());
  REQUIRE(dec.form.size() == 2);
  long odd = dec.form.q(1) == ratio(1, 4) ? 1 : 0;
  long even = 1 - odd;
  // F_even = -sum_{j odd} q^(j^2/4), F_odd = sum_{j even} q^(j^2/4)
  for (int j = 0; j * j < 4 * 9; ++j) {
    Rational e = ratio(j * j, 4);
    if (j % 2) {
      CHECK(dec.coefficient(even, e) == -2);
    } else {
      CHECK(dec.coefficient(odd, e) == (j == 0 ? 1 : 2));
    }
  }
  CHECK(dec.coefficient(odd, ratio(1, 2)) == 0);
  CHECK_THROWS_AS(dec.coefficient(odd, Rational(20)), PrecisionError);
}

TEST_CASE("restricted root theta function has a constant invariant decomposition") {
  auto datum = root_datum("A4");
  auto f = theta_R(datum, Rational(4));
  auto ev = even_sublattice(f.index);
  auto r = restrict_to(f, ev.basis);
  CHECK(r.index == ev.lattice);
  auto dec = theta_decompose(r);
  REQUIRE(dec.consistent());
  std::vector<Rational> v(dec.form.size(), Rational(0));
  for (long c = 0; c < dec.form.size(); ++c) {
    for (const auto& [e, value] : dec.components[c]) {
      CHECK(e == 0);
      v[c] = Rational(value);
    }
  }
  CHECK(std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }));
  CHECK(is_invariant(WeilRep(dec.form), v));
}

TEST_CASE("theta block with a vanishing form is zero") {
  ThetaBlockSpec s;
  s.eta_power = 2;
  s.factors.emplace_back(std::vector<Rational>{0, 0}, 1);
  s.factors.emplace_back(std::vector<Rational>{1, 0}, 1);
  CHECK(theta_block(s, Rational(3)).series.is_zero());
}
