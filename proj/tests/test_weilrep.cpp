#include <doctest.h>

#include "thetablocks/lattice.hpp"
#include "thetablocks/weilrep.hpp"

using namespace thetablocks;

namespace {

DiscriminantForm form_of(const char* name) {
  return DiscriminantForm::of_lattice(even_sublattice(gram_underline_R(root_datum(name))).lattice);
}

bool equal(const CycVector& a, const CycVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("Weil representation relations") {
  std::vector<DiscriminantForm> forms{DiscriminantForm::from_genus_symbol("3^{-1}3^{-1}"),
                                      DiscriminantForm::from_genus_symbol("2_II^{+2}"),
                                      DiscriminantForm::from_genus_symbol("2_6^{+2}"),
                                      DiscriminantForm::from_genus_symbol("5^{+1}5^{+1}"),
                                      DiscriminantForm::from_genus_symbol("4_II^{-2}"), form_of("3A2")};
  for (const auto& d : forms) {
    WeilRep w(d);
    const int m = w.order();
    for (long g = 0; g < d.size(); ++g) {
      auto e = w.basis_vector(g);
      auto s2 = w.apply_S(w.apply_S(e));
      // S^2 e_g = e(sign/4) e_{-g}
      auto z = w.basis_vector(d.neg(g));
      for (auto& x : z) x = x * Cyclotomic::root_of_unity(m, w.signature() * (m / 4));
      CHECK(equal(s2, z));
      auto st = e;
      for (int i = 0; i < 3; ++i) st = w.apply_S(w.apply_T(st));
      CHECK(equal(st, s2));
    }
    CHECK(w.t_exponent(0) == 0);
    // coefficient of e_0 in S e_0 is e(sign/8)/sqrt|D|: its square is e(sign/4)/|D|
    auto c = w.s_entry(0, 0);
    CHECK(c * c == Cyclotomic::root_of_unity(m, w.signature() * (m / 4)) * ratio(1, d.size()));
  }
}

TEST_CASE("invariant dimensions for the eight even sublattices") {
  std::vector<std::pair<const char*, long>> dims{{"A4", 1},  {"A1+C3", 1},  {"B2+G2", 1},     {"3A2", 1},
                                                 {"3A1+A3", 1}, {"A1+B3", 2}, {"2A1+A2+B2", 2}, {"8A1", 2}};
  for (auto [name, dim] : dims) {
    CAPTURE(name);
    WeilRep w(form_of(name));
    auto inv = invariant_subspace(w);
    CHECK(inv.dimension == dim);
    CHECK(inv.checked_rank_bound == dim);
  }
  WeilRep trivial(DiscriminantForm({}, {}, RatMatrix::Zero(0, 0)));
  auto inv = invariant_subspace(trivial);
  CHECK(inv.dimension == 1);
  CHECK(inv.basis[0][0] == 1);
}

TEST_CASE("hyperbolic plane invariants are e0 + e_gamma for isotropic generators") {
  auto d = DiscriminantForm::from_genus_symbol("2_II^{+2}");
  WeilRep w(d);
  CHECK(invariant_subspace(w).dimension == 2);
  for (long g : d.isotropic_elements()) {
    if (g == 0) continue;
    std::vector<Rational> v(d.size(), Rational(0));
    v[0] = 1;
    v[g] = 1;
    CHECK(is_invariant(w, v));
  }
}

TEST_CASE("chi_D") {
  auto d = form_of("3A2");
  CHECK(chi_D(d, 1) == Cyclotomic::rational(8, Rational(1)));
  CHECK(oddity(d) == 0);
  CHECK(chi_D(d, 2) == Cyclotomic::rational(8, Rational(kronecker(2, 27))));
  auto e = form_of("A1+C3");
  for (long a : {1L, 3L, 5L, 7L})
    for (long b : {1L, 3L, 5L, 7L}) CHECK(chi_D(e, a) * chi_D(e, b) == chi_D(e, a * b));
  CHECK_THROWS_AS(chi_D(e, 2), InvalidInput);
  CHECK(kronecker(2, 27) == -1);
  CHECK(kronecker(3, 5) == -1);
  CHECK(kronecker(4, 5) == 1);
}
