#include <doctest.h>

#include <map>

#include "thetablocks/discriminant.hpp"
#include "thetablocks/lattice.hpp"
#include "thetablocks/linalg.hpp"

using namespace thetablocks;

namespace {

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (long x : r) m(i, j++) = Integer(x);
    ++i;
  }
  return m;
}

GramLattice lattice_of(const char* name) { return gram_underline_R(root_datum(name)); }

// q of each class from minimal dual vectors found by enumeration.
std::map<long, Rational> q_by_enumeration(const GramLattice& l, const DiscriminantForm& d, const Rational& bound) {
  std::map<long, Rational> best;
  RatMatrix inv = inverse(l.gram);
  enumerate_coset(inv, RatVector::Zero(l.rank()), bound, [&](const RatVector& e, const Rational& norm) {
    long c = d.class_of_pairings(e);
    auto it = best.find(c);
    if (it == best.end() || norm < it->second) best[c] = norm;
  });
  for (auto& [c, n] : best) n = frac(n / 2);
  return best;
}

}  // namespace

TEST_CASE("index lattice determinants and even sublattices") {
  std::vector<std::pair<const char*, long>> dets{{"A4", 125},     {"A1+B3", 500}, {"A1+C3", 512},
                                                 {"B2+G2", 1728}, {"3A2", 27},    {"3A1+A3", 64},
                                                 {"2A1+A2+B2", 108}, {"8A1", 4}};
  for (auto [name, det] : dets) {
    CAPTURE(name);
    auto l = lattice_of(name);
    auto ev = even_sublattice(l);
    CHECK(ev.lattice.is_even());
    CHECK(ev.lattice.determinant() == det);
    CHECK(l.determinant() * ev.index * ev.index == det);
    auto again = even_sublattice(ev.lattice);
    CHECK(again.index == 1);
  }
}

TEST_CASE("even sublattices match the printed Gram matrices in genus") {
  IntMatrix l4 = int_matrix({{4, 2, 2, 2}, {2, 6, 1, 1}, {2, 1, 6, 1}, {2, 1, 1, 6}});
  IntMatrix s6 = int_matrix({{2, 0, 1, 1, 1, 0},
                             {0, 2, 1, 1, 1, 0},
                             {1, 1, 4, 2, 2, 3},
                             {1, 1, 2, 4, 0, 1},
                             {1, 1, 2, 0, 4, 1},
                             {0, 0, 3, 1, 1, 4}});
  IntMatrix l6 = int_matrix({{4, 2, 0, 0, -2, 0},
                             {2, 4, 0, 0, -1, 0},
                             {0, 0, 2, -1, 0, 0},
                             {0, 0, -1, 2, 0, 0},
                             {-2, -1, 0, 0, 2, 1},
                             {0, 0, 0, 0, 1, 4}});
  std::vector<std::tuple<const char*, IntMatrix, const char*>> cases{
      {"A1+B3", l4, "2_II^{+2}5^{+3}"}, {"3A1+A3", s6, "2_6^{+2}4_II^{-2}"}, {"2A1+A2+B2", l6, "2_II^{+2}3^{-3}"}};
  for (const auto& [name, gram, symbol] : cases) {
    CAPTURE(name);
    auto ev = even_sublattice(lattice_of(name)).lattice;
    auto printed = gram_lattice(gram);
    CHECK(ev.determinant() == printed.determinant());
    auto a = finite_qf_invariants(DiscriminantForm::of_lattice(ev));
    auto b = finite_qf_invariants(DiscriminantForm::of_lattice(printed));
    auto c = finite_qf_invariants(DiscriminantForm::from_genus_symbol(symbol));
    CHECK(a == b);
    CHECK(a == c);
    CHECK(a.signature == ev.rank() % 8);
  }
}

TEST_CASE("discriminant forms of all eight even sublattices match their genus symbols") {
  std::vector<std::pair<const char*, const char*>> genera{
      {"A4", "5^{+3}"},         {"A1+B3", "2_II^{+2}5^{+3}"},         {"A1+C3", "2_3^{-1}4_1^{+1}8_II^{-2}"},
      {"B2+G2", "2_6^{+2}4_II^{-2}3^{-3}"}, {"3A2", "3^{-3}"},        {"3A1+A3", "2_6^{+2}4_II^{-2}"},
      {"2A1+A2+B2", "2_II^{+2}3^{-3}"},     {"8A1", "2_II^{+2}"}};
  for (auto [name, symbol] : genera) {
    CAPTURE(name);
    auto ev = even_sublattice(lattice_of(name)).lattice;
    auto d = DiscriminantForm::of_lattice(ev);
    auto inv = finite_qf_invariants(d);
    CHECK(inv == finite_qf_invariants(DiscriminantForm::from_genus_symbol(symbol)));
    CHECK(inv.signature == ev.rank() % 8);
    CHECK(d.size() == to_int64(Integer(ev.determinant().get_num())));
    // q from minimal coset vectors
    auto enumerated = q_by_enumeration(ev, d, Rational(8));
    CHECK(static_cast<long>(enumerated.size()) == d.size());
    for (const auto& [c, q] : enumerated) CHECK(d.q(c) == q);
  }
}

TEST_CASE("bilinear form is biadditive and nondegenerate") {
  for (const char* name : {"A4", "A1+C3", "3A1+A3", "8A1"}) {
    CAPTURE(name);
    auto d = DiscriminantForm::of_lattice(even_sublattice(lattice_of(name)).lattice);
    bool additive = true, nondegenerate = true;
    for (long a = 0; a < d.size(); ++a) {
      bool degenerate = a != 0;
      for (long b = 0; b < d.size(); ++b) {
        if (d.b_num(a, b) != 0) degenerate = false;
        if (b % 7 == 0)
          for (long c = 0; c < d.size(); c += 5)
            additive = additive && mod_floor(d.b_num(a, d.add(b, c)) - d.b_num(a, b) - d.b_num(a, c), d.level()) == 0;
      }
      nondegenerate = nondegenerate && !degenerate;
    }
    CHECK(additive);
    CHECK(nondegenerate);
  }
}

TEST_CASE("small discriminant forms") {
  auto a2 = DiscriminantForm::of_lattice(gram_lattice(int_matrix({{2, -1}, {-1, 2}})));
  CHECK(a2.size() == 3);
  CHECK(a2.q(1) == ratio(1, 3));
  CHECK(a2.q(2) == ratio(1, 3));
  CHECK(milgram_signature(a2) == 2);

  auto odd = DiscriminantForm::from_genus_symbol("2_3^{-1}");
  CHECK(odd.size() == 2);
  CHECK(odd.q(1) == ratio(3, 4));
  auto four = DiscriminantForm::from_genus_symbol("4_1^{+1}");
  CHECK(four.q(1) == ratio(1, 8));
  auto two = DiscriminantForm::from_genus_symbol("2_6^{+2}");
  for (long i = 1; i < 3; ++i) CHECK(two.q(i) == ratio(3, 4));
  CHECK(two.q(3) == ratio(1, 2));

  CHECK(milgram_signature(hyperbolic_discriminant(6)) == 0);
  CHECK(DiscriminantForm::from_genus_symbol("2_II^{+2}").isotropic_elements().size() == 3);
  CHECK(DiscriminantForm::from_genus_symbol("2_II^{-2}").isotropic_elements().size() == 1);

  CHECK_THROWS_AS(DiscriminantForm::from_genus_symbol("6^{+1}"), InvalidInput);
  CHECK_THROWS_AS(DiscriminantForm::from_genus_symbol("2^{+1}"), InvalidInput);
  CHECK_THROWS_AS(DiscriminantForm::of_lattice(gram_lattice(int_matrix({{1}}))), InvalidInput);
}

TEST_CASE("dual determinant and shadow") {
  auto a4 = lattice_of("A4");
  CHECK(dual_lattice(a4).determinant() == ratio(1, 125));
  auto z = gram_lattice(int_matrix({{1}}));
  CHECK(shadow_shift(z)(0) == ratio(1, 2));
  auto s = shadow_shift(even_sublattice(lattice_of("8A1")).lattice);
  for (Eigen::Index i = 0; i < s.size(); ++i) CHECK(s(i) == 0);
}

TEST_CASE("orders and norms of r/h") {
  struct Row {
    const char* system;
    bool long_root;
    long order_l, order_lev;
    Rational norm;
  };
  std::vector<Row> rows{
      {"A1", true, 1, 2, Rational(1)},           {"A2", true, 3, 3, ratio(2, 3)},
      {"A4", true, 5, 5, ratio(2, 5)},           {"B2", false, 3, 6, ratio(1, 3)},
      {"B2", true, 3, 3, ratio(2, 3)},           {"B3", false, 5, 10, ratio(1, 5)},
      {"B3", true, 5, 5, ratio(2, 5)},           {"C3", false, 8, 8, ratio(2, 8)},
      {"C3", true, 4, 4, ratio(2, 4)},           {"C4", false, 10, 10, ratio(2, 10)},
      {"G2", false, 12, 12, ratio(1, 6)},        {"G2", true, 4, 4, ratio(1, 2)},
  };
  for (const auto& row : rows) {
    CAPTURE(row.system);
    CAPTURE(row.long_root);
    auto datum = root_datum(row.system);
    auto l = gram_underline_R(datum);
    auto ev = even_sublattice(l);
    bool seen = false;
    for (int r = 0; r < datum.num_positive(); ++r) {
      if (is_long_root(datum, r) != row.long_root) continue;
      RatVector e(datum.rank);
      for (int i = 0; i < datum.rank; ++i) e(i) = datum.positive_roots[r][i];
      auto on = order_and_norm(l, ev, e);
      CHECK(on.order_l == row.order_l);
      CHECK(on.order_lev == row.order_lev);
      CHECK(on.norm == row.norm);
      seen = true;
    }
    CHECK(seen);
  }
}
