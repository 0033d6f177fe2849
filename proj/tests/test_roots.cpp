#include <doctest.h>

#include <algorithm>
#include <Eigen/LU>

#include "thetablocks/roots.hpp"

using namespace thetablocks;

TEST_CASE("exactly eight root systems have theta q-order one") {
  auto found = classify_q_order_one();
  std::vector<std::string> names;
  for (const auto& s : found) names.push_back(canonical_name(s));
  std::vector<std::string> expected{"A4", "A1+B3", "A1+C3", "B2+G2", "3A2", "3A1+A3", "2A1+A2+B2", "8A1"};
  CHECK(names == expected);
  for (const auto& s : found) CHECK(theta_q_order(root_datum(s)) == 1);
}

TEST_CASE("root system names parse and rejects illegal ranks") {
  CHECK(canonical_name(parse_root_system("B2 + A1 + A2 + A1")) == "2A1+A2+B2");
  CHECK(canonical_name(parse_root_system("A_1+C_3")) == "A1+C3");
  CHECK(canonical_name(parse_root_system("8A1")) == "8A1");
  for (const char* bad : {"B1", "C2", "D3", "E5", "E9", "F3", "G3", "A0", "X2", "", "A", "A1+", "2"})
    CHECK_THROWS_AS(parse_root_system(bad), InvalidInput);
}

TEST_CASE("positive root counts") {
  std::vector<std::pair<const char*, int>> counts{{"A1", 1},  {"A4", 10}, {"B2", 4},  {"B3", 9},
                                                  {"C3", 9},  {"D4", 12}, {"G2", 6},  {"F4", 24},
                                                  {"E6", 36}, {"E7", 63}, {"E8", 120}};
  for (auto [name, n] : counts) CHECK(root_datum(name).num_positive() == n);
}

TEST_CASE("Coxeter numbers from root norms") {
  std::vector<std::pair<const char*, long>> hs{{"A1", 2}, {"A4", 5}, {"B3", 5}, {"C3", 8}, {"G2", 12}, {"B2", 3}};
  for (auto [name, h] : hs) CHECK(coxeter_number(root_datum(name), 0) == h);
}

TEST_CASE("Cartan generation agrees with explicit coordinates") {
  for (const char* name : {"A1", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4", "E8"}) {
    CAPTURE(name);
    auto spec = parse_root_system(name);
    auto datum = root_datum(spec);
    auto amb = standard_realization(spec.components[0]);
    const RatMatrix& s = amb.simple_roots;
    CHECK((s.transpose() * s) == datum.simple_gram);
    std::vector<std::vector<Rational>> generated, explicit_roots;
    for (int r = 0; r < datum.num_positive(); ++r) {
      RatVector c(datum.rank);
      for (int i = 0; i < datum.rank; ++i) c(i) = datum.positive_roots[r][i];
      RatVector v = s * c;
      CHECK(v.dot(v) == datum.root_norms[r]);
      generated.emplace_back(v.begin(), v.end());
    }
    for (const auto& v : amb.positive_roots) explicit_roots.emplace_back(v.begin(), v.end());
    std::sort(generated.begin(), generated.end());
    std::sort(explicit_roots.begin(), explicit_roots.end());
    CHECK(generated == explicit_roots);
  }
}

TEST_CASE("sum of gamma gamma^T equals h times the inverse simple Gram") {
  for (const char* name : {"A4", "B3", "C3", "G2", "A1", "B2", "D4", "F4"}) {
    CAPTURE(name);
    auto d = root_datum(name);
    RatMatrix g = RatMatrix::Zero(d.rank, d.rank);
    for (const auto& r : d.positive_roots)
      for (int i = 0; i < d.rank; ++i)
        for (int j = 0; j < d.rank; ++j) g(i, j) += r[i] * r[j];
    RatMatrix expected = d.simple_gram.fullPivLu().inverse() * coxeter_number(d, 0);
    CHECK(g == expected);
  }
}
