#include <doctest.h>

#include <cstdlib>
#include <fstream>

#include "thetablocks/linalg.hpp"
#include "thetablocks/reports.hpp"
#include "oracles.hpp"

using namespace thetablocks;

namespace {

PuiseuxSeries scaled(const PuiseuxSeries& s, const Integer& c) {
  return PuiseuxSeries::constant(s.rank(), c, s.q_prec()) * s;
}

bool agree_within(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  Rational p = std::min<Rational>(a.q_prec(), b.q_prec());
  return (a.truncated(p) - b.truncated(p)).is_zero();
}

JacobiForm with_series(JacobiForm f, PuiseuxSeries s) {
  f.series = std::move(s);
  return f;
}

ExpansionCache memory_cache() { return ExpansionCache(std::nullopt); }

std::filesystem::path scratch_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("thetablocks-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("G4 Fourier coefficients") {
  auto g = eisenstein_Gk(4, Rational(4));
  auto at = [&](int n) { return ratio(g.numerator.coefficient(Rational(n), {}), g.denominator); };
  CHECK(at(0) == ratio(1, 240));
  CHECK(at(1) == 1);
  CHECK(at(2) == 9);
  CHECK(at(3) == 28);
  CHECK(bernoulli(4) == ratio(-1, 30));
  CHECK(bernoulli(6) == ratio(1, 42));
}

TEST_CASE("Gritsenko lift: first layer and q-xi symmetry") {
  auto theta = theta_R_even(root_datum("A4"), Rational(10));
  auto g = gritsenko_lift(theta, 3, 3);
  CHECK(g.layer(0).is_zero());
  CHECK(agree_within(g.layer(1), scaled(theta.series, g.denominator)));
  long checked = 0;
  for (int m = 1; m <= 3; ++m) {
    auto lm = g.layer(m).truncated(Rational(4));
    lm.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) {
      Rational n = lm.q_exponent(qn);
      REQUIRE(is_integral(n));
      int ni = static_cast<int>(to_int64(n));
      if (ni < 1) return;
      CHECK(g.layer(ni).coefficient(Rational(m), lm.zeta_exponent(key)) == c);
      ++checked;
    });
  }
  CHECK(checked > 0);
  CHECK_THROWS_AS(gritsenko_lift(theta, 3, 4), PrecisionError);
}

TEST_CASE("main identity for A4") {
  auto cache = memory_cache();
  auto r = main_identity_check(cache, "A4", 2, 2);
  CHECK(r.pass);
  CHECK(r.data["mismatch_count"].get<long>() == 0);
  auto rep = verify_main_identity("A4", 2, 2);
  CHECK(rep.pass());
  CHECK(rep.C == 1);
  CHECK(rep.f00 == 4);
}

TEST_CASE("perturbing psi breaks the identity") {
  auto theta = theta_R_even(root_datum("A4"), required_theta_precision(2, 2));
  auto psi = borcherds_input(theta).psi;
  auto s = psi.series;
  SeriesBuilder b(s.rank(), s.q_prec(), s.q_denominator(), s.zeta_denominator());
  s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) { b.add(qn, key, c); });
  std::vector<Rational> l(s.rank(), Rational(0));
  l[0] = 1;
  b.add(Rational(1), l, Integer(1));
  auto bad = with_series(psi, b.build());
  auto rep = verify_main_identity(theta, "A4", 2, 2, &bad);
  CHECK_FALSE(rep.pass());
  CHECK(rep.comparison.mismatch_count > 0);
  CHECK_FALSE(rep.comparison.mismatches.empty());
}

TEST_CASE("zero input gives an empty product") {
  auto psi = borcherds_input(theta_R_even(root_datum("A4"), Rational(5))).psi;
  auto zero = with_series(psi, PuiseuxSeries(psi.rank(), Rational(10)));
  auto in = borcherds_input(zero, default_positivity(zero.rank()));
  CHECK(in.C == 0);
  CHECK(in.prefactor.factors.empty());
  auto p = borcherds_product(in, 2, 2);
  CHECK(p.layer(1).is_zero());
  CHECK(p.layer(2).is_zero());
  auto one = scaled(PuiseuxSeries::constant(zero.rank(), Integer(1), Rational(3)), p.denominator);
  CHECK(agree_within(p.layer(0), one));
}

TEST_CASE("divisor multiplicities agree with Fourier coefficients of psi") {
  auto cache = memory_cache();
  for (const char* name : {"A4", "A1+B3", "3A2"}) {
    CAPTURE(name);
    auto psi = cache.psi(name, Rational(kDecompositionThetaPrecision));
    auto dec = theta_decompose(psi);
    RatMatrix inv = inverse(psi.index.gram);
    const auto* level0 = psi.series.find_level(0);
    REQUIRE(level0);
    long seen = 0;
    for (const auto& [key, c] : level0->terms()) {
      auto l = psi.series.zeta_exponent(key);
      RatVector lv = to_vector(l);
      if (bilinear(inv, lv, lv) <= 0) continue;
      Integer oracle = 0;
      for (int d = 1; d <= 12; ++d) {
        auto dl = l;
        for (auto& x : dl) x *= d;
        oracle += psi.series.coefficient(Rational(0), dl);
      }
      CHECK(divisor_multiplicity(dec, psi, Rational(0), l) == oracle);
      ++seen;
    }
    CHECK(seen > 0);
  }
}

TEST_CASE("A4 reflective divisors") {
  auto cache = memory_cache();
  auto psi = cache.psi("A4", Rational(kDecompositionThetaPrecision));
  auto rep = reflectivity_report(theta_decompose(psi), Rational(2));
  CHECK(rep.multiplicities_in_01);
  CHECK(rep.nonzero.size() == 20);
  for (const auto& d : rep.nonzero) {
    CHECK(d.order == 5);
    CHECK(d.norm == ratio(-2, 5));
  }
  CHECK_THROWS_AS(divisor_multiplicity(theta_decompose(psi), 0, Rational(0)), InvalidInput);
}

TEST_CASE("serialization round trips") {
  auto f = theta_R(root_datum("A1+B3"), Rational(3));
  auto s = series_from_json(series_to_json(f.series));
  CHECK(s == f.series);
  CHECK(canonical_dump(series_to_json(s)) == canonical_dump(series_to_json(f.series)));

  auto g = jacobi_from_json(jacobi_to_json(f));
  CHECK(g.series == f.series);
  CHECK(g.weight == f.weight);
  CHECK(g.character == f.character);
  CHECK(g.index.gram == f.index.gram);

  auto lift = gritsenko_lift(theta_R_even(root_datum("A4"), Rational(5)), 2, 2);
  auto t = triple_from_json(triple_to_json(lift));
  CHECK(t.denominator == lift.denominator);
  CHECK(t.layers.size() == lift.layers.size());
  CHECK(compare(t, lift).equal());

  CHECK_THROWS(series_from_json(Json::parse(R"({"rank": 1})")));
}

TEST_CASE("expansion cache persists psi and degrades without a directory") {
  auto dir = scratch_dir("cache");
  {
    ExpansionCache c(dir);
    auto a = c.psi("A4", Rational(5));
    auto b = c.psi("A4", Rational(5));
    CHECK(a.series == b.series);
    auto st = c.stats();
    CHECK(st.writes == 1);
    CHECK(st.memory_hits >= 1);
    CHECK_FALSE(st.degraded);
  }
  {
    ExpansionCache c(dir);
    auto a = c.psi("A4", Rational(5));
    CHECK(c.stats().disk_hits == 1);
    CHECK(a.series == borcherds_input(theta_R_even(root_datum("A4"), Rational(5))).psi.series);
  }
  CHECK(ExpansionCache::key("psi", "A4", Rational(5)) != ExpansionCache::key("psi", "A4", Rational(6)));
  CHECK(ExpansionCache::key("psi", "A4", Rational(5)).size() == 16);

  std::filesystem::create_directories(dir);
  auto blocker = dir / "plain-file";
  std::ofstream(blocker) << "x";
  ExpansionCache broken(blocker / "sub");
  CHECK(broken.stats().degraded);
  auto a = broken.psi("A4", Rational(5));
  CHECK_FALSE(a.series.is_zero());
  std::filesystem::remove_all(dir);
}

TEST_CASE("cache directory follows the environment") {
  const char* old = std::getenv("THETABLOCKS_CACHE_DIR");
  std::string saved = old ? old : "";
  ::setenv("THETABLOCKS_CACHE_DIR", "/tmp/tb-env-dir", 1);
  CHECK(ExpansionCache::default_directory() == std::filesystem::path("/tmp/tb-env-dir"));
  if (old)
    ::setenv("THETABLOCKS_CACHE_DIR", saved.c_str(), 1);
  else
    ::unsetenv("THETABLOCKS_CACHE_DIR");
}

TEST_CASE("linear forms and the catalog") {
  std::vector<std::string> abcd{"a", "b", "c", "d"};
  CHECK(parse_linear_form("2a+b+d", abcd) == std::vector<Rational>{2, 1, 0, 1});
  CHECK(parse_linear_form("a - c", abcd) == std::vector<Rational>{1, 0, -1, 0});
  CHECK(parse_linear_form("3*b", abcd) == std::vector<Rational>{0, 3, 0, 0});
  std::vector<std::string> six{"a1", "a2", "a3", "a4", "a5", "a6"};
  CHECK(parse_linear_form("a1-a3", six) == std::vector<Rational>{1, 0, -1, 0, 0, 0});
  CHECK(parse_linear_form("a_2+a_6", six) == std::vector<Rational>{0, 1, 0, 0, 0, 1});
  CHECK_THROWS_AS(parse_linear_form("a+e", abcd), InvalidInput);

  CHECK(canonical_system_names().size() == 8);
  CHECK(system_data("B3+A1").name == "A1+B3");
  CHECK_THROWS_AS(system_data("A5"), InvalidInput);
  for (const auto& s : system_catalog()) {
    CAPTURE(s.name);
    auto datum = root_datum(s.name);
    CHECK(s.weight * 2 == datum.rank);
    CHECK(static_cast<long>(s.table_forms.size()) == datum.num_positive());
    auto spec = table_block(s);
    CHECK(spec.weight() == s.weight);
    CHECK(spec.q_order() == 1);
  }
}

TEST_CASE("classification and difference identity checks") {
  CHECK(classification_check().pass);
  auto r = difference_identity_check(4);
  CHECK(r.pass);
}

TEST_CASE("translation oracle accepts theta_R and flags a perturbed coefficient") {
  auto f = theta_R(root_datum("A1+B3"), Rational(4));
  auto ok = oracle::class_invariance(f);
  CHECK(ok.violation.empty());
  CHECK(ok.compared > 0);
  auto s = f.series;
  SeriesBuilder b(s.rank(), s.q_prec(), s.q_denominator(), s.zeta_denominator());
  s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) { b.add(qn, key, c); });
  const auto& first = s.levels().front();
  b.add(first.q_num, first.coeff.terms().front().first, Integer(1));
  CHECK_FALSE(oracle::class_invariance(with_series(f, b.build())).violation.empty());
}
