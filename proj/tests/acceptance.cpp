// Acceptance battery: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "thetablocks/reports.hpp"

using namespace thetablocks;

namespace {

struct Result {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  std::function<Result()> run;
};

constexpr int kQMax = 3;
constexpr int kXiMax = 3;

// Runs the per-system check everywhere and reports the first failure.
Result over_systems(const std::function<CheckOutcome(const std::string&)>& check, const std::string& ok) {
  for (const auto& s : canonical_system_names()) {
    auto c = check(s);
    if (!c.pass) return {false, s + ": " + c.summary};
  }
  return {true, ok};
}

bool agree_within(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  Rational p = std::min<Rational>(a.q_prec(), b.q_prec());
  return (a.truncated(p) - b.truncated(p)).is_zero();
}

Result triple_product_identity() {
  auto th = jtheta_linear({Rational(1)}, Rational(11));
  auto prod = oracle::triple_product(8 * 11);
  std::size_t count = 0;
  bool ok = true;
  th.for_each_term([&](std::int64_t qn, const ExponentKey& k, const Integer& c) {
    long q8 = static_cast<long>(qn * 8 / th.q_denominator());
    long z2 = static_cast<long>(k[0] * 2 / th.zeta_denominator());
    auto it = prod.find({q8, z2});
    if (it == prod.end() || c != it->second) ok = false;
    ++count;
  });
  ok = ok && count == prod.size();
  return {ok, std::to_string(count) + " terms below q^11"};
}

Result hecke_oracle(std::mt19937& rng) {
  const std::vector<std::string> pool{"A4", "A1+B3", "A1+C3", "B2+G2", "3A2", "3A1+A3"};
  int trials = 0;
  for (int round = 0; round < 4; ++round) {
    for (int m : {2, 3, 4}) {
      const auto& name = pool[rng() % pool.size()];
      auto datum = root_datum(name);
      Rational prec = ratio(static_cast<long>(2 * m + 2 + rng() % (2 * m)), static_cast<long>(1 + rng() % 2));
      auto f = theta_R(datum, prec);
      if (round % 2) {
        IntVector x(datum.rank);
        for (int i = 0; i < datum.rank; ++i) x(i) = static_cast<long>(rng() % 5) - 2;
        f = specialize(f, x);
      }
      int k = static_cast<int>(to_int64(f.weight));
      auto lib = hecke_Tminus(f, m).series;
      auto ref = oracle::hecke_by_definition(f.series.normalized(), m, k);
      if (!(lib == ref))
        return {false, name + " m=" + std::to_string(m) + " precision " + to_string(prec) + " differs"};
      ++trials;
    }
  }
  return {true, std::to_string(trials) + " randomized truncations"};
}

Result division_round_trip(std::mt19937& rng) {
  auto small = [&](int lo, int hi) { return static_cast<long>(lo + static_cast<int>(rng() % (hi - lo + 1))); };
  int trials = 0;
  for (int t = 0; t < 12; ++t) {
    ThetaBlockSpec spec;
    spec.eta_power = static_cast<int>(small(0, 3));
    int factors = static_cast<int>(small(1, 3));
    for (int i = 0; i < factors; ++i) {
      std::vector<Rational> form{Rational(small(-2, 2)), Rational(small(-2, 2))};
      if (form[0] == 0 && form[1] == 0) form[0] = 1;
      spec.factors.emplace_back(form, 1);
    }
    auto b = theta_block(spec, Rational(7));
    SeriesBuilder sb(2, Rational(6), 1, 1);
    for (int j = 0; j < 10; ++j)
      sb.add(Rational(small(0, 5)), {Rational(small(-3, 3)), Rational(small(-3, 3))}, Integer(small(-5, 5)));
    auto a = sb.build();
    auto x = ps_mul(a, b.series);
    auto back = ps_exact_div(x, b.series, b.leading_factors);
    if (!agree_within(back, a)) return {false, "series division round trip failed"};
    if (!(divide_exact(scale(a, Integer(7)), Integer(7)) == a)) return {false, "scalar division round trip failed"};
    ++trials;
  }
  bool threw = false;
  try {
    divide_exact(PuiseuxSeries::constant(1, Integer(3), Rational(2)), Integer(2));
  } catch (const NotDivisible&) {
    threw = true;
  }
  if (!threw) return {false, "inexact scalar division was accepted"};
  return {true, std::to_string(trials) + " random quotients"};
}

Result class_invariance(ExpansionCache& cache) {
  std::vector<std::pair<std::string, JacobiForm>> forms;
  for (const auto& s : canonical_system_names()) {
    auto datum = root_datum(s);
    const auto& row = system_data(s);
    forms.emplace_back("theta " + s, theta_R(datum, Rational(4)));
    forms.emplace_back("psi " + s, cache.psi(s, required_theta_precision(kQMax, kXiMax)));
    forms.emplace_back("table block " + s, theta_block(table_block(row), Rational(5)));
  }
  for (const char* s : {"A4", "A1+B3", "3A2"})
    forms.emplace_back(std::string("T_-(2) theta on L_ev ") + s, hecke_Tminus(theta_R_even(root_datum(s), Rational(8)), 2));
  long compared = 0;
  for (const auto& [label, f] : forms) {
    auto r = oracle::class_invariance(f);
    if (!r.violation.empty()) return {false, label + ": " + r.violation};
    if (r.compared == 0) return {false, label + ": nothing to compare"};
    compared += r.compared;
  }
  return {true, std::to_string(forms.size()) + " forms, " + std::to_string(compared) + " translated coefficients"};
}

}  // namespace

int main() {
  ExpansionCache cache(std::nullopt);
  std::mt19937 rng(20240611);
  const int theta_prec = static_cast<int>(to_int64(required_theta_precision(kQMax, kXiMax)));
  const int decomposition_prec = std::max(kDecompositionThetaPrecision, theta_prec);
  std::map<std::string, CheckOutcome> main_identity;

  std::vector<Criterion> criteria{
      {1, "classification",
       [] {
         auto c = classification_check();
         return Result{c.pass, c.summary};
       }},
      {2, "holomorphy and q-order",
       [] { return over_systems([](const std::string& s) { return holomorphy_check(s, 6); },
                                "8 systems, no singular terms below q^6, q-order 1"); }},
      {3, "main identity",
       [&] {
         return over_systems(
             [&](const std::string& s) {
               return main_identity.emplace(s, main_identity_check(cache, s, kQMax, kXiMax)).first->second;
             },
             "G(theta) = B(psi) for 8 systems, verified to (3, 3)");
       }},
      {4, "prefactor and Weyl data",
       [&] {
         for (const auto& s : canonical_system_names()) {
           if (!main_identity.count(s)) main_identity.emplace(s, main_identity_check(cache, s, kQMax, kXiMax));
           const auto& c = main_identity.at(s);
           if (c.data["C"] != "1" || !c.data["prefactor_equals_theta"].get<bool>() ||
               !c.data["first_layer_equals_minus_theta_psi"].get<bool>())
             return Result{false, s + ": C = " + c.data["C"].get<std::string>()};
         }
         return Result{true, "C = 1 and Theta_{f(0,*)} = theta_R for 8 systems"};
       }},
      {5, "principal parts",
       [&] {
         return over_systems([&](const std::string& s) { return principal_parts_check(cache, s, decomposition_prec); },
                             "singular parts of psi match for 8 systems");
       }},
      {6, "strong reflectivity",
       [&] {
         return over_systems(
             [&](const std::string& s) { return reflectivity_check(cache, s, decomposition_prec, Rational(2)); },
             "all multiplicities with |2n - (l, l)| <= 2 lie in {0, 1}");
       }},
      {7, "invariant dimensions",
       [] {
         const std::set<std::string> two{"A1+B3", "2A1+A2+B2", "8A1"};
         for (const auto& s : canonical_system_names()) {
           auto c = invariant_dimension_check(s);
           long want = two.count(s) ? 2 : 1;
           if (c.data["dimension"].get<long>() != want) return Result{false, s + ": " + c.summary};
         }
         return Result{true, "dimension 2 for A1+B3, 2A1+A2+B2, 8A1 and 1 otherwise"};
       }},
      {8, "Milgram identity",
       [] { return over_systems(milgram_check, "Gauss sums give signature = rank mod 8 for 8 forms"); }},
      {9, "table specializations",
       [] { return over_systems(table_specialization_check, "8 rows agree and commute with T_-(2) and G"); }},
      {10, "difference identity",
       [] {
         auto c = difference_identity_check(4);
         return Result{c.pass, c.summary};
       }},
      {11, "property suites",
       [&] {
         std::vector<std::pair<std::string, Result>> parts{{"triple product", triple_product_identity()},
                                                           {"Hecke", hecke_oracle(rng)},
                                                           {"division", division_round_trip(rng)},
                                                           {"class invariance", class_invariance(cache)}};
         Result out{true, ""};
         for (const auto& [name, r] : parts) {
           out.pass = out.pass && r.pass;
           out.detail += (out.detail.empty() ? "" : "; ") + name + ": " + r.detail;
         }
         return out;
       }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && r.pass;
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << std::setw(2) << c.id << " " << c.name << " ("
              << std::fixed << std::setprecision(1) << secs << " s): " << r.detail << std::endl;
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << std::endl;
  return all ? 0 : 1;
}
