#include "thetablocks/lifts.hpp"

#include <algorithm>
#include <set>

#include "thetablocks/linalg.hpp"

namespace thetablocks {

PuiseuxSeries TripleSeries::layer(int m) const {
  auto it = layers.find(m);
  if (it != layers.end()) return it->second;
  return PuiseuxSeries(rank, Rational(q_max + 1));
}

std::size_t TripleSeries::num_terms() const {
  std::size_t n = 0;
  for (const auto& [m, s] : layers) n += s.num_terms();
  return n;
}

void TripleSeries::set_layer(int m, PuiseuxSeries s) {
  if (m < 0 || m > xi_max) return;
  s = s.truncated(Rational(q_max + 1)).normalized();
  if (s.q_prec() <= q_max || (s.q_prec() < q_max + 1 && s.q_denominator() != 1))
    throw PrecisionError("layer xi^" + std::to_string(m) + " is known only below q^" + to_string(s.q_prec()));
  if (s.q_prec() < q_max + 1) {
    // integral exponents: everything up to q^q_max is known
    SeriesBuilder b(s.rank(), Rational(q_max + 1), 1, s.zeta_denominator());
    s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) { b.add(qn, key, c); });
    s = b.build();
  }
  if (s.is_zero())
    layers.erase(m);
  else
    layers[m] = std::move(s);
}

TripleComparison compare(const TripleSeries& a, const TripleSeries& b, std::size_t keep) {
  TripleComparison out;
  const int xi = std::min(a.xi_max, b.xi_max);
  const Rational prec(std::min(a.q_max, b.q_max) + 1);
  for (int m = 0; m <= xi; ++m) {
    auto [sa, sb] = common_denominators(a.layer(m).truncated(prec), b.layer(m).truncated(prec));
    const auto& la = sa.levels();
    const auto& lb = sb.levels();
    std::size_t i = 0, j = 0;
    auto report = [&](std::int64_t qn, const ExponentKey& key, const Integer& x, const Integer& y) {
      ++out.compared;
      if (x * b.denominator == y * a.denominator) return;
      ++out.mismatch_count;
      if (out.mismatches.size() < keep) out.mismatches.push_back({sa.q_exponent(qn), sa.zeta_exponent(key), m, x, y});
    };
    auto walk = [&](std::int64_t qn, const LaurentCoefficient* ca, const LaurentCoefficient* cb) {
      static const std::vector<LaurentCoefficient::Term> none;
      const auto& ta = ca ? ca->terms() : none;
      const auto& tb = cb ? cb->terms() : none;
      std::size_t p = 0, r = 0;
      while (p < ta.size() || r < tb.size()) {
        if (r == tb.size() || (p < ta.size() && ta[p].first < tb[r].first)) {
          report(qn, ta[p].first, ta[p].second, Integer(0));
          ++p;
        } else if (p == ta.size() || tb[r].first < ta[p].first) {
          report(qn, tb[r].first, Integer(0), tb[r].second);
          ++r;
        } else {
          report(qn, ta[p].first, ta[p].second, tb[r].second);
          ++p;
          ++r;
        }
      }
    };
    while (i < la.size() || j < lb.size()) {
      if (j == lb.size() || (i < la.size() && la[i].q_num < lb[j].q_num)) {
        walk(la[i].q_num, &la[i].coeff, nullptr);
        ++i;
      } else if (i == la.size() || lb[j].q_num < la[i].q_num) {
        walk(lb[j].q_num, nullptr, &lb[j].coeff);
        ++j;
      } else {
        walk(la[i].q_num, &la[i].coeff, &lb[j].coeff);
        ++i;
        ++j;
      }
    }
  }
  return out;
}

Rational bernoulli(int n) {
  std::vector<Rational> b(n + 1);
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational s = 0;
    for (int k = 0; k < m; ++k) s += Rational(binomial(Integer(m + 1), static_cast<unsigned>(k))) * b[k];
    b[m] = -s / (m + 1);
  }
  return b[n];
}

ScaledSeries eisenstein_Gk(int k, const Rational& q_prec, int rank) {
  if (k < 4 || k % 2 != 0) throw InvalidInput("Eisenstein series G_k needs an even k >= 4");
  Rational c = -bernoulli(k) / (2 * k);
  ScaledSeries out;
  out.denominator = c.get_den();
  SeriesBuilder b(rank, q_prec, 1, 1);
  ExponentKey zero{};
  b.add(0, zero, c.get_num());
  for (std::int64_t n = 1; b.in_range(n); ++n) {
    Integer s = 0;
    for (std::int64_t d = 1; d <= n; ++d)
      if (n % d == 0) s += pow(Integer(static_cast<long>(d)), static_cast<unsigned>(k - 1));
    b.add(n, zero, s * out.denominator);
  }
  out.numerator = b.build();
  return out;
}

TripleSeries gritsenko_lift(const JacobiForm& phi, int q_max, int xi_max) {
  if (phi.series.q_prec() <= Rational(xi_max) * q_max)
    throw PrecisionError("Gritsenko lift to xi^" + std::to_string(xi_max) + " and q^" + std::to_string(q_max) +
                         " needs the form beyond q^" + std::to_string(xi_max * q_max));
  TripleSeries out;
  out.rank = phi.rank();
  out.q_max = q_max;
  out.xi_max = xi_max;
  Integer f00 = phi.series.coefficient(Rational(0), std::vector<Rational>(phi.rank(), Rational(0)));
  if (f00 != 0) {
    if (!is_integral(phi.weight)) throw InvalidInput("Eisenstein term needs an integral weight");
    auto g = eisenstein_Gk(static_cast<int>(to_int64(phi.weight)), Rational(q_max + 1), phi.rank());
    out.denominator = g.denominator;
    out.set_layer(0, scale(g.numerator, f00));
  }
  for (int m = 1; m <= xi_max; ++m) out.set_layer(m, scale(hecke_Tminus(phi, m).series, out.denominator));
  return out;
}

bool is_positive(const std::vector<Rational>& l, const std::vector<Rational>& positivity) {
  Rational s = 0;
  for (std::size_t i = 0; i < l.size() && i < positivity.size(); ++i) s += positivity[i] * l[i];
  if (s != 0) return s > 0;
  for (const auto& x : l)
    if (x != 0) return x > 0;
  return false;
}

std::vector<Rational> default_positivity(int rank) {
  std::vector<Rational> w(rank);
  for (int i = 0; i < rank; ++i) w[i] = ratio(1, 1L << (3 * i));
  return w;
}

namespace {

// (w, l) = (2 rho, l) for the Weyl vector of the chamber containing the leading factor directions.
std::vector<Rational> chamber_positivity(const JacobiForm& theta) {
  const int r = theta.rank();
  if (theta.leading_factors.empty()) return default_positivity(r);
  RatVector rho = RatVector::Zero(r);
  for (const auto& f : theta.leading_factors) rho += to_vector(f.direction);
  return to_std(inverse(theta.index.gram) * rho);
}

}  // namespace

BorcherdsInput borcherds_input(const JacobiForm& theta) {
  JacobiForm t2 = hecke_Tminus(theta, 2);
  JacobiForm psi;
  psi.index = theta.index;
  psi.weight = 0;
  psi.character = 0;
  psi.series = ps_exact_div(-t2.series, theta.series, theta.leading_factors).normalized();
  return borcherds_input(psi, chamber_positivity(theta));
}

BorcherdsInput borcherds_input(const JacobiForm& psi, const std::vector<Rational>& positivity) {
  BorcherdsInput in;
  in.psi = psi;
  in.positivity = positivity;
  if (psi.series.q_prec() <= 0) throw PrecisionError("the q^0 layer of psi is unknown");
  if (auto o = psi.series.order(); o && *o < 0) throw InvalidInput("psi has negative q-exponents");
  const int r = psi.rank();
  LaurentCoefficient lv = psi.series.level(Rational(0));
  NormEvaluator ne(psi.index.gram, lv.zeta_denominator());
  Rational sum = 0;
  int f00 = 0;
  std::vector<std::pair<std::vector<Rational>, int>> positive;
  for (const auto& [key, c] : lv.terms()) {
    auto l = lv.exponent(key);
    in.f0[l] = c;
    sum += ne.norm(key) * c;
    std::vector<Rational> neg(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) neg[i] = -l[i];
    if (lv.coefficient(neg) != c) throw InvalidInput("f(0, l) differs from f(0, -l)");
    if (std::all_of(l.begin(), l.end(), [](const Rational& x) { return x == 0; })) {
      f00 = static_cast<int>(to_int64(c));
    } else if (is_positive(l, positivity)) {
      if (c < 0) throw InvalidInput("negative f(0, l) for a positive l");
      positive.emplace_back(l, static_cast<int>(to_int64(c)));
    }
  }
  in.C = sum / (2 * r);
  if (!is_integral(in.C)) throw InvalidInput("the Weyl vector coefficient C = " + to_string(in.C) + " is not an integer");
  in.prefactor = ThetaBlockSpec::from_exponents(f00, positive);
  return in;
}

std::vector<PuiseuxSeries> borcherds_factor_layers(const PuiseuxSeries& psi0, int q_max, int k_max) {
  PuiseuxSeries psi = psi0.normalized();
  const int rank = psi.rank();
  if (psi.q_denominator() != 1) throw InvalidInput("Borcherds product needs integral q-exponents");
  if (k_max >= 1 && q_max >= 0 && psi.q_prec() <= Rational(std::max(q_max, 0) * k_max))
    throw PrecisionError("Borcherds product needs psi beyond q^" + std::to_string(q_max * k_max) + ", known below q^" +
                         to_string(psi.q_prec()));
  std::vector<std::map<std::int64_t, CoefficientAccumulator>> st(std::max(k_max, 0) + 1);
  st[0][0][ExponentKey{}] = 1;
  // large n first keeps the partial products at low q small
  for (int n = q_max; n >= 0; --n) {
    for (int m = k_max; m >= 1; --m) {
      const auto* lv = psi.find_level(static_cast<std::int64_t>(n) * m);
      if (!lv) continue;
      int kmax = k_max / m;
      if (n > 0) kmax = std::min(kmax, q_max / n);
      for (const auto& [key, f] : lv->terms()) {
        std::vector<Integer> c(kmax + 1);
        std::vector<ExponentKey> shift(kmax + 1);
        for (int k = 1; k <= kmax; ++k) {
          c[k] = binomial(f, static_cast<unsigned>(k));
          if (k % 2) c[k] = -c[k];
          shift[k] = scale_key(key, k);
        }
        for (int j = k_max; j >= m; --j) {
          for (int k = 1; k <= kmax && m * k <= j; ++k) {
            if (c[k] == 0) continue;
            for (const auto& [lvl, acc] : st[j - m * k]) {
              const std::int64_t target = lvl + static_cast<std::int64_t>(n) * k;
              if (target > q_max) continue;
              auto& dst = st[j][target];
              for (const auto& [kk, v] : acc) {
                if (v == 0) continue;
                Integer& slot = dst[add_keys(kk, shift[k])];
                mpz_addmul(slot.get_mpz_t(), c[k].get_mpz_t(), v.get_mpz_t());
              }
            }
          }
        }
      }
    }
  }
  std::vector<PuiseuxSeries> out;
  for (auto& layer : st) {
    SeriesBuilder b(rank, Rational(q_max + 1), 1, psi.zeta_denominator());
    for (auto& [lvl, acc] : layer)
      for (auto& [key, v] : acc)
        if (v != 0) b.add(lvl, key, v);
    out.push_back(b.build());
  }
  return out;
}

TripleSeries borcherds_product(const BorcherdsInput& in, int q_max, int xi_max) {
  TripleSeries out;
  out.rank = in.psi.rank();
  out.q_max = q_max;
  out.xi_max = xi_max;
  const int c = static_cast<int>(to_int64(in.C));
  if (c > xi_max) return out;
  JacobiForm theta = theta_block(in.prefactor, Rational(q_max + 1));
  PuiseuxSeries th = theta.series;
  if (th.rank() != out.rank) th = embed_rank(th, out.rank);
  const Rational ord = in.prefactor.q_order();
  const int qp = static_cast<int>(to_int64(floor(Rational(q_max) - ord)));
  if (qp < 0) return out;
  auto layers = borcherds_factor_layers(in.psi.series, qp, xi_max - c);
  for (int j = 0; j + c <= xi_max; ++j) out.set_layer(c + j, ps_mul(th, layers[j]));
  return out;
}

std::vector<PuiseuxSeries> exponential_layers(const JacobiForm& psi, int k_max) {
  std::vector<PuiseuxSeries> scaled(k_max + 1);
  for (int j = 1; j <= k_max; ++j) scaled[j] = hecke_Tminus_scaled(psi, j).series;
  std::vector<PuiseuxSeries> e(k_max + 1);
  e[0] = PuiseuxSeries::constant(psi.rank(), Integer(1), psi.series.q_prec());
  for (int m = 1; m <= k_max; ++m) {
    PuiseuxSeries s = ps_mul(scaled[1], e[m - 1]);
    for (int j = 2; j <= m; ++j) s = s + ps_mul(scaled[j], e[m - j]);
    e[m] = divide_exact(-s, Integer(m));
  }
  return e;
}

ExpCrossCheck exp_cross_check(const BorcherdsInput& in, int k_max) {
  ExpCrossCheck out;
  out.k_max = k_max;
  auto e = exponential_layers(in.psi, k_max);
  Rational prec = in.psi.series.q_prec();
  for (const auto& s : e) prec = std::min<Rational>(prec, s.q_prec());
  int q = static_cast<int>(to_int64(ceil(prec))) - 1;
  while (q >= 0 && in.psi.series.q_prec() <= Rational(q * k_max)) --q;
  out.q_max = q;
  if (q < 0) {
    out.detail = "psi precision too small for the exponential form";
    return out;
  }
  auto p = borcherds_factor_layers(in.psi.series, q, k_max);
  out.agree = true;
  for (int m = 0; m <= k_max; ++m) {
    if (!(e[m].truncated(Rational(q + 1)) - p[m]).is_zero()) {
      out.agree = false;
      out.detail = "xi^" + std::to_string(m) + " layers differ";
      return out;
    }
  }
  out.detail = "exponential and product forms agree";
  return out;
}

Rational required_theta_precision(int q_max, int xi_max) {
  int lift = q_max * xi_max + 1;
  int product = 2 * std::max(q_max - 1, 0) * std::max(xi_max - 1, 0) + 3;
  return Rational(std::max(lift, product));
}

bool MainIdentityReport::pass() const {
  return comparison.equal() && C == 1 && prefactor_matches && first_layer_matches && exp_check.agree;
}

JacobiForm theta_R_even(const RootDatum& datum, const Rational& q_prec) {
  JacobiForm th = theta_R(datum, q_prec);
  auto ev = even_sublattice(th.index);
  return restrict_to(th, ev.basis);
}

MainIdentityReport verify_main_identity(const std::string& root_system, int q_max, int xi_max) {
  auto datum = root_datum(root_system);
  auto theta = theta_R_even(datum, required_theta_precision(q_max, xi_max));
  return verify_main_identity(theta, canonical_name(datum.spec), q_max, xi_max);
}

MainIdentityReport verify_main_identity(const JacobiForm& theta, const std::string& label, int q_max, int xi_max,
                                        const JacobiForm* psi_override) {
  MainIdentityReport rep;
  rep.root_system = label;
  rep.q_max = q_max;
  rep.xi_max = xi_max;
  rep.theta_precision = theta.series.q_prec();
  BorcherdsInput in = psi_override ? borcherds_input(*psi_override, chamber_positivity(theta)) : borcherds_input(theta);
  rep.C = in.C;
  rep.f00 = in.f0.count(std::vector<Rational>(theta.rank(), Rational(0)))
                ? in.f0.at(std::vector<Rational>(theta.rank(), Rational(0)))
                : Integer(0);
  auto pre = theta_block(in.prefactor, Rational(q_max + 1));
  rep.prefactor_matches = pre.series == theta.series.truncated(Rational(q_max + 1));
  TripleSeries g = gritsenko_lift(theta, q_max, xi_max);
  TripleSeries b = borcherds_product(in, q_max, xi_max);
  rep.lift_terms = g.num_terms();
  rep.product_terms = b.num_terms();
  if (in.C + 1 <= xi_max) {
    int c1 = static_cast<int>(to_int64(in.C)) + 1;
    auto expected = ps_mul(pre.series, -in.psi.series).truncated(Rational(q_max + 1));
    auto layer = b.layer(c1);
    Rational common = std::min<Rational>(layer.q_prec(), expected.q_prec());
    rep.first_layer_matches = (layer.truncated(common) - expected.truncated(common)).is_zero();
  } else {
    rep.first_layer_matches = true;
  }
  rep.exp_check = exp_cross_check(in, std::min(3, std::max(xi_max, 1)));
  rep.comparison = compare(g, b);
  return rep;
}

Integer divisor_multiplicity(const ThetaDecomposition& psi, long cls, const Rational& e) {
  if (e >= 0) throw InvalidInput("divisor classes need negative hyperbolic norm");
  Rational max_mu = 0;
  for (const auto& m : psi.min_norm) max_mu = std::max<Rational>(max_mu, m);
  Integer total = 0;
  for (long d = 1;; ++d) {
    Rational x = e * (d * d);
    if (-x > max_mu / 2) break;
    long c = psi.form.mul(cls, d);
    if (-x > psi.min_norm[c] / 2) continue;  // n >= 0 forces F_c(x) = 0
    total += psi.coefficient(c, x);
  }
  return total;
}

Integer divisor_multiplicity(const ThetaDecomposition& psi, const JacobiForm& psi_form, const Rational& n,
                             const std::vector<Rational>& l) {
  std::vector<std::int64_t> e(l.size());
  RatVector lv = to_vector(l);
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (!is_integral(l[i])) throw InvalidInput("exponent is not in the dual lattice");
    e[i] = to_int64(l[i]);
  }
  Rational norm = bilinear(inverse(psi_form.index.gram), lv, lv);
  return divisor_multiplicity(psi, psi.form.class_of_integral_pairings(e.data()), n - norm / 2);
}

ReflectivityReport reflectivity_report(const ThetaDecomposition& psi, const Rational& norm_bound) {
  ReflectivityReport rep;
  rep.norm_bound = norm_bound;
  rep.multiplicities_in_01 = true;
  const auto& d = psi.form;
  for (long cls = 0; cls < d.size(); ++cls) {
    Rational e = -frac(d.q(cls));
    if (e == 0) e = -1;
    for (; -2 * e <= norm_bound; e -= 1) {
      ++rep.classes_checked;
      Integer m = divisor_multiplicity(psi, cls, e);
      if (m != 0 && m != 1) rep.multiplicities_in_01 = false;
      if (m != 0) {
        rep.nonzero.push_back({cls, d.order(cls), e, 2 * e, m});
        rep.table[{d.order(cls), 2 * e}] += 1;
      }
    }
  }
  return rep;
}

namespace {

using Pattern = std::map<long, Rational>;  // class -> exponent of the single singular term

std::map<std::pair<long, Rational>, long> counts_of(const DiscriminantForm& d, const std::vector<long>& elements) {
  std::map<std::pair<long, Rational>, long> c;
  for (long x : elements) c[{d.order(x), d.q(x)}] += 1;
  return c;
}

std::vector<long> orthogonal_complement(const DiscriminantForm& d, const std::vector<long>& gens) {
  std::vector<long> out;
  for (long x = 0; x < d.size(); ++x)
    if (std::all_of(gens.begin(), gens.end(), [&](long g) { return d.b_num(x, g) == 0; })) out.push_back(x);
  return out;
}

bool complement_matches(const DiscriminantForm& d, const std::vector<long>& gens, const char* symbol) {
  auto target = finite_qf_invariants(DiscriminantForm::from_genus_symbol(symbol)).norm_counts;
  return counts_of(d, orthogonal_complement(d, gens)) == target;
}

bool assign(Pattern& p, long cls, const Rational& e) {
  auto [it, inserted] = p.emplace(cls, e);
  return inserted || it->second == e;
}

void add_reflective_orders(const DiscriminantForm& d, const std::vector<long>& orders, Pattern& p, bool& ok) {
  for (long g = 0; g < d.size(); ++g) {
    long o = d.order(g);
    if (std::find(orders.begin(), orders.end(), o) == orders.end()) continue;
    if (d.q(g) == ratio(1, o)) ok = ok && assign(p, g, ratio(-1, o));
  }
}

std::vector<Pattern> expected_patterns(const std::string& name, const DiscriminantForm& d) {
  std::vector<Pattern> out;
  const long n = d.level();
  if (name == "A1+C3") {
    for (long x2 = 0; x2 < d.size(); ++x2) {
      if (d.order(x2) != 2 || d.q(x2) != ratio(3, 4)) continue;
      for (long g4 = 0; g4 < d.size(); ++g4) {
        if (d.order(g4) != 4 || d.q(g4) != ratio(1, 8) || d.b_num(x2, g4) != 0) continue;
        if (!complement_matches(d, {x2, g4}, "8_II^{-2}")) continue;
        Pattern p;
        bool ok = assign(p, d.mul(g4, 2), ratio(-1, 2));
        for (long delta = 0; delta < d.size(); ++delta)
          if (frac(2 * d.q(delta) + d.b(x2, delta)) == ratio(3, 4))
            ok = ok && assign(p, d.add(x2, d.mul(delta, 2)), ratio(-1, 4));
        add_reflective_orders(d, {8}, p, ok);
        if (ok) out.push_back(p);
      }
    }
    return out;
  }
  if (name == "B2+G2" || name == "3A1+A3") {
    const bool bg = name == "B2+G2";
    std::set<std::pair<long, long>> seen;
    for (long g1 = 0; g1 < d.size(); ++g1) {
      if (d.order(g1) != 2 || d.q(g1) != ratio(3, 4)) continue;
      for (long g2 = g1 + 1; g2 < d.size(); ++g2) {
        if (d.order(g2) != 2 || d.q(g2) != ratio(3, 4) || d.b_num(g1, g2) != 0) continue;
        if (!complement_matches(d, {g1, g2}, bg ? "4_II^{-2}3^{-3}" : "4_II^{-2}")) continue;
        long x2 = d.add(g1, g2);
        Pattern p;
        bool ok = assign(p, x2, ratio(-1, 2));
        if (bg) {
          add_reflective_orders(d, {3, 4, 12}, p, ok);
          for (long delta = 0; delta < d.size(); ++delta)
            if (d.order(delta) == 3 && d.q(delta) == ratio(2, 3)) ok = ok && assign(p, d.add(x2, delta), ratio(-1, 6));
        } else {
          add_reflective_orders(d, {4}, p, ok);
        }
        if (ok) out.push_back(p);
      }
    }
    return out;
  }
  std::vector<long> divisors;
  for (long k = 2; k <= n; ++k)
    if (n % k == 0) divisors.push_back(k);
  Pattern p;
  bool ok = true;
  add_reflective_orders(d, divisors, p, ok);
  if (ok) out.push_back(p);
  return out;
}

}  // namespace

PrincipalPartReport principal_part_check(const std::string& root_system, const ThetaDecomposition& psi) {
  PrincipalPartReport rep;
  auto datum = root_datum(root_system);
  rep.root_system = canonical_name(datum.spec);
  rep.expected_constant = datum.rank;
  rep.constant_term = psi.coefficient(0, Rational(0));
  const auto& d = psi.form;
  std::vector<std::map<Rational, Integer>> singular(d.size());
  for (long c = 0; c < d.size(); ++c)
    for (const auto& [e, v] : psi.components[c]) {
      if (e >= 0) break;
      singular[c][e] = v;
      if (v == 1) rep.singular_counts[e] += 1;
    }
  auto patterns = expected_patterns(rep.root_system, d);
  rep.choices = static_cast<long>(patterns.size());
  std::vector<std::string> best;
  bool have_best = false;
  for (const auto& p : patterns) {
    std::vector<std::string> off;
    for (long c = 0; c < d.size(); ++c) {
      auto it = p.find(c);
      bool good = it == p.end() ? singular[c].empty()
                                : singular[c].size() == 1 && singular[c].begin()->first == it->second &&
                                      singular[c].begin()->second == 1;
      if (good) continue;
      std::string s = "class " + std::to_string(c) + " (order " + std::to_string(d.order(c)) + ", q " +
                      to_string(d.q(c)) + "): expected ";
      s += it == p.end() ? "no singular terms" : "q^" + to_string(it->second);
      s += ", found";
      if (singular[c].empty()) s += " none";
      for (const auto& [e, v] : singular[c]) s += " " + to_string(v) + "*q^" + to_string(e);
      off.push_back(s);
    }
    if (off.empty()) ++rep.matching_choices;
    if (!have_best || off.size() < best.size()) {
      best = off;
      have_best = true;
    }
  }
  if (!have_best) best.push_back("no admissible choice of special elements");
  for (long c = 0; c < d.size(); ++c)
    if (psi.precision[c] <= 0)
      best.push_back("class " + std::to_string(c) + " is known only below q^" + to_string(psi.precision[c]) +
                     ", so its principal part is incomplete");
  if (rep.constant_term != rep.expected_constant)
    best.push_back("constant term of F_0 is " + to_string(rep.constant_term) + ", expected " +
                   std::to_string(rep.expected_constant));
  rep.offending = best;
  return rep;
}

}  // namespace thetablocks
