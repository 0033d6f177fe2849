#include "thetablocks/jacobi.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "thetablocks/linalg.hpp"

namespace thetablocks {

ThetaBlockSpec ThetaBlockSpec::from_exponents(int f0, const std::vector<std::pair<std::vector<Rational>, int>>& f) {
  ThetaBlockSpec s;
  s.factors = f;
  int total = 0;
  for (const auto& [form, mult] : f) total += mult;
  s.eta_power = f0 - total;
  return s;
}

int ThetaBlockSpec::rank() const { return factors.empty() ? 0 : static_cast<int>(factors.front().first.size()); }

int ThetaBlockSpec::theta_count() const {
  int t = 0;
  for (const auto& [form, mult] : factors) t += mult;
  return t;
}

RatMatrix ThetaBlockSpec::index_gram() const {
  const int r = rank();
  RatMatrix g = RatMatrix::Zero(r, r);
  for (const auto& [form, mult] : factors)
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) g(i, j) += form[i] * form[j] * mult;
  return g;
}

JacobiForm theta_block(const ThetaBlockSpec& spec, const Rational& q_prec) {
  const int rank = spec.rank();
  for (const auto& [form, mult] : spec.factors) {
    if (static_cast<int>(form.size()) != rank) throw InvalidInput("theta block forms have different ranks");
    if (mult < 0) throw InvalidInput("theta block multiplicities must be nonnegative");
  }
  // every factor carries the same precision relative to its own order
  const Rational rel = q_prec - spec.q_order();
  JacobiForm out;
  out.index = GramLattice{spec.index_gram()};
  out.weight = spec.weight();
  out.character = spec.character();
  if (rel <= 0) {
    out.series = PuiseuxSeries(rank, q_prec);
    return out;
  }
  PuiseuxSeries acc = ps_pow(eta(rel + ratio(1, 24), rank), spec.eta_power);
  bool vanishes = false;
  for (const auto& [form, mult] : spec.factors) {
    if (std::all_of(form.begin(), form.end(), [](const Rational& x) { return x == 0; })) vanishes = true;
    if (mult == 0) continue;
    PuiseuxSeries th = jtheta_linear(form, rel + ratio(1, 8));
    acc = ps_mul(acc, ps_pow(th, mult));
    std::vector<Rational> half(form.size());
    for (std::size_t i = 0; i < form.size(); ++i) half[i] = form[i] / 2;
    for (int k = 0; k < mult; ++k) out.leading_factors.push_back(BinomialFactor{half, form, 1});
  }
  if (vanishes) {
    out.series = PuiseuxSeries(rank, q_prec);
    out.leading_factors.clear();
  } else {
    out.series = acc.truncated(q_prec);
  }
  return out;
}

ThetaBlockSpec theta_R_spec(const RootDatum& datum) {
  ThetaBlockSpec s;
  s.eta_power = datum.rank - datum.num_positive();
  for (const auto& r : datum.positive_roots) s.factors.emplace_back(std::vector<Rational>(r.begin(), r.end()), 1);
  return s;
}

JacobiForm theta_R(const RootDatum& datum, const Rational& q_prec) {
  JacobiForm f = theta_block(theta_R_spec(datum), q_prec);
  f.index = gram_underline_R(datum);
  return f;
}

namespace {

PuiseuxSeries hecke_series(const PuiseuxSeries& s0, int m, int k) {
  if (m < 1) throw InvalidInput("Hecke operator index must be positive");
  PuiseuxSeries s = s0.normalized();
  if (s.q_denominator() != 1) throw InvalidInput("Hecke operator needs integral q-exponents");
  SeriesBuilder out(s.rank(), s.q_prec() / m, 1, s.zeta_denominator());
  for (int a = 1; a <= m; ++a) {
    if (m % a != 0) continue;
    const int d = m / a;
    Integer factor = pow(Integer(a), static_cast<unsigned>(k)) * d;  // m a^(k-1)
    for (const auto& lv : s.levels()) {
      if (lv.q_num % d != 0) continue;
      std::int64_t target = a * (lv.q_num / d);
      if (!out.in_range(target)) continue;
      auto& acc = out.level(target);
      for (const auto& [key, c] : lv.coeff.terms()) {
        auto& slot = acc[scale_key(key, a)];
        slot += factor * c;
      }
    }
  }
  return out.build();
}

int integral_weight(const JacobiForm& phi) {
  if (!is_integral(phi.weight) || phi.weight < 0)
    throw InvalidInput("Hecke operator needs a nonnegative integral weight");
  return static_cast<int>(to_int64(phi.weight));
}

}  // namespace

JacobiForm hecke_Tminus_scaled(const JacobiForm& phi, int m) {
  JacobiForm out;
  out.index = rescaled(phi.index, Rational(m));
  out.weight = phi.weight;
  out.character = phi.character;
  out.series = hecke_series(phi.series, m, integral_weight(phi));
  return out;
}

JacobiForm hecke_Tminus(const JacobiForm& phi, int m) {
  JacobiForm out = hecke_Tminus_scaled(phi, m);
  out.series = divide_exact(out.series, Integer(m));
  if (m == 1) out.leading_factors = phi.leading_factors;
  return out;
}

JacobiForm specialize(const JacobiForm& phi, const IntVector& x) {
  if (x.size() != phi.rank()) throw InvalidInput("specialization vector has the wrong length");
  RatMatrix m(1, phi.rank());
  for (int i = 0; i < phi.rank(); ++i) m(0, i) = Rational(x(i));
  JacobiForm out;
  RatVector xr = to_rational(x);
  RatMatrix g(1, 1);
  g(0, 0) = bilinear(phi.index.gram, xr, xr);
  out.index = GramLattice{g};
  out.weight = phi.weight;
  out.character = phi.character;
  out.series = map_zeta(phi.series, m).normalized();
  bool zero_direction = false;
  for (const auto& f : phi.leading_factors) {
    Rational s = 0, d = 0;
    for (int i = 0; i < phi.rank(); ++i) {
      s += f.shift[i] * m(0, i);
      d += f.direction[i] * m(0, i);
    }
    if (d == 0) zero_direction = true;
    out.leading_factors.push_back(BinomialFactor{{s}, {d}, f.sign});
  }
  if (zero_direction) out.leading_factors.clear();
  return out;
}

JacobiForm restrict_to(const JacobiForm& phi, const IntMatrix& basis) {
  RatMatrix b = to_rational(basis);
  RatMatrix bt = b.transpose();
  JacobiForm out;
  out.index = GramLattice{bt * phi.index.gram * b};
  out.weight = phi.weight;
  out.character = phi.character;
  out.series = map_zeta(phi.series, bt).normalized();
  for (const auto& f : phi.leading_factors) {
    RatVector s = bt * to_vector(f.shift);
    RatVector d = bt * to_vector(f.direction);
    out.leading_factors.push_back(BinomialFactor{to_std(s), to_std(d), f.sign});
  }
  return out;
}

NormEvaluator::NormEvaluator(const RatMatrix& gram, std::int64_t zeta_den) : rank_(static_cast<int>(gram.rows())) {
  RatMatrix inv = inverse(gram);
  Integer l = 1;
  for (Eigen::Index i = 0; i < inv.rows(); ++i)
    for (Eigen::Index j = 0; j < inv.cols(); ++j) {
      Integer d = inv(i, j).get_den();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
  adj_.resize(static_cast<std::size_t>(rank_) * rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) adj_[i * rank_ + j] = to_int64(Rational(inv(i, j) * l));
  den_ = l * zeta_den * zeta_den;
}

Rational NormEvaluator::norm(const ExponentKey& key) const {
  __int128 acc = 0;
  for (int i = 0; i < rank_; ++i) {
    if (key[i] == 0) continue;
    __int128 row = 0;
    for (int j = 0; j < rank_; ++j) row += static_cast<__int128>(adj_[i * rank_ + j]) * key[j];
    acc += row * key[i];
  }
  if (acc > std::numeric_limits<std::int64_t>::max() || acc < std::numeric_limits<std::int64_t>::min())
    throw Error("norm numerator overflow");
  return ratio(Integer(static_cast<long>(acc)), den_);
}

std::vector<SingularTerm> singular_part(const JacobiForm& phi) {
  std::vector<SingularTerm> out;
  if (phi.rank() == 0) return out;
  const auto& s = phi.series;
  NormEvaluator ne(phi.index.gram, s.zeta_denominator());
  s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) {
    Rational n = s.q_exponent(qn);
    Rational h = 2 * n - ne.norm(key);
    if (h < 0) out.push_back({n, s.zeta_exponent(key), c, h});
  });
  return out;
}

void class_minima(const GramLattice& l, const DiscriminantForm& d, std::vector<Rational>& min_norm,
                  std::vector<std::vector<std::int64_t>>& shortest) {
  const int n = l.rank();
  min_norm.assign(d.size(), Rational(-1));
  shortest.assign(d.size(), std::vector<std::int64_t>(n, 0));
  RatMatrix inv = inverse(l.gram);
  long found = 0;
  for (Rational bound = 2;; bound *= 2) {
    enumerate_coset(inv, RatVector::Zero(n), bound, [&](const RatVector& e, const Rational& norm) {
      std::vector<std::int64_t> v(n);
      for (int i = 0; i < n; ++i) v[i] = to_int64(e(i));
      long c = d.class_of_integral_pairings(v.data());
      if (min_norm[c] < 0) {
        ++found;
        min_norm[c] = norm;
        shortest[c] = v;
      } else if (norm < min_norm[c] || (norm == min_norm[c] && v > shortest[c])) {
        min_norm[c] = norm;
        shortest[c] = v;
      }
    });
    if (found == d.size()) return;
    found = 0;
    std::fill(min_norm.begin(), min_norm.end(), Rational(-1));
  }
}

Integer ThetaDecomposition::coefficient(long cls, const Rational& e) const {
  if (e >= precision[cls])
    throw PrecisionError("component coefficient at q^" + to_string(e) + " is beyond the known range");
  auto it = components[cls].find(e);
  return it == components[cls].end() ? Integer(0) : it->second;
}

ThetaDecomposition theta_decompose(const JacobiForm& phi) {
  if (!phi.index.is_even()) throw InvalidInput("theta decomposition needs an even index lattice");
  ThetaDecomposition out;
  out.form = DiscriminantForm::of_lattice(phi.index);
  class_minima(phi.index, out.form, out.min_norm, out.shortest);
  const auto& d = out.form;
  PuiseuxSeries s = phi.series.normalized();
  if (s.zeta_denominator() != 1) throw InvalidInput("exponents are not in the dual lattice");
  const int n = phi.rank();
  out.components.assign(d.size(), {});
  out.precision.resize(d.size());
  for (long c = 0; c < d.size(); ++c) out.precision[c] = s.q_prec() - out.min_norm[c] / 2;
  NormEvaluator ne(phi.index.gram, 1);
  auto describe = [&](const Rational& q, const ExponentKey& key) {
    std::string t = "(" + to_string(q) + "; ";
    for (int i = 0; i < n; ++i) t += (i ? "," : "") + std::to_string(key[i]);
    return t + ")";
  };
  std::vector<std::int64_t> buf(n);
  // pass 1: every stored term agrees with its class and hyperbolic norm
  s.for_each_term([&](std::int64_t qn, const ExponentKey& key, const Integer& c) {
    for (int i = 0; i < n; ++i) buf[i] = key[i];
    long cls = d.class_of_integral_pairings(buf.data());
    Rational q = s.q_exponent(qn);
    Rational e = q - ne.norm(key) / 2;
    auto [it, inserted] = out.components[cls].emplace(e, c);
    if (!inserted && it->second != c)
      out.violations.push_back("coefficient " + to_string(c) + " at " + describe(q, key) + " differs from " +
                               to_string(it->second) + " in the same class");
    ++out.terms_checked;
  });
  // pass 2: every vector of a class with a nonzero component value carries that value
  RatMatrix g = phi.index.gram;
  RatMatrix inv = inverse(g);
  for (long cls = 0; cls < d.size(); ++cls) {
    if (out.components[cls].empty()) continue;
    Rational lowest = out.components[cls].begin()->first;
    RatVector rep(n);
    for (int i = 0; i < n; ++i) rep(i) = Rational(out.shortest[cls][i]);
    RatVector shift = inv * rep;
    enumerate_coset(g, shift, 2 * (s.q_prec() - lowest), [&](const RatVector& x, const Rational& norm) {
      RatVector l = g * x;
      std::vector<Rational> lv = to_std(l);
      for (const auto& [e, value] : out.components[cls]) {
        Rational q = e + norm / 2;
        if (q >= s.q_prec()) break;
        Integer actual = s.coefficient(q, lv);
        if (actual != value) {
          ExponentKey key{};
          for (int i = 0; i < n; ++i) key[i] = static_cast<std::int32_t>(to_int64(lv[i]));
          out.violations.push_back("coefficient " + to_string(actual) + " at " + describe(q, key) + " but class value " +
                                   to_string(value));
        }
      }
    });
  }
  for (auto& comp : out.components) std::erase_if(comp, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace thetablocks
