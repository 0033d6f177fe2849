#include "thetablocks/series.hpp"

#include <algorithm>
#include <limits>

namespace thetablocks {

namespace {

std::int32_t checked_int32(std::int64_t v) {
  if (v < std::numeric_limits<std::int32_t>::min() || v > std::numeric_limits<std::int32_t>::max())
    throw Error("zeta exponent numerator overflow");
  return static_cast<std::int32_t>(v);
}

// Exclusive bound on q numerators over den for q < prec.
std::int64_t num_bound(const Rational& prec, std::int64_t den) {
  return to_int64(ceil(prec * Rational(den)));
}

std::optional<ExponentKey> key_of(const std::vector<Rational>& l, std::int64_t den, int rank) {
  if (static_cast<int>(l.size()) != rank) throw InvalidInput("exponent vector has wrong rank");
  ExponentKey k{};
  for (int i = 0; i < rank; ++i) {
    Rational s = l[i] * Rational(den);
    if (!is_integral(s)) return std::nullopt;
    k[i] = checked_int32(to_int64(s));
  }
  return k;
}

std::int64_t lcm_of_denominators(const std::vector<Rational>& v, std::int64_t start = 1) {
  std::int64_t d = start;
  for (const auto& x : v) d = lcm64(d, denominator64(x));
  return d;
}

LaurentCoefficient shift_and_scale(const LaurentCoefficient& p, const ExponentKey& shift, int sign) {
  std::vector<LaurentCoefficient::Term> terms;
  terms.reserve(p.size());
  for (const auto& [k, c] : p.terms()) terms.emplace_back(add_keys(k, shift), sign > 0 ? c : Integer(-c));
  return LaurentCoefficient::from_terms(p.rank(), p.zeta_denominator(), std::move(terms));
}

// p / (1 - zeta^u), exact.
LaurentCoefficient divide_one_minus(const LaurentCoefficient& p, const ExponentKey& u) {
  const int rank = p.rank();
  int axis = -1;
  for (int i = 0; i < rank; ++i)
    if (u[i] != 0) {
      axis = i;
      break;
    }
  if (axis < 0) throw NotDivisible("division by 1 - zeta^0");
  if (u[axis] < 0) {
    // 1 - zeta^u = -zeta^u (1 - zeta^-u)
    ExponentKey neg = scale_key(u, -1);
    return divide_one_minus(shift_and_scale(p, neg, -1), neg);
  }
  std::map<ExponentKey, std::vector<std::pair<std::int64_t, Integer>>> lines;
  for (const auto& [k, c] : p.terms()) {
    std::int64_t t = floor_div(k[axis], u[axis]);
    ExponentKey base = k;
    for (int i = 0; i < rank; ++i) base[i] = checked_int32(k[i] - t * static_cast<std::int64_t>(u[i]));
    lines[base].emplace_back(t, c);
  }
  std::vector<LaurentCoefficient::Term> out;
  for (auto& [base, pts] : lines) {
    std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Integer running = 0;
    for (std::size_t idx = 0; idx < pts.size(); ++idx) {
      running += pts[idx].second;
      if (running == 0) continue;
      if (idx + 1 == pts.size()) throw NotDivisible("Laurent coefficient is not divisible by binomial factor");
      for (std::int64_t t = pts[idx].first; t < pts[idx + 1].first; ++t) {
        ExponentKey k = base;
        for (int i = 0; i < rank; ++i) k[i] = checked_int32(base[i] + t * static_cast<std::int64_t>(u[i]));
        out.emplace_back(k, running);
      }
    }
  }
  return LaurentCoefficient::from_terms(rank, p.zeta_denominator(), std::move(out));
}

}  // namespace

ExponentKey add_keys(const ExponentKey& a, const ExponentKey& b) {
  ExponentKey r;
  for (int i = 0; i < kMaxRank; ++i) r[i] = a[i] + b[i];
  return r;
}

ExponentKey scale_key(const ExponentKey& a, std::int32_t s) {
  ExponentKey r;
  for (int i = 0; i < kMaxRank; ++i) r[i] = checked_int32(static_cast<std::int64_t>(a[i]) * s);
  return r;
}

// LaurentCoefficient

LaurentCoefficient LaurentCoefficient::from_accumulator(int rank, std::int64_t zeta_den,
                                                        CoefficientAccumulator&& acc) {
  LaurentCoefficient r(rank, zeta_den);
  r.terms_.reserve(acc.size());
  for (auto& [k, c] : acc)
    if (c != 0) r.terms_.emplace_back(k, std::move(c));
  std::sort(r.terms_.begin(), r.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  return r;
}

LaurentCoefficient LaurentCoefficient::from_terms(int rank, std::int64_t zeta_den, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
  LaurentCoefficient r(rank, zeta_den);
  for (auto& t : terms) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first)
      r.terms_.back().second += t.second;
    else
      r.terms_.push_back(std::move(t));
  }
  std::erase_if(r.terms_, [](const Term& t) { return t.second == 0; });
  return r;
}

Integer LaurentCoefficient::coefficient(const ExponentKey& key) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                             [](const Term& t, const ExponentKey& k) { return t.first < k; });
  if (it != terms_.end() && it->first == key) return it->second;
  return 0;
}

Integer LaurentCoefficient::coefficient(const std::vector<Rational>& exponent) const {
  auto k = key_of(exponent, zeta_den_, rank_);
  return k ? coefficient(*k) : Integer(0);
}

std::vector<Rational> LaurentCoefficient::exponent(const ExponentKey& key) const {
  std::vector<Rational> r(rank_);
  for (int i = 0; i < rank_; ++i) {
    r[i] = ratio(key[i], zeta_den_);
    r[i].canonicalize();
  }
  return r;
}

LaurentCoefficient LaurentCoefficient::rescaled(std::int64_t zeta_den) const {
  if (zeta_den == zeta_den_) return *this;
  if (zeta_den % zeta_den_ != 0) throw Error("rescale to a non-multiple denominator");
  auto f = static_cast<std::int32_t>(zeta_den / zeta_den_);
  LaurentCoefficient r(rank_, zeta_den);
  r.terms_.reserve(terms_.size());
  for (const auto& [k, c] : terms_) r.terms_.emplace_back(scale_key(k, f), c);
  return r;
}

bool LaurentCoefficient::operator==(const LaurentCoefficient& other) const {
  if (rank_ != other.rank_) return false;
  std::int64_t d = lcm64(zeta_den_, other.zeta_den_);
  return rescaled(d).terms_ == other.rescaled(d).terms_;
}

void accumulate_product(CoefficientAccumulator& acc, const LaurentCoefficient& a, const LaurentCoefficient& b,
                        const ExponentKey& shift) {
  for (const auto& [ka, ca] : a.terms()) {
    ExponentKey base = add_keys(ka, shift);
    for (const auto& [kb, cb] : b.terms()) {
      Integer& slot = acc[add_keys(base, kb)];
      mpz_addmul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
}

LaurentCoefficient operator*(const LaurentCoefficient& a, const LaurentCoefficient& b) {
  if (a.rank() != b.rank()) throw InvalidInput("rank mismatch");
  std::int64_t d = lcm64(a.zeta_denominator(), b.zeta_denominator());
  CoefficientAccumulator acc;
  accumulate_product(acc, a.rescaled(d), b.rescaled(d));
  return LaurentCoefficient::from_accumulator(a.rank(), d, std::move(acc));
}

LaurentCoefficient operator+(const LaurentCoefficient& a, const LaurentCoefficient& b) {
  if (a.rank() != b.rank()) throw InvalidInput("rank mismatch");
  std::int64_t d = lcm64(a.zeta_denominator(), b.zeta_denominator());
  auto terms = a.rescaled(d).terms();
  auto bt = b.rescaled(d).terms();
  terms.insert(terms.end(), bt.begin(), bt.end());
  return LaurentCoefficient::from_terms(a.rank(), d, std::move(terms));
}

LaurentCoefficient operator-(const LaurentCoefficient& a, const LaurentCoefficient& b) {
  return a + shift_and_scale(b, ExponentKey{}, -1);
}

LaurentCoefficient expand_factors(int rank, const std::vector<BinomialFactor>& factors) {
  std::int64_t d = 1;
  for (const auto& f : factors) {
    d = lcm_of_denominators(f.shift, d);
    d = lcm_of_denominators(f.direction, d);
  }
  LaurentCoefficient r = LaurentCoefficient::from_terms(rank, d, {{ExponentKey{}, Integer(1)}});
  for (const auto& f : factors) {
    auto hi = key_of(f.shift, d, rank);
    std::vector<Rational> low(rank);
    for (int i = 0; i < rank; ++i) low[i] = f.shift[i] - f.direction[i];
    auto lo = key_of(low, d, rank);
    auto b = LaurentCoefficient::from_terms(rank, d, {{*hi, Integer(f.sign)}, {*lo, Integer(-f.sign)}});
    r = r * b;
  }
  return r;
}

// PuiseuxSeries

PuiseuxSeries::PuiseuxSeries(int rank, Rational q_prec, std::int64_t q_den, std::int64_t zeta_den)
    : rank_(rank), q_den_(q_den), zeta_den_(zeta_den), q_prec_(std::move(q_prec)) {
  if (rank < 0 || rank > kMaxRank) throw InvalidInput("series rank out of range");
  if (q_den <= 0 || zeta_den <= 0) throw InvalidInput("denominators must be positive");
}

PuiseuxSeries PuiseuxSeries::constant(int rank, const Integer& c, const Rational& q_prec) {
  return monomial(rank, Rational(0), std::vector<Rational>(rank, Rational(0)), c, q_prec);
}

PuiseuxSeries PuiseuxSeries::monomial(int rank, const Rational& n, const std::vector<Rational>& l,
                                      const Integer& c, const Rational& q_prec) {
  SeriesBuilder b(rank, q_prec, denominator64(n), lcm_of_denominators(l));
  b.add(n, l, c);
  return b.build();
}

std::size_t PuiseuxSeries::num_terms() const {
  std::size_t n = 0;
  for (const auto& lv : levels_) n += lv.coeff.size();
  return n;
}

std::vector<Rational> PuiseuxSeries::zeta_exponent(const ExponentKey& key) const {
  std::vector<Rational> r(rank_);
  for (int i = 0; i < rank_; ++i) {
    r[i] = ratio(key[i], zeta_den_);
    r[i].canonicalize();
  }
  return r;
}

std::optional<Rational> PuiseuxSeries::order() const {
  if (levels_.empty()) return std::nullopt;
  Rational r(levels_.front().q_num, q_den_);
  r.canonicalize();
  return r;
}

Rational PuiseuxSeries::valuation() const {
  auto o = order();
  return o ? *o : q_prec_;
}

const LaurentCoefficient* PuiseuxSeries::find_level(std::int64_t q_num) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), q_num,
                             [](const Level& lv, std::int64_t n) { return lv.q_num < n; });
  if (it != levels_.end() && it->q_num == q_num) return &it->coeff;
  return nullptr;
}

LaurentCoefficient PuiseuxSeries::level(const Rational& n) const {
  if (n >= q_prec_)
    throw PrecisionError("coefficient at q^" + to_string(n) + " requested beyond precision " + to_string(q_prec_));
  Rational s = n * Rational(q_den_);
  if (!is_integral(s)) return LaurentCoefficient(rank_, zeta_den_);
  const auto* lv = find_level(to_int64(s));
  return lv ? *lv : LaurentCoefficient(rank_, zeta_den_);
}

Integer PuiseuxSeries::coefficient(const Rational& n, const std::vector<Rational>& l) const {
  if (n >= q_prec_)
    throw PrecisionError("coefficient at q^" + to_string(n) + " requested beyond precision " + to_string(q_prec_));
  Rational s = n * Rational(q_den_);
  if (!is_integral(s)) return 0;
  const auto* lv = find_level(to_int64(s));
  if (l.size() != static_cast<std::size_t>(rank_)) throw InvalidInput("exponent vector has wrong rank");
  return lv ? lv->coefficient(l) : Integer(0);
}

PuiseuxSeries PuiseuxSeries::rescaled(std::int64_t q_den, std::int64_t zeta_den) const {
  if (q_den % q_den_ != 0 || zeta_den % zeta_den_ != 0) throw Error("rescale to a non-multiple denominator");
  PuiseuxSeries r(rank_, q_prec_, q_den, zeta_den);
  std::int64_t fq = q_den / q_den_;
  r.levels_.reserve(levels_.size());
  for (const auto& lv : levels_) r.levels_.push_back({lv.q_num * fq, lv.coeff.rescaled(zeta_den)});
  return r;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& q_prec) const {
  PuiseuxSeries r = *this;
  if (q_prec >= q_prec_) return r;
  r.q_prec_ = q_prec;
  std::int64_t bound = num_bound(q_prec, q_den_);
  std::erase_if(r.levels_, [&](const Level& lv) { return lv.q_num >= bound; });
  return r;
}

PuiseuxSeries PuiseuxSeries::normalized() const {
  std::int64_t gq = q_den_, gz = zeta_den_;
  for (const auto& lv : levels_) {
    gq = gcd64(gq, lv.q_num);
    for (const auto& [k, c] : lv.coeff.terms())
      for (int i = 0; i < rank_; ++i) gz = gcd64(gz, k[i]);
  }
  if (gq == 1 && gz == 1) return *this;
  PuiseuxSeries r(rank_, q_prec_, q_den_ / gq, zeta_den_ / gz);
  for (const auto& lv : levels_) {
    std::vector<LaurentCoefficient::Term> terms;
    terms.reserve(lv.coeff.size());
    for (const auto& [k, c] : lv.coeff.terms()) {
      ExponentKey nk{};
      for (int i = 0; i < rank_; ++i) nk[i] = k[i] / static_cast<std::int32_t>(gz);
      terms.emplace_back(nk, c);
    }
    r.levels_.push_back({lv.q_num / gq, LaurentCoefficient::from_terms(rank_, r.zeta_den_, std::move(terms))});
  }
  return r;
}

bool PuiseuxSeries::operator==(const PuiseuxSeries& other) const {
  if (rank_ != other.rank_ || q_prec_ != other.q_prec_) return false;
  auto a = normalized();
  auto b = other.normalized();
  if (a.q_den_ != b.q_den_ || a.zeta_den_ != b.zeta_den_ || a.levels_.size() != b.levels_.size()) return false;
  for (std::size_t i = 0; i < a.levels_.size(); ++i)
    if (a.levels_[i].q_num != b.levels_[i].q_num || a.levels_[i].coeff.terms() != b.levels_[i].coeff.terms())
      return false;
  return true;
}

// SeriesBuilder

SeriesBuilder::SeriesBuilder(int rank, Rational q_prec, std::int64_t q_den, std::int64_t zeta_den)
    : rank_(rank), q_prec_(std::move(q_prec)), q_den_(q_den), zeta_den_(zeta_den),
      bound_(num_bound(q_prec_, q_den_)) {}

bool SeriesBuilder::in_range(std::int64_t q_num) const { return q_num < bound_; }

void SeriesBuilder::add(std::int64_t q_num, const ExponentKey& key, const Integer& c) {
  if (c == 0 || !in_range(q_num)) return;
  levels_[q_num][key] += c;
}

void SeriesBuilder::add(const Rational& n, const std::vector<Rational>& l, const Integer& c) {
  Rational s = n * Rational(q_den_);
  if (!is_integral(s)) throw InvalidInput("q exponent not representable with builder denominator");
  auto k = key_of(l, zeta_den_, rank_);
  if (!k) throw InvalidInput("zeta exponent not representable with builder denominator");
  add(to_int64(s), *k, c);
}

PuiseuxSeries SeriesBuilder::build() {
  PuiseuxSeries r(rank_, q_prec_, q_den_, zeta_den_);
  for (auto& [n, acc] : levels_) {
    if (!in_range(n)) continue;
    auto lc = LaurentCoefficient::from_accumulator(rank_, zeta_den_, std::move(acc));
    if (!lc.is_zero()) r.levels_.push_back({n, std::move(lc)});
  }
  levels_.clear();
  return r.normalized();
}

// arithmetic

std::pair<PuiseuxSeries, PuiseuxSeries> common_denominators(const PuiseuxSeries& a, const PuiseuxSeries& b) {
  if (a.rank() != b.rank()) throw InvalidInput("rank mismatch between series");
  std::int64_t qd = lcm64(a.q_denominator(), b.q_denominator());
  std::int64_t zd = lcm64(a.zeta_denominator(), b.zeta_denominator());
  return {a.rescaled(qd, zd), b.rescaled(qd, zd)};
}

namespace {

PuiseuxSeries combine(const PuiseuxSeries& a0, const PuiseuxSeries& b0, int sign) {
  auto [a, b] = common_denominators(a0, b0);
  Rational prec = std::min(a.q_prec(), b.q_prec());
  SeriesBuilder out(a.rank(), prec, a.q_denominator(), a.zeta_denominator());
  a.for_each_term([&](std::int64_t n, const ExponentKey& k, const Integer& c) { out.add(n, k, c); });
  b.for_each_term([&](std::int64_t n, const ExponentKey& k, const Integer& c) {
    out.add(n, k, sign > 0 ? c : Integer(-c));
  });
  return out.build();
}

}  // namespace

PuiseuxSeries operator+(const PuiseuxSeries& a, const PuiseuxSeries& b) { return combine(a, b, 1); }
PuiseuxSeries operator-(const PuiseuxSeries& a, const PuiseuxSeries& b) { return combine(a, b, -1); }
PuiseuxSeries operator-(const PuiseuxSeries& a) { return scale(a, Integer(-1)); }
PuiseuxSeries operator*(const PuiseuxSeries& a, const PuiseuxSeries& b) { return ps_mul(a, b); }

PuiseuxSeries scale(const PuiseuxSeries& a, const Integer& c) {
  SeriesBuilder out(a.rank(), a.q_prec(), a.q_denominator(), a.zeta_denominator());
  a.for_each_term([&](std::int64_t n, const ExponentKey& k, const Integer& v) { out.add(n, k, v * c); });
  return out.build();
}

PuiseuxSeries divide_exact(const PuiseuxSeries& a, const Integer& c) {
  if (c == 0) throw InvalidInput("division by zero");
  SeriesBuilder out(a.rank(), a.q_prec(), a.q_denominator(), a.zeta_denominator());
  a.for_each_term([&](std::int64_t n, const ExponentKey& k, const Integer& v) {
    if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t())) throw NotDivisible("coefficient not divisible");
    Integer q = v / c;
    out.add(n, k, q);
  });
  return out.build();
}

PuiseuxSeries ps_mul(const PuiseuxSeries& a0, const PuiseuxSeries& b0) {
  auto [a, b] = common_denominators(a0, b0);
  Rational prec = std::min<Rational>(a.q_prec() + b.valuation(), b.q_prec() + a.valuation());
  const std::int64_t qd = a.q_denominator();
  const std::int64_t bound = num_bound(prec, qd);
  std::map<std::int64_t, std::vector<std::pair<std::size_t, std::size_t>>> targets;
  const auto& la = a.levels();
  const auto& lb = b.levels();
  for (std::size_t i = 0; i < la.size(); ++i)
    for (std::size_t j = 0; j < lb.size(); ++j) {
      std::int64_t s = la[i].q_num + lb[j].q_num;
      if (s >= bound) break;
      targets[s].emplace_back(i, j);
    }
  SeriesBuilder out(a.rank(), prec, qd, a.zeta_denominator());
  for (auto& [s, pairs] : targets) {
    CoefficientAccumulator& acc = out.level(s);
    for (auto [i, j] : pairs) accumulate_product(acc, la[i].coeff, lb[j].coeff);
  }
  return out.build();
}

PuiseuxSeries ps_pow(const PuiseuxSeries& a, int e) {
  if (e < 0) return ps_pow(ps_invert(a), -e);
  if (e == 0) return PuiseuxSeries::constant(a.rank(), Integer(1), a.q_prec() - a.valuation());
  PuiseuxSeries base = a;
  std::optional<PuiseuxSeries> result;
  while (e > 0) {
    if (e & 1) result = result ? ps_mul(*result, base) : base;
    e >>= 1;
    if (e > 0) base = ps_mul(base, base);
  }
  return *result;
}

PuiseuxSeries ps_invert(const PuiseuxSeries& a) {
  if (a.is_zero()) throw InvalidInput("inverting the zero series");
  Rational v = *a.order();
  auto one = PuiseuxSeries::constant(a.rank(), Integer(1), a.q_prec() - v);
  return ps_exact_div(one, a);
}

PuiseuxSeries ps_exact_div(const PuiseuxSeries& num0, const PuiseuxSeries& den0,
                           const std::vector<BinomialFactor>& leading_factors) {
  if (den0.is_zero()) throw InvalidInput("division by the zero series");
  const int rank = num0.rank();
  if (den0.rank() != rank) throw InvalidInput("rank mismatch between series");
  std::optional<LaurentCoefficient> factored;
  std::int64_t zd = lcm64(num0.zeta_denominator(), den0.zeta_denominator());
  if (!leading_factors.empty()) {
    factored = expand_factors(rank, leading_factors);
    zd = lcm64(zd, factored->zeta_denominator());
  }
  const std::int64_t qd = lcm64(num0.q_denominator(), den0.q_denominator());
  const PuiseuxSeries num = num0.rescaled(qd, zd);
  const PuiseuxSeries den = den0.rescaled(qd, zd);

  const std::int64_t v = den.levels().front().q_num;
  const LaurentCoefficient& lead = den.levels().front().coeff;

  int sign = 1;
  ExponentKey unit_shift{};
  std::vector<std::pair<ExponentKey, ExponentKey>> factor_keys;  // (-shift, direction)
  if (factored) {
    auto f = factored->rescaled(zd);
    if (lead == f)
      sign = 1;
    else if (lead == shift_and_scale(f, ExponentKey{}, -1))
      sign = -1;
    else
      throw InvalidInput("leading coefficient does not match the supplied factorization");
    for (const auto& bf : leading_factors) {
      std::vector<Rational> neg(rank);
      for (int i = 0; i < rank; ++i) neg[i] = -bf.shift[i];
      auto s = key_of(neg, zd, rank);
      std::vector<Rational> negdir(rank);
      for (int i = 0; i < rank; ++i) negdir[i] = -bf.direction[i];
      auto d = key_of(negdir, zd, rank);
      factor_keys.emplace_back(*s, *d);
      sign *= bf.sign;
    }
  } else {
    if (lead.size() != 1 || (lead.terms()[0].second != 1 && lead.terms()[0].second != -1))
      throw InvalidInput("leading coefficient is not a unit monomial");
    sign = lead.terms()[0].second > 0 ? 1 : -1;
    unit_shift = scale_key(lead.terms()[0].first, -1);
  }

  auto divide_lead = [&](const LaurentCoefficient& r) {
    if (!factored) return shift_and_scale(r, unit_shift, sign);
    LaurentCoefficient x = sign > 0 ? r : shift_and_scale(r, ExponentKey{}, -1);
    for (const auto& [s, d] : factor_keys) x = divide_one_minus(shift_and_scale(x, s, 1), d);
    return x;
  };

  Rational vr(v, qd);
  Rational prec = std::min<Rational>(num.q_prec() - vr, den.q_prec() - 2 * vr + num.valuation());
  PuiseuxSeries out(rank, prec, qd, zd);
  if (num.is_zero()) return out;
  const std::int64_t bound = num_bound(prec, qd);
  std::vector<PuiseuxSeries::Level> quotient;
  for (std::int64_t k = num.levels().front().q_num - v; k < bound; ++k) {
    CoefficientAccumulator acc;
    if (const auto* nl = num.find_level(k + v))
      for (const auto& [key, c] : nl->terms()) acc[key] += c;
    for (const auto& ql : quotient) {
      const auto* dl = den.find_level(k - ql.q_num + v);
      if (!dl) continue;
      for (const auto& [ka, ca] : ql.coeff.terms())
        for (const auto& [kb, cb] : dl->terms()) {
          Integer& slot = acc[add_keys(ka, kb)];
          mpz_submul(slot.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    }
    auto r = LaurentCoefficient::from_accumulator(rank, zd, std::move(acc));
    if (r.is_zero()) continue;
    quotient.push_back({k, divide_lead(r)});
  }
  SeriesBuilder b(rank, prec, qd, zd);
  for (const auto& ql : quotient)
    for (const auto& [key, c] : ql.coeff.terms()) b.add(ql.q_num, key, c);
  return b.build();
}

PuiseuxSeries multiply_monomial(const PuiseuxSeries& a, const Rational& n, const std::vector<Rational>& l) {
  return ps_mul(a, PuiseuxSeries::monomial(a.rank(), n, l, Integer(1), a.q_prec() - a.valuation() + n + 1));
}

PuiseuxSeries substitute_q(const PuiseuxSeries& a, std::int64_t b) {
  if (b <= 0) throw InvalidInput("q substitution exponent must be positive");
  SeriesBuilder out(a.rank(), a.q_prec() * Rational(b), a.q_denominator(), a.zeta_denominator());
  a.for_each_term([&](std::int64_t n, const ExponentKey& k, const Integer& c) { out.add(n * b, k, c); });
  return out.build();
}

PuiseuxSeries map_zeta(const PuiseuxSeries& a, const RatMatrix& m) {
  if (m.cols() != a.rank()) throw InvalidInput("substitution matrix has wrong number of columns");
  const int target = static_cast<int>(m.rows());
  if (target > kMaxRank) throw InvalidInput("target rank too large");
  std::int64_t l = 1;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) l = lcm64(l, denominator64(m(i, j)));
  std::vector<std::vector<std::int64_t>> mi(target, std::vector<std::int64_t>(a.rank()));
  for (int i = 0; i < target; ++i)
    for (int j = 0; j < a.rank(); ++j) mi[i][j] = to_int64(m(i, j) * Rational(l));
  SeriesBuilder out(target, a.q_prec(), a.q_denominator(), a.zeta_denominator() * l);
  a.for_each_term([&](std::int64_t n, const ExponentKey& k, const Integer& c) {
    ExponentKey nk{};
    for (int i = 0; i < target; ++i) {
      std::int64_t s = 0;
      for (int j = 0; j < a.rank(); ++j) s += mi[i][j] * k[j];
      nk[i] = checked_int32(s);
    }
    out.add(n, nk, c);
  });
  return out.build();
}

PuiseuxSeries embed_rank(const PuiseuxSeries& a, int rank) {
  if (rank < a.rank()) throw InvalidInput("cannot embed into a smaller rank");
  SeriesBuilder out(rank, a.q_prec(), a.q_denominator(), a.zeta_denominator());
  a.for_each_term([&](std::int64_t n, const ExponentKey& k, const Integer& c) { out.add(n, k, c); });
  return out.build();
}

PuiseuxSeries eta(const Rational& q_prec, int rank) {
  SeriesBuilder out(rank, q_prec, 24, 1);
  // sum_k (-1)^k q^((6k-1)^2/24)
  for (std::int64_t k = 0; out.in_range((6 * k - 1) * (6 * k - 1)); ++k) {
    Integer sign((k % 2 == 0) ? 1 : -1);
    out.add((6 * k - 1) * (6 * k - 1), ExponentKey{}, sign);
    if (k > 0) out.add((6 * k + 1) * (6 * k + 1), ExponentKey{}, sign);
  }
  return out.build();
}

Rational eta_quotient_order(const std::map<int, int>& shape) {
  Rational v = 0;
  for (auto [b, r] : shape) v += ratio(static_cast<long>(b) * r, 24);
  v.canonicalize();
  return v;
}

PuiseuxSeries eta_quotient(const std::map<int, int>& shape, const Rational& q_prec, int rank) {
  Rational v = eta_quotient_order(shape);
  Rational rel = q_prec - v;
  if (rel <= 0) return PuiseuxSeries(rank, q_prec);
  std::optional<PuiseuxSeries> result;
  for (auto [b, r] : shape) {
    if (b <= 0) throw InvalidInput("eta quotient level must be positive");
    if (r == 0) continue;
    Rational p = ratio(1, 24) + rel / Rational(b);
    auto f = ps_pow(substitute_q(eta(p, rank), b), r);
    result = result ? ps_mul(*result, f) : f;
  }
  if (!result) return PuiseuxSeries::constant(rank, Integer(1), q_prec);
  return result->truncated(q_prec);
}

PuiseuxSeries jtheta_linear(const std::vector<Rational>& form, const Rational& q_prec) {
  const int rank = static_cast<int>(form.size());
  std::int64_t d = 2 * lcm_of_denominators(form);
  SeriesBuilder out(rank, q_prec, 8, d);
  for (std::int64_t n = 1; ratio(n * n, 8) < q_prec; n += 2) {
    for (std::int64_t m : {n, -n}) {
      int chi = mod_floor(m, 4) == 1 ? 1 : -1;
      std::vector<Rational> l(rank);
      for (int i = 0; i < rank; ++i) l[i] = ratio(m, 2) * form[i];
      out.add(ratio(n * n, 8), l, Integer(chi));
    }
  }
  return out.build();
}

}  // namespace thetablocks
