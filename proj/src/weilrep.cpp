#include "thetablocks/weilrep.hpp"

#include <gmpxx.h>

#include <numeric>
#include <optional>

namespace thetablocks {

WeilRep::WeilRep(DiscriminantForm d) : d_(std::move(d)) {
  m_ = std::lcm(8, static_cast<int>(d_.level()));
  sign_ = milgram_signature(d_);
  if (sign_ % 2 != 0) throw InvalidInput("Weil representation needs a discriminant form of even signature");
  Cyclotomic g = d_.gauss_sum().lift(m_);
  s_scalar_ = Cyclotomic::root_of_unity(m_, sign_ * (m_ / 4)) * g.conj() * ratio(1, d_.size());
}

long WeilRep::t_exponent(long g) const { return mod_floor(-d_.q_num(g) * (m_ / d_.level()), m_); }

long WeilRep::s_exponent(long b, long g) const { return d_.b_num(b, g) * (m_ / d_.level()); }

Cyclotomic WeilRep::s_entry(long b, long g) const {
  return s_scalar_ * Cyclotomic::root_of_unity(m_, s_exponent(b, g));
}

CycVector WeilRep::basis_vector(long g) const {
  CycVector v(d_.size(), Cyclotomic(m_));
  v[g] = Cyclotomic::rational(m_, Rational(1));
  return v;
}

CycVector WeilRep::apply_T(const CycVector& v) const {
  CycVector out(v.size());
  for (long g = 0; g < d_.size(); ++g) out[g] = v[g].is_zero() ? Cyclotomic(m_) : v[g] * t_entry(g);
  return out;
}

CycVector WeilRep::apply_S(const CycVector& v) const {
  std::vector<Cyclotomic> powers(m_);
  for (int k = 0; k < m_; ++k) powers[k] = Cyclotomic::root_of_unity(m_, k);
  CycVector out(d_.size(), Cyclotomic(m_));
  for (long b = 0; b < d_.size(); ++b) {
    Cyclotomic acc(m_);
    for (long g = 0; g < d_.size(); ++g) {
      if (v[g].is_zero()) continue;
      acc += v[g] * powers[s_exponent(b, g)];
    }
    out[b] = acc * s_scalar_;
  }
  return out;
}

bool is_invariant(const WeilRep& w, const std::vector<Rational>& v) {
  const auto& d = w.form();
  const int m = w.order();
  for (long g = 0; g < d.size(); ++g)
    if (v[g] != 0 && w.t_exponent(g) != 0) return false;
  for (long b = 0; b < d.size(); ++b) {
    std::vector<Rational> counts(m, Rational(0));
    for (long g = 0; g < d.size(); ++g)
      if (v[g] != 0) counts[w.s_exponent(b, g)] += v[g];
    Cyclotomic lhs = Cyclotomic::from_powers(m, counts) * w.s_scalar();
    if (!(lhs == Cyclotomic::rational(m, v[b]))) return false;
  }
  return true;
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

struct PrimeField {
  u64 p;
  u64 zeta;  // primitive M-th root of unity mod p
};

PrimeField choose_prime(int m) {
  u64 start = (u64{1} << 61) / m * m + 1;
  std::vector<u64> prime_factors;
  for (int x = m, f = 2; x > 1; ++f)
    if (x % f == 0) {
      prime_factors.push_back(f);
      while (x % f == 0) x /= f;
    }
  for (u64 p = start;; p += m) {
    mpz_class z(std::to_string(p));
    if (!mpz_probab_prime_p(z.get_mpz_t(), 30)) continue;
    for (u64 x = 2;; ++x) {
      u64 cand = powmod(x, (p - 1) / m, p);
      bool primitive = true;
      for (u64 f : prime_factors)
        if (powmod(cand, m / f, p) == 1) primitive = false;
      if (primitive) return {p, cand};
    }
  }
}

u64 reduce(const Rational& r, u64 p) {
  mpz_class num = r.get_num() % mpz_class(std::to_string(p));
  if (num < 0) num += mpz_class(std::to_string(p));
  mpz_class den = r.get_den() % mpz_class(std::to_string(p));
  if (den == 0) throw Error("denominator vanishes modulo the working prime");
  u64 n = std::stoull(num.get_str()), dd = std::stoull(den.get_str());
  return mulmod(n, invmod(dd, p), p);
}

u64 reduce(const Cyclotomic& c, const PrimeField& f) {
  u64 acc = 0, z = 1;
  for (const auto& coef : c.coefficients()) {
    acc = (acc + mulmod(reduce(coef, f.p), z, f.p)) % f.p;
    z = mulmod(z, f.zeta, f.p);
  }
  return acc;
}

// r / s with |r|, s <= sqrt(p / 2) and r = a s mod p
std::optional<Rational> rational_reconstruction(u64 a, u64 p) {
  using i128 = __int128;
  i128 r0 = p, r1 = a, s0 = 0, s1 = 1;
  const double bound = std::sqrt(static_cast<double>(p) / 2);
  while (static_cast<double>(r1) > bound) {
    i128 q = r0 / r1;
    i128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || static_cast<double>(s1 < 0 ? -s1 : s1) > bound) return std::nullopt;
  auto to_integer = [](i128 v) {
    bool neg = v < 0;
    u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
    std::string s;
    do {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    } while (u);
    return Integer((neg ? "-" : "") + s);
  };
  return ratio(to_integer(r1), to_integer(s1));
}

}  // namespace

InvariantSpace invariant_subspace(const WeilRep& w) {
  const auto& d = w.form();
  InvariantSpace out;
  for (long g = 0; g < d.size(); ++g)
    if (w.t_exponent(g) == 0) out.support.push_back(g);
  const auto k = static_cast<long>(out.support.size());
  const int m = w.order();
  PrimeField f = choose_prime(m);
  const u64 p = f.p;
  std::vector<u64> zpow(m);
  zpow[0] = 1;
  for (int i = 1; i < m; ++i) zpow[i] = mulmod(zpow[i - 1], f.zeta, p);
  const u64 c = reduce(w.s_scalar(), f);

  // rows: (S - 1) restricted to the T-fixed coordinates
  std::vector<std::vector<u64>> a(d.size(), std::vector<u64>(k));
  std::vector<long> pos(d.size(), -1);
  for (long j = 0; j < k; ++j) pos[out.support[j]] = j;
  for (long b = 0; b < d.size(); ++b) {
    for (long j = 0; j < k; ++j) a[b][j] = mulmod(c, zpow[w.s_exponent(b, out.support[j])], p);
    if (pos[b] >= 0) a[b][pos[b]] = (a[b][pos[b]] + p - 1) % p;
  }
  // reduced row echelon form
  std::vector<long> pivot_cols;
  std::size_t row = 0;
  for (long col = 0; col < k && row < a.size(); ++col) {
    std::size_t sel = row;
    while (sel < a.size() && a[sel][col] == 0) ++sel;
    if (sel == a.size()) continue;
    std::swap(a[row], a[sel]);
    u64 inv = invmod(a[row][col], p);
    for (auto& x : a[row]) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      u64 factor = a[r][col];
      for (long j = col; j < k; ++j) a[r][j] = (a[r][j] + p - mulmod(factor, a[row][j], p)) % p;
    }
    pivot_cols.push_back(col);
    ++row;
  }
  out.checked_rank_bound = k - static_cast<long>(pivot_cols.size());
  std::vector<bool> is_pivot(k, false);
  for (long col : pivot_cols) is_pivot[col] = true;
  for (long free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(d.size(), Rational(0));
    v[out.support[free]] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
      u64 val = (p - a[r][free]) % p;
      auto rec = rational_reconstruction(val, p);
      if (!rec) throw Error("rational reconstruction of an invariant vector failed");
      v[out.support[pivot_cols[r]]] = *rec;
    }
    if (!is_invariant(w, v)) throw Error("reconstructed invariant vector fails exact verification");
    out.basis.push_back(std::move(v));
  }
  out.dimension = static_cast<long>(out.basis.size());
  return out;
}

int oddity(const DiscriminantForm& d) { return milgram_signature(d.primary_part(2, false)); }

Cyclotomic chi_D(const DiscriminantForm& d, long a) {
  if (std::gcd(a, d.level()) != 1) throw InvalidInput("chi_D needs an argument coprime to the level");
  if (milgram_signature(d) % 2 != 0) throw InvalidInput("chi_D needs even signature");
  int k = kronecker(a, d.size());
  return Cyclotomic::root_of_unity(8, mod_floor((a - 1) * oddity(d), 8)) * Rational(k);
}

}  // namespace thetablocks
