#include "thetablocks/discriminant.hpp"

#include <deque>
#include <numeric>
#include <regex>
#include <set>

#include "thetablocks/linalg.hpp"

namespace thetablocks {

DiscriminantForm::DiscriminantForm(std::vector<long> orders, std::vector<Rational> q_gen, const RatMatrix& b_gen)
    : orders_(std::move(orders)), q_gen_(std::move(q_gen)), b_gen_(b_gen) {
  if (q_gen_.size() != orders_.size() || b_gen_.rows() != static_cast<Eigen::Index>(orders_.size()))
    throw InvalidInput("discriminant form presentation has inconsistent sizes");
  build();
}

void DiscriminantForm::build() {
  size_ = 1;
  for (long o : orders_) {
    if (o <= 0) throw InvalidInput("cyclic factor order must be positive");
    size_ *= o;
  }
  const int r = static_cast<int>(orders_.size());
  std::vector<Rational> qs(size_);
  Integer lev = 1;
  for (long idx = 0; idx < size_; ++idx) {
    auto c = element(idx);
    Rational v = 0;
    for (int i = 0; i < r; ++i) {
      if (c[i] == 0) continue;
      v += q_gen_[i] * (c[i] * c[i]);
      for (int j = i + 1; j < r; ++j)
        if (c[j] != 0) v += b_gen_(i, j) * (c[i] * c[j]);
    }
    qs[idx] = frac(v);
    Integer den = qs[idx].get_den();
    mpz_lcm(lev.get_mpz_t(), lev.get_mpz_t(), den.get_mpz_t());
  }
  level_ = to_int64(lev);
  q_num_.resize(size_);
  for (long idx = 0; idx < size_; ++idx) q_num_[idx] = to_int64(Rational(qs[idx] * level_));
}

std::vector<long> DiscriminantForm::element(long index) const {
  std::vector<long> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    c[i] = index % orders_[i];
    index /= orders_[i];
  }
  return c;
}

long DiscriminantForm::index(const std::vector<long>& coords) const {
  long idx = 0;
  for (int i = static_cast<int>(orders_.size()) - 1; i >= 0; --i) idx = idx * orders_[i] + mod_floor(coords[i], orders_[i]);
  return idx;
}

long DiscriminantForm::add(long a, long b) const {
  long idx = 0, mult = 1;
  for (long o : orders_) {
    long s = a % o + b % o;
    if (s >= o) s -= o;
    idx += s * mult;
    mult *= o;
    a /= o;
    b /= o;
  }
  return idx;
}

long DiscriminantForm::neg(long a) const {
  auto c = element(a);
  for (auto& x : c) x = -x;
  return index(c);
}

long DiscriminantForm::mul(long a, long k) const {
  auto c = element(a);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod_floor(c[i] * k, orders_[i]);
  return index(c);
}

long DiscriminantForm::order(long a) const {
  auto c = element(a);
  long o = 1;
  for (std::size_t i = 0; i < c.size(); ++i) o = std::lcm(o, orders_[i] / std::gcd(orders_[i], c[i]));
  return o;
}

long DiscriminantForm::b_num(long a, long b) const {
  return mod_floor(q_num_[add(a, b)] - q_num_[a] - q_num_[b], level_);
}

std::vector<long> DiscriminantForm::invariant_factors() const {
  const auto n = static_cast<Eigen::Index>(orders_.size());
  IntMatrix d = IntMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = Integer(orders_[i]);
  auto snf = smith_normal_form(d);
  std::vector<long> out;
  for (const auto& x : snf.diagonal)
    if (x != 1) out.push_back(to_int64(x));
  return out;
}

std::vector<long> DiscriminantForm::isotropic_elements() const {
  std::vector<long> out;
  for (long i = 0; i < size_; ++i)
    if (q_num_[i] == 0) out.push_back(i);
  return out;
}

Cyclotomic DiscriminantForm::gauss_sum() const {
  std::vector<Rational> counts(level_, Rational(0));
  for (long i = 0; i < size_; ++i) counts[q_num_[i]] += 1;
  return Cyclotomic::from_powers(static_cast<int>(level_), counts);
}

long DiscriminantForm::class_of_pairings(const RatVector& e) const {
  if (!to_coords_) throw InvalidInput("discriminant form is not attached to a lattice");
  RatVector c = *to_coords_ * e;
  std::vector<long> coords(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (!is_integral(c(i))) throw InvalidInput("vector is not in the dual lattice");
    coords[i] = mod_floor(to_int64(Integer(Integer(c(i).get_num()) % orders_[i])), orders_[i]);
  }
  return index(coords);
}

long DiscriminantForm::class_of_integral_pairings(const std::int64_t* e) const {
  if (!to_coords_) throw InvalidInput("discriminant form is not attached to a lattice");
  long idx = 0, mult = 1;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    const auto& row = int_coords_[i];
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < row.size(); ++j) acc = (acc + row[j] * mod_floor(e[j], orders_[i])) % orders_[i];
    idx += acc * mult;
    mult *= orders_[i];
  }
  return idx;
}

DiscriminantForm DiscriminantForm::of_lattice(const GramLattice& l) {
  if (!l.is_even()) throw InvalidInput("discriminant form requires an even lattice");
  IntMatrix g = to_integer(l.gram);
  auto snf = smith_normal_form(g);
  std::vector<long> orders;
  std::vector<RatVector> gens;
  std::vector<Eigen::Index> rows;
  RatMatrix v = to_rational(snf.v);
  for (std::size_t i = 0; i < snf.diagonal.size(); ++i) {
    if (snf.diagonal[i] == 0) throw InvalidInput("degenerate lattice");
    if (snf.diagonal[i] == 1) continue;
    orders.push_back(to_int64(snf.diagonal[i]));
    gens.push_back(v.col(static_cast<Eigen::Index>(i)) / Rational(snf.diagonal[i]));
    rows.push_back(static_cast<Eigen::Index>(i));
  }
  const auto r = static_cast<Eigen::Index>(gens.size());
  std::vector<Rational> q(gens.size());
  RatMatrix b = RatMatrix::Zero(r, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    q[i] = frac(bilinear(l.gram, gens[i], gens[i]) / 2);
    for (Eigen::Index j = 0; j < r; ++j) b(i, j) = frac(bilinear(l.gram, gens[i], gens[j]));
  }
  DiscriminantForm d(orders, q, b);
  RatMatrix u = to_rational(snf.u);
  RatMatrix map(r, l.rank());
  for (Eigen::Index i = 0; i < r; ++i) map.row(i) = u.row(rows[i]);
  d.to_coords_ = map;
  d.int_coords_.assign(r, std::vector<std::int64_t>(l.rank()));
  for (Eigen::Index i = 0; i < r; ++i)
    for (int j = 0; j < l.rank(); ++j) d.int_coords_[i][j] = mod_floor(to_int64(snf.u(rows[i], j)), d.orders_[i]);
  return d;
}

DiscriminantForm DiscriminantForm::subform(const std::vector<long>& generators, std::vector<long>* embedding) const {
  std::vector<long> orders;
  std::vector<Rational> q;
  for (long g : generators) {
    orders.push_back(order(g));
    q.push_back(this->q(g));
  }
  const auto r = static_cast<Eigen::Index>(generators.size());
  RatMatrix b = RatMatrix::Zero(r, r);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j) b(i, j) = this->b(generators[i], generators[j]);
  DiscriminantForm sub(orders, q, b);
  std::vector<long> emb(sub.size());
  std::set<long> seen;
  for (long idx = 0; idx < sub.size(); ++idx) {
    auto c = sub.element(idx);
    long x = 0;
    for (std::size_t i = 0; i < c.size(); ++i) x = add(x, mul(generators[i], c[i]));
    emb[idx] = x;
    seen.insert(x);
  }
  if (static_cast<long>(seen.size()) != sub.size())
    throw InvalidInput("subgroup generators do not form a direct sum");
  if (embedding) *embedding = emb;
  return sub;
}

DiscriminantForm DiscriminantForm::primary_part(long p, bool complement, std::vector<long>* embedding) const {
  std::vector<long> gens;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    long o = orders_[i], pp = 1;
    while (o % p == 0) {
      o /= p;
      pp *= p;
    }
    long keep_order = complement ? o : pp;
    if (keep_order == 1) continue;
    std::vector<long> c(orders_.size(), 0);
    c[i] = orders_[i] / keep_order;
    gens.push_back(index(c));
  }
  return subform(gens, embedding);
}

DiscriminantForm DiscriminantForm::negated() const {
  std::vector<Rational> q(q_gen_.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = frac(-q_gen_[i]);
  RatMatrix b = b_gen_;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = frac(-b(i, j));
  return DiscriminantForm(orders_, q, b);
}

DiscriminantForm direct_sum(const DiscriminantForm& a, const DiscriminantForm& b) {
  std::vector<long> orders = a.orders_;
  orders.insert(orders.end(), b.orders_.begin(), b.orders_.end());
  std::vector<Rational> q = a.q_gen_;
  q.insert(q.end(), b.q_gen_.begin(), b.q_gen_.end());
  const auto ra = a.b_gen_.rows(), rb = b.b_gen_.rows();
  RatMatrix m = RatMatrix::Zero(ra + rb, ra + rb);
  m.topLeftCorner(ra, ra) = a.b_gen_;
  m.bottomRightCorner(rb, rb) = b.b_gen_;
  return DiscriminantForm(orders, q, m);
}

DiscriminantForm hyperbolic_discriminant(long n) {
  RatMatrix b(2, 2);
  b << Rational(0), ratio(1, n), ratio(1, n), Rational(0);
  return DiscriminantForm({n, n}, {Rational(0), Rational(0)}, b);
}

int milgram_signature(const DiscriminantForm& d) {
  const int m = std::lcm(8, static_cast<int>(d.level()));
  Cyclotomic g = d.gauss_sum().lift(m);
  Cyclotomic size = Cyclotomic::rational(m, Rational(d.size()));
  for (int s = 0; s < 8; ++s) {
    Cyclotomic x = g * Cyclotomic::root_of_unity(m, -s * (m / 8));
    if (!(x == x.conj())) continue;
    if (!(x * x == size)) continue;
    if (x.to_complex().real() > 0) return s;
  }
  throw Error("Gauss sum is inconsistent with any signature");
}

FiniteQuadraticInvariants finite_qf_invariants(const DiscriminantForm& d) {
  FiniteQuadraticInvariants inv;
  inv.invariant_factors = d.invariant_factors();
  inv.level = d.level();
  inv.signature = milgram_signature(d);
  for (long i = 0; i < d.size(); ++i) inv.norm_counts[{d.order(i), d.q(i)}] += 1;
  return inv;
}

int kronecker(long a, long n) {
  if (n <= 0) throw InvalidInput("kronecker symbol needs a positive modulus");
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    long r = mod_floor(a, 8);
    if (r % 2 == 0) return 0;
    if (r == 3 || r == 5) result = -result;
  }
  // Jacobi symbol for odd n
  a = mod_floor(a, n);
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

std::vector<JordanComponent> parse_genus_symbol(std::string_view symbol) {
  static const std::regex token(R"((\d+)(?:_(II|\d+))?\^\{?([+-])(\d+)\}?)");
  std::vector<JordanComponent> out;
  std::string s(symbol);
  std::string compact;
  for (char c : s)
    if (c != ' ') compact += c;
  auto begin = std::sregex_iterator(compact.begin(), compact.end(), token);
  std::size_t consumed = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (static_cast<std::size_t>(m.position()) != consumed) throw InvalidInput("malformed genus symbol: " + s);
    consumed += static_cast<std::size_t>(m.length());
    long q = std::stol(m[1].str());
    long p = 0;
    for (long c = 2; c <= q; ++c)
      if (q % c == 0) {
        p = c;
        break;
      }
    long pow = 0;
    for (long t = q; t > 1; t /= p) {
      if (t % p != 0) throw InvalidInput("genus symbol component is not a prime power: " + m[1].str());
      ++pow;
    }
    JordanComponent jc{p, pow, m[3].str() == "+" ? 1 : -1, std::stoi(m[4].str()), std::nullopt};
    if (p == 2) {
      if (!m[2].matched) throw InvalidInput("2-adic component needs a type: " + m.str());
      if (m[2].str() != "II") jc.oddity = std::stoi(m[2].str()) % 8;
    } else if (m[2].matched) {
      throw InvalidInput("odd component with a type subscript: " + m.str());
    }
    out.push_back(jc);
  }
  if (consumed != compact.size() || out.empty()) throw InvalidInput("malformed genus symbol: " + s);
  return out;
}

namespace {

long smallest_nonresidue(long p) {
  for (long a = 2; a < p; ++a)
    if (kronecker(a, p) == -1) return a;
  throw Error("no quadratic nonresidue");
}

DiscriminantForm component_form(const JordanComponent& c) {
  long q = 1;
  for (long i = 0; i < c.power; ++i) q *= c.prime;
  std::vector<long> orders(c.rank, q);
  std::vector<Rational> qs(c.rank);
  RatMatrix b = RatMatrix::Zero(c.rank, c.rank);
  if (c.prime != 2) {
    // q(x) = u x^2 / (2 p^k) with 1/2 taken mod p^k
    Rational half = ratio((q + 1) / 2, q);
    for (int i = 0; i < c.rank; ++i) qs[i] = frac(half);
    if (c.sign < 0) qs[c.rank - 1] = frac(half * smallest_nonresidue(c.prime));
  } else if (!c.oddity) {
    if (c.rank % 2 != 0) throw InvalidInput("even 2-adic component of odd rank");
    for (int blk = 0; blk < c.rank / 2; ++blk) {
      int i = 2 * blk, j = i + 1;
      bool anisotropic = (c.sign < 0 && blk == 0);
      qs[i] = qs[j] = anisotropic ? ratio(1, q) : Rational(0);
      b(i, j) = b(j, i) = ratio(1, q);
    }
  } else {
    // diagonal u_i x^2 / 2^(k+1) with sum u_i = oddity mod 8 and prod (2 / u_i) = sign
    std::vector<int> u(c.rank, 1);
    bool found = false;
    const long combos = 1L << (2 * c.rank);
    for (long mask = 0; mask < combos && !found; ++mask) {
      int sum = 0, sign = 1;
      for (int i = 0; i < c.rank; ++i) {
        u[i] = 2 * static_cast<int>((mask >> (2 * i)) & 3) + 1;
        sum += u[i];
        if (u[i] == 3 || u[i] == 5) sign = -sign;
      }
      found = (sum % 8 == *c.oddity) && sign == c.sign;
    }
    if (!found) throw InvalidInput("no odd 2-adic form with the given oddity and sign");
    for (int i = 0; i < c.rank; ++i) qs[i] = ratio(u[i], 2 * q);
  }
  return DiscriminantForm(orders, qs, b);
}

}  // namespace

DiscriminantForm DiscriminantForm::from_genus_symbol(std::string_view symbol) {
  auto comps = parse_genus_symbol(symbol);
  DiscriminantForm d = component_form(comps[0]);
  for (std::size_t i = 1; i < comps.size(); ++i) d = direct_sum(d, component_form(comps[i]));
  return d;
}

}  // namespace thetablocks
