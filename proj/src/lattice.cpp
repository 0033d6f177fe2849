#include "thetablocks/lattice.hpp"

#include <cmath>

#include "thetablocks/linalg.hpp"

namespace thetablocks {

bool GramLattice::is_integral() const { return thetablocks::is_integral(gram); }

bool GramLattice::is_even() const {
  if (!is_integral()) return false;
  for (int i = 0; i < rank(); ++i)
    if (!mpz_divisible_ui_p(gram(i, i).get_num_mpz_t(), 2)) return false;
  return true;
}

Rational GramLattice::determinant() const { return thetablocks::determinant(gram); }

GramLattice gram_lattice(const IntMatrix& gram) { return GramLattice{to_rational(gram)}; }

GramLattice rescaled(const GramLattice& l, const Rational& factor) { return GramLattice{l.gram * factor}; }

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
  RatMatrix g = RatMatrix::Zero(a.rank() + b.rank(), a.rank() + b.rank());
  g.topLeftCorner(a.rank(), a.rank()) = a.gram;
  g.bottomRightCorner(b.rank(), b.rank()) = b.gram;
  return GramLattice{g};
}

GramLattice gram_underline_R(const RootDatum& datum) {
  RatMatrix g = RatMatrix::Zero(datum.rank, datum.rank);
  for (const auto& r : datum.positive_roots)
    for (int i = 0; i < datum.rank; ++i)
      for (int j = 0; j < datum.rank; ++j) g(i, j) += r[i] * r[j];
  return GramLattice{g};
}

SublatticeEmbedding trivial_embedding(const GramLattice& l) {
  return SublatticeEmbedding{l, IntMatrix::Identity(l.rank(), l.rank()), Integer(1)};
}

SublatticeEmbedding even_sublattice(const GramLattice& l) {
  if (!l.is_integral()) throw InvalidInput("even sublattice of a non-integral lattice");
  const int n = l.rank();
  int first_odd = -1;
  for (int i = 0; i < n && first_odd < 0; ++i)
    if (!mpz_divisible_ui_p(l.gram(i, i).get_num_mpz_t(), 2)) first_odd = i;
  if (first_odd < 0) return trivial_embedding(l);
  // x -> (x, x) mod 2 is the linear form sum x_i G_ii; its kernel has this basis
  IntMatrix b = IntMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    if (j == first_odd) {
      b(j, j) = 2;
      continue;
    }
    b(j, j) = 1;
    if (!mpz_divisible_ui_p(l.gram(j, j).get_num_mpz_t(), 2)) b(first_odd, j) = -1;
  }
  RatMatrix br = to_rational(b);
  GramLattice sub{br.transpose() * l.gram * br};
  return SublatticeEmbedding{sub, b, Integer(2)};
}

GramLattice dual_lattice(const GramLattice& l) { return GramLattice{inverse(l.gram)}; }

RatVector shadow_shift(const GramLattice& l) {
  RatVector s(l.rank());
  for (int i = 0; i < l.rank(); ++i) s(i) = frac(l.gram(i, i) / 2);
  return s;
}

Rational dual_norm(const GramLattice& l, const RatVector& e) {
  RatMatrix inv = inverse(l.gram);
  return bilinear(inv, e, e);
}

Integer order_in_discriminant(const GramLattice& l, const RatVector& e) {
  RatVector x = inverse(l.gram) * e;
  Integer d = 1;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Integer den = x(i).get_den();
    mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), den.get_mpz_t());
  }
  return d;
}

RatVector restrict_pairings(const SublatticeEmbedding& sub, const RatVector& e) {
  return to_rational(sub.basis).transpose() * e;
}

OrderAndNorm order_and_norm(const GramLattice& l, const SublatticeEmbedding& ev, const RatVector& e) {
  return OrderAndNorm{order_in_discriminant(l, e), order_in_discriminant(ev.lattice, restrict_pairings(ev, e)),
                      dual_norm(l, e)};
}

void enumerate_coset(const RatMatrix& gram, const RatVector& shift, const Rational& bound,
                     const std::function<void(const RatVector& x, const Rational& norm)>& visit) {
  const int n = static_cast<int>(gram.rows());
  if (n == 0) {
    if (bound >= 0) visit(RatVector(0), Rational(0));
    return;
  }
  // Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2
  std::vector<std::vector<double>> mu(n, std::vector<double>(n, 0.0));
  std::vector<double> diag(n, 0.0);
  {
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = gram(i, j).get_d();
    for (int i = 0; i < n; ++i) {
      diag[i] = a[i][i];
      if (diag[i] <= 0) throw InvalidInput("Gram matrix is not positive definite");
      for (int j = i + 1; j < n; ++j) mu[i][j] = a[i][j] / diag[i];
      for (int j = i + 1; j < n; ++j)
        for (int k = i + 1; k < n; ++k) a[j][k] -= mu[i][j] * a[i][k];
    }
  }
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) s[i] = shift(i).get_d();
  const double limit = bound.get_d() * (1 + 1e-9) + 1e-9;
  std::vector<long> c(n, 0);
  std::vector<double> x(n, 0.0);
  RatVector exact(n);
  auto recurse = [&](auto&& self, int i, double remaining) -> void {
    double center = 0;
    for (int j = i + 1; j < n; ++j) center += mu[i][j] * x[j];
    // x_i = c_i + s_i, need d_i (x_i + center)^2 <= remaining
    double radius = std::sqrt(std::max(0.0, remaining / diag[i]));
    long lo = static_cast<long>(std::ceil(-center - radius - s[i] - 1e-9));
    long hi = static_cast<long>(std::floor(-center + radius - s[i] + 1e-9));
    for (long ci = lo; ci <= hi; ++ci) {
      x[i] = static_cast<double>(ci) + s[i];
      double t = x[i] + center;
      double rem = remaining - diag[i] * t * t;
      if (rem < -1e-9 * (1 + limit)) continue;
      c[i] = ci;
      if (i == 0) {
        for (int j = 0; j < n; ++j) exact(j) = Rational(c[j]) + shift(j);
        Rational norm = bilinear(gram, exact, exact);
        if (norm <= bound) visit(exact, norm);
      } else {
        self(self, i - 1, rem);
      }
    }
  };
  recurse(recurse, n - 1, limit);
}

}  // namespace thetablocks
