#include "thetablocks/linalg.hpp"

#include <Eigen/LU>
#include <utility>

namespace thetablocks {

Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  if (m.rows() == 0) return Rational(1);
  return m.fullPivLu().determinant();
}

RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("inverse of a non-square matrix");
  Eigen::FullPivLU<RatMatrix> lu(m);
  if (!lu.isInvertible()) throw InvalidInput("matrix is singular");
  return lu.inverse();
}

namespace {

void swap_rows(IntMatrix& m, Eigen::Index i, Eigen::Index j) {
  if (i != j) m.row(i).swap(m.row(j));
}
void swap_cols(IntMatrix& m, Eigen::Index i, Eigen::Index j) {
  if (i != j) m.col(i).swap(m.col(j));
}
// row_i += c * row_j
void add_row(IntMatrix& m, Eigen::Index i, Eigen::Index j, const Integer& c) {
  for (Eigen::Index k = 0; k < m.cols(); ++k) m(i, k) += c * m(j, k);
}
void add_col(IntMatrix& m, Eigen::Index i, Eigen::Index j, const Integer& c) {
  for (Eigen::Index k = 0; k < m.rows(); ++k) m(k, i) += c * m(k, j);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::Identity(rows, rows);
  IntMatrix v = IntMatrix::Identity(cols, cols);
  const Eigen::Index n = std::min(rows, cols);
  for (Eigen::Index t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the remaining block as pivot
      Eigen::Index pi = -1, pj = -1;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (d(i, j) != 0 && (pi < 0 || abs(d(i, j)) < abs(d(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;
      swap_rows(d, t, pi);
      swap_rows(u, t, pi);
      swap_cols(d, t, pj);
      swap_cols(v, t, pj);
      bool clean = true;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(d, i, t, -q);
        add_row(u, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(d, j, t, -q);
        add_col(v, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // enforce divisibility of the rest by the pivot
      Eigen::Index bad_row = -1;
      for (Eigen::Index i = t + 1; i < rows && bad_row < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (bad_row < 0) break;
      add_row(d, t, bad_row, Integer(1));
      add_row(u, t, bad_row, Integer(1));
    }
    if (d(t, t) < 0) {
      d.row(t) *= Integer(-1);
      u.row(t) *= Integer(-1);
    }
  }
  SmithForm s{u, d, v, {}};
  for (Eigen::Index t = 0; t < n; ++t) s.diagonal.push_back(d(t, t));
  return s;
}

Rational bilinear(const RatMatrix& m, const RatVector& x, const RatVector& y) {
  RatVector my = m * y;
  return x.dot(my);
}

RatVector to_vector(const std::vector<Rational>& v) {
  RatVector r(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) r(static_cast<Eigen::Index>(i)) = v[i];
  return r;
}

std::vector<Rational> to_std(const RatVector& v) {
  std::vector<Rational> r(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) r[static_cast<std::size_t>(i)] = v(i);
  return r;
}

}  // namespace thetablocks
