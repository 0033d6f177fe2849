#pragma once

#include <vector>

#include "thetablocks/arith.hpp"

namespace thetablocks {

Rational determinant(const RatMatrix& m);
// Throws InvalidInput for singular input.
RatMatrix inverse(const RatMatrix& m);

// u * a * v = d with u, v unimodular and d diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  std::vector<Integer> diagonal;
};
SmithForm smith_normal_form(const IntMatrix& a);

// x^T m y
Rational bilinear(const RatMatrix& m, const RatVector& x, const RatVector& y);

RatVector to_vector(const std::vector<Rational>& v);
std::vector<Rational> to_std(const RatVector& v);

}  // namespace thetablocks
