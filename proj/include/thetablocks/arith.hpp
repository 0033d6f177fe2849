#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>
#include <Eigen/Core>

namespace thetablocks {

using Integer = mpz_class;
using Rational = mpq_class;

}  // namespace thetablocks

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpq_class NonInteger;
  typedef mpz_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace thetablocks {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using IntVector = Vector<Integer>;
using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Coefficient requested at or beyond the stored truncation.
struct PrecisionError : Error {
  using Error::Error;
};
struct InvalidInput : Error {
  using Error::Error;
};
// A division that was required to be exact left a remainder.
struct NotDivisible : Error {
  using Error::Error;
};

// Canonicalized num/den.
Rational ratio(const Integer& num, const Integer& den);
inline Rational ratio(long num, long den) { return ratio(Integer(num), Integer(den)); }

Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Rational frac(const Rational& x);  // representative in [0, 1)
bool is_integral(const Rational& x);

std::int64_t to_int64(const Integer& x);
std::int64_t to_int64(const Rational& x);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t mod_floor(std::int64_t a, std::int64_t b);
std::int64_t denominator64(const Rational& x);

// "p/q" with q > 1, or "p" for integers.
std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text, char sep = ',');

Integer binomial(const Integer& top, unsigned k);  // generalized: top may be negative
Integer pow(const Integer& base, unsigned e);

RatMatrix to_rational(const IntMatrix& m);
RatVector to_rational(const IntVector& v);
IntMatrix to_integer(const RatMatrix& m);  // throws if an entry is not integral
bool is_integral(const RatMatrix& m);

}  // namespace thetablocks
