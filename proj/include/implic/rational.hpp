#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <stdexcept>
#include <string>

namespace implic {

/// Exact rational scalar. All certificate and LP arithmetic runs on this
/// type so that verdicts need no tolerances.
using Rational = mpq_class;

using VectorQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorD = Eigen::Matrix<double, Eigen::Dynamic, 1>;

inline int sign(const Rational& q) { return sgn(q); }

/// Parses "p", "p/q" or a plain decimal like "2.999" into an exact rational.
inline Rational rational_from_string(const std::string& text) {
  std::string s = text;
  auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    bool neg = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      neg = digits[0] == '-';
      digits = digits.substr(1);
    }
    if (digits.empty()) throw std::invalid_argument("bad rational: " + text);
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rational q(num, den);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + text);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Numeric-mode traits. Exact scalars compare against literal zero;
/// floating scalars use the library-wide 1e-9 zero tolerance.
template <class Scalar>
struct NumericMode;

template <>
struct NumericMode<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
  static bool nonnegative(const Rational& v) { return sgn(v) >= 0; }
};

template <>
struct NumericMode<double> {
  static constexpr bool exact = false;
  static constexpr double zero_tol = 1e-9;
  static bool is_zero(double v) { return v > -zero_tol && v < zero_tol; }
  static bool nonnegative(double v) { return v >= -zero_tol; }
};

}  // namespace implic

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

}  // namespace Eigen
