#ifndef BKM_RATIONAL_HPP
#define BKM_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bkm {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when a value that must be integral carries a denominator.
class IntegralityError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

/// Checked cast; throws IntegralityError naming `what` if x is not an integer.
inline Integer to_integer(const Rational& x, std::string_view what = "value") {
  if (!is_integral(x)) {
    throw IntegralityError(std::string(what) + " is not an integer: " + x.get_str());
  }
  return x.get_num();
}

inline long to_long(const Integer& z, std::string_view what = "value") {
  if (!z.fits_slong_p()) {
    throw std::overflow_error(std::string(what) + " does not fit in a machine integer: " + z.get_str());
  }
  return z.get_si();
}

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }
inline std::string to_string(const Integer& x) { return x.get_str(); }

/// Generalised binomial coefficient C(e, k) for integer e (possibly negative) and k >= 0.
inline Integer binomial(const Integer& e, long k) {
  if (k < 0) return 0;
  Rational acc = 1;
  for (long i = 0; i < k; ++i) {
    acc *= Rational(e - i);
    acc /= Rational(i + 1);
  }
  return acc.get_num();
}

}  // namespace bkm

#endif  // BKM_RATIONAL_HPP
