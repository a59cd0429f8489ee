#ifndef BKM_MODFORMS_HPP
#define BKM_MODFORMS_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qseries.hpp"

namespace bkm {

/// Delta = q prod_{n>=1} (1 - q^n)^24, known through q^trunc.
inline QSeries delta(int trunc) {
  if (trunc < 1) throw std::invalid_argument("delta needs trunc >= 1");
  ExponentMap e;
  for (int n = 1; n <= trunc - 1; ++n) e.emplace(n, 24);
  return power_product(e, trunc - 1).shifted(1);
}

/// sigma_k(n), the sum of k-th powers of the divisors of n.
inline Integer divisor_sigma(int k, int n) {
  Integer s = 0;
  for (int d = 1; d <= n; ++d) {
    if (n % d == 0) {
      Integer t;
      mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
      s += t;
    }
  }
  return s;
}

/// E_4 = 1 + 240 sum sigma_3(n) q^n.
inline QSeries eisenstein_e4(int trunc) {
  QSeries e(0, trunc);
  e.set(0, Rational(1));
  for (int n = 1; n <= trunc; ++n) e.set(n, Rational(240 * divisor_sigma(3, n)));
  return e;
}

/// j - 744 = E_4^3 / Delta - 744 = q^-1 + 196884 q + ..., known through q^trunc.
inline QSeries j_minus_744(int trunc) {
  if (trunc < -1) throw std::invalid_argument("j_minus_744 needs trunc >= -1");
  const QSeries e4 = eisenstein_e4(trunc + 1);
  const QSeries j = e4 * e4 * e4 * invert(delta(trunc + 2));
  QSeries out = j.truncated(trunc);
  out.add_to(0, Rational(-744));
  return out;
}

/// Number of partitions of n into parts of k colours; 0 for n < 0.
inline Integer p_colored(int k, int n) {
  if (k < 1) throw std::invalid_argument("p_colored needs k >= 1");
  if (n < 0) return 0;
  ExponentMap e;
  for (int m = 1; m <= n; ++m) e.emplace(m, -k);
  return to_integer(power_product(e, n).coeff(n), "p_colored");
}

/// p_k(0..n_max) in one expansion.
inline std::vector<Integer> p_colored_table(int k, int n_max) {
  ExponentMap e;
  for (int m = 1; m <= n_max; ++m) e.emplace(m, -k);
  const QSeries s = power_product(e, n_max);
  std::vector<Integer> out;
  out.reserve(static_cast<std::size_t>(std::max(n_max + 1, 0)));
  for (int n = 0; n <= n_max; ++n) out.push_back(to_integer(s.coeff(n), "p_colored"));
  return out;
}

/// Grade dimension from the no-ghost theorem for a lattice of dimension k:
/// p_24(1 - a/2) if k == 26, else p_{k-1}(1 - a/2) - p_{k-1}(a/2), a = norm2.
inline Integer noghost_multiplicity(int k, int norm2) {
  if (k <= 2) throw std::domain_error("noghost_multiplicity needs k > 2");
  if (norm2 % 2 != 0) throw std::domain_error("noghost_multiplicity needs an even norm");
  const int half = norm2 / 2;
  if (k == 26) return p_colored(24, 1 - half);
  return p_colored(k - 1, 1 - half) - p_colored(k - 1, half);
}

/// Lookup tables for the q-expansions used across the identities.
class ModformTable {
public:
  explicit ModformTable(int trunc)
      : trunc_(trunc), delta_(delta(std::max(trunc, 1))), j_(j_minus_744(trunc)) {
    const QSeries dinv = invert(delta(trunc + 2));
    for (int n = 0; n <= trunc + 1; ++n) p24_.push_back(to_integer(dinv.coeff(n - 1), "p24"));
    for (int n = -1; n <= trunc; ++n) c_.push_back(to_integer(j_.coeff(n), "c(n)"));
  }

  int trunc() const { return trunc_; }
  const QSeries& delta_series() const { return delta_; }
  const QSeries& j_series() const { return j_; }

  /// c(n): 0 for n < -1.
  const Integer& c(int n) const {
    static const Integer zero = 0;
    if (n < -1) return zero;
    if (n > trunc_) {
      throw std::out_of_range("c(" + std::to_string(n) + ") beyond table truncation " +
                              std::to_string(trunc_));
    }
    return c_[static_cast<std::size_t>(n + 1)];
  }

  /// c'(0) = 24, c'(n) = c(n) otherwise.
  Integer c_prime(int n) const { return n == 0 ? Integer(24) : c(n); }

  const Integer& p24(int n) const {
    if (n < 0 || n > trunc_ + 1) throw std::out_of_range("p24 index out of table range");
    return p24_[static_cast<std::size_t>(n)];
  }

private:
  int trunc_;
  QSeries delta_;
  QSeries j_;
  std::vector<Integer> p24_;
  std::vector<Integer> c_;
};

/// Exponents c_0(n^2), 1 <= n <= trunc, with j = q^-1 prod (1 - q^n)^{c_0(n^2)}.
/// Obtained by product-exponent extraction from the full j (c(0) = 744 restored).
inline ExponentMap c0_square_exponents(int trunc) {
  if (trunc < 1) throw std::invalid_argument("c0_square_exponents needs trunc >= 1");
  QSeries j = j_minus_744(trunc - 1);
  j.add_to(0, Rational(744));
  try {
    return extract_product_exponents(j);
  } catch (const ProductFormError& e) {
    throw std::logic_error(std::string("internal inconsistency deriving c0(n^2): ") + e.what());
  }
}

}  // namespace bkm

#endif  // BKM_MODFORMS_HPP
