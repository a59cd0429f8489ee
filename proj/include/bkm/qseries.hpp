#ifndef BKM_QSERIES_HPP
#define BKM_QSERIES_HPP

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

#include "rational.hpp"

namespace bkm {

/// Raised when an operation's input violates its algebraic precondition
/// (non-invertible leading term, log of a series not starting with 1, ...).
class SeriesDomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Truncated Laurent series sum_{d = min_deg}^{trunc} c_d q^d over a field T.
///
/// Coefficients are stored sparsely; a missing degree inside the window is
/// zero. Degrees above `trunc` are unknown, and every operation propagates
/// the tightest truncation that its inputs justify: a product is known
/// through min(trunc_a + val_b, trunc_b + val_a), a sum through
/// min(trunc_a, trunc_b).
template <class T>
class BasicQSeries {
public:
  using coefficient_type = T;
  using map_type = std::map<int, T>;

  BasicQSeries() : BasicQSeries(0, -1) {}

  /// Zero series known on [min_deg, trunc].
  BasicQSeries(int min_deg, int trunc) : min_deg_(min_deg), trunc_(trunc) {}

  static BasicQSeries monomial(int deg, T c, int trunc) {
    BasicQSeries s(std::min(deg, trunc + 1), trunc);
    s.set(deg, std::move(c));
    return s;
  }
  static BasicQSeries constant(T c, int trunc) { return monomial(0, std::move(c), trunc); }
  static BasicQSeries one(int trunc) { return constant(T(1), trunc); }

  int min_deg() const { return min_deg_; }
  int trunc() const { return trunc_; }
  const map_type& terms() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// Lowest degree with a nonzero coefficient, or trunc+1 for the zero series.
  int valuation() const { return coeffs_.empty() ? trunc_ + 1 : coeffs_.begin()->first; }

  T coeff(int d) const {
    if (d > trunc_) {
      throw std::out_of_range("coefficient q^" + std::to_string(d) + " lies above truncation " +
                              std::to_string(trunc_));
    }
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? T(0) : it->second;
  }

  /// Sets c_d. Degrees above trunc are ignored; the window start moves down
  /// to admit a nonzero value below it.
  void set(int d, T v) {
    if (d > trunc_) return;
    canonical(v);
    if (v == 0) {
      coeffs_.erase(d);
    } else {
      if (d < min_deg_) min_deg_ = d;
      coeffs_[d] = std::move(v);
    }
  }

  void add_to(int d, const T& v) {
    if (d > trunc_ || v == 0) return;
    if (d < min_deg_) min_deg_ = d;
    auto [it, inserted] = coeffs_.try_emplace(d, v);
    if (inserted) {
      canonical(it->second);
    } else {
      it->second += v;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  /// Drops every term above t and lowers the truncation to t.
  BasicQSeries truncated(int t) const {
    BasicQSeries r(min_deg_, std::min(t, trunc_));
    for (auto it = coeffs_.begin(); it != coeffs_.end() && it->first <= r.trunc_; ++it) {
      r.coeffs_.emplace(it->first, it->second);
    }
    return r;
  }

  /// Multiplication by q^k.
  BasicQSeries shifted(int k) const {
    BasicQSeries r(min_deg_ + k, trunc_ + k);
    for (const auto& [d, c] : coeffs_) r.coeffs_.emplace_hint(r.coeffs_.end(), d + k, c);
    return r;
  }

  BasicQSeries operator-() const {
    BasicQSeries r = *this;
    for (auto& [d, c] : r.coeffs_) c = -c;
    return r;
  }

  BasicQSeries& operator+=(const BasicQSeries& o) {
    const int t = std::min(trunc_, o.trunc_);
    if (t < trunc_) *this = truncated(t);
    min_deg_ = std::min(min_deg_, o.min_deg_);
    for (const auto& [d, c] : o.coeffs_) {
      if (d > t) break;
      add_to(d, c);
    }
    return *this;
  }
  BasicQSeries& operator-=(const BasicQSeries& o) { return *this += -o; }

  BasicQSeries& operator*=(const T& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [d, c] : coeffs_) c *= s;
    return *this;
  }

  friend BasicQSeries operator+(BasicQSeries a, const BasicQSeries& b) { return a += b; }
  friend BasicQSeries operator-(BasicQSeries a, const BasicQSeries& b) { return a -= b; }
  friend BasicQSeries operator*(BasicQSeries a, const T& s) { return a *= s; }
  friend BasicQSeries operator*(const T& s, BasicQSeries a) { return a *= s; }

  /// Truncated Cauchy product.
  friend BasicQSeries operator*(const BasicQSeries& a, const BasicQSeries& b) {
    const int t = product_trunc(a, b);
    BasicQSeries r(a.min_deg_ + b.min_deg_, t);
    for (const auto& [da, ca] : a.coeffs_) {
      if (da + b.valuation() > t) break;
      for (const auto& [db, cb] : b.coeffs_) {
        const int d = da + db;
        if (d > t) break;
        auto [it, inserted] = r.coeffs_.try_emplace(d, ca * cb);
        if (!inserted) it->second += ca * cb;
      }
    }
    r.erase_zeros();
    return r;
  }
  BasicQSeries& operator*=(const BasicQSeries& o) { return *this = *this * o; }

  /// Exact equality of windows and coefficients.
  friend bool operator==(const BasicQSeries& a, const BasicQSeries& b) {
    return a.trunc_ == b.trunc_ && a.coeffs_ == b.coeffs_;
  }

  /// True when both series agree at every degree <= upto that both know.
  bool agrees_with(const BasicQSeries& o, int upto) const {
    const int t = std::min({upto, trunc_, o.trunc_});
    auto lhs = truncated(t).coeffs_;
    auto rhs = o.truncated(t).coeffs_;
    return lhs == rhs;
  }

  static int product_trunc(const BasicQSeries& a, const BasicQSeries& b) {
    const long t1 = static_cast<long>(a.trunc_) + b.valuation();
    const long t2 = static_cast<long>(b.trunc_) + a.valuation();
    return static_cast<int>(std::min(t1, t2));
  }

private:
  static void canonical(T& v) {
    if constexpr (requires { v.canonicalize(); }) v.canonicalize();
  }

  void erase_zeros() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      it = it->second == 0 ? coeffs_.erase(it) : std::next(it);
    }
  }

  map_type coeffs_;
  int min_deg_;
  int trunc_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const BasicQSeries<T>& s) {
  bool first = true;
  for (const auto& [d, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")q^" << d;
  }
  if (first) os << "0";
  return os << " + O(q^" << s.trunc() + 1 << ")";
}

using QSeries = BasicQSeries<Rational>;

/// Multiplicative inverse. The result is known through trunc - 2*val.
template <class T>
BasicQSeries<T> invert(const BasicQSeries<T>& a) {
  if (a.is_zero()) throw SeriesDomainError("series not invertible: no nonzero known coefficient");
  const int v = a.valuation();
  const int t = a.trunc() - 2 * v;
  const T lead = a.terms().begin()->second;
  // u = a / (lead q^v) has constant term 1; b = 1/u by b_n = -sum_{k=1}^n u_k b_{n-k}.
  const int n_max = t + v;
  std::map<int, T> u;
  for (const auto& [d, c] : a.terms()) u.emplace(d - v, c / lead);
  BasicQSeries<T> r(-v, t);
  std::map<int, T> b;
  b.emplace(0, T(1));
  for (int n = 1; n <= n_max; ++n) {
    T acc(0);
    for (auto it = std::next(u.begin()); it != u.end() && it->first <= n; ++it) {
      auto jt = b.find(n - it->first);
      if (jt != b.end()) acc -= it->second * jt->second;
    }
    if (acc != 0) b.emplace(n, std::move(acc));
  }
  const T inv_lead = T(1) / lead;
  for (const auto& [d, c] : b) r.set(d - v, c * inv_lead);
  return r;
}

/// q d/dq
template <class T>
BasicQSeries<T> q_derivative(const BasicQSeries<T>& a) {
  BasicQSeries<T> r(a.min_deg(), a.trunc());
  for (const auto& [d, c] : a.terms()) r.set(d, c * T(d));
  return r;
}

/// Logarithm of a series of the form 1 + O(q).
template <class T>
BasicQSeries<T> log_series(const BasicQSeries<T>& a) {
  if (a.is_zero() || a.valuation() != 0 || a.terms().begin()->second != 1) {
    throw SeriesDomainError("log_series needs a series of the form 1 + O(q)");
  }
  // q (log a)' = q a' / a
  const BasicQSeries<T> ratio = q_derivative(a) * invert(a);
  BasicQSeries<T> r(0, a.trunc());
  for (const auto& [d, c] : ratio.terms()) {
    if (d >= 1 && d <= r.trunc()) r.set(d, c / T(d));
  }
  return r;
}

/// Exponential of a series with no terms of degree <= 0.
template <class T>
BasicQSeries<T> exp_series(const BasicQSeries<T>& a) {
  if (!a.is_zero() && a.valuation() < 1) {
    throw SeriesDomainError("exp_series needs a series with vanishing terms in degrees <= 0");
  }
  const int t = std::max(a.trunc(), 0);
  // E' q = (q a') E  =>  E_n = (1/n) sum_{k=1}^{n} k a_k E_{n-k}
  std::map<int, T> e;
  e.emplace(0, T(1));
  for (int n = 1; n <= t; ++n) {
    T acc(0);
    for (auto it = a.terms().begin(); it != a.terms().end() && it->first <= n; ++it) {
      auto jt = e.find(n - it->first);
      if (jt != e.end()) acc += T(it->first) * it->second * jt->second;
    }
    if (acc != 0) e.emplace(n, acc / T(n));
  }
  BasicQSeries<T> r(0, t);
  for (auto& [d, c] : e) r.set(d, std::move(c));
  return r;
}

/// Non-negative integer power by repeated squaring.
template <class T>
BasicQSeries<T> pow(BasicQSeries<T> base, unsigned long e, int trunc) {
  BasicQSeries<T> acc = BasicQSeries<T>::one(trunc);
  base = base.truncated(trunc);
  while (e > 0) {
    if (e & 1UL) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

using ExponentMap = std::map<int, Integer>;

/// prod_{n >= 1} (1 - q^n)^{a_n}, known through q^trunc.
///
/// Each factor is expanded by the generalised binomial theorem; factors with
/// n > trunc are 1 to this precision and are skipped.
inline QSeries power_product(const ExponentMap& exponents, int trunc) {
  QSeries acc = QSeries::one(trunc);
  if (trunc < 0) return acc;
  for (const auto& [n, a] : exponents) {
    if (n < 1) throw std::invalid_argument("power_product exponents are indexed by n >= 1");
    if (n > trunc || a == 0) continue;
    QSeries factor(0, trunc);
    const long kmax = trunc / n;
    for (long k = 0; k <= kmax; ++k) {
      Integer b = binomial(a, k);
      if (k % 2 == 1) b = -b;
      factor.set(static_cast<int>(k * n), Rational(b));
    }
    acc *= factor;
  }
  return acc;
}

/// Raised by extract_product_exponents when an exponent would not be an integer.
class ProductFormError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Finds a_n with f = q^v prod_{n>=1} (1 - q^n)^{a_n}, v the valuation of f.
///
/// With log(f q^-v) = sum L_N q^N the exponents satisfy
/// N L_N = -sum_{n | N} n a_n, which is solved upward in N.
inline ExponentMap extract_product_exponents(const QSeries& f) {
  if (f.is_zero()) throw SeriesDomainError("extract_product_exponents: zero series");
  const int v = f.valuation();
  if (f.terms().begin()->second != 1) {
    throw SeriesDomainError("extract_product_exponents: leading coefficient must be 1");
  }
  for (const auto& [d, c] : f.terms()) {
    if (!is_integral(c)) {
      throw SeriesDomainError("extract_product_exponents: coefficient of q^" + std::to_string(d) +
                              " is not an integer");
    }
  }
  const QSeries g = f.shifted(-v);
  const QSeries lg = log_series(g);
  ExponentMap out;
  std::map<int, Rational> weighted;  // n * a_n
  for (int N = 1; N <= lg.trunc(); ++N) {
    Rational s = -Rational(N) * lg.coeff(N);
    for (const auto& [n, w] : weighted) {
      if (n >= N) break;
      if (N % n == 0) s -= w;
    }
    const Rational a = s / Rational(N);
    if (!is_integral(a)) {
      throw ProductFormError("not a product of the form q^v prod (1-q^n)^a_n: exponent at n=" +
                             std::to_string(N) + " is " + a.get_str());
    }
    if (s != 0) weighted.emplace(N, s);
    if (a != 0) out.emplace(N, a.get_num());
  }
  return out;
}

}  // namespace bkm

#endif  // BKM_QSERIES_HPP
