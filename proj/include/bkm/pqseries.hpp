#ifndef BKM_PQSERIES_HPP
#define BKM_PQSERIES_HPP

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "qseries.hpp"

namespace bkm {

/// Per-p-degree q-range: row m holds q-degrees in [q_min(m), q_max(m)].
struct PQWindow {
  int p_min = 0;
  int p_trunc = -1;
  std::function<int(int)> q_min;
  std::function<int(int)> q_max;
};

/// The window used by the two-variable denominator identities: p-degrees
/// [-1, P], and q-degrees [-m-1, Q] in row m. Only the factor (1 - p q^-1)
/// lowers q-degree, by one per unit of p-degree, so this window is closed
/// under the truncated products.
inline PQWindow identity_window(int P, int Q) {
  return PQWindow{-1, P, [](int m) { return -m - 1; }, [Q](int) { return Q; }};
}

/// Coefficient position and values at the first place two expansions differ.
struct PQDiscrepancy {
  int p_deg = 0;
  int q_deg = 0;
  Rational lhs;
  Rational rhs;
};

/// Truncated series in p whose coefficients are truncated Laurent series in q.
/// Every p-degree in [p_min, p_trunc] has a row, possibly zero; each row
/// carries its own q-window.
class PQSeries {
public:
  PQSeries() = default;

  explicit PQSeries(const PQWindow& w) : p_min_(w.p_min), p_trunc_(w.p_trunc) {
    for (int m = p_min_; m <= p_trunc_; ++m) rows_.emplace(m, QSeries(w.q_min(m), w.q_max(m)));
  }

  int p_min() const { return p_min_; }
  int p_trunc() const { return p_trunc_; }
  const std::map<int, QSeries>& rows() const { return rows_; }

  const QSeries& row(int m) const {
    auto it = rows_.find(m);
    if (it == rows_.end()) {
      throw std::out_of_range("p-degree " + std::to_string(m) + " outside [" + std::to_string(p_min_) +
                              ", " + std::to_string(p_trunc_) + "]");
    }
    return it->second;
  }
  QSeries& row(int m) { return const_cast<QSeries&>(std::as_const(*this).row(m)); }

  Rational coeff(int m, int n) const {
    const QSeries& r = row(m);
    return n < r.min_deg() ? Rational(0) : r.coeff(n);
  }

  void add_to(int m, int n, const Rational& v) { row(m).add_to(n, v); }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& [m, r] : rows_) n += r.terms().size();
    return n;
  }

  /// Multiplication by p^dp q^dq.
  PQSeries shifted(int dp, int dq) const {
    PQSeries out;
    out.p_min_ = p_min_ + dp;
    out.p_trunc_ = p_trunc_ + dp;
    for (const auto& [m, r] : rows_) out.rows_.emplace(m + dp, r.shifted(dq));
    return out;
  }

  /// Keeps only the part inside `w`; rows of `w` this series does not cover are an error.
  PQSeries restricted(const PQWindow& w) const {
    PQSeries out(w);
    for (auto& [m, r] : out.rows_) {
      const QSeries& src = row(m);
      if (src.trunc() < r.trunc()) {
        throw std::logic_error("row p^" + std::to_string(m) + " known only through q^" +
                               std::to_string(src.trunc()));
      }
      for (const auto& [n, c] : src.terms()) {
        if (n > r.trunc()) break;
        if (n < r.min_deg()) {
          throw std::logic_error("row p^" + std::to_string(m) + " has a term q^" + std::to_string(n) +
                                 " below the window");
        }
        r.set(n, c);
      }
    }
    return out;
  }

  PQSeries operator-() const {
    PQSeries out = *this;
    for (auto& [m, r] : out.rows_) r = -r;
    return out;
  }

  PQSeries& operator+=(const PQSeries& o) {
    const int hi = std::min(p_trunc_, o.p_trunc_);
    std::map<int, QSeries> merged;
    for (int m = std::min(p_min_, o.p_min_); m <= hi; ++m) {
      const bool mine = m >= p_min_;
      const bool theirs = m >= o.p_min_;
      if (mine && theirs) {
        merged.emplace(m, row(m) + o.row(m));
      } else if (mine) {
        merged.emplace(m, row(m));
      } else {
        merged.emplace(m, o.row(m));
      }
    }
    rows_ = std::move(merged);
    p_min_ = std::min(p_min_, o.p_min_);
    p_trunc_ = hi;
    return *this;
  }
  PQSeries& operator-=(const PQSeries& o) { return *this += -o; }
  friend PQSeries operator+(PQSeries a, const PQSeries& b) { return a += b; }
  friend PQSeries operator-(PQSeries a, const PQSeries& b) { return a -= b; }

  PQSeries& operator*=(const Rational& s) {
    for (auto& [m, r] : rows_) r *= s;
    return *this;
  }

  /// Product; the p-truncation is min(P_a + p_min_b, P_b + p_min_a) and each
  /// row inherits the q-precision of the row products that feed it.
  friend PQSeries operator*(const PQSeries& a, const PQSeries& b) {
    PQSeries out;
    out.p_min_ = a.p_min_ + b.p_min_;
    out.p_trunc_ = std::min(a.p_trunc_ + b.p_min_, b.p_trunc_ + a.p_min_);
    for (int k = out.p_min_; k <= out.p_trunc_; ++k) {
      std::optional<QSeries> acc;
      for (const auto& [i, ra] : a.rows_) {
        const int j = k - i;
        if (j < b.p_min_) break;
        if (j > b.p_trunc_) continue;
        QSeries term = ra * b.row(j);
        if (acc) {
          *acc += term;
        } else {
          acc = std::move(term);
        }
      }
      out.rows_.emplace(k, std::move(*acc));
    }
    return out;
  }

  /// Exact equality on the window both series know.
  std::optional<PQDiscrepancy> first_difference(const PQSeries& o) const {
    const int lo = std::max(p_min_, o.p_min_);
    const int hi = std::min(p_trunc_, o.p_trunc_);
    for (int m = lo; m <= hi; ++m) {
      const QSeries& a = row(m);
      const QSeries& b = o.row(m);
      const int t = std::min(a.trunc(), b.trunc());
      const int start = std::min(a.valuation(), b.valuation());
      for (int n = start; n <= t; ++n) {
        Rational x = n < a.min_deg() ? Rational(0) : a.coeff(n);
        Rational y = n < b.min_deg() ? Rational(0) : b.coeff(n);
        if (x != y) return PQDiscrepancy{m, n, std::move(x), std::move(y)};
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const PQSeries& a, const PQSeries& b) {
    return a.p_min_ == b.p_min_ && a.p_trunc_ == b.p_trunc_ && a.rows_ == b.rows_;
  }

private:
  int p_min_ = 0;
  int p_trunc_ = -1;
  std::map<int, QSeries> rows_;
};

/// Outer product f(p) g(q) of two univariate series, restricted to `w`.
/// Both inputs must be known through the largest degree `w` asks for.
inline PQSeries outer_product(const QSeries& in_p, const QSeries& in_q, const PQWindow& w) {
  PQSeries out(w);
  for (int m = w.p_min; m <= w.p_trunc; ++m) {
    if (m > in_p.trunc()) throw std::logic_error("p-side series too short for the window");
    const Rational a = m < in_p.min_deg() ? Rational(0) : in_p.coeff(m);
    if (a == 0) continue;
    QSeries& r = out.row(m);
    if (r.trunc() > in_q.trunc()) throw std::logic_error("q-side series too short for the window");
    for (const auto& [n, c] : in_q.terms()) {
      if (n > r.trunc()) break;
      if (n < r.min_deg()) throw std::logic_error("q-side term below the window");
      r.set(n, a * c);
    }
  }
  return out;
}

/// Exponential of X = sum_{k >= 1} X_k p^k: F_k = (1/k) sum_{j=1}^{k} j X_j F_{k-j}.
/// Row k of the result is truncated to row k of `w`, which must start at p-degree 0.
inline PQSeries pq_exp(const PQSeries& x, const PQWindow& w) {
  if (w.p_min != 0) throw std::invalid_argument("pq_exp window must start at p^0");
  for (const auto& [k, r] : x.rows()) {
    if (k <= 0 && !r.is_zero()) throw SeriesDomainError("pq_exp needs an exponent with no p^0 part");
  }
  PQSeries f(w);
  f.row(0) = QSeries::one(w.q_max(0));
  for (int k = 1; k <= w.p_trunc; ++k) {
    QSeries acc(w.q_min(k), w.q_max(k));
    for (int j = 1; j <= k && j <= x.p_trunc(); ++j) {
      const QSeries& xj = x.row(j);
      if (xj.is_zero()) continue;
      const QSeries term = xj * f.row(k - j);
      if (term.trunc() < acc.trunc()) {
        throw std::logic_error("pq_exp: insufficient q-precision feeding row " + std::to_string(k));
      }
      for (const auto& [n, c] : term.terms()) {
        if (n > acc.trunc()) break;
        acc.add_to(n, Rational(j) * c);
      }
    }
    acc *= Rational(1, k);
    f.row(k) = acc;
  }
  return f;
}

/// Exponent assignment e(m, n) for the factor (1 - p^m q^n).
using PQExponentFn = std::function<Integer(int, int)>;

/// Window of the undivided product prod (1 - p^m q^n)^e used while
/// expanding toward identity_window(P, Q): row k (k = m + 1) keeps q-degrees
/// through Q + (P + 1 - k), because each of the remaining P + 1 - k units of
/// p-degree can still bring a factor p q^-1.
inline PQWindow product_work_window(int P, int Q) {
  return PQWindow{0, P + 1, [](int k) { return -k; }, [P, Q](int k) { return Q + (P + 1 - k); }};
}

/// p^-1 (1 - p q^-1)^{e(1,-1)} prod_{m>=1} (1 - p^m)^{e(m,0)} prod_{m,n>=1} (1 - p^m q^n)^{e(m,n)},
/// on identity_window(P, Q). Each factor is expanded binomially.
inline PQSeries pq_product(const PQExponentFn& e, int P, int Q) {
  const PQWindow work = product_work_window(P, Q);
  PQSeries acc(work);
  acc.row(0).set(0, Rational(1));

  auto apply = [&](int m, int n) {
    const Integer ex = e(m, n);
    if (ex == 0) return;
    PQSeries next(work);
    const int jmax = (P + 1) / m;
    for (int j = 0; j <= jmax; ++j) {
      Integer b = binomial(ex, j);
      if (b == 0) continue;
      if (j % 2 == 1) b = -b;
      const Rational coef(b);
      for (int k = m * j; k <= P + 1; ++k) {
        const QSeries& src = acc.row(k - m * j);
        QSeries& dst = next.row(k);
        for (const auto& [d, c] : src.terms()) {
          const int nd = d + n * j;
          if (nd > dst.trunc()) break;
          dst.add_to(nd, coef * c);
        }
      }
    }
    acc = std::move(next);
  };

  apply(1, -1);
  for (int m = 1; m <= P + 1; ++m) {
    apply(m, 0);
    for (int n = 1; n <= work.q_max(m); ++n) apply(m, n);
  }
  return acc.shifted(-1, 0).restricted(identity_window(P, Q));
}

}  // namespace bkm

#endif  // BKM_PQSERIES_HPP
