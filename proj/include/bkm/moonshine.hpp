#ifndef BKM_MOONSHINE_HPP
#define BKM_MOONSHINE_HPP

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "identities.hpp"
#include "modforms.hpp"
#include "pqseries.hpp"

namespace bkm {

class InsufficientDataError : public std::runtime_error {
public:
  InsufficientDataError(int power, int degree)
      : std::runtime_error("insufficient data: series for power N=" + std::to_string(power) +
                           (degree == INT_MIN ? std::string(" is missing")
                                              : " is not known through q^" + std::to_string(degree))),
        power_(power),
        degree_(degree) {}
  int power() const { return power_; }
  int degree() const { return degree_; }

private:
  int power_;
  int degree_;
};

/// Trace series T_{g^N}(q) = sum_k Tr(g^N | V_k) q^k for the powers of one element.
struct ThompsonData {
  std::string label;
  std::map<int, QSeries> power_series;
  int max_power = 0;
  /// Every power g^N acts like g itself (the identity class); only power 1 is stored.
  bool identity_powers = false;

  const QSeries& series(int N) const {
    if (identity_powers) N = 1;
    auto it = power_series.find(N);
    if (it == power_series.end()) throw InsufficientDataError(N, INT_MIN);
    return it->second;
  }
};

/// Class 1A: every power has trace series j - 744.
inline ThompsonData identity_element_data(int trunc) {
  if (trunc < 1) throw std::invalid_argument("identity_element_data needs trunc >= 1");
  ThompsonData d;
  d.label = "1A";
  d.power_series.emplace(1, j_minus_744(trunc));
  d.max_power = INT_MAX;
  d.identity_powers = true;
  return d;
}

/// Highest q-degree of T_{g^N} read by the twisted product on identity_window(P, Q), or -2 if none.
inline int required_degree(int N, int P, int Q) {
  int best = -2;
  for (int m = 1; m * N <= P + 1; ++m) {
    const int nmax = (Q + P + 1 - m * N) / N;
    best = std::max(best, m * nmax);
  }
  return best;
}

/// Trace of g^N on V_k, positionally from the N-th series.
inline Rational trace_at(const ThompsonData& data, int N, int k) {
  if (k < -1) return 0;
  const QSeries& s = data.series(N);
  if (k > s.trunc()) throw InsufficientDataError(N, k);
  return k < s.min_deg() ? Rational(0) : s.coeff(k);
}

/// X = -sum_{N>0} sum_{m>0, n} Tr(g^N | V_{mn}) p^{mN} q^{nN} / N on product_work_window(P, Q).
inline PQSeries twisted_exponent(const ThompsonData& data, int P, int Q) {
  const PQWindow w = product_work_window(P, Q);
  PQSeries x(w);
  for (int N = 1; N <= P + 1; ++N) {
    for (int m = 1; m * N <= P + 1; ++m) {
      const int k = m * N;
      for (int n = -1; n * N <= w.q_max(k); ++n) {
        const Rational tr = trace_at(data, N, m * n);
        if (tr != 0) x.add_to(k, n * N, -tr / N);
      }
    }
  }
  return x;
}

/// exp(X) before the p^-1 shift, on product_work_window(P, Q).
inline PQSeries twisted_exp(const ThompsonData& data, int P, int Q) {
  return pq_exp(twisted_exponent(data, P, Q), product_work_window(P, Q));
}

/// p^-1 exp(-sum_N sum_{m>0, n} Tr(g^N | V_{mn}) p^{mN} q^{nN} / N) on identity_window(P, Q).
inline PQSeries twisted_lhs(const ThompsonData& data, int P, int Q) {
  if (P < 1 || Q < 1) throw std::invalid_argument("twisted_lhs needs P, Q >= 1");
  return twisted_exp(data, P, Q).shifted(-1, 0).restricted(identity_window(P, Q));
}

/// T_g(p) - T_g(q) on identity_window(P, Q).
inline PQSeries twisted_rhs(const ThompsonData& data, int P, int Q) {
  if (P < 1 || Q < 1) throw std::invalid_argument("twisted_rhs needs P, Q >= 1");
  const QSeries& t = data.series(1);
  if (t.trunc() < std::max(P, Q)) throw InsufficientDataError(1, std::max(P, Q));
  const PQWindow w = identity_window(P, Q);
  const QSeries one = QSeries::one(std::max(P, Q));
  return outer_product(t, one, w) - outer_product(one, t, w);
}

inline IdentityReport verify_twisted(const ThompsonData& data, int P, int Q) {
  const PQSeries lhs = twisted_lhs(data, P, Q);
  const PQSeries rhs = twisted_rhs(data, P, Q);
  IdentityReport r = make_report("twisted:" + data.label, P, Q);
  compare_into(r, lhs, rhs);
  return r;
}

class InconsistentSystemError : public std::runtime_error {
public:
  InconsistentSystemError(int p_deg, int q_deg)
      : std::runtime_error("inconsistent coefficient equations at p^" + std::to_string(p_deg) + " q^" +
                           std::to_string(q_deg)),
        p_deg_(p_deg),
        q_deg_(q_deg) {}
  int p_deg() const { return p_deg_; }
  int q_deg() const { return q_deg_; }

private:
  int p_deg_;
  int q_deg_;
};

enum class EquationOrder { p_major, q_major };

struct SolveOptions {
  int p_trunc = 0;  // 0: use the target degree
  int q_trunc = 0;
  int max_iterations = 50;
  EquationOrder order = EquationOrder::p_major;
};

struct SolveResult {
  /// T_g through the last degree before the first undetermined coefficient.
  QSeries series;
  /// Every coefficient above known_up_to (through target) that was determined.
  std::map<int, Rational> determined;
  std::vector<int> underdetermined;
  int iterations = 0;
};

namespace detail {

struct Occurrence {
  int k;  // unknown index
  int p;  // mN
  int q;  // nN
  int N;
};

/// Remainder (rp, rq) of a bidegree can be filled by other factors of the product.
inline bool fillable(int rp, int rq) { return rp == 0 ? rq == 0 : rq >= -rp; }

/// Sparse row of an incrementally reduced echelon system: sum coef_k x_k = rhs.
struct Row {
  std::map<int, Rational> coef;
  Rational rhs;
};

class EchelonSystem {
public:
  /// Adds an equation; returns false if it contradicts the system.
  bool add(Row r) {
    for (const auto& [piv, prow] : rows_) {
      auto it = r.coef.find(piv);
      if (it == r.coef.end()) continue;
      const Rational f = it->second;
      axpy(r, prow, -f);
    }
    if (r.coef.empty()) return r.rhs == 0;
    const int piv = r.coef.rbegin()->first;  // newest unknown
    const Rational inv = 1 / r.coef.rbegin()->second;
    for (auto& [k, c] : r.coef) c *= inv;
    r.rhs *= inv;
    for (auto& [p2, other] : rows_) {
      auto it = other.coef.find(piv);
      if (it == other.coef.end()) continue;
      const Rational f = it->second;
      axpy(other, r, -f);
    }
    rows_.emplace(piv, std::move(r));
    return true;
  }

  /// Unknowns whose value is fixed by the system.
  std::map<int, Rational> determined() const {
    std::map<int, Rational> out;
    for (const auto& [piv, r] : rows_) {
      if (r.coef.size() == 1) out.emplace(piv, r.rhs);
    }
    return out;
  }

private:
  static void axpy(Row& dst, const Row& src, const Rational& f) {
    for (const auto& [k, c] : src.coef) {
      Rational& v = dst.coef[k];
      v += f * c;
      if (v == 0) dst.coef.erase(k);
    }
    dst.rhs += f * src.rhs;
  }

  std::map<int, Row> rows_;
};

}  // namespace detail

/// Recovers coefficients of T_g above known_up_to from the twisted relation.
///
/// Every coefficient the relation reads beyond known_up_to is an unknown.
/// Each round evaluates the product with the unknowns set to zero, keeps the
/// bidegree equations that are affine in the unknowns (no product of two
/// unknown occurrences fits in the bidegree), reads their coefficients as
/// derivatives of exp(X), and reduces them exactly. Values fixed by the
/// reduced system become known and the next round starts, until nothing new
/// is determined or the iteration cap is reached. For the identity class all
/// powers share the unknowns; otherwise powers N >= 2 must be fully known.
inline SolveResult solve_coefficients(const ThompsonData& data, int known_up_to, int target_up_to,
                                      const SolveOptions& opt = {}) {
  if (known_up_to < -1) throw std::invalid_argument("solve_coefficients needs known_up_to >= -1");
  if (target_up_to < known_up_to) throw std::invalid_argument("target_up_to must be >= known_up_to");
  const QSeries& given = data.series(1);
  if (given.trunc() < known_up_to) throw InsufficientDataError(1, known_up_to);
  SolveResult res;
  if (target_up_to == known_up_to) {
    res.series = given.truncated(known_up_to);
    return res;
  }
  const int P = opt.p_trunc > 0 ? opt.p_trunc : std::max(target_up_to, 1);
  const int Q = opt.q_trunc > 0 ? opt.q_trunc : std::max(target_up_to, 1);
  const int maxdeg = std::max(required_degree(1, P, Q), std::max(P, Q));

  std::map<int, Rational> values;
  for (int k = given.min_deg(); k <= known_up_to; ++k) values[k] = given.coeff(k);
  std::set<int> unknown;
  for (int k = known_up_to + 1; k <= maxdeg; ++k) unknown.insert(k);

  const PQWindow eq_window = identity_window(P, Q);
  std::vector<std::pair<int, int>> equations;
  for (int a = eq_window.p_min; a <= P; ++a) {
    for (int b = eq_window.q_min(a); b <= Q; ++b) equations.emplace_back(a, b);
  }
  if (opt.order == EquationOrder::q_major) {
    std::stable_sort(equations.begin(), equations.end(),
                     [](const auto& x, const auto& y) { return x.second != y.second ? x.second < y.second : x.first < y.first; });
  }

  for (res.iterations = 0; res.iterations < opt.max_iterations && !unknown.empty();) {
    ++res.iterations;
    ThompsonData work = data;
    QSeries s(std::min(-1, given.min_deg()), maxdeg);
    for (const auto& [k, v] : values) s.set(k, v);
    work.power_series[1] = s;

    std::vector<detail::Occurrence> occ;
    for (int k : unknown) {
      for (int m = 1; m <= k && m <= P + 1; ++m) {
        if (k % m != 0) continue;
        for (int N = 1; m * N <= P + 1; ++N) {
          occ.push_back({k, m * N, (k / m) * N, N});
          if (!data.identity_powers) break;
        }
      }
    }

    const PQSeries f = twisted_exp(work, P, Q);
    const PQSeries rhs = twisted_rhs(work, P, Q);
    auto f_at = [&f](int r, int qd) { return (r < 0 || r > f.p_trunc()) ? Rational(0) : f.coeff(r, qd); };

    detail::EchelonSystem sys;
    for (const auto& [a, b] : equations) {
      const int A = a + 1;
      bool linear = true;
      for (std::size_t i = 0; i < occ.size() && linear; ++i) {
        if (occ[i].p > A) continue;
        for (std::size_t j = i; j < occ.size(); ++j) {
          const int rp = A - occ[i].p - occ[j].p;
          if (rp >= 0 && detail::fillable(rp, b - occ[i].q - occ[j].q)) {
            linear = false;
            break;
          }
        }
      }
      if (!linear) continue;
      detail::Row row;
      for (const auto& o : occ) {
        if (o.p > A || !detail::fillable(A - o.p, b - o.q)) continue;
        const Rational d = -f_at(A - o.p, b - o.q) / o.N;
        if (d == 0) continue;
        Rational& c = row.coef[o.k];
        c += d;
        if (c == 0) row.coef.erase(o.k);
      }
      auto bump = [&row](int k, const Rational& d) {
        Rational& c = row.coef[k];
        c += d;
        if (c == 0) row.coef.erase(k);
      };
      if (b == 0 && a != 0 && unknown.count(a)) bump(a, Rational(-1));
      if (a == 0 && b != 0 && unknown.count(b)) bump(b, Rational(1));
      row.rhs = -(f_at(A, b) - rhs.coeff(a, b));
      if (!sys.add(std::move(row))) throw InconsistentSystemError(a, b);
    }

    const auto fixed = sys.determined();
    if (fixed.empty()) break;
    for (const auto& [k, v] : fixed) {
      values[k] = v;
      unknown.erase(k);
    }
  }

  int last = known_up_to;
  bool contiguous = true;
  for (int k = known_up_to + 1; k <= target_up_to; ++k) {
    auto it = values.find(k);
    if (it == values.end()) {
      res.underdetermined.push_back(k);
      contiguous = false;
      continue;
    }
    res.determined.emplace(k, it->second);
    if (contiguous) last = k;
  }
  res.series = QSeries(std::min(-1, given.min_deg()), last);
  for (const auto& [k, v] : values) {
    if (k <= last) res.series.set(k, v);
  }
  return res;
}

}  // namespace bkm

#endif  // BKM_MOONSHINE_HPP
