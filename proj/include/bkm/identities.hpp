#ifndef BKM_IDENTITIES_HPP
#define BKM_IDENTITIES_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "modforms.hpp"
#include "pqseries.hpp"

namespace bkm {

struct IdentityReport {
  std::string name;
  int p_trunc = 0;
  int q_trunc = 0;
  std::size_t lhs_terms = 0;
  std::size_t rhs_terms = 0;
  bool equal = false;
  std::optional<PQDiscrepancy> first_discrepancy;
  bool all_integral = true;
  std::vector<std::string> notes;
};

inline IdentityReport make_report(std::string name, int P, int Q) {
  IdentityReport r;
  r.name = std::move(name);
  r.p_trunc = P;
  r.q_trunc = Q;
  return r;
}

/// Adds `delta` to the exponent of (1 - p^m q^n); used for negative controls.
struct ExponentMutation {
  int m = 1;
  int n = 1;
  Integer delta = 1;
};

/// First coefficient of `s` that is not an integer, if any.
inline std::optional<PQDiscrepancy> first_non_integral(const PQSeries& s) {
  for (const auto& [m, row] : s.rows()) {
    for (const auto& [n, c] : row.terms()) {
      if (!is_integral(c)) return PQDiscrepancy{m, n, c, c};
    }
  }
  return std::nullopt;
}

/// Fills the comparison fields of `r`.
inline void compare_into(IdentityReport& r, const PQSeries& lhs, const PQSeries& rhs) {
  r.lhs_terms = lhs.term_count();
  r.rhs_terms = rhs.term_count();
  r.first_discrepancy = lhs.first_difference(rhs);
  r.equal = !r.first_discrepancy.has_value();
  for (const PQSeries* s : {&lhs, &rhs}) {
    if (auto bad = first_non_integral(*s)) {
      r.all_integral = false;
      r.notes.push_back("non-integral coefficient " + bad->lhs.get_str() + " at p^" + std::to_string(bad->p_deg) +
                        " q^" + std::to_string(bad->q_deg) + (s == &lhs ? " (lhs)" : " (rhs)"));
      break;
    }
  }
}

/// Largest index mn read by a product over identity_window(P, Q).
inline int product_degree_bound(int P, int Q) {
  int best = std::max(P, Q);
  for (int m = 1; m <= P + 1; ++m) best = std::max(best, m * (Q + P + 1 - m));
  return best;
}

inline PQExponentFn mutated(PQExponentFn base, const std::optional<ExponentMutation>& mut) {
  if (!mut) return base;
  return [base = std::move(base), mu = *mut](int m, int n) {
    Integer e = base(m, n);
    if (m == mu.m && n == mu.n) e += mu.delta;
    return e;
  };
}

inline const char* kFactorNote =
    "factors reduced with c(k) = 0 for k < -1: only (m, n) = (1, -1) has n < 0";

/// prod_{m>0, n} (1 - p^m q^n)^{c(mn)} = j(p) - j(q).
inline IdentityReport verify_mid(int P, int Q, const std::optional<ExponentMutation>& mut = std::nullopt) {
  if (P < 1 || Q < 1) throw std::invalid_argument("verify_mid needs P, Q >= 1");
  const ModformTable t(product_degree_bound(P, Q));
  const PQWindow w = identity_window(P, Q);
  const PQSeries lhs = pq_product(mutated([&t](int m, int n) { return t.c(m * n); }, mut), P, Q);
  const QSeries one = QSeries::one(std::max(P, Q));
  const PQSeries rhs = outer_product(t.j_series(), one, w) - outer_product(one, t.j_series(), w);
  IdentityReport r = make_report("mid", P, Q);
  compare_into(r, lhs, rhs);
  r.notes.push_back(kFactorNote);
  return r;
}

/// Multiplies every row by the q-series g, keeping each row's original q-window.
inline PQSeries multiply_rows(const PQSeries& s, const QSeries& g) {
  PQSeries out = s;
  for (const auto& [m, row] : s.rows()) {
    QSeries prod = row * g;
    if (prod.trunc() < row.trunc()) throw std::logic_error("multiply_rows: q-side factor too short");
    QSeries& dst = out.row(m);
    dst = QSeries(row.min_deg(), row.trunc());
    for (const auto& [n, c] : prod.terms()) {
      if (n > row.trunc()) break;
      dst.set(n, c);
    }
  }
  return out;
}

/// Full product side of the fake-monster identity:
/// prod_{m>0, n} (1 - p^m q^n)^{c'(mn)} prod_{n>0} (1 - q^n)^{24},
/// compared with (Delta(p)/p) (Delta(q)/q) (j(p) - j(q)).
inline IdentityReport verify_fmid(int P, int Q, const std::optional<ExponentMutation>& mut = std::nullopt) {
  if (P < 1 || Q < 1) throw std::invalid_argument("verify_fmid needs P, Q >= 1");
  const ModformTable t(product_degree_bound(P, Q));
  const PQWindow w = identity_window(P, Q);
  PQSeries lhs = pq_product(mutated([&t](int m, int n) { return t.c_prime(m * n); }, mut), P, Q);
  ExponentMap q_side;
  const int q_need = Q + P + 2;
  for (int n = 1; n <= q_need; ++n) q_side.emplace(n, t.c_prime(0));
  lhs = multiply_rows(lhs, power_product(q_side, q_need));

  const int need = std::max(P, Q) + 2;
  ExponentMap e24;
  for (int n = 1; n <= need; ++n) e24.emplace(n, 24);
  const QSeries d = power_product(e24, need);  // Delta / q
  const QSeries dj = d * j_minus_744(need);     // the constant 744 cancels in the difference
  const PQSeries rhs = outer_product(dj, d, w) - outer_product(d, dj, w);
  IdentityReport r = make_report("fmid", P, Q);
  compare_into(r, lhs, rhs);
  r.notes.push_back(kFactorNote);
  r.notes.push_back("q-side factors (1 - q^n)^24 included on the product side");
  return r;
}

inline const std::vector<Integer>& published_j_exponents() {
  static const std::vector<Integer> v{Integer(-744), Integer(80256), Integer(-12288744)};
  return v;
}

struct JProductReport {
  IdentityReport report;
  ExponentMap exponents;  // c0(n^2), n = 1..N
};

/// j = q^-1 prod_{n <= N} (1 - q^n)^{c0(n^2)} through q^{N-1}, with the first
/// three exponents pinned to their published values. Discrepancies are
/// reported at p-degree 0 and the q-degree of the coefficient (or, for a
/// pinned exponent, the index n).
inline JProductReport verify_j_product(int N, const std::optional<std::pair<int, Integer>>& exponent_shift = {}) {
  if (N < 1) throw std::invalid_argument("verify_j_product needs N >= 1");
  JProductReport out;
  IdentityReport& r = out.report;
  r.name = "j-product";
  r.p_trunc = 0;
  r.q_trunc = N - 1;
  out.exponents = c0_square_exponents(N);
  if (exponent_shift) out.exponents[exponent_shift->first] += exponent_shift->second;

  QSeries j = j_minus_744(N - 1);
  j.add_to(0, Rational(744));
  const QSeries prod = power_product(out.exponents, N).shifted(-1);
  r.lhs_terms = j.terms().size();
  r.rhs_terms = prod.terms().size();
  for (int d = -1; d <= N - 1; ++d) {
    if (j.coeff(d) != prod.coeff(d)) {
      r.first_discrepancy = PQDiscrepancy{0, d, j.coeff(d), prod.coeff(d)};
      break;
    }
  }
  if (!r.first_discrepancy) {
    const auto& pub = published_j_exponents();
    for (int n = 1; n <= std::min<int>(N, static_cast<int>(pub.size())); ++n) {
      auto it = out.exponents.find(n);
      const Integer got = it == out.exponents.end() ? Integer(0) : it->second;
      if (got != pub[static_cast<std::size_t>(n - 1)]) {
        r.first_discrepancy = PQDiscrepancy{0, n, Rational(pub[static_cast<std::size_t>(n - 1)]), Rational(got)};
        r.notes.push_back("exponent of (1 - q^" + std::to_string(n) + ") differs from the published value");
        break;
      }
    }
  }
  r.equal = !r.first_discrepancy.has_value();
  return out;
}

/// Dimension c(mn) of the (m, n) graded piece of the monster Lie algebra.
inline Integer fake_monster_grade_dimension(int m, int n) {
  if (m == 0 && n == 0) throw std::domain_error("grade (0, 0) is excluded");
  const long k = static_cast<long>(m) * n;
  if (k < -1) return 0;
  return ModformTable(static_cast<int>(std::max<long>(k, 1))).c(static_cast<int>(k));
}

}  // namespace bkm

#endif  // BKM_IDENTITIES_HPP
