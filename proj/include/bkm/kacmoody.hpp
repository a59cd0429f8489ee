#ifndef BKM_KACMOODY_HPP
#define BKM_KACMOODY_HPP

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "qseries.hpp"
#include "rational.hpp"

// Conventions follow the lowest-weight form of the character formula:
// rho . alpha_i = -alpha_i^2 / 2 and the denominator is prod (1 - e^{+alpha}).
// Relative to the usual highest-weight textbook convention, rho and every
// weight change sign; the positive roots are the same.

namespace bkm::km {

class GcmError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class NotImplementedError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class KmDomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

enum class GcmKind { classic, generalized };

/// Symmetric (generalised) Cartan matrix over the rationals.
class Gcm {
public:
  Gcm(Matrix a, GcmKind kind) : a_(std::move(a)), kind_(kind) {
    const std::size_t n = a_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (a_[i].size() != n) throw GcmError("Cartan matrix is not square (row " + std::to_string(i) + ")");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (a_[i][j] != a_[j][i]) {
          throw GcmError("Cartan matrix is not symmetric: a[" + std::to_string(i) + "][" + std::to_string(j) +
                         "] = " + a_[i][j].get_str() + " but a[" + std::to_string(j) + "][" + std::to_string(i) +
                         "] = " + a_[j][i].get_str());
        }
      }
    }
  }

  static Gcm from_ints(const std::vector<std::vector<long>>& rows, GcmKind kind = GcmKind::classic) {
    Matrix m;
    for (const auto& r : rows) {
      Vec v;
      for (long x : r) v.emplace_back(x);
      m.push_back(std::move(v));
    }
    return Gcm(std::move(m), kind);
  }

  const Matrix& matrix() const { return a_; }
  GcmKind kind() const { return kind_; }
  std::size_t rank() const { return a_.size(); }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i][j]; }

  /// (x, y) for x, y in simple-root coordinates.
  Rational form(const Vec& x, const Vec& y) const { return bilinear(a_, x, y); }

  bool is_real(std::size_t i) const { return a_[i][i] > 0; }

private:
  Matrix a_;
  GcmKind kind_;
};

struct ValidationReport {
  bool valid_classic = true;
  bool valid_generalized = true;
  std::vector<std::string> failures;  // for the matrix's own kind
  /// Pairs i < j with a_ij = 0, on which [e_i, e_j] = [f_i, f_j] = 0 is imposed.
  std::vector<std::pair<std::size_t, std::size_t>> commuting_pairs;

  bool valid(GcmKind kind) const { return kind == GcmKind::classic ? valid_classic : valid_generalized; }
};

/// Checks the Kac-Moody conditions (positive diagonal, non-positive
/// off-diagonal, integral 2a_ij/a_ii) and their generalised relaxation.
inline ValidationReport validate(const Gcm& g) {
  ValidationReport r;
  const std::size_t n = g.rank();
  auto fail = [&](GcmKind for_kind, const std::string& what) {
    if (for_kind == GcmKind::classic) {
      r.valid_classic = false;
    } else {
      r.valid_generalized = false;
    }
    if (for_kind == g.kind()) r.failures.push_back(what);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::string ii = "a[" + std::to_string(i) + "][" + std::to_string(i) + "]";
    if (!(g(i, i) > 0)) fail(GcmKind::classic, "km1: " + ii + " = " + g(i, i).get_str() + " is not positive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const std::string ij = "a[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (g(i, j) > 0) {
        fail(GcmKind::classic, "km3: " + ij + " is positive");
        fail(GcmKind::generalized, "off-diagonal " + ij + " is positive");
      }
      if (g(i, i) > 0 && !is_integral(2 * g(i, j) / g(i, i))) {
        fail(GcmKind::classic, "km4: 2" + ij + "/" + ii + " is not an integer");
        fail(GcmKind::generalized, "2" + ij + "/" + ii + " is not an integer");
      }
      if (i < j && g(i, j) == 0) r.commuting_pairs.emplace_back(i, j);
    }
  }
  return r;
}

enum class TypeClass { finite, affine, indefinite };

inline const char* to_string(TypeClass t) {
  switch (t) {
    case TypeClass::finite: return "finite";
    case TypeClass::affine: return "affine";
    default: return "indefinite";
  }
}

/// Positive definite -> finite, positive semidefinite and singular -> affine,
/// otherwise indefinite. Exact symmetric elimination with positive pivots.
inline TypeClass classify(const Gcm& g) {
  Matrix a = g.matrix();
  std::vector<std::size_t> active(g.rank());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  while (!active.empty()) {
    auto piv = std::find_if(active.begin(), active.end(), [&](std::size_t i) { return a[i][i] > 0; });
    if (piv == active.end()) {
      for (std::size_t i : active) {
        if (a[i][i] < 0) return TypeClass::indefinite;
        for (std::size_t j : active) {
          if (a[i][j] != 0) return TypeClass::indefinite;
        }
      }
      return TypeClass::affine;
    }
    const std::size_t p = *piv;
    active.erase(piv);
    for (std::size_t i : active) {
      for (std::size_t j : active) a[i][j] -= a[i][p] * a[p][j] / a[p][p];
    }
  }
  return TypeClass::finite;
}

/// Sum of coordinates.
inline Rational height(const Vec& v) {
  Rational h = 0;
  for (const auto& x : v) h += x;
  return h;
}

inline Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, Rational(0));
  v[i] = 1;
  return v;
}

/// Working space for Weyl-group computations: the simple-root span, extended
/// by one null-dual vector d when the form is degenerate and the Weyl-vector
/// equations have no solution in the span (the affine case).
struct WeylSetup {
  Matrix gram;
  std::size_t rank = 0;  // simple roots occupy the first `rank` coordinates
  Vec rho;
  std::vector<std::size_t> real;

  std::size_t dim() const { return gram.size(); }

  Vec simple_root(std::size_t i) const { return unit_vector(dim(), i); }

  Vec embed(const Vec& root_coords) const {
    Vec v = root_coords;
    v.resize(dim(), Rational(0));
    return v;
  }

  /// Root-span part; throws if the extension coordinate is nonzero.
  Vec project(const Vec& v) const {
    for (std::size_t i = rank; i < v.size(); ++i) {
      if (v[i] != 0) throw std::logic_error("vector leaves the root lattice");
    }
    return Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(rank));
  }

  Vec reflect(std::size_t i, Vec x) const {
    Rational pair = 0;
    for (std::size_t j = 0; j < x.size(); ++j) pair += x[j] * gram[j][i];
    x[i] -= 2 * pair / gram[i][i];
    return x;
  }

  Matrix reflection_matrix(std::size_t i) const {
    Matrix s = identity_matrix(dim());
    for (std::size_t j = 0; j < dim(); ++j) s[i][j] -= 2 * gram[j][i] / gram[i][i];
    return s;
  }
};

class WeylVectorError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline WeylSetup make_weyl_setup(const Gcm& g) {
  WeylSetup s;
  s.rank = g.rank();
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (g.is_real(i)) s.real.push_back(i);
  }
  Vec b(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) b[i] = -g(i, i) / 2;
  if (auto x = solve(g.matrix(), b)) {
    s.gram = g.matrix();
    s.rho = std::move(*x);
    return s;
  }
  if (g.rank() - matrix_rank(g.matrix()) == 1) {
    for (std::size_t anchor = 0; anchor < g.rank(); ++anchor) {
      Matrix ext = g.matrix();
      for (std::size_t i = 0; i < g.rank(); ++i) ext[i].push_back(Rational(i == anchor ? 1 : 0));
      ext.push_back(unit_vector(g.rank() + 1, anchor));
      if (determinant(ext) == 0) continue;
      Vec bb = b;
      bb.push_back(0);  // normalisation (rho, d) = 0
      s.gram = std::move(ext);
      s.rho = *solve(s.gram, bb);
      return s;
    }
  }
  throw WeylVectorError("Weyl vector equations are singular; needs affine convention");
}

/// rho with (rho, alpha_i) = -(alpha_i, alpha_i)/2, in working-space coordinates.
inline Vec weyl_vector(const Gcm& g) { return make_weyl_setup(g).rho; }

struct WeylElement {
  std::vector<std::size_t> word;  // leftmost letter applied last
  Matrix action;
  int det = 1;

  Vec apply(const Vec& x) const { return mat_vec(action, x); }
};

/// All elements of length <= max_len, generated breadth-first by left
/// multiplication with simple reflections and deduplicated by action matrix.
/// BFS depth is the reduced length, so det = (-1)^depth.
inline std::vector<WeylElement> weyl_enumerate(const WeylSetup& s, int max_len) {
  std::vector<WeylElement> out;
  std::set<Matrix> seen;
  std::vector<Matrix> gens;
  for (std::size_t i : s.real) gens.push_back(s.reflection_matrix(i));
  WeylElement id{{}, identity_matrix(s.dim()), 1};
  seen.insert(id.action);
  out.push_back(id);
  std::size_t level_begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t e = level_begin; e < level_end; ++e) {
      for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        Matrix m = mat_mul(gens[gi], out[e].action);
        if (!seen.insert(m).second) continue;
        std::vector<std::size_t> word{s.real[gi]};
        word.insert(word.end(), out[e].word.begin(), out[e].word.end());
        out.push_back(WeylElement{std::move(word), std::move(m), (len % 2 == 0) ? 1 : -1});
      }
    }
    if (out.size() == level_end) break;
    level_begin = level_end;
  }
  return out;
}

inline std::vector<WeylElement> weyl_enumerate(const Gcm& g, int max_len) {
  return weyl_enumerate(make_weyl_setup(g), max_len);
}

/// Finite formal sum of e^v over rational coordinate vectors.
class GroupRingElement {
public:
  using Terms = std::map<Vec, Rational>;

  GroupRingElement() = default;

  static GroupRingElement monomial(Vec v, Rational c = 1) {
    GroupRingElement e;
    e.add(v, c);
    return e;
  }
  static GroupRingElement one(std::size_t dim) { return monomial(Vec(dim, Rational(0))); }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Rational coefficient(const Vec& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Vec& v, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GroupRingElement& operator+=(const GroupRingElement& o) {
    for (const auto& [v, c] : o.terms_) add(v, c);
    return *this;
  }
  GroupRingElement& operator-=(const GroupRingElement& o) {
    for (const auto& [v, c] : o.terms_) add(v, -c);
    return *this;
  }
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }

  friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
    return multiply(a, b, std::nullopt);
  }

  /// Product keeping only exponents of height <= cutoff.
  static GroupRingElement multiply(const GroupRingElement& a, const GroupRingElement& b,
                                   const std::optional<Rational>& cutoff) {
    GroupRingElement r;
    for (const auto& [u, cu] : a.terms_) {
      for (const auto& [v, cv] : b.terms_) {
        Vec w(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
        if (cutoff && height(w) > *cutoff) continue;
        r.add(w, cu * cv);
      }
    }
    return r;
  }

  GroupRingElement truncated(const Rational& cutoff) const {
    GroupRingElement r;
    for (const auto& [v, c] : terms_) {
      if (height(v) <= cutoff) r.terms_.emplace(v, c);
    }
    return r;
  }

  Rational coefficient_sum() const {
    Rational s = 0;
    for (const auto& [v, c] : terms_) s += c;
    return s;
  }

  friend bool operator==(const GroupRingElement&, const GroupRingElement&) = default;

private:
  Terms terms_;
};

struct GroupRingDiscrepancy {
  Vec exponent;
  Rational lhs;
  Rational rhs;
};

/// First exponent, ordered by height then lexicographically, where a and b differ.
inline std::optional<GroupRingDiscrepancy> first_difference(const GroupRingElement& a,
                                                            const GroupRingElement& b) {
  std::optional<GroupRingDiscrepancy> best;
  auto consider = [&](const Vec& v) {
    const Rational x = a.coefficient(v);
    const Rational y = b.coefficient(v);
    if (x == y) return;
    if (!best || height(v) < height(best->exponent) ||
        (height(v) == height(best->exponent) && v < best->exponent)) {
      best = GroupRingDiscrepancy{v, x, y};
    }
  };
  for (const auto& [v, c] : a.terms()) consider(v);
  for (const auto& [v, c] : b.terms()) consider(v);
  return best;
}

/// Substitutes e^{alpha_i} -> q^{weights_i}; all resulting degrees must be integers.
inline QSeries specialize(const GroupRingElement& e, const std::vector<long>& weights, int trunc) {
  QSeries s(0, trunc);
  for (const auto& [v, c] : e.terms()) {
    Rational d = 0;
    for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * weights.at(i);
    const long deg = to_long(to_integer(d, "specialised degree"), "specialised degree");
    if (deg <= trunc) s.add_to(static_cast<int>(deg), c);
  }
  return s;
}

/// (1 - e^alpha)^m expanded binomially, keeping heights <= cutoff. Needs height(alpha) > 0.
inline GroupRingElement one_minus_power(const Vec& alpha, const Integer& m, const Rational& cutoff) {
  const Rational h = height(alpha);
  if (!(h > 0)) throw KmDomainError("product factors need roots of positive height");
  GroupRingElement r;
  for (long k = 0;; ++k) {
    Vec v(alpha.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha[i] * k;
    if (height(v) > cutoff) break;
    Integer b = binomial(m, k);
    if (b == 0 && m >= 0 && k > 0) break;
    if (k % 2 == 1) b = -b;
    r.add(v, Rational(b));
  }
  return r;
}

struct RootWithMultiplicity {
  Vec root;
  Integer mult = 1;
};

/// prod (1 - e^alpha)^{m_alpha} truncated at height cutoff.
inline GroupRingElement positive_root_product(const std::vector<RootWithMultiplicity>& roots, std::size_t dim,
                                              const Rational& cutoff) {
  GroupRingElement acc = GroupRingElement::one(dim);
  for (const auto& r : roots) {
    if (height(r.root) > cutoff) continue;
    acc = GroupRingElement::multiply(acc, one_minus_power(r.root, r.mult, cutoff), cutoff);
  }
  return acc;
}

inline bool is_nonnegative(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
}

/// Positive roots of a finite-type matrix: the orbit of the simple roots under
/// the simple reflections, intersected with the non-negative cone.
inline std::vector<Vec> finite_positive_roots(const Gcm& g) {
  if (classify(g) != TypeClass::finite) throw KmDomainError("finite_positive_roots needs a finite-type matrix");
  const WeylSetup s = make_weyl_setup(g);
  std::set<Vec> roots;
  std::vector<Vec> frontier;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    frontier.push_back(s.simple_root(i));
    roots.insert(frontier.back());
  }
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& r : frontier) {
      for (std::size_t i : s.real) {
        Vec x = s.reflect(i, r);
        if (roots.insert(x).second) next.push_back(std::move(x));
      }
    }
    frontier = std::move(next);
  }
  std::vector<Vec> out;
  for (const auto& r : roots) {
    if (is_nonnegative(r)) out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const Vec& a, const Vec& b) {
    const Rational ha = height(a);
    const Rational hb = height(b);
    return ha != hb ? ha < hb : a < b;
  });
  return out;
}

/// Affine A1 ([[a, -a], [-a, a]], a > 0).
inline bool is_affine_a1(const Gcm& g) {
  return g.rank() == 2 && g(0, 0) > 0 && g(0, 0) == g(1, 1) && g(0, 1) == -g(0, 0);
}

/// Positive roots of affine A1 up to height cutoff: alpha_0 + n delta,
/// alpha_1 + n delta (n >= 0) and the imaginary n delta (n >= 1), all of
/// multiplicity 1. delta = alpha_0 + alpha_1.
inline std::vector<RootWithMultiplicity> affine_a1_positive_roots(int cutoff) {
  std::vector<RootWithMultiplicity> out;
  for (int n = 0; 2 * n + 1 <= cutoff; ++n) {
    out.push_back({Vec{Rational(n + 1), Rational(n)}, 1});
    out.push_back({Vec{Rational(n), Rational(n + 1)}, 1});
  }
  for (int n = 1; 2 * n <= cutoff; ++n) out.push_back({Vec{Rational(n), Rational(n)}, 1});
  return out;
}

struct DenominatorReport {
  std::string type;
  int cutoff = 0;
  bool equal = false;
  std::size_t weyl_terms = 0;   // Weyl elements contributing below the cutoff
  std::size_t factors = 0;      // product factors below the cutoff
  GroupRingElement lhs;
  GroupRingElement rhs;
  std::optional<GroupRingDiscrepancy> first_discrepancy;
};

/// Weyl side sum_w det(w) e^{w(rho + mu) - rho} over the supplied elements for
/// each term c e^mu of `inner`, keeping heights <= cutoff.
inline GroupRingElement weyl_alternating_sum(const WeylSetup& s, const std::vector<WeylElement>& elems,
                                             const GroupRingElement& inner, const Rational& cutoff,
                                             std::size_t* contributing = nullptr) {
  GroupRingElement out;
  std::size_t used = 0;
  for (const auto& w : elems) {
    bool any = false;
    for (const auto& [mu, c] : inner.terms()) {
      Vec x = s.embed(mu);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] += s.rho[i];
      Vec y = w.apply(x);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= s.rho[i];
      Vec v = s.project(y);
      if (height(v) > cutoff) continue;
      out.add(v, w.det * c);
      any = true;
    }
    if (any) ++used;
  }
  if (contributing) *contributing = used;
  return out;
}

/// sum_w det(w) e^{w(rho) - rho} against prod_{alpha > 0} (1 - e^alpha)^{m_alpha},
/// both truncated at root height `cutoff`. Finite types are checked in full
/// (cutoff only bounds the comparison); affine A1 is checked up to the cutoff.
inline DenominatorReport denominator_check(const Gcm& g, int cutoff) {
  const TypeClass t = classify(g);
  DenominatorReport r;
  r.cutoff = cutoff;
  r.type = to_string(t);
  std::vector<RootWithMultiplicity> roots;
  int max_len = INT_MAX;
  if (t == TypeClass::finite) {
    for (auto& v : finite_positive_roots(g)) roots.push_back({std::move(v), 1});
  } else if (t == TypeClass::affine && is_affine_a1(g)) {
    roots = affine_a1_positive_roots(cutoff);
    max_len = cutoff;  // every element of length l moves rho by a sum of l positive roots
  } else {
    throw NotImplementedError("denominator_check supports finite types and affine A1 only");
  }
  const WeylSetup s = make_weyl_setup(g);
  const auto elems = weyl_enumerate(s, max_len);
  const Rational cut(cutoff);
  r.lhs = weyl_alternating_sum(s, elems, GroupRingElement::one(g.rank()), cut, &r.weyl_terms);
  r.rhs = positive_root_product(roots, g.rank(), cut);
  r.factors = static_cast<std::size_t>(
      std::count_if(roots.begin(), roots.end(), [&](const auto& x) { return height(x.root) <= cut; }));
  r.first_discrepancy = first_difference(r.lhs, r.rhs);
  r.equal = !r.first_discrepancy.has_value();
  return r;
}

/// Fundamental weight omega_i: (omega_i, alpha_j) = delta_ij (alpha_j, alpha_j)/2.
inline Vec fundamental_weight(const Gcm& g, std::size_t i) {
  Vec b(g.rank(), Rational(0));
  b[i] = g(i, i) / 2;
  auto x = solve(g.matrix(), b);
  if (!x) throw KmDomainError("fundamental weights need a nondegenerate form");
  return *x;
}

/// Lowest weight -sum n_i omega_i for non-negative Dynkin labels n_i.
inline Vec lowest_weight(const Gcm& g, const std::vector<long>& labels) {
  if (labels.size() != g.rank()) throw KmDomainError("one Dynkin label per simple root is required");
  Vec lam(g.rank(), Rational(0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) throw KmDomainError("Dynkin labels must be non-negative");
    const Vec w = fundamental_weight(g, i);
    for (std::size_t k = 0; k < lam.size(); ++k) lam[k] -= w[k] * labels[i];
  }
  return lam;
}

/// Exact quotient n / (1 - e^alpha); throws if the division leaves a remainder.
inline GroupRingElement divide_by_one_minus(const GroupRingElement& n, const Vec& alpha) {
  if (n.empty()) return n;
  Rational max_h = height(n.terms().begin()->first);
  for (const auto& [v, c] : n.terms()) max_h = std::max(max_h, height(v));
  GroupRingElement rem = n;
  GroupRingElement quo;
  while (!rem.empty()) {
    auto low = rem.terms().begin();
    for (auto it = rem.terms().begin(); it != rem.terms().end(); ++it) {
      if (height(it->first) < height(low->first)) low = it;
    }
    if (height(low->first) > max_h) {
      throw std::logic_error("character numerator is not divisible by the Weyl denominator");
    }
    const Vec mu = low->first;
    const Rational c = low->second;
    quo.add(mu, c);
    rem.add(mu, -c);
    Vec up = mu;
    for (std::size_t i = 0; i < up.size(); ++i) up[i] += alpha[i];
    rem.add(up, c);
  }
  return quo;
}

/// Character of the irreducible module with lowest weight -sum n_i omega_i:
/// sum_w det(w) w(e^{rho + lambda}) / (e^rho prod_{alpha>0} (1 - e^alpha)),
/// truncated to weights of height <= cutoff.
inline GroupRingElement character(const Gcm& g, const std::vector<long>& labels, const Rational& cutoff) {
  if (classify(g) != TypeClass::finite) throw KmDomainError("character needs a finite-type matrix");
  const WeylSetup s = make_weyl_setup(g);
  const Vec lam = lowest_weight(g, labels);
  const auto elems = weyl_enumerate(s, INT_MAX);
  Rational huge = 0;
  for (const auto& x : lam) huge += abs(x);
  for (const auto& x : s.rho) huge += abs(x);
  huge = 4 * (huge + 1) * static_cast<long>(elems.size());
  GroupRingElement num = weyl_alternating_sum(s, elems, GroupRingElement::monomial(lam), huge);
  for (const auto& alpha : finite_positive_roots(g)) num = divide_by_one_minus(num, alpha);
  return num.truncated(cutoff);
}

/// Dimension of the highest-weight module sum n_i omega_i by Freudenthal's
/// recursion, in the usual (highest-weight, rho . alpha_i = +alpha_i^2/2)
/// convention, with positive roots built from root strings. Independent of
/// the Weyl-group route used by `character`.
inline Integer freudenthal_dimension(const Gcm& g, const std::vector<long>& labels) {
  if (classify(g) != TypeClass::finite) throw KmDomainError("freudenthal_dimension needs a finite type");
  const std::size_t n = g.rank();
  using IVec = std::vector<long>;

  // Positive roots by height; beta + alpha_i is a root iff q > 0 where the
  // alpha_i-string through beta is beta - p alpha_i, ..., beta + q alpha_i.
  std::set<IVec> roots;
  std::vector<IVec> layer;
  for (std::size_t i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    roots.insert(e);
    layer.push_back(e);
  }
  auto pairing = [&](const IVec& b, std::size_t i) {  // 2 (beta, alpha_i) / (alpha_i, alpha_i)
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j) s += g(j, i) * b[j];
    return to_long(to_integer(2 * s / g(i, i), "Cartan integer"), "Cartan integer");
  };
  while (!layer.empty()) {
    std::vector<IVec> next;
    for (const auto& b : layer) {
      for (std::size_t i = 0; i < n; ++i) {
        IVec down = b;
        long p = 0;
        for (;;) {
          down[i] -= 1;
          if (!roots.count(down)) break;
          ++p;
        }
        const long q = p - pairing(b, i);
        if (q > 0) {
          IVec up = b;
          up[i] += 1;
          if (roots.insert(up).second) next.push_back(up);
        }
      }
    }
    layer = std::move(next);
  }

  Vec rho_std(n), top(n);
  {
    Vec b(n), c(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = g(i, i) / 2;
      c[i] = g(i, i) * labels.at(i) / 2;
    }
    rho_std = *solve(g.matrix(), b);
    top = *solve(g.matrix(), c);
  }
  auto weight = [&](const IVec& k) {
    Vec mu = top;
    for (std::size_t i = 0; i < n; ++i) mu[i] -= k[i];
    return mu;
  };
  auto shifted_norm = [&](const Vec& mu) {
    Vec x = mu;
    for (std::size_t i = 0; i < n; ++i) x[i] += rho_std[i];
    return g.form(x, x);
  };
  const Rational top_norm = shifted_norm(top);

  std::map<IVec, Rational> mult;
  mult[IVec(n, 0)] = 1;
  Rational total = 1;
  std::function<void(std::size_t, long, IVec&, std::vector<IVec>&)> compositions =
      [&](std::size_t i, long left, IVec& cur, std::vector<IVec>& sink) {
        if (i + 1 == n) {
          cur[i] = left;
          sink.push_back(cur);
          return;
        }
        for (long v = 0; v <= left; ++v) {
          cur[i] = v;
          compositions(i + 1, left - v, cur, sink);
        }
      };
  for (long depth = 1;; ++depth) {
    std::vector<IVec> cands;
    IVec cur(n, 0);
    compositions(0, depth, cur, cands);
    bool any = false;
    for (const auto& k : cands) {
      const Vec mu = weight(k);
      Rational sum = 0;
      for (const auto& a : roots) {
        for (long j = 1;; ++j) {
          IVec kk = k;
          bool ok = true;
          for (std::size_t i = 0; i < n; ++i) {
            kk[i] -= j * a[i];
            if (kk[i] < 0) ok = false;
          }
          if (!ok) break;
          auto it = mult.find(kk);
          if (it == mult.end()) continue;
          Vec muj = weight(kk);
          Vec av(a.begin(), a.end());
          sum += it->second * g.form(muj, av);
        }
      }
      const Rational denom = top_norm - shifted_norm(mu);
      if (sum == 0) continue;
      if (denom == 0) throw std::logic_error("Freudenthal recursion hit a zero denominator");
      const Rational m = 2 * sum / denom;
      if (m != 0) {
        mult[k] = m;
        total += m;
        any = true;
      }
    }
    if (!any) break;
  }
  return to_integer(total, "module dimension");
}

struct ImaginarySimple {
  Vec root;       // simple-root coordinates
  long slots = 1; // multiplicity of the simple root
};

/// sum_mu eps_lambda(mu) e^mu: each imaginary simple root may be used up to its
/// multiplicity (choosing k of m slots contributes C(m, k)); the chosen roots
/// must be pairwise orthogonal (a root used twice must be isotropic) and
/// orthogonal to lambda; the sign is (-1)^(number chosen).
inline GroupRingElement epsilon_series(const Gcm& g, const std::vector<ImaginarySimple>& simples, const Vec& lam,
                                       const Rational& cutoff) {
  for (const auto& s : simples) {
    if (g.form(s.root, s.root) > 0) throw KmDomainError("epsilon_series: listed root has positive norm");
    if (!(height(s.root) > 0)) throw KmDomainError("epsilon_series: roots need positive height");
    if (s.slots < 0) throw KmDomainError("epsilon_series: negative multiplicity");
  }
  GroupRingElement out;
  std::vector<long> k(simples.size(), 0);
  std::function<void(std::size_t, Vec, Rational, Rational)> rec = [&](std::size_t i, Vec mu, Rational h,
                                                                       Rational coef) {
    if (i == simples.size()) {
      out.add(mu, coef);
      return;
    }
    const auto& s = simples[i];
    const Rational hs = height(s.root);
    for (long c = 0; c <= s.slots; ++c) {
      if (h + hs * c > cutoff) break;
      if (c > 0) {
        if (g.form(s.root, lam) != 0) break;
        if (c >= 2 && g.form(s.root, s.root) != 0) break;
        bool orth = true;
        for (std::size_t j = 0; j < i; ++j) {
          if (k[j] > 0 && g.form(s.root, simples[j].root) != 0) orth = false;
        }
        if (!orth) break;
      }
      k[i] = c;
      Vec next = mu;
      for (std::size_t t = 0; t < next.size(); ++t) next[t] += s.root[t] * c;
      Rational cc = coef * Rational(binomial(s.slots, c));
      if (c % 2 == 1) cc = -cc;
      rec(i + 1, std::move(next), h + hs * c, cc);
    }
    k[i] = 0;
  };
  rec(0, Vec(g.rank(), Rational(0)), Rational(0), Rational(1));
  return out;
}

/// A finite generalised Kac-Moody instance with explicitly supplied data.
struct ToyGkm {
  Gcm gcm;
  std::vector<long> slots;                         // multiplicity of each simple root
  std::vector<RootWithMultiplicity> positive_roots; // right-hand side of the identity
};

/// sum_w det(w) w(e^rho sum_mu eps(mu) e^mu) / e^rho  against
/// prod_{alpha>0} (1 - e^alpha)^{m_alpha}, truncated at height cutoff.
inline DenominatorReport gkm_denominator_check_toy(const ToyGkm& toy, int cutoff) {
  const Gcm& g = toy.gcm;
  if (toy.slots.size() != g.rank()) throw KmDomainError("one multiplicity per simple root is required");
  const ValidationReport v = validate(g);
  if (!v.valid_generalized) throw KmDomainError("toy instance is not a generalised Cartan matrix");
  WeylSetup s;
  try {
    s = make_weyl_setup(g);
  } catch (const WeylVectorError& e) {
    throw NotImplementedError(std::string("toy GKM: ") + e.what());
  }
  std::vector<ImaginarySimple> imag;
  for (std::size_t i = 0; i < g.rank(); ++i) {
    if (!g.is_real(i)) imag.push_back({unit_vector(g.rank(), i), toy.slots[i]});
  }
  const Rational cut(cutoff);
  const GroupRingElement eps = epsilon_series(g, imag, Vec(g.rank(), Rational(0)), cut);
  const auto elems = weyl_enumerate(s, cutoff);
  DenominatorReport r;
  r.type = "gkm-toy";
  r.cutoff = cutoff;
  r.lhs = weyl_alternating_sum(s, elems, eps, cut, &r.weyl_terms);
  r.rhs = positive_root_product(toy.positive_roots, g.rank(), cut);
  r.factors = toy.positive_roots.size();
  r.first_discrepancy = first_difference(r.lhs, r.rhs);
  r.equal = !r.first_discrepancy.has_value();
  return r;
}

}  // namespace bkm::km

#endif  // BKM_KACMOODY_HPP
