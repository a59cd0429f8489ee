#ifndef BKM_LORENTZ_HPP
#define BKM_LORENTZ_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rational.hpp"

namespace bkm::lorentz {

inline constexpr std::size_t kDim = 26;
inline constexpr std::size_t kTime = 25;  // slot of 2*x_0

/// A vector of R^{25,1} stored as doubled coordinates (2x_1, ..., 2x_25; 2x_0),
/// so integral and half-odd-integral points are both exact.
class LatticeVector {
public:
  using Doubled = std::array<std::int64_t, kDim>;

  LatticeVector() { doubled_.fill(0); }
  explicit LatticeVector(const Doubled& d) : doubled_(d) {}

  /// From integer coordinates (x_1, ..., x_25; x_0).
  static LatticeVector from_integers(const std::array<std::int64_t, 25>& space, std::int64_t time) {
    Doubled d{};
    for (std::size_t i = 0; i < 25; ++i) d[i] = 2 * space[i];
    d[kTime] = 2 * time;
    return LatticeVector(d);
  }

  const Doubled& doubled() const { return doubled_; }
  std::int64_t doubled(std::size_t i) const { return doubled_[i]; }

  /// Coordinate x_i for i in 1..25, or x_0 for i == 0.
  Rational coord(std::size_t i) const {
    if (i > 25) throw std::out_of_range("coordinate index");
    Rational r(i == 0 ? doubled_[kTime] : doubled_[i - 1], 2);
    r.canonicalize();
    return r;
  }

  LatticeVector operator-() const {
    LatticeVector r = *this;
    for (auto& v : r.doubled_) v = -v;
    return r;
  }
  LatticeVector& operator+=(const LatticeVector& o) {
    for (std::size_t i = 0; i < kDim; ++i) doubled_[i] += o.doubled_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) { return *this += -o; }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(std::int64_t k, LatticeVector a) {
    for (auto& v : a.doubled_) v *= k;
    return a;
  }
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

private:
  Doubled doubled_;
};

/// 4 (x . y) as an exact integer.
inline Integer quadruple_product(const LatticeVector& x, const LatticeVector& y) {
  __int128 s = 0;
  for (std::size_t i = 0; i < 25; ++i) s += static_cast<__int128>(x.doubled(i)) * y.doubled(i);
  s -= static_cast<__int128>(x.doubled(kTime)) * y.doubled(kTime);
  // mpz has no __int128 constructor; split into two 64-bit halves.
  const bool neg = s < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-s) : static_cast<unsigned __int128>(s);
  Integer hi = static_cast<unsigned long>(u >> 64);
  Integer lo = static_cast<unsigned long>(u & 0xFFFFFFFFFFFFFFFFULL);
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

/// x_1 y_1 + ... + x_25 y_25 - x_0 y_0.
inline Rational inner_product(const LatticeVector& x, const LatticeVector& y) {
  Rational r(quadruple_product(x, y), 4);
  r.canonicalize();
  return r;
}

inline Rational norm(const LatticeVector& x) { return inner_product(x, x); }

/// Weyl vector rho = (0, 1, 2, ..., 24; 70).
inline LatticeVector weyl_vector() {
  std::array<std::int64_t, 25> s{};
  std::iota(s.begin(), s.end(), 0);
  return LatticeVector::from_integers(s, 70);
}

/// w = (1/2, ..., 1/2; 1/2)
inline LatticeVector half_vector() {
  LatticeVector::Doubled d;
  d.fill(1);
  return LatticeVector(d);
}

/// Membership in II_{25,1}: coordinates all integral or all half-odd, and
/// integral inner product with (1/2, ..., 1/2; 1/2).
inline bool is_member(const LatticeVector& x) {
  const auto parity = x.doubled(0) & 1;
  for (auto v : x.doubled()) {
    if ((v & 1) != parity) return false;
  }
  return is_integral(inner_product(x, half_vector()));
}

/// Raised on lattice-operation precondition violations.
class LatticeDomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Norm-2 representative x with x . rho = -1, i.e. a point of the Leech lattice
/// seen as {x in II_{25,1} : x . rho = -1} modulo rho.
class LeechClass {
public:
  const LatticeVector& rep() const { return rep_; }
  friend bool operator==(const LeechClass&, const LeechClass&) = default;

private:
  explicit LeechClass(LatticeVector rep) : rep_(std::move(rep)) {}
  LatticeVector rep_;
  friend LeechClass leech_representative(const LatticeVector& x);
};

/// x + k rho with k = (x.x - 2)/2; requires x in II_{25,1} and x . rho = -1.
inline LeechClass leech_representative(const LatticeVector& x) {
  if (!is_member(x)) throw LatticeDomainError("leech_representative: vector is not in II_{25,1}");
  const LatticeVector rho = weyl_vector();
  if (inner_product(x, rho) != -1) throw LatticeDomainError("leech_representative: needs x . rho = -1");
  const Integer k = to_integer((norm(x) - 2) / 2, "rho shift");
  return LeechClass(x + to_long(k, "rho shift") * rho);
}

/// sigma_r(x) = x - (r . x) r for a norm-2 lattice vector r.
inline LatticeVector reflect(const LatticeVector& r, const LatticeVector& x) {
  if (norm(r) != 2) throw LatticeDomainError("reflect: root must have norm 2");
  if (!is_member(r) || !is_member(x)) throw LatticeDomainError("reflect: arguments must lie in II_{25,1}");
  const long k = to_long(to_integer(inner_product(r, x), "r.x"), "r.x");
  return x - k * r;
}

/// Leech norm of a - b; 0 exactly when the classes coincide.
inline Integer class_difference_norm(const LeechClass& a, const LeechClass& b) {
  return to_integer(norm(a.rep() - b.rep()), "class difference norm");
}

/// Draws a random lattice vector with x . rho = -1 by randomising every
/// coordinate but x_2 in a small box of doubled values and solving for x_2,
/// then returns its Leech class.
template <class Rng>
LeechClass sample_leech_class(Rng& rng, int box = 8) {
  const LatticeVector rho = weyl_vector();
  for (;;) {
    const bool half = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
    // |doubled coordinate| <= box: even values for integral points, odd for half-odd ones.
    std::uniform_int_distribution<int> pick(-box / 2, half ? (box - 1) / 2 : box / 2);
    LatticeVector::Doubled d{};
    for (std::size_t i = 0; i < kDim; ++i) d[i] = 2 * static_cast<std::int64_t>(pick(rng)) + (half ? 1 : 0);
    // x . rho = sum_i x_i (i-1) - 70 x_0 and x_2 carries weight 1.
    d[1] = 0;
    const Rational rest = inner_product(LatticeVector(d), rho);
    const Rational x2 = Rational(-1) - rest;
    const Rational doubled_x2 = 2 * x2;
    if (!is_integral(doubled_x2)) continue;
    d[1] = to_long(doubled_x2.get_num(), "x_2");
    const LatticeVector x(d);
    if (!is_member(x)) continue;
    return leech_representative(x);
  }
}

/// Element of Lambda_L + II_{1,1} written (lambda, m, n), with (m, n) of norm -2mn.
struct GradedRoot {
  std::optional<LeechClass> leech;  // absent for lambda = 0 when only the norm matters
  Integer leech_norm = 0;
  Integer m = 0;
  Integer n = 0;

  Integer norm() const { return leech_norm - 2 * m * n; }
};

/// Pairing of the II_{1,1} parts: (m, n) . (m', n') = -(m n' + m' n).
inline Integer hyperbolic_pairing(const GradedRoot& a, const GradedRoot& b) {
  return -(a.m * b.n + b.m * a.n);
}

/// Weyl vector (0, 0, 1) of Lambda_L + II_{1,1}.
inline GradedRoot fake_monster_rho() { return GradedRoot{std::nullopt, 0, 0, 1}; }

/// The real simple root (lambda, 1, lambda^2/2 - 1) for a Leech vector of the
/// given norm. Certifies norm 2 and pairing -1 with rho.
inline GradedRoot fm_simple_root(const Integer& lambda_norm) {
  if (lambda_norm < 0) throw LatticeDomainError("fm_simple_root: Leech norms are non-negative");
  if (lambda_norm % 2 != 0) throw LatticeDomainError("fm_simple_root: Leech norms are even");
  GradedRoot r{std::nullopt, lambda_norm, 1, lambda_norm / 2 - 1};
  if (r.norm() != 2 || hyperbolic_pairing(r, fake_monster_rho()) != -1) {
    throw std::logic_error("fm_simple_root: certificate failed");
  }
  return r;
}

/// The light-like simple root k rho.
inline GradedRoot fm_lightlike_root(const Integer& k) {
  if (k <= 0) throw LatticeDomainError("light-like simple roots are positive multiples of rho");
  return GradedRoot{std::nullopt, 0, 0, k};
}

/// Random element of II_{25,1} with coordinates in a small box.
template <class Rng>
LatticeVector sample_member(Rng& rng, int box = 6) {
  const bool half = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
  std::uniform_int_distribution<int> pick(-box / 2, box / 2);
  LatticeVector::Doubled d{};
  for (auto& v : d) v = 2 * static_cast<std::int64_t>(pick(rng)) + (half ? 1 : 0);
  if (!is_member(LatticeVector(d))) d[0] += 2;  // moving x_1 by one flips the parity of x . w
  return LatticeVector(d);
}

/// Random norm-2 vector of II_{25,1}: +-e_i +- e_j, or a Leech-class representative.
template <class Rng>
LatticeVector sample_root(Rng& rng) {
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) return sample_leech_class(rng).rep();
  std::uniform_int_distribution<int> idx(0, 24);
  const int i = idx(rng);
  int j = idx(rng);
  while (j == i) j = idx(rng);
  std::array<std::int64_t, 25> s{};
  s[static_cast<std::size_t>(i)] = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  s[static_cast<std::size_t>(j)] = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  return LatticeVector::from_integers(s, 0);
}

struct LatticeCheck {
  bool rho_null = false;
  int membership_checks = 0;
  int reflection_checks = 0;
  int leech_classes = 0;
  Integer min_class_distance = 0;  // smallest pairwise difference norm among distinct classes
  std::vector<std::string> failures;

  bool pass() const { return failures.empty(); }
};

/// Randomised consistency checks of the lattice operations.
inline LatticeCheck lattice_self_check(unsigned seed, int pairs = 100, int classes = 50) {
  std::mt19937_64 rng(seed);
  LatticeCheck c;
  const LatticeVector rho = weyl_vector();
  c.rho_null = norm(rho) == 0;
  if (!c.rho_null) c.failures.push_back("rho is not null");
  if (!is_member(rho)) c.failures.push_back("rho is not a lattice vector");
  for (int t = 0; t < pairs; ++t) {
    const LatticeVector x = sample_member(rng);
    const LatticeVector y = sample_member(rng);
    ++c.membership_checks;
    if (!is_member(x + y) || !is_member(x - y) || !is_member(3 * x)) {
      c.failures.push_back("closure failed at sample " + std::to_string(t));
    }
    if (!is_integral(norm(x)) || norm(x).get_num() % 2 != 0) {
      c.failures.push_back("odd norm at sample " + std::to_string(t));
    }
    LatticeVector off = x;
    LatticeVector::Doubled d = off.doubled();
    d[3] += 1;  // mixes integral and half-odd coordinates
    if (is_member(LatticeVector(d))) c.failures.push_back("non-member accepted at sample " + std::to_string(t));
  }
  for (int t = 0; t < pairs; ++t) {
    const LatticeVector r = sample_root(rng);
    const LatticeVector x = sample_member(rng);
    const LatticeVector y = sample_member(rng);
    const LatticeVector rx = reflect(r, x);
    const LatticeVector ry = reflect(r, y);
    ++c.reflection_checks;
    if (inner_product(rx, ry) != inner_product(x, y) || !is_member(rx) || !is_member(ry) ||
        reflect(r, rx) != x || reflect(r, r) != -r) {
      c.failures.push_back("reflection check failed at pair " + std::to_string(t));
    }
  }
  std::vector<LeechClass> seen;
  while (static_cast<int>(seen.size()) < classes) {
    LeechClass k = sample_leech_class(rng);
    if (std::find(seen.begin(), seen.end(), k) == seen.end()) seen.push_back(std::move(k));
  }
  c.leech_classes = static_cast<int>(seen.size());
  bool first = true;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (std::size_t j = i + 1; j < seen.size(); ++j) {
      const Integer n = class_difference_norm(seen[i], seen[j]);
      if (first || n < c.min_class_distance) c.min_class_distance = n;
      first = false;
    }
  }
  if (!first && c.min_class_distance < 4) {
    c.failures.push_back("two distinct Leech classes differ by norm " + c.min_class_distance.get_str());
  }
  return c;
}

}  // namespace bkm::lorentz

#endif  // BKM_LORENTZ_HPP
