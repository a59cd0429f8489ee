#ifndef BKM_AUTOFORMS_HPP
#define BKM_AUTOFORMS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "modforms.hpp"

namespace bkm::autoforms {

using Complex = std::complex<double>;

class NotAdmissibleError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Point (0, sigma, tau) of the slice; both coordinates in the upper half-plane.
struct SlicePoint {
  Complex sigma;
  Complex tau;

  SlicePoint(Complex s, Complex t) : sigma(s), tau(t) {
    if (!(s.imag() > 0) || !(t.imag() > 0)) throw std::domain_error("slice point needs Im(sigma), Im(tau) > 0");
  }
};

struct EvalResult {
  Complex value;
  double error = 0;  // tail bound
};

inline Complex nome(Complex tau) { return std::exp(Complex(0, 2 * std::numbers::pi) * tau); }

/// sum_{d <= trunc} c_d e^{2 pi i d tau}. The error estimate is the last
/// included term times the geometric tail factor |q| / (1 - |q|).
inline EvalResult eval_qseries(const QSeries& f, Complex tau, int trunc) {
  if (!(tau.imag() > 0)) throw std::domain_error("eval_qseries needs Im(tau) > 0");
  const Complex q = nome(tau);
  const double aq = std::abs(q);
  EvalResult r{Complex(0, 0), 0};
  double last = 0;
  for (const auto& [d, c] : f.terms()) {
    if (d > trunc) break;
    const Complex term = c.get_d() * std::pow(q, d);
    r.value += term;
    last = std::abs(term);
  }
  r.error = last * aq / (1 - aq);
  return r;
}

/// Evaluates Phi(0, sigma, tau) = Delta(sigma) Delta(tau) (j(sigma) - j(tau)).
/// The series may be replaced, e.g. by corrupted copies in negative controls.
class PhiEvaluator {
public:
  explicit PhiEvaluator(int trunc) : trunc_(trunc), delta_(delta(trunc)), j_(j_minus_744(trunc)) {}
  PhiEvaluator(int trunc, QSeries delta_series, QSeries j_series)
      : trunc_(trunc), delta_(std::move(delta_series)), j_(std::move(j_series)) {}

  int trunc() const { return trunc_; }

  Complex operator()(const SlicePoint& pt) const {
    const Complex ds = eval_qseries(delta_, pt.sigma, trunc_).value;
    const Complex dt = eval_qseries(delta_, pt.tau, trunc_).value;
    const Complex js = eval_qseries(j_, pt.sigma, trunc_).value;
    const Complex jt = eval_qseries(j_, pt.tau, trunc_).value;
    return ds * dt * (js - jt);
  }

private:
  int trunc_;
  QSeries delta_;
  QSeries j_;
};

inline Complex phi_slice(const SlicePoint& pt, int trunc) { return PhiEvaluator(trunc)(pt); }

inline double relative_difference(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0 ? 0.0 : std::abs(a - b) / scale;
}

struct NumericCheck {
  std::string name;
  bool pass = false;
  double worst = 0;  // largest relative difference observed
  Complex lhs;
  Complex rhs;
  std::string where;  // which comparison produced `worst`
};

/// Phi(2v/(v,v)) = -((v,v)/2)^12 Phi(v) with v = (0, sigma, tau), (v,v) = -2 sigma tau.
/// With the (m, n) part of norm -2mn, 2v/(v,v) = (0, -1/tau, -1/sigma), and
/// ((v,v)/2)^12 = (sigma tau)^12.
inline NumericCheck check_functional_equation(const PhiEvaluator& phi, const SlicePoint& pt, double tol) {
  const Complex is = -1.0 / pt.tau;
  const Complex it = -1.0 / pt.sigma;
  if (!(is.imag() > 0) || !(it.imag() > 0)) throw NotAdmissibleError("point not admissible");
  const SlicePoint image(is, it);
  NumericCheck c;
  c.name = "functional-equation";
  c.lhs = phi(image);
  c.rhs = -std::pow(pt.sigma * pt.tau, 12) * phi(pt);
  c.worst = relative_difference(c.lhs, c.rhs);
  c.pass = c.worst < tol;
  c.where = "image of v";
  return c;
}

inline NumericCheck check_functional_equation(const SlicePoint& pt, int trunc, double tol) {
  return check_functional_equation(PhiEvaluator(trunc), pt, tol);
}

/// Phi is unchanged by sigma -> sigma + 1, tau -> tau + 1 and both together.
inline NumericCheck check_periodicity(const PhiEvaluator& phi, const SlicePoint& pt, double tol) {
  NumericCheck c;
  c.name = "periodicity";
  const Complex base = phi(pt);
  const struct {
    const char* name;
    Complex ds, dt;
  } shifts[] = {{"sigma+1", 1, 0}, {"tau+1", 0, 1}, {"both", 1, 1}};
  for (const auto& s : shifts) {
    const Complex v = phi(SlicePoint(pt.sigma + s.ds, pt.tau + s.dt));
    const double d = relative_difference(v, base);
    if (d >= c.worst) {
      c.worst = d;
      c.lhs = v;
      c.rhs = base;
      c.where = s.name;
    }
  }
  c.pass = c.worst < tol;
  return c;
}

inline NumericCheck check_periodicity(const SlicePoint& pt, int trunc, double tol) {
  return check_periodicity(PhiEvaluator(trunc), pt, tol);
}

}  // namespace bkm::autoforms

#endif  // BKM_AUTOFORMS_HPP
