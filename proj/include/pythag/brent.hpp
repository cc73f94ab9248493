#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pythag {

struct BrentResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Brent's 1-D minimizer: golden-section steps with parabolic interpolation
// where the interpolant is trustworthy. tol is an absolute width on x.
template <class F>
BrentResult brent_minimize(F&& f, double lo, double hi, double tol,
                           int max_iter) {
  if (!(lo < hi)) throw std::invalid_argument("brent_minimize: requires lo < hi");
  if (!(tol > 0.0)) throw std::invalid_argument("brent_minimize: tol must be positive");
  constexpr double gold = 0.3819660112501051;
  double a = lo;
  double b = hi;
  double x = a + gold * (b - a);
  double w = x;
  double v = x;
  double fx = f(x);
  double fw = fx;
  double fv = fx;
  double d = 0.0;
  double e = 0.0;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const double m = 0.5 * (a + b);
    const double tol1 =
        tol + 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x);
    const double tol2 = 2.0 * tol1;
    if (std::fabs(x - m) <= tol2 - 0.5 * (b - a)) return {x, fx, iter, true};
    bool took_parabolic = false;
    if (std::fabs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::fabs(q);
      const double e_prev = e;
      e = d;
      if (std::fabs(p) < std::fabs(0.5 * q * e_prev) && p > q * (a - x) &&
          p < q * (b - x)) {
        took_parabolic = true;
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = x < m ? tol1 : -tol1;
      }
    }
    if (!took_parabolic) {
      e = (x < m ? b : a) - x;
      d = gold * e;
    }
    const double u =
        std::fabs(d) >= tol1 ? x + d : x + (d > 0.0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u < x)
        b = x;
      else
        a = x;
      v = w;
      fv = fw;
      w = x;
      fw = fx;
      x = u;
      fx = fu;
    } else {
      if (u < x)
        a = u;
      else
        b = u;
      if (fu <= fw || w == x) {
        v = w;
        fv = fw;
        w = u;
        fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return {x, fx, max_iter, false};
}

}  // namespace pythag
