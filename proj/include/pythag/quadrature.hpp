#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pythag {

struct QuadratureFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error_bound = 0.0;
  long evaluations = 0;
};

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1]; the odd-index nodes are
// the embedded Gauss points.
inline constexpr double kKronrodNode[8] = {
    0.99145537112081263920685469752633, 0.94910791234275852452618968404785,
    0.86486442335976907278971278864093, 0.74153118559939443986386477328079,
    0.58608723546769113029414483825873, 0.40584515137739716690660641207696,
    0.20778495500789846760068940377324, 0.0};
inline constexpr double kKronrodWeight[8] = {
    0.02293532201052922496373200805897, 0.06309209262997855329070066318920,
    0.10479001032225018383987632254152, 0.14065325971552591874518959051024,
    0.16900472663926790282658342659855, 0.19035057806478540991325640242101,
    0.20443294007529889241416199923465, 0.20948214108472782801299917489171};
inline constexpr double kGaussWeight[4] = {
    0.12948496616886969327061143267908, 0.27970539148927666790146777142378,
    0.38183005050511894495036977548898, 0.41795918367346938775510204081633};

template <class F>
std::pair<double, double> gauss_kronrod_15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f_mid = f(mid);
  double kronrod = kKronrodWeight[7] * f_mid;
  double gauss = kGaussWeight[3] * f_mid;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNode[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kronrod += kKronrodWeight[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeight[i / 2] * fsum;
  }
  return {kronrod * half, std::fabs(kronrod - gauss) * half};
}

}  // namespace detail

// Adaptive bisection on top of the 15-point rule. Throws QuadratureFailure
// when the evaluation budget runs out before the absolute tolerance is met.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                           long max_evals = 1000000) {
  if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
  if (!(abs_tol > 0.0)) throw std::invalid_argument("integrate: abs_tol must be positive");
  struct Seg {
    double lo, hi;
  };
  std::vector<Seg> pending{{a, b}};
  QuadratureResult res;
  while (!pending.empty()) {
    const Seg seg = pending.back();
    pending.pop_back();
    if (res.evaluations + 15 > max_evals)
      throw QuadratureFailure("integrate: evaluation budget exhausted");
    const auto [value, err] = detail::gauss_kronrod_15(f, seg.lo, seg.hi);
    res.evaluations += 15;
    const double width = seg.hi - seg.lo;
    const double share = abs_tol * width / (b - a);
    const double floor_width =
        1e-15 * (std::fabs(seg.lo) + std::fabs(seg.hi) + 1.0);
    // A segment whose error estimate sits at rounding-noise level relative to
    // its own value cannot be improved by further splitting.
    const double noise = 1e-14 * std::fabs(value);
    if (err <= share || err <= noise || width <= floor_width) {
      res.value += value;
      res.error_bound += err;
    } else {
      const double mid = 0.5 * (seg.lo + seg.hi);
      pending.push_back({seg.lo, mid});
      pending.push_back({mid, seg.hi});
    }
  }
  return res;
}

}  // namespace pythag
