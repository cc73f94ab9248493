#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "pythag/special_functions.hpp"

namespace pythag {

struct GoalPair {
  int scored = 0;
  int allowed = 0;
};

// Weibull shifted left by 1/2 so the mass for integer score k sits over the
// bin (k - 1/2, k + 1/2]. Support is (-1/2, inf).
class TranslatedWeibull {
 public:
  TranslatedWeibull(double alpha, double shape) : alpha_(alpha), shape_(shape) {
    if (!(alpha > 0.0) || !(shape > 0.0))
      throw std::domain_error("TranslatedWeibull: alpha and shape must be positive");
  }

  double alpha() const { return alpha_; }
  double shape() const { return shape_; }

  double pdf(double x) const {
    const double z = x + 0.5;
    if (z <= 0.0) return 0.0;
    const double t = std::pow(z / alpha_, shape_);
    return shape_ * t / z * std::exp(-t);
  }

  double ln_pdf(double x) const {
    const double z = x + 0.5;
    if (z <= 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(shape_) - shape_ * std::log(alpha_) +
           (shape_ - 1.0) * std::log(z) - std::pow(z / alpha_, shape_);
  }

  double cdf(double x) const {
    const double z = x + 0.5;
    if (z <= 0.0) return 0.0;
    return -std::expm1(-std::pow(z / alpha_, shape_));
  }

  // inverse cdf; p = 0 maps to the left edge of the support
  double quantile(double p) const {
    if (!(p >= 0.0) || !(p < 1.0))
      throw std::domain_error("quantile: p must lie in [0, 1)");
    return alpha_ * std::pow(-std::log1p(-p), 1.0 / shape_) - 0.5;
  }

  double mean() const { return alpha_ * gamma_fn(1.0 + 1.0 / shape_) - 0.5; }

  double bin_probability(double lo, double hi) const {
    if (!(lo < hi))
      throw std::invalid_argument("bin_probability: requires lo < hi");
    return std::clamp(cdf(hi) - cdf(lo), 0.0, 1.0);
  }

  template <class Urbg>
  double sample(Urbg& rng) const {
    const double u =
        (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
    return quantile(u);
  }

 private:
  double alpha_;
  double shape_;
};

namespace detail {

// Histogram over integer goal values. Grouping identical values before any
// floating-point reduction makes downstream sums independent of game order.
inline std::vector<std::int64_t> goal_histogram(std::span<const int> goals) {
  std::vector<std::int64_t> counts;
  for (const int v : goals) {
    if (v < 0)
      throw std::invalid_argument("goal values must be nonnegative integers");
    if (static_cast<std::size_t>(v) >= counts.size()) counts.resize(v + 1, 0);
    ++counts[static_cast<std::size_t>(v)];
  }
  return counts;
}

inline std::vector<int> scored_column(std::span<const GoalPair> games) {
  std::vector<int> out;
  out.reserve(games.size());
  for (const auto& g : games) out.push_back(g.scored);
  return out;
}

inline std::vector<int> allowed_column(std::span<const GoalPair> games) {
  std::vector<int> out;
  out.reserve(games.size());
  for (const auto& g : games) out.push_back(g.allowed);
  return out;
}

inline double histogram_log_lik(const std::vector<std::int64_t>& counts,
                                const TranslatedWeibull& d) {
  double ll = 0.0;
  for (std::size_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    ll += static_cast<double>(counts[v]) * d.ln_pdf(static_cast<double>(v));
  }
  return ll;
}

}  // namespace detail

// Joint log-likelihood of a season under independent scoring and allowing
// processes that share one shape parameter.
inline double log_likelihood(const TranslatedWeibull& scored_dist,
                             const TranslatedWeibull& allowed_dist,
                             std::span<const GoalPair> games) {
  if (games.empty())
    throw std::invalid_argument("log_likelihood: at least one game required");
  if (scored_dist.shape() != allowed_dist.shape())
    throw std::invalid_argument(
        "log_likelihood: scored and allowed distributions must share a shape");
  const auto gs = detail::goal_histogram(detail::scored_column(games));
  const auto ga = detail::goal_histogram(detail::allowed_column(games));
  return detail::histogram_log_lik(gs, scored_dist) +
         detail::histogram_log_lik(ga, allowed_dist);
}

}  // namespace pythag
