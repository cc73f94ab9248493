#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pythag/special_functions.hpp"
#include "pythag/translated_weibull.hpp"

namespace pythag {

struct TooFewBinsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroExpectedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// paper convention: dof = bins - 1; adjusted subtracts the three fitted
// parameters as well
enum class DofConvention { paper, adjusted };

enum class Series { goals_scored, goals_allowed };

inline const char* series_name(Series s) {
  return s == Series::goals_scored ? "GS" : "GA";
}

struct GofTestResult {
  std::string team_id;
  std::string season;
  Series series = Series::goals_scored;
  double chi_sq = 0.0;
  int dof = 0;
  double p_value = 0.0;
  std::vector<double> bin_edges;
};

// Start from half-integer edges {-0.5, 0.5, ..., 9.5, inf} and merge bins
// whose expected count falls under min_expected: right tail first, then the
// left edge, then any interior stragglers into their right neighbor.
inline std::vector<double> build_bins(std::span<const int> goals,
                                      double min_expected,
                                      const TranslatedWeibull& d) {
  if (goals.empty()) throw std::invalid_argument("build_bins: empty sample");
  if (!(min_expected >= 0.0))
    throw std::domain_error("build_bins: min_expected must be nonnegative");
  const double n = static_cast<double>(goals.size());

  std::vector<double> edges;
  for (int k = 0; k <= 10; ++k) edges.push_back(static_cast<double>(k) - 0.5);
  edges.push_back(std::numeric_limits<double>::infinity());

  const auto expected = [&](std::size_t bin) {
    return n * d.bin_probability(edges[bin], edges[bin + 1]);
  };
  while (true) {
    const std::size_t bins = edges.size() - 1;
    std::size_t light = bins;
    if (expected(bins - 1) < min_expected) {
      light = bins - 1;
    } else if (expected(0) < min_expected) {
      light = 0;
    } else {
      for (std::size_t i = 1; i + 1 < bins; ++i)
        if (expected(i) < min_expected) {
          light = i;
          break;
        }
    }
    if (light == bins) break;
    if (bins <= 2)
      throw TooFewBinsError("build_bins: merging collapsed below two bins");
    if (light == bins - 1)
      edges.erase(edges.end() - 2);
    else
      edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(light) + 1);
  }
  return edges;
}

inline GofTestResult chi_squared_gof(std::span<const int> goals,
                                     const TranslatedWeibull& d,
                                     std::span<const double> edges,
                                     DofConvention conv = DofConvention::paper) {
  if (goals.empty())
    throw std::invalid_argument("chi_squared_gof: empty sample");
  if (edges.size() < 3 || edges.front() != -0.5 ||
      !std::isinf(edges.back()) ||
      !std::is_sorted(edges.begin(), edges.end(), std::less_equal<>{}))
    throw std::invalid_argument("chi_squared_gof: invalid bin edges");

  const std::size_t bins = edges.size() - 1;
  const double n = static_cast<double>(goals.size());
  std::vector<double> observed(bins, 0.0);
  for (const int v : goals) {
    if (v < 0)
      throw std::invalid_argument("chi_squared_gof: negative goal value");
    const auto it = std::upper_bound(edges.begin(), edges.end(),
                                     static_cast<double>(v));
    const auto bin = static_cast<std::size_t>(it - edges.begin()) - 1;
    observed[std::min(bin, bins - 1)] += 1.0;
  }

  GofTestResult res;
  res.bin_edges.assign(edges.begin(), edges.end());
  for (std::size_t k = 0; k < bins; ++k) {
    const double exp_k = n * d.bin_probability(edges[k], edges[k + 1]);
    if (exp_k == 0.0)
      throw ZeroExpectedError("chi_squared_gof: bin with zero expected count");
    const double dd = observed[k] - exp_k;
    res.chi_sq += dd * dd / exp_k;
  }
  const int adjust = conv == DofConvention::adjusted ? 3 : 0;
  res.dof = static_cast<int>(bins) - 1 - adjust;
  if (res.dof < 1)
    throw TooFewBinsError("chi_squared_gof: fewer bins than degrees of freedom require");
  res.p_value = reg_upper_gamma(res.dof / 2.0, res.chi_sq / 2.0);
  return res;
}

}  // namespace pythag
