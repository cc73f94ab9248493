#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pythag/brent.hpp"
#include "pythag/translated_weibull.hpp"

namespace pythag {

struct InsufficientDataError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidGoalsError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct FitOptions {
  double gamma_min = 0.5;
  double gamma_max = 10.0;
  double tol = 1e-6;
  int max_iter = 200;
};

struct TeamFit {
  std::string team_id;
  std::string season;
  double shape = 0.0;
  double alpha_gs = 0.0;
  double alpha_ga = 0.0;
  double log_lik = 0.0;
  int iterations = 0;
  bool converged = false;
  bool shape_below_one = false;
};

// optimizer runs in this process; lets tests assert that table-replay paths
// never refit
inline std::atomic<long>& fit_invocations() {
  static std::atomic<long> counter{0};
  return counter;
}

namespace detail {

inline void require_valid_goals(std::span<const GoalPair> games) {
  for (const auto& g : games)
    if (g.scored < 0 || g.allowed < 0)
      throw InvalidGoalsError("goal values must be nonnegative integers");
}

inline double alpha_hat_from_counts(const std::vector<std::int64_t>& counts,
                                    double n, double shape) {
  double s = 0.0;
  for (std::size_t v = 0; v < counts.size(); ++v)
    if (counts[v] != 0)
      s += static_cast<double>(counts[v]) *
           std::pow(static_cast<double>(v) + 0.5, shape);
  return std::pow(s / n, 1.0 / shape);
}

struct ProfileData {
  std::vector<std::int64_t> gs_counts;
  std::vector<std::int64_t> ga_counts;
  double n = 0.0;

  static ProfileData from_games(std::span<const GoalPair> games) {
    ProfileData d;
    d.gs_counts = goal_histogram(scored_column(games));
    d.ga_counts = goal_histogram(allowed_column(games));
    d.n = static_cast<double>(games.size());
    return d;
  }

  double log_lik(double shape) const {
    const double a_gs = alpha_hat_from_counts(gs_counts, n, shape);
    const double a_ga = alpha_hat_from_counts(ga_counts, n, shape);
    return histogram_log_lik(gs_counts, TranslatedWeibull(a_gs, shape)) +
           histogram_log_lik(ga_counts, TranslatedWeibull(a_ga, shape));
  }
};

}  // namespace detail

// Closed-form profile maximizer of the scale given the shape:
// alpha-hat = (mean of (x + 1/2)^shape)^(1/shape).
inline double alpha_hat_given_gamma(std::span<const int> goals, double shape) {
  if (goals.empty())
    throw InsufficientDataError("alpha_hat_given_gamma: empty sample");
  if (!(shape > 0.0))
    throw std::domain_error("alpha_hat_given_gamma: shape must be positive");
  for (const int v : goals)
    if (v < 0) throw InvalidGoalsError("goal values must be nonnegative integers");
  const auto counts = detail::goal_histogram(goals);
  return detail::alpha_hat_from_counts(counts, static_cast<double>(goals.size()),
                                       shape);
}

// Log-likelihood with both scales profiled out, leaving shape free.
inline double profile_log_lik(std::span<const GoalPair> games, double shape) {
  if (games.empty())
    throw InsufficientDataError("profile_log_lik: at least one game required");
  detail::require_valid_goals(games);
  if (!(shape > 0.0))
    throw std::domain_error("profile_log_lik: shape must be positive");
  return detail::ProfileData::from_games(games).log_lik(shape);
}

inline TeamFit fit_team(std::span<const GoalPair> games,
                        const FitOptions& opt = {}) {
  ++fit_invocations();
  if (games.size() < 2)
    throw InsufficientDataError("fit_team: at least two games required");
  detail::require_valid_goals(games);
  if (!(opt.gamma_min > 0.0) || !(opt.gamma_max > opt.gamma_min))
    throw std::invalid_argument("fit_team: invalid shape bracket");
  if (!(opt.tol > 0.0) || opt.max_iter < 1)
    throw std::invalid_argument("fit_team: invalid tolerance settings");

  const auto data = detail::ProfileData::from_games(games);
  const auto res = brent_minimize([&](double g) { return -data.log_lik(g); },
                                  opt.gamma_min, opt.gamma_max, opt.tol,
                                  opt.max_iter);

  TeamFit fit;
  fit.shape = res.x;
  fit.alpha_gs = detail::alpha_hat_from_counts(data.gs_counts, data.n, res.x);
  fit.alpha_ga = detail::alpha_hat_from_counts(data.ga_counts, data.n, res.x);
  fit.log_lik = -res.fx;
  fit.iterations = res.iterations;
  const bool at_edge = (res.x - opt.gamma_min) <= 4.0 * opt.tol ||
                       (opt.gamma_max - res.x) <= 4.0 * opt.tol;
  fit.converged = res.converged && !at_edge;
  fit.shape_below_one = fit.shape < 1.0;
  return fit;
}

struct GammaSummary {
  double mean = 0.0;
  double std_dev = 0.0;
  int n_teams = 0;
  bool single_team = false;
};

// Mean and sample standard deviation of the fitted shapes across a season.
inline GammaSummary season_gamma_summary(std::span<const TeamFit> fits) {
  if (fits.empty())
    throw std::invalid_argument("season_gamma_summary: no fits");
  GammaSummary out;
  out.n_teams = static_cast<int>(fits.size());
  out.single_team = fits.size() == 1;
  double sum = 0.0;
  for (const auto& f : fits) sum += f.shape;
  out.mean = sum / static_cast<double>(fits.size());
  if (fits.size() == 1) return out;
  double ss = 0.0;
  for (const auto& f : fits) {
    const double d = f.shape - out.mean;
    ss += d * d;
  }
  out.std_dev = std::sqrt(ss / static_cast<double>(fits.size() - 1));
  return out;
}

}  // namespace pythag
