#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "pythag/fit.hpp"

namespace pythag {

// Closed-form win probability for independent translated Weibulls sharing a
// shape: alpha_gs^shape / (alpha_gs^shape + alpha_ga^shape). Evaluated in log
// space so complementary calls sum to 1 and common scale factors cancel.
inline double pythag_from_params(double alpha_gs, double alpha_ga,
                                 double shape) {
  if (!(alpha_gs > 0.0) || !(alpha_ga > 0.0) || !(shape > 0.0))
    throw std::domain_error("pythag_from_params: parameters must be positive");
  const double t = shape * (std::log(alpha_ga) - std::log(alpha_gs));
  return 1.0 / (1.0 + std::exp(t));
}

// Same estimator driven by per-game scoring means; the 1/2 restores the
// untranslated Weibull scale implied by mean = alpha*Gamma(1 + 1/shape) - 1/2.
inline double pythag_from_means(double mean_gs, double mean_ga, double shape) {
  if (!(mean_gs >= 0.0) || !(mean_ga >= 0.0))
    throw std::domain_error("pythag_from_means: means must be nonnegative");
  if (!(shape > 0.0))
    throw std::domain_error("pythag_from_means: shape must be positive");
  const double t = shape * (std::log(mean_ga + 0.5) - std::log(mean_gs + 0.5));
  return 1.0 / (1.0 + std::exp(t));
}

// over/under-performance measured in games
inline double diff_games(double actual_wl, double pythag_wl, int games) {
  if (!(actual_wl >= 0.0) || !(actual_wl <= 1.0) || !(pythag_wl >= 0.0) ||
      !(pythag_wl <= 1.0))
    throw std::domain_error("diff_games: rates must lie in [0, 1]");
  if (games < 1) throw std::domain_error("diff_games: games must be positive");
  return (actual_wl - pythag_wl) * static_cast<double>(games);
}

struct PythagReport {
  std::string team_id;
  std::string season;
  int games_won = 0;
  int games_lost = 0;
  double actual_wl = 0.0;
  double pythag_wl = 0.0;
  double diff = 0.0;
  double shape = 0.0;
  double alpha_gs = 0.0;
  double alpha_ga = 0.0;
};

inline PythagReport build_report(const TeamFit& fit, int games_won,
                                 int games_lost) {
  if (games_won < 0 || games_lost < 0 || games_won + games_lost < 1)
    throw std::invalid_argument("build_report: invalid won/lost record");
  PythagReport r;
  r.team_id = fit.team_id;
  r.season = fit.season;
  r.games_won = games_won;
  r.games_lost = games_lost;
  const int games = games_won + games_lost;
  r.actual_wl = static_cast<double>(games_won) / static_cast<double>(games);
  r.pythag_wl = pythag_from_params(fit.alpha_gs, fit.alpha_ga, fit.shape);
  r.diff = diff_games(r.actual_wl, r.pythag_wl, games);
  r.shape = fit.shape;
  r.alpha_gs = fit.alpha_gs;
  r.alpha_ga = fit.alpha_ga;
  return r;
}

}  // namespace pythag
