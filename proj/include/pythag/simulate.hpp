#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pythag/quadrature.hpp"
#include "pythag/rng.hpp"
#include "pythag/translated_weibull.hpp"

namespace pythag {

// continuous: ties have measure zero and X > Y decides directly.
// integer_replay: draws round to the nearest nonnegative integer score and
// exact ties are redrawn, since a game cannot end tied.
enum class TiePolicy { continuous, integer_replay };

struct SimConfig {
  double alpha_gs = 1.0;
  double alpha_ga = 1.0;
  double gamma_shape = 1.0;
  long n_games = 1;
  std::uint64_t seed = 0;
  TiePolicy tie_policy = TiePolicy::continuous;
};

struct WinFraction {
  double fraction = 0.0;
  double std_err = 0.0;
};

namespace detail {

inline void check_sim_config(const SimConfig& cfg) {
  if (!(cfg.alpha_gs > 0.0) || !(cfg.alpha_ga > 0.0) ||
      !(cfg.gamma_shape > 0.0))
    throw std::domain_error("simulate: parameters must be positive");
  if (cfg.n_games < 1)
    throw std::domain_error("simulate: n_games must be at least 1");
}

inline int rounded_goal(double x) {
  const long r = std::lround(x);
  return r < 0 ? 0 : static_cast<int>(r);
}

inline bool play_one(const TranslatedWeibull& gs, const TranslatedWeibull& ga,
                     TiePolicy policy, PhiloxRng& rng) {
  if (policy == TiePolicy::continuous) return gs.sample(rng) > ga.sample(rng);
  for (;;) {
    const int a = rounded_goal(gs.sample(rng));
    const int b = rounded_goal(ga.sample(rng));
    if (a != b) return a > b;
  }
}

}  // namespace detail

inline WinFraction mc_win_fraction(const SimConfig& cfg) {
  detail::check_sim_config(cfg);
  const TranslatedWeibull gs(cfg.alpha_gs, cfg.gamma_shape);
  const TranslatedWeibull ga(cfg.alpha_ga, cfg.gamma_shape);
  PhiloxRng rng(cfg.seed);
  long wins = 0;
  for (long i = 0; i < cfg.n_games; ++i)
    if (detail::play_one(gs, ga, cfg.tie_policy, rng)) ++wins;
  WinFraction out;
  const double n = static_cast<double>(cfg.n_games);
  out.fraction = static_cast<double>(wins) / n;
  out.std_err = std::sqrt(out.fraction * (1.0 - out.fraction) / n);
  return out;
}

// Numerical check of the win probability: the scoring density times the
// allowed-side CDF, integrated over (0, U) with the 1/2 shift cancelled.
// U truncates less than 1e-14 of the mass.
inline double quadrature_win_prob(double alpha_gs, double alpha_ga,
                                  double shape) {
  if (!(alpha_gs > 0.0) || !(alpha_ga > 0.0) || !(shape > 0.0))
    throw std::domain_error("quadrature_win_prob: parameters must be positive");
  const double upper = alpha_gs * std::pow(std::log(1e14), 1.0 / shape);
  const auto integrand = [=](double x) {
    const double t = std::pow(x / alpha_gs, shape);
    const double inner = -std::expm1(-std::pow(x / alpha_ga, shape));
    return shape * t / x * std::exp(-t) * inner;
  };
  return integrate(integrand, 0.0, upper, 1e-10, 1000000).value;
}

// Win-count histogram over simulated seasons. Season s consumes RNG stream
// s + 1 of the seed, so results are independent of iteration order and
// mergeable across workers.
inline std::vector<long> season_outcome_distribution(const SimConfig& cfg,
                                                     int games_per_season,
                                                     long n_seasons) {
  detail::check_sim_config(cfg);
  if (games_per_season < 1)
    throw std::domain_error("season_outcome_distribution: games_per_season must be at least 1");
  if (n_seasons < 1)
    throw std::domain_error("season_outcome_distribution: n_seasons must be at least 1");
  const TranslatedWeibull gs(cfg.alpha_gs, cfg.gamma_shape);
  const TranslatedWeibull ga(cfg.alpha_ga, cfg.gamma_shape);
  std::vector<long> hist(static_cast<std::size_t>(games_per_season) + 1, 0);
  for (long s = 0; s < n_seasons; ++s) {
    PhiloxRng rng(cfg.seed, static_cast<std::uint64_t>(s) + 1);
    int wins = 0;
    for (int g = 0; g < games_per_season; ++g)
      if (detail::play_one(gs, ga, cfg.tie_policy, rng)) ++wins;
    ++hist[static_cast<std::size_t>(wins)];
  }
  return hist;
}

}  // namespace pythag
