#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "pythag/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"translated-Weibull scoring model toolkit"};
  app.set_config("--config", "", "flat key=value config file; flags override");
  app.require_subcommand(1);

  pythag::RunConfig cfg;
  std::string tau_variant = "b";
  std::string sided = "paper";
  std::string dof_convention = "paper";
  std::string small_p_style = "less-than";
  std::string tie_policy = "continuous";

  app.add_option("--input", cfg.input_path, "game log CSV");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--season", cfg.seasons, "season filter, repeatable");
  app.add_option("--team", cfg.teams, "team filter, repeatable");
  app.add_option("--format", cfg.format, "csv, json, svg or all")
      ->check(CLI::IsMember({"csv", "json", "svg", "all"}));
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--gamma-min", cfg.fit_options.gamma_min, "shape bracket low");
  app.add_option("--gamma-max", cfg.fit_options.gamma_max, "shape bracket high");
  app.add_option("--tol", cfg.fit_options.tol, "optimizer tolerance");
  app.add_option("--max-iter", cfg.fit_options.max_iter, "optimizer iteration cap");
  app.add_option("--tau-variant", tau_variant, "a or b")
      ->check(CLI::IsMember({"a", "b"}));
  app.add_option("--sided", sided, "one, two or paper")
      ->check(CLI::IsMember({"one", "two", "paper"}));
  app.add_option("--min-expected", cfg.min_expected,
                 "minimum expected count per bin");
  app.add_option("--dof-convention", dof_convention, "paper or adjusted")
      ->check(CLI::IsMember({"paper", "adjusted"}));
  app.add_option("--small-p-style", small_p_style, "less-than or zeros")
      ->check(CLI::IsMember({"less-than", "zeros"}));
  app.add_option("--paper-params", cfg.paper_params_path,
                 "published parameter table; replays it instead of fitting");
  app.add_option("--conferences", cfg.conference_map_path,
                 "team,conference mapping CSV");

  auto* fit = app.add_subcommand("fit", "fit per-team distributions and emit the expectation table");
  auto* report = app.add_subcommand("report", "fit plus the full validation battery");
  auto* independence = app.add_subcommand("independence", "rank-correlation independence tests");
  auto* gof = app.add_subcommand("gof", "chi-squared goodness-of-fit tests");
  auto* simulate = app.add_subcommand("simulate", "cross-check the closed form by simulation and quadrature");
  auto* plot = app.add_subcommand("plot", "per-team histogram and fitted density figures");
  for (auto* sub : {fit, report, independence, gof, simulate, plot})
    sub->fallthrough();

  simulate->add_option("--alpha-gs", cfg.sim_alpha_gs, "scoring scale");
  simulate->add_option("--alpha-ga", cfg.sim_alpha_ga, "allowing scale");
  simulate->add_option("--gamma", cfg.sim_gamma, "shared shape");
  simulate->add_option("--games", cfg.sim_games, "Monte Carlo draws");
  simulate->add_option("--seasons", cfg.sim_seasons,
                       "season count for the win histogram (0 skips it)");
  simulate->add_option("--games-per-season", cfg.games_per_season,
                       "games per simulated season");
  simulate->add_option("--tie-policy", tie_policy,
                       "continuous or integer-replay")
      ->check(CLI::IsMember({"continuous", "integer-replay"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: cli: " << e.what() << "\n";
    return 2;
  }

  cfg.tau_variant = tau_variant == "a" ? pythag::TauVariant::tau_a
                                       : pythag::TauVariant::tau_b;
  cfg.sided = sided == "one"   ? pythag::SidednessMode::one
              : sided == "two" ? pythag::SidednessMode::two
                               : pythag::SidednessMode::paper;
  cfg.dof_convention = dof_convention == "adjusted"
                           ? pythag::DofConvention::adjusted
                           : pythag::DofConvention::paper;
  cfg.small_p_style = small_p_style == "zeros" ? pythag::SmallPStyle::zeros
                                               : pythag::SmallPStyle::less_than;
  cfg.tie_policy = tie_policy == "integer-replay"
                       ? pythag::TiePolicy::integer_replay
                       : pythag::TiePolicy::continuous;

  if (fit->parsed())
    return pythag::run_command("fit", [&] { return pythag::cmd_fit(cfg); });
  if (report->parsed())
    return pythag::run_command("report",
                               [&] { return pythag::cmd_report(cfg); });
  if (independence->parsed())
    return pythag::run_command(
        "independence", [&] { return pythag::cmd_independence(cfg); });
  if (gof->parsed())
    return pythag::run_command("gof", [&] { return pythag::cmd_gof(cfg); });
  if (simulate->parsed())
    return pythag::run_command("simulate",
                               [&] { return pythag::cmd_simulate(cfg); });
  if (plot->parsed())
    return pythag::run_command("plot", [&] { return pythag::cmd_plot(cfg); });
  std::cerr << "error: cli: no command given\n";
  return 2;
}
