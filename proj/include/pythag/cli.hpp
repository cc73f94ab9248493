#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "pythag/fit.hpp"
#include "pythag/game_log.hpp"
#include "pythag/gof.hpp"
#include "pythag/pythagorean.hpp"
#include "pythag/rank_tests.hpp"
#include "pythag/report.hpp"
#include "pythag/simulate.hpp"
#include "pythag/svg_plot.hpp"

namespace pythag {

struct RunConfig {
  std::string input_path;
  std::string out_dir = "out";
  std::vector<std::string> seasons;
  std::vector<std::string> teams;
  std::string format = "all";  // csv | json | svg | all
  std::uint64_t seed = 1;
  FitOptions fit_options;
  TauVariant tau_variant = TauVariant::tau_b;
  SidednessMode sided = SidednessMode::paper;
  double min_expected = 1.0;
  DofConvention dof_convention = DofConvention::paper;
  SmallPStyle small_p_style = SmallPStyle::less_than;
  std::string paper_params_path;  // replay a published table, skipping the fit
  std::string conference_map_path;
  // simulate
  double sim_alpha_gs = 4.31;
  double sim_alpha_ga = 3.28;
  double sim_gamma = 2.11;
  long sim_games = 1000000;
  long sim_seasons = 0;
  int games_per_season = 82;
  TiePolicy tie_policy = TiePolicy::continuous;
};

namespace detail {

inline void write_text_file(const std::filesystem::path& path,
                            std::string_view content) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open for writing: " + path.string());
  os << content;
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

inline bool selected(const std::vector<std::string>& filter,
                     const std::string& value) {
  return filter.empty() ||
         std::find(filter.begin(), filter.end(), value) != filter.end();
}

inline std::string file_token(std::string s) {
  for (auto& c : s)
    if (c == ' ' || c == '/' || c == '\\') c = '_';
  return s;
}

inline bool emit_csv(const RunConfig& cfg) {
  return cfg.format == "csv" || cfg.format == "all" || cfg.format == "svg";
}

inline bool emit_json(const RunConfig& cfg) {
  return cfg.format == "json" || cfg.format == "all" || cfg.format == "svg";
}

inline void check_format(const RunConfig& cfg) {
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "svg" &&
      cfg.format != "all")
    throw std::runtime_error("unknown format: " + cfg.format);
}

inline bool is_reference_season(const std::string& s) {
  return s == "2008-09" || s == "2009-10" || s == "2010-11";
}

}  // namespace detail

inline std::map<SeasonKey, TeamSeason> load_selected_seasons(
    const RunConfig& cfg) {
  if (cfg.input_path.empty())
    throw std::runtime_error("no input file given");
  std::ifstream in(cfg.input_path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input: " + cfg.input_path);
  const auto records = parse_game_log(in);
  auto all = aggregate_seasons(records);
  std::map<SeasonKey, TeamSeason> picked;
  for (auto& [key, ts] : all)
    if (detail::selected(cfg.seasons, key.first) &&
        detail::selected(cfg.teams, key.second))
      picked.emplace(key, std::move(ts));
  if (picked.empty()) throw std::runtime_error("no teams selected");
  return picked;
}

inline TeamFit fit_team_season(const TeamSeason& ts, const FitOptions& opt) {
  TeamFit fit = fit_team(ts.games, opt);
  fit.team_id = ts.team;
  fit.season = ts.season;
  if (!fit.converged)
    std::cerr << "warning: fit did not converge for " << ts.team << " "
              << ts.season << "\n";
  return fit;
}

inline int cmd_fit(const RunConfig& cfg) {
  detail::check_format(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  std::map<std::pair<std::string, std::string>, FitTable> grouped;
  std::map<std::string, std::vector<TeamFit>> fits_by_season;

  if (!cfg.paper_params_path.empty()) {
    std::ifstream in(cfg.paper_params_path, std::ios::binary);
    if (!in)
      throw std::runtime_error("cannot open params table: " +
                               cfg.paper_params_path);
    const auto rows = load_reference_fit_rows(in);
    for (const auto& row : rows) {
      if (!detail::selected(cfg.seasons, row.season) ||
          !detail::selected(cfg.teams, row.team))
        continue;
      FitTableRow r;
      r.team = row.team;
      r.games_won = row.games_won;
      r.games_lost = row.games_lost;
      const int games = row.games_won + row.games_lost;
      r.actual_wl = static_cast<double>(row.games_won) / games;
      r.pythag_wl = pythag_from_params(row.alpha_gs, row.alpha_ga, row.gamma);
      r.diff = diff_games(r.actual_wl, r.pythag_wl, games);
      r.shape = row.gamma;
      r.alpha_gs = row.alpha_gs;
      r.alpha_ga = row.alpha_ga;
      grouped[{row.season, row.conference}].rows.push_back(std::move(r));
      TeamFit f;
      f.team_id = row.team;
      f.season = row.season;
      f.shape = row.gamma;
      f.alpha_gs = row.alpha_gs;
      f.alpha_ga = row.alpha_ga;
      f.converged = true;
      fits_by_season[row.season].push_back(std::move(f));
    }
    if (grouped.empty()) throw std::runtime_error("no teams selected");
  } else {
    const auto seasons = load_selected_seasons(cfg);
    std::map<std::string, std::string> conferences;
    if (!cfg.conference_map_path.empty()) {
      std::ifstream in(cfg.conference_map_path, std::ios::binary);
      if (!in)
        throw std::runtime_error("cannot open conference map: " +
                                 cfg.conference_map_path);
      conferences = load_conference_map(in);
    }
    for (const auto& [key, ts] : seasons) {
      if (detail::is_reference_season(ts.season) && ts.games.size() != 82)
        std::cerr << "warning: " << ts.team << " " << ts.season << " has "
                  << ts.games.size() << " games, expected 82\n";
      const TeamFit fit = fit_team_season(ts, cfg.fit_options);
      const PythagReport rep = build_report(fit, ts.wins, ts.losses);
      FitTableRow r;
      r.team = rep.team_id;
      r.games_won = rep.games_won;
      r.games_lost = rep.games_lost;
      r.actual_wl = rep.actual_wl;
      r.pythag_wl = rep.pythag_wl;
      r.diff = rep.diff;
      r.shape = rep.shape;
      r.alpha_gs = rep.alpha_gs;
      r.alpha_ga = rep.alpha_ga;
      const auto conf_it = conferences.find(ts.team);
      const std::string conference =
          conf_it == conferences.end() ? "all" : conf_it->second;
      grouped[{ts.season, conference}].rows.push_back(std::move(r));
      fits_by_season[ts.season].push_back(fit);
    }
  }

  std::vector<FitTable> tables;
  for (auto& [key, table] : grouped) {
    table.season = key.first;
    table.conference = key.second;
    tables.push_back(std::move(table));
  }
  std::vector<SeasonGammaRow> summaries;
  for (const auto& [season, fits] : fits_by_season)
    summaries.push_back({season, season_gamma_summary(fits)});

  const std::filesystem::path out(cfg.out_dir);
  if (detail::emit_csv(cfg)) {
    for (const auto& t : tables)
      detail::write_text_file(out / ("fit_" + detail::file_token(t.season) +
                                     "_" + detail::file_token(t.conference) +
                                     ".csv"),
                              fit_table_csv(t));
    detail::write_text_file(out / "gamma_summary.csv",
                            gamma_summary_csv(summaries));
  }
  if (detail::emit_json(cfg)) {
    auto doc = fit_table_json(tables);
    doc["gamma_summaries"] = nlohmann::ordered_json::array();
    for (const auto& s : summaries) {
      nlohmann::ordered_json js;
      js["season"] = s.season;
      js["mean_gamma"] = rounded(s.summary.mean, 4);
      js["std_dev"] = rounded(s.summary.std_dev, 4);
      js["teams"] = s.summary.n_teams;
      doc["gamma_summaries"].push_back(std::move(js));
    }
    detail::write_text_file(out / "fit_tables.json", doc.dump(2) + "\n");
  }
  return 0;
}

inline int cmd_independence(const RunConfig& cfg) {
  detail::check_format(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto seasons = load_selected_seasons(cfg);
  std::map<std::string, std::vector<const TeamSeason*>> by_season;
  for (const auto& [key, ts] : seasons) by_season[key.first].push_back(&ts);

  std::vector<RankTable> tables;
  for (const auto& [season, teams] : by_season) {
    RankTable table;
    table.season = season;
    table.family_size = static_cast<int>(teams.size());
    std::vector<RankTestResult> results;
    for (const TeamSeason* ts : teams) {
      RankTableRow row;
      row.team = ts->team;
      std::vector<double> gs;
      std::vector<double> ga;
      gs.reserve(ts->games.size());
      ga.reserve(ts->games.size());
      for (const auto& g : ts->games) {
        gs.push_back(static_cast<double>(g.scored));
        ga.push_back(static_cast<double>(g.allowed));
      }
      const int n = static_cast<int>(ts->games.size());
      try {
        const double tau = kendall_tau(gs, ga, cfg.tau_variant);
        const double rho = spearman_rho(gs, ga);
        const Sidedness tau_side =
            resolve_sidedness(cfg.sided, RankStatistic::kendall_tau);
        const Sidedness rho_side =
            resolve_sidedness(cfg.sided, RankStatistic::spearman_rho);
        row.tau = tau;
        row.tau_p = kendall_p(tau, n, tau_side);
        row.rho = rho;
        row.rho_p = spearman_p(rho, n, rho_side);
        results.push_back({ts->team, season, RankStatistic::kendall_tau, tau,
                           n, *row.tau_p, tau_side});
        results.push_back({ts->team, season, RankStatistic::spearman_rho, rho,
                           n, *row.rho_p, rho_side});
      } catch (const DegenerateTiesError&) {
        row.note = "degenerate_ties";
        std::cerr << "warning: degenerate ties for " << ts->team << " "
                  << season << "\n";
      }
      table.rows.push_back(std::move(row));
    }
    const BonferroniPolicy policy{table.family_size, 0.05, 0.10};
    if (results.empty()) {
      table.verdict.strict_threshold =
          bonferroni_threshold(policy, policy.strict_alpha);
      table.verdict.loose_threshold =
          bonferroni_threshold(policy, policy.loose_alpha);
    } else {
      table.verdict = independence_verdict(results, policy);
    }
    tables.push_back(std::move(table));
  }

  const std::filesystem::path out(cfg.out_dir);
  if (detail::emit_csv(cfg))
    for (const auto& t : tables)
      detail::write_text_file(
          out / ("independence_" + detail::file_token(t.season) + ".csv"),
          rank_table_csv(t, cfg.small_p_style));
  if (detail::emit_json(cfg))
    detail::write_text_file(out / "independence_summary.json",
                            rank_summary_json(tables).dump(2) + "\n");
  for (const auto& t : tables)
    std::cout << t.season << ": " << verdict_text(t.verdict) << "\n";
  return 0;
}

inline int cmd_gof(const RunConfig& cfg) {
  detail::check_format(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto seasons = load_selected_seasons(cfg);
  std::map<std::string, GofTable> by_season;
  std::map<std::string, int> family;
  for (const auto& [key, ts] : seasons) ++family[key.first];

  for (const auto& [key, ts] : seasons) {
    const TeamFit fit = fit_team_season(ts, cfg.fit_options);
    const BonferroniPolicy policy{family[ts.season], 0.05, 0.10};
    GofTable& table = by_season[ts.season];
    table.season = ts.season;
    for (const Series series :
         {Series::goals_scored, Series::goals_allowed}) {
      const auto goals = series == Series::goals_scored
                             ? detail::scored_column(ts.games)
                             : detail::allowed_column(ts.games);
      const TranslatedWeibull d(series == Series::goals_scored ? fit.alpha_gs
                                                               : fit.alpha_ga,
                                fit.shape);
      const auto edges = build_bins(goals, cfg.min_expected, d);
      const auto res =
          chi_squared_gof(goals, d, edges, cfg.dof_convention);
      GofTableRow row;
      row.team = ts.team;
      row.series = series;
      row.chi_sq = res.chi_sq;
      row.dof = res.dof;
      row.p_value = res.p_value;
      row.flag = gof_flag(res.p_value, policy);
      table.rows.push_back(std::move(row));
    }
  }

  std::vector<GofTable> tables;
  for (auto& [season, table] : by_season) tables.push_back(std::move(table));
  const std::filesystem::path out(cfg.out_dir);
  if (detail::emit_csv(cfg))
    for (const auto& t : tables)
      detail::write_text_file(
          out / ("gof_" + detail::file_token(t.season) + ".csv"),
          gof_table_csv(t, cfg.small_p_style));
  if (detail::emit_json(cfg))
    detail::write_text_file(
        out / "gof_tables.json",
        gof_table_json(tables, cfg.small_p_style).dump(2) + "\n");
  return 0;
}

inline int cmd_simulate(const RunConfig& cfg) {
  detail::check_format(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  SimConfig sc;
  sc.alpha_gs = cfg.sim_alpha_gs;
  sc.alpha_ga = cfg.sim_alpha_ga;
  sc.gamma_shape = cfg.sim_gamma;
  sc.n_games = cfg.sim_games;
  sc.seed = cfg.seed;
  sc.tie_policy = cfg.tie_policy;

  const double closed =
      pythag_from_params(sc.alpha_gs, sc.alpha_ga, sc.gamma_shape);
  const double quad =
      quadrature_win_prob(sc.alpha_gs, sc.alpha_ga, sc.gamma_shape);
  const WinFraction mc = mc_win_fraction(sc);

  nlohmann::ordered_json doc;
  doc["alpha_gs"] = sc.alpha_gs;
  doc["alpha_ga"] = sc.alpha_ga;
  doc["gamma"] = sc.gamma_shape;
  doc["seed"] = sc.seed;
  doc["tie_policy"] =
      sc.tie_policy == TiePolicy::continuous ? "continuous" : "integer_replay";
  doc["closed_form"] = rounded(closed, 6);
  doc["quadrature"] = rounded(quad, 6);
  doc["mc"] = {{"games", sc.n_games},
               {"fraction", rounded(mc.fraction, 6)},
               {"std_err", rounded(mc.std_err, 6)},
               {"deviation_from_closed_form",
                rounded(mc.fraction - closed, 6)}};
  if (cfg.sim_seasons > 0) {
    const auto hist =
        season_outcome_distribution(sc, cfg.games_per_season, cfg.sim_seasons);
    double total_wins = 0.0;
    for (std::size_t w = 0; w < hist.size(); ++w)
      total_wins += static_cast<double>(w) * static_cast<double>(hist[w]);
    nlohmann::ordered_json js;
    js["count"] = cfg.sim_seasons;
    js["games_per_season"] = cfg.games_per_season;
    js["mean_wins"] =
        rounded(total_wins / static_cast<double>(cfg.sim_seasons), 4);
    js["histogram"] = hist;
    doc["seasons"] = std::move(js);
  }
  detail::write_text_file(std::filesystem::path(cfg.out_dir) /
                              "simulate.json",
                          doc.dump(2) + "\n");
  std::cout << "closed_form " << format_fixed(closed, 6) << " quadrature "
            << format_fixed(quad, 6) << " mc " << format_fixed(mc.fraction, 6)
            << " +/- " << format_fixed(mc.std_err, 6) << "\n";
  return 0;
}

inline int cmd_plot(const RunConfig& cfg) {
  detail::check_format(cfg);
  std::filesystem::create_directories(cfg.out_dir);
  const auto seasons = load_selected_seasons(cfg);
  const std::filesystem::path out(cfg.out_dir);
  for (const auto& [key, ts] : seasons) {
    const TeamFit fit = fit_team_season(ts, cfg.fit_options);
    const auto figure =
        render_team_figure(ts.team, ts.season, ts.games, fit);
    const std::string stem =
        "plot_" + detail::file_token(ts.team) + "_" +
        detail::file_token(ts.season);
    if (cfg.format != "csv")
      detail::write_text_file(out / (stem + ".svg"), figure.svg);
    if (cfg.format != "svg") {
      detail::write_text_file(out / (stem + "_density.csv"),
                              figure.density_csv);
      detail::write_text_file(out / (stem + "_counts.csv"),
                              figure.counts_csv);
    }
  }
  return 0;
}

inline int cmd_report(const RunConfig& cfg) {
  cmd_fit(cfg);
  if (cfg.paper_params_path.empty()) {
    cmd_independence(cfg);
    cmd_gof(cfg);
  }
  return 0;
}

inline int run_command(std::string_view name,
                       const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::cerr << "error: " << name << ": " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pythag
