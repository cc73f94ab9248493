// Acceptance gate: each criterion prints one PASS/FAIL line (details
// indented below it) and the process exits nonzero if any checked
// criterion fails. Run with no arguments for all ten, or pass criterion
// numbers to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "pythag/cli.hpp"

namespace fs = std::filesystem;

namespace {

std::string data_path(const std::string& rel) {
  return std::string(PYTHAG_DATA_DIR) + "/" + rel;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::string headline;
  std::vector<std::string> details;
};

std::vector<pythag::ReferenceFitRow> reference_fit_rows() {
  std::ifstream in(data_path("reference/nhl_fit_tables.csv"));
  if (!in) throw std::runtime_error("missing reference fit table");
  return pythag::load_reference_fit_rows(in);
}

std::vector<std::vector<std::string>> csv_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    pythag::detail::strip_trailing_cr(line);
    if (!line.empty()) rows.push_back(pythag::detail::split_csv_line(line));
  }
  return rows;
}

// 1. recomputing the expectation from each row's published parameters
//    lands within 0.002 of the published column, all 90 rows
Outcome criterion_closed_form() {
  Outcome out;
  const auto rows = reference_fit_rows();
  double worst = 0.0;
  int bad = 0;
  for (const auto& r : rows) {
    const double rec = pythag::pythag_from_params(r.alpha_gs, r.alpha_ga, r.gamma);
    const double err = std::fabs(rec - r.pythag_wl);
    worst = std::max(worst, err);
    if (err > 0.002) {
      ++bad;
      out.details.push_back("  " + r.season + " " + r.team + ": recomputed " +
                            fmt("%.4f", rec) + " published " +
                            fmt("%.3f", r.pythag_wl));
    }
  }
  out.pass = rows.size() == 90 && bad == 0;
  out.headline = "closed-form fidelity: " + std::to_string(rows.size() - bad) +
                 "/" + std::to_string(rows.size()) +
                 " rows within 0.002 (max err " + fmt("%.5f", worst) + ")";
  return out;
}

// 2. the games-over-expectation column, rebuilt from published rates,
//    within 0.06 of the published value; at most 5 excess rows
Outcome criterion_diff() {
  Outcome out;
  const auto rows = reference_fit_rows();
  int excess = 0;
  for (const auto& r : rows) {
    const double rec = pythag::pythag_from_params(r.alpha_gs, r.alpha_ga, r.gamma);
    const double diff = (r.actual_wl - rec) * 82.0;
    const double residual = diff - r.diff;
    if (std::fabs(residual) > 0.06) {
      ++excess;
      out.details.push_back("  " + r.season + " " + r.team + ": recomputed " +
                            fmt("%.3f", diff) + " published " +
                            fmt("%.2f", r.diff) + " residual " +
                            fmt("%+.3f", residual));
    }
  }
  out.pass = excess <= 5;
  out.headline = "diff fidelity: " + std::to_string(excess) +
                 " of 90 rows exceed 0.06 (5 allowed)";
  return out;
}

// 3. chi-squared p column from the published (statistic, dof) pairs,
//    within 0.002; sub-millesimal prints checked as inequalities; the
//    second-team rows that repeat the first team's 2008-09 numbers are
//    excluded as misprints
Outcome criterion_gof_p() {
  Outcome out;
  const auto rows = csv_body(data_path("reference/nhl_gof_tables.csv"));
  int checked = 0;
  int skipped = 0;
  int bad = 0;
  double worst = 0.0;
  for (const auto& r : rows) {
    if (r[0] == "2008-09" && r[1] == "Buffalo Sabres") {
      ++skipped;
      continue;
    }
    const double chi = std::stod(r[3]);
    const double dof = std::stod(r[4]);
    const double p = pythag::reg_upper_gamma(dof / 2.0, chi / 2.0);
    ++checked;
    bool ok = true;
    if (r[5] == "<0.001") {
      ok = p < 1e-3;
    } else if (r[5] == "0.000") {
      ok = p < 5e-4;
    } else {
      const double err = std::fabs(p - std::stod(r[5]));
      worst = std::max(worst, err);
      ok = err <= 0.002;
    }
    if (!ok) {
      ++bad;
      out.details.push_back("  " + r[0] + " " + r[1] + " " + r[2] +
                            ": recomputed " + fmt("%.4f", p) + " printed " +
                            r[5]);
    }
  }
  out.pass = bad == 0 && checked == 178 && skipped == 2;
  out.headline = "chi-squared p fidelity: " + std::to_string(checked - bad) +
                 "/" + std::to_string(checked) +
                 " rows within tolerance (max err " + fmt("%.5f", worst) +
                 ", " + std::to_string(skipped) + " misprinted rows excluded)";
  return out;
}

// 4. ten spot rows of the rank-test tables, recomputed from only the
//    printed statistic and n = 82, within 0.005
Outcome criterion_rank_spots() {
  Outcome out;
  std::map<std::string, std::pair<double, double>> table;
  for (const auto& r : csv_body(data_path("reference/nhl_rank_tests.csv")))
    table[r[0] + "|" + r[1] + "|" + r[2]] = {std::stod(r[3]), std::stod(r[4])};

  const std::vector<std::string> spots = {
      "2008-09|Boston Bruins|kendall_tau",
      "2008-09|Boston Bruins|spearman_rho",
      "2010-11|Edmonton Oilers|kendall_tau",
      "2010-11|Edmonton Oilers|spearman_rho",
      "2008-09|Buffalo Sabres|kendall_tau",
      "2008-09|Carolina Hurricanes|kendall_tau",
      "2010-11|Minnesota Wild|kendall_tau",
      "2008-09|Detroit Red Wings|kendall_tau",
      "2010-11|Montreal Canadiens|spearman_rho",
      "2009-10|Carolina Hurricanes|spearman_rho",
  };
  int bad = 0;
  for (const auto& key : spots) {
    const auto it = table.find(key);
    if (it == table.end()) {
      ++bad;
      out.details.push_back("  missing reference row " + key);
      continue;
    }
    const auto [stat, printed] = it->second;
    const bool is_tau = key.find("kendall_tau") != std::string::npos;
    const double p =
        is_tau ? pythag::kendall_p(stat, 82, pythag::Sidedness::one_sided)
               : pythag::spearman_p(stat, 82, pythag::Sidedness::two_sided);
    const double err = std::fabs(p - printed);
    out.details.push_back("  " + key + ": recomputed " + fmt("%.4f", p) +
                          " printed " + fmt("%.3f", printed) + " err " +
                          fmt("%.4f", err));
    if (err > 0.005) ++bad;
  }
  out.pass = bad == 0;
  out.headline = "rank-test p approximation: " +
                 std::to_string(static_cast<int>(spots.size()) - bad) + "/" +
                 std::to_string(spots.size()) + " spot rows within 0.005";
  return out;
}

// 5. family-of-30 thresholds match the published three-figure values
Outcome criterion_bonferroni() {
  Outcome out;
  const pythag::BonferroniPolicy policy{30, 0.05, 0.10};
  const std::string strict =
      fmt("%.3g", pythag::bonferroni_threshold(policy, policy.strict_alpha));
  const std::string loose =
      fmt("%.3g", pythag::bonferroni_threshold(policy, policy.loose_alpha));
  out.pass = strict == "0.00167" && loose == "0.00333";
  out.headline = "Bonferroni thresholds: 0.05/30 -> " + strict +
                 ", 0.10/30 -> " + loose;
  return out;
}

// 6. closed form, quadrature and a million-game simulation agree across
//    the 5x5x3 parameter grid
Outcome criterion_triple_agreement() {
  Outcome out;
  const double alphas[] = {2.0, 3.0, 4.0, 5.0, 6.0};
  const double shapes[] = {1.5, 2.1, 3.0};
  int bad = 0;
  double worst_quad = 0.0;
  double worst_mc_sigma = 0.0;
  std::uint64_t seed = 5000;
  for (const double ags : alphas) {
    for (const double aga : alphas) {
      for (const double g : shapes) {
        ++seed;
        const double closed = pythag::pythag_from_params(ags, aga, g);
        const double quad = pythag::quadrature_win_prob(ags, aga, g);
        worst_quad = std::max(worst_quad, std::fabs(quad - closed));

        pythag::SimConfig cfg;
        cfg.alpha_gs = ags;
        cfg.alpha_ga = aga;
        cfg.gamma_shape = g;
        cfg.n_games = 1000000;
        cfg.seed = seed;
        const auto mc = pythag::mc_win_fraction(cfg);
        const double sigmas =
            std::fabs(mc.fraction - closed) / std::max(mc.std_err, 1e-12);
        worst_mc_sigma = std::max(worst_mc_sigma, sigmas);
        if (std::fabs(quad - closed) > 1e-6 || sigmas > 4.0) {
          ++bad;
          out.details.push_back(
              "  (" + fmt("%.1f", ags) + ", " + fmt("%.1f", aga) + ", " +
              fmt("%.1f", g) + "): quad err " + fmt("%.2e", quad - closed) +
              ", mc " + fmt("%.2f", sigmas) + " sigma");
        }
      }
    }
  }
  out.pass = bad == 0;
  out.headline = "triple agreement on 75 grid points: worst quadrature err " +
                 fmt("%.1e", worst_quad) + ", worst simulation gap " +
                 fmt("%.2f", worst_mc_sigma) + " sigma";
  return out;
}

// 7. synthetic maximum-likelihood recovery: 50 seeded 10^4-game sets
//    recover each parameter to 2% median relative error, and every
//    82-game fit satisfies the scale fixed point and local optimality
Outcome criterion_mle_recovery() {
  Outcome out;
  const double true_gs = 4.31;
  const double true_ga = 3.28;
  const double true_g = 2.11;
  const pythag::TranslatedWeibull gs(true_gs, true_g);
  const pythag::TranslatedWeibull ga(true_ga, true_g);

  const auto draw = [&](int n, std::uint64_t seed) {
    pythag::PhiloxRng rng(seed);
    std::vector<pythag::GoalPair> games(static_cast<std::size_t>(n));
    for (auto& game : games) {
      game.scored = static_cast<int>(std::lround(gs.sample(rng)));
      game.allowed = static_cast<int>(std::lround(ga.sample(rng)));
    }
    return games;
  };

  std::vector<double> err_g, err_gs, err_ga;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto games = draw(10000, seed);
    const auto fit = pythag::fit_team(games, {});
    err_g.push_back(std::fabs(fit.shape - true_g) / true_g);
    err_gs.push_back(std::fabs(fit.alpha_gs - true_gs) / true_gs);
    err_ga.push_back(std::fabs(fit.alpha_ga - true_ga) / true_ga);
  }
  const auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  const double med_g = median(err_g);
  const double med_gs = median(err_gs);
  const double med_ga = median(err_ga);
  const bool recovery_ok = med_g <= 0.02 && med_gs <= 0.02 && med_ga <= 0.02;
  if (!recovery_ok)
    out.details.push_back("  median relative errors: shape " +
                          fmt("%.4f", med_g) + " scale_gs " +
                          fmt("%.4f", med_gs) + " scale_ga " +
                          fmt("%.4f", med_ga));

  int invariant_bad = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto games = draw(82, seed + 900);
    const pythag::FitOptions opt;
    const auto fit = pythag::fit_team(games, opt);
    if (!fit.converged) {
      ++invariant_bad;
      out.details.push_back("  seed " + std::to_string(seed + 900) +
                            ": fit did not converge");
      continue;
    }
    const auto scored = pythag::detail::scored_column(games);
    const auto allowed = pythag::detail::allowed_column(games);
    const double a_gs = pythag::alpha_hat_given_gamma(scored, fit.shape);
    const double a_ga = pythag::alpha_hat_given_gamma(allowed, fit.shape);
    const bool fixed_point = std::fabs(a_gs - fit.alpha_gs) <= 1e-9 * a_gs &&
                             std::fabs(a_ga - fit.alpha_ga) <= 1e-9 * a_ga;
    bool optimal = true;
    const double at_hat = pythag::profile_log_lik(games, fit.shape);
    for (const double delta : {1e-3, 1e-2, 1e-1}) {
      for (const double g :
           {fit.shape - delta, fit.shape + delta}) {
        if (g <= opt.gamma_min || g >= opt.gamma_max) continue;
        if (pythag::profile_log_lik(games, g) > at_hat + 1e-9) optimal = false;
      }
    }
    if (!fixed_point || !optimal) {
      ++invariant_bad;
      out.details.push_back("  seed " + std::to_string(seed + 900) + ":" +
                            (fixed_point ? "" : " fixed-point broken") +
                            (optimal ? "" : " not a local optimum"));
    }
  }
  out.pass = recovery_ok && invariant_bad == 0;
  out.headline = "synthetic recovery: median errors shape " +
                 fmt("%.2f%%", 100.0 * med_g) + " scales " +
                 fmt("%.2f%%", 100.0 * med_gs) + "/" +
                 fmt("%.2f%%", 100.0 * med_ga) + "; " +
                 std::to_string(50 - invariant_bad) +
                 "/50 season fits hold both invariants";
  return out;
}

// 8. per-season summary of the published shape column against the
//    published mean (std dev) pairs, within 0.005 each
Outcome criterion_gamma_summary() {
  Outcome out;
  const auto rows = reference_fit_rows();
  std::map<std::string, std::vector<pythag::TeamFit>> by_season;
  for (const auto& r : rows) {
    pythag::TeamFit f;
    f.team_id = r.team;
    f.season = r.season;
    f.shape = r.gamma;
    f.converged = true;
    by_season[r.season].push_back(std::move(f));
  }
  const std::map<std::string, std::pair<double, double>> published = {
      {"2008-09", {2.15, 0.133}},
      {"2009-10", {2.19, 0.14}},
      {"2010-11", {2.10, 0.144}},
  };
  int bad = 0;
  for (const auto& [season, fits] : by_season) {
    const auto summary = pythag::season_gamma_summary(fits);
    const auto [pub_mean, pub_sd] = published.at(season);
    const double mean_err = summary.mean - pub_mean;
    const double sd_err = summary.std_dev - pub_sd;
    const bool ok =
        std::fabs(mean_err) <= 0.005 && std::fabs(sd_err) <= 0.005;
    if (!ok) ++bad;
    out.details.push_back(
        "  " + season + ": recomputed " + fmt("%.4f", summary.mean) + " (" +
        fmt("%.4f", summary.std_dev) + ") published " + fmt("%.2f", pub_mean) +
        " (" + fmt("%.3f", pub_sd) + ") residuals " + fmt("%+.4f", mean_err) +
        " / " + fmt("%+.4f", sd_err) + (ok ? "" : "  <-- out of tolerance"));
  }
  out.pass = bad == 0 && by_season.size() == 3;
  out.headline = "season shape summaries: " +
                 std::to_string(3 - bad) + "/3 seasons within 0.005";
  return out;
}

// 9. rank statistics against brute-force definitions, and the special
//    function identities the rest of the suite leans on
Outcome criterion_oracles() {
  Outcome out;
  pythag::PhiloxRng rng(0xacce97ed);
  const auto rand_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng.next_double() * (hi - lo + 1));
  };

  int rank_bad = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rand_int(2, 8);
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> y(static_cast<std::size_t>(n));
    bool degenerate = true;
    while (degenerate) {
      for (auto& v : x) v = rand_int(0, 3);
      for (auto& v : y) v = rand_int(0, 3);
      const auto spread = [](const std::vector<double>& v) {
        return *std::max_element(v.begin(), v.end()) >
               *std::min_element(v.begin(), v.end());
      };
      degenerate = !spread(x) || !spread(y);
    }

    long con_dis = 0, pairs = 0, xtie = 0, ytie = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        ++pairs;
        const double dx = x[i] - x[j];
        const double dy = y[i] - y[j];
        if (dx == 0.0) ++xtie;
        if (dy == 0.0) ++ytie;
        if (dx * dy > 0.0) ++con_dis;
        if (dx * dy < 0.0) --con_dis;
      }
    }
    const double brute_tau =
        static_cast<double>(con_dis) /
        std::sqrt(static_cast<double>(pairs - xtie) *
                  static_cast<double>(pairs - ytie));
    if (std::fabs(pythag::kendall_tau(x, y, pythag::TauVariant::tau_b) -
                  std::clamp(brute_tau, -1.0, 1.0)) > 1e-12)
      ++rank_bad;

    const auto ranks = [n](const std::vector<double>& v) {
      std::vector<double> r(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        double below = 0.0, equal = 0.0;
        for (int j = 0; j < n; ++j) {
          if (v[j] < v[i]) ++below;
          if (v[j] == v[i]) ++equal;
        }
        r[static_cast<std::size_t>(i)] = below + (equal + 1.0) / 2.0;
      }
      return r;
    };
    const auto rx = ranks(x);
    const auto ry = ranks(y);
    const double mean_rank = (n + 1.0) / 2.0;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      sxy += (rx[k] - mean_rank) * (ry[k] - mean_rank);
      sxx += (rx[k] - mean_rank) * (rx[k] - mean_rank);
      syy += (ry[k] - mean_rank) * (ry[k] - mean_rank);
    }
    const double brute_rho = sxy / std::sqrt(sxx * syy);
    if (std::fabs(pythag::spearman_rho(x, y) -
                  std::clamp(brute_rho, -1.0, 1.0)) > 1e-12)
      ++rank_bad;
  }
  if (rank_bad > 0)
    out.details.push_back("  " + std::to_string(rank_bad) +
                          " brute-force rank mismatches");

  int fn_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 0.1 + 49.9 * rng.next_double();
    const double lhs = pythag::ln_gamma(x + 1.0);
    const double rhs = pythag::ln_gamma(x) + std::log(x);
    if (std::fabs(lhs - rhs) > 1e-10 * std::max(1.0, std::fabs(lhs))) ++fn_bad;
  }
  for (int i = 0; i < 500; ++i) {
    const double s = 0.2 + 30.0 * rng.next_double();
    const double x = 40.0 * rng.next_double() + 1e-6;
    const double total =
        pythag::reg_lower_gamma(s, x) + pythag::reg_upper_gamma(s, x);
    if (std::fabs(total - 1.0) > 1e-12) ++fn_bad;
  }
  for (double x = 0.0; x <= 6.0; x += 0.125)
    if (pythag::erf_fn(-x) != -pythag::erf_fn(x)) ++fn_bad;
  if (fn_bad > 0)
    out.details.push_back("  " + std::to_string(fn_bad) +
                          " special-function identity failures");

  out.pass = rank_bad == 0 && fn_bad == 0;
  out.headline =
      "oracle equivalence: 1000 brute-force rank checks and the gamma/erf "
      "identity suites " +
      std::string(out.pass ? "all agree" : "disagree");
  return out;
}

// 10. the full fixture pipeline, run twice, emits byte-identical artifacts
Outcome criterion_determinism() {
  Outcome out;
  const fs::path base = fs::temp_directory_path() / "pythag_acceptance";
  fs::remove_all(base);
  const auto run_all = [&](const fs::path& dir) {
    pythag::RunConfig cfg;
    cfg.input_path = data_path("fixtures/league_2020-21.csv");
    cfg.out_dir = (base / dir).string();
    fs::create_directories(cfg.out_dir);
    pythag::cmd_fit(cfg);
    pythag::cmd_gof(cfg);
    pythag::cmd_independence(cfg);
  };
  run_all("a");
  run_all("b");

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  int files = 0;
  int mismatched = 0;
  for (const auto& entry : fs::directory_iterator(base / "a")) {
    ++files;
    const auto name = entry.path().filename();
    if (!fs::exists(base / "b" / name) ||
        slurp(entry.path()) != slurp(base / "b" / name)) {
      ++mismatched;
      out.details.push_back("  differs: " + name.string());
    }
  }
  out.pass = files >= 5 && mismatched == 0;
  out.headline = "pipeline determinism: " + std::to_string(files - mismatched) +
                 "/" + std::to_string(files) + " artifacts byte-identical";
  return out;
}

struct Criterion {
  Outcome (*run)();
  double budget_seconds;
};

const Criterion kCriteria[] = {
    {criterion_closed_form, 1.0},  {criterion_diff, 1.0},
    {criterion_gof_p, 1.0},        {criterion_rank_spots, 1.0},
    {criterion_bonferroni, 1.0},   {criterion_triple_agreement, 60.0},
    {criterion_mle_recovery, 60.0}, {criterion_gamma_summary, 1.0},
    {criterion_oracles, 10.0},     {criterion_determinism, 30.0},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int n = std::atoi(argv[i]);
    if (n < 1 || n > 10) {
      std::fprintf(stderr, "usage: %s [criterion 1-10]...\n", argv[0]);
      return 2;
    }
    selected.push_back(n);
  }
  if (selected.empty())
    for (int n = 1; n <= 10; ++n) selected.push_back(n);

  bool all_pass = true;
  for (const int n : selected) {
    const auto& criterion = kCriteria[n - 1];
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criterion.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.headline = std::string("threw: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > criterion.budget_seconds) {
      out.pass = false;
      out.headline += " [over the " + fmt("%.0f", criterion.budget_seconds) +
                      "s budget]";
    }
    std::printf("C%d %s %s [%.2fs]\n", n, out.pass ? "PASS" : "FAIL",
                out.headline.c_str(), elapsed);
    for (const auto& d : out.details) std::printf("%s\n", d.c_str());
    if (!out.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}
