#pragma once

#include <cstdio>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pythag/fit.hpp"
#include "pythag/game_log.hpp"
#include "pythag/gof.hpp"
#include "pythag/pythagorean.hpp"
#include "pythag/rank_tests.hpp"

namespace pythag {

inline std::string format_fixed(double v, int dp) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", dp, v);
  std::string s = buf;
  // canonicalize "-0.00" and friends
  if (!s.empty() && s[0] == '-' &&
      s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

// parse the display string back so JSON artifacts carry exactly the
// precision the tables show
inline double rounded(double v, int dp) {
  return std::stod(format_fixed(v, dp));
}

enum class SmallPStyle { less_than, zeros };

inline std::string format_p(double p, SmallPStyle style) {
  if (p < 5e-4) return style == SmallPStyle::less_than ? "<0.001" : "0.000";
  return format_fixed(p, 3);
}

enum class SidednessMode { one, two, paper };

inline Sidedness resolve_sidedness(SidednessMode mode, RankStatistic kind) {
  if (mode == SidednessMode::one) return Sidedness::one_sided;
  if (mode == SidednessMode::two) return Sidedness::two_sided;
  return kind == RankStatistic::kendall_tau ? Sidedness::one_sided
                                            : Sidedness::two_sided;
}

// ---- shipped static tables ----

inline std::map<std::string, std::string> load_conference_map(
    std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  detail::strip_trailing_cr(line);
  if (line != "team,conference")
    throw ParseError(1, "unexpected header: " + line);
  std::map<std::string, std::string> out;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_trailing_cr(line);
    if (line.empty()) throw ParseError(line_no, "empty row");
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw ParseError(line_no, "expected team,conference");
    out[fields[0]] = fields[1];
  }
  return out;
}

struct ReferenceFitRow {
  std::string season;
  std::string conference;
  std::string team;
  int games_won = 0;
  int games_lost = 0;
  double actual_wl = 0.0;
  double pythag_wl = 0.0;
  double diff = 0.0;
  double gamma = 0.0;
  double alpha_gs = 0.0;
  double alpha_ga = 0.0;
};

inline constexpr std::string_view kReferenceFitHeader =
    "season,conference,team,games_won,games_lost,actual_wl,pythag_wl,diff,"
    "gamma,alpha_gs,alpha_ga";

inline std::vector<ReferenceFitRow> load_reference_fit_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  detail::strip_trailing_cr(line);
  if (line != kReferenceFitHeader)
    throw ParseError(1, "unexpected header: " + line);
  std::vector<ReferenceFitRow> rows;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_trailing_cr(line);
    if (line.empty()) throw ParseError(line_no, "empty row");
    const auto f = detail::split_csv_line(line);
    if (f.size() != 11)
      throw ParseError(line_no, "expected 11 fields, got " +
                                    std::to_string(f.size()));
    try {
      ReferenceFitRow r;
      r.season = f[0];
      r.conference = f[1];
      r.team = f[2];
      r.games_won = std::stoi(f[3]);
      r.games_lost = std::stoi(f[4]);
      r.actual_wl = std::stod(f[5]);
      r.pythag_wl = std::stod(f[6]);
      r.diff = std::stod(f[7]);
      r.gamma = std::stod(f[8]);
      r.alpha_gs = std::stod(f[9]);
      r.alpha_ga = std::stod(f[10]);
      rows.push_back(std::move(r));
    } catch (const std::exception&) {
      throw ParseError(line_no, "malformed numeric field");
    }
  }
  return rows;
}

// ---- fit table artifact ----

struct FitTableRow {
  std::string team;
  int games_won = 0;
  int games_lost = 0;
  double actual_wl = 0.0;
  double pythag_wl = 0.0;
  double diff = 0.0;
  double shape = 0.0;
  double alpha_gs = 0.0;
  double alpha_ga = 0.0;
};

struct FitTable {
  std::string season;
  std::string conference;
  std::vector<FitTableRow> rows;
};

inline constexpr std::string_view kFitTableHeader =
    "team,games_won,games_lost,actual_wl,pythag_wl,diff,gamma,alpha_gs,"
    "alpha_ga";

inline std::string fit_table_csv(const FitTable& table) {
  std::ostringstream os;
  os << kFitTableHeader << '\n';
  for (const auto& r : table.rows) {
    os << r.team << ',' << r.games_won << ',' << r.games_lost << ','
       << format_fixed(r.actual_wl, 3) << ',' << format_fixed(r.pythag_wl, 3)
       << ',' << format_fixed(r.diff, 2) << ',' << format_fixed(r.shape, 3)
       << ',' << format_fixed(r.alpha_gs, 3) << ','
       << format_fixed(r.alpha_ga, 3) << '\n';
  }
  return os.str();
}

inline nlohmann::ordered_json fit_table_json(
    std::span<const FitTable> tables) {
  nlohmann::ordered_json doc;
  doc["tables"] = nlohmann::ordered_json::array();
  for (const auto& t : tables) {
    nlohmann::ordered_json jt;
    jt["season"] = t.season;
    jt["conference"] = t.conference;
    jt["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json jr;
      jr["team"] = r.team;
      jr["games_won"] = r.games_won;
      jr["games_lost"] = r.games_lost;
      jr["actual_wl"] = rounded(r.actual_wl, 3);
      jr["pythag_wl"] = rounded(r.pythag_wl, 3);
      jr["diff"] = rounded(r.diff, 2);
      jr["gamma"] = rounded(r.shape, 3);
      jr["alpha_gs"] = rounded(r.alpha_gs, 3);
      jr["alpha_ga"] = rounded(r.alpha_ga, 3);
      jt["rows"].push_back(std::move(jr));
    }
    doc["tables"].push_back(std::move(jt));
  }
  return doc;
}

struct SeasonGammaRow {
  std::string season;
  GammaSummary summary;
};

inline std::string gamma_summary_csv(std::span<const SeasonGammaRow> rows) {
  std::ostringstream os;
  os << "season,mean_gamma,std_dev,teams\n";
  for (const auto& r : rows)
    os << r.season << ',' << format_fixed(r.summary.mean, 4) << ','
       << format_fixed(r.summary.std_dev, 4) << ',' << r.summary.n_teams
       << '\n';
  return os.str();
}

// ---- rank test artifact ----

struct RankTableRow {
  std::string team;
  std::optional<double> tau;
  std::optional<double> tau_p;
  std::optional<double> rho;
  std::optional<double> rho_p;
  std::string note;  // empty or "degenerate_ties"
};

struct RankTable {
  std::string season;
  std::vector<RankTableRow> rows;
  IndependenceSummary verdict;
  int family_size = 0;
};

inline std::string rank_table_csv(const RankTable& table,
                                  SmallPStyle style) {
  std::ostringstream os;
  os << "team,kendall_tau,kendall_p,spearman_rho,spearman_p,note\n";
  for (const auto& r : table.rows) {
    os << r.team << ',';
    os << (r.tau ? format_fixed(*r.tau, 3) : "") << ',';
    os << (r.tau_p ? format_p(*r.tau_p, style) : "") << ',';
    os << (r.rho ? format_fixed(*r.rho, 3) : "") << ',';
    os << (r.rho_p ? format_p(*r.rho_p, style) : "") << ',';
    os << r.note << '\n';
  }
  return os.str();
}

inline const char* verdict_text(const IndependenceSummary& s) {
  return s.reject_independence ? "reject independence"
                               : "fail to reject independence";
}

inline nlohmann::ordered_json rank_summary_json(
    std::span<const RankTable> tables) {
  nlohmann::ordered_json doc;
  doc["seasons"] = nlohmann::ordered_json::array();
  for (const auto& t : tables) {
    nlohmann::ordered_json js;
    js["season"] = t.season;
    js["family_size"] = t.family_size;
    js["strict_threshold"] = rounded(t.verdict.strict_threshold, 6);
    js["loose_threshold"] = rounded(t.verdict.loose_threshold, 6);
    js["flagged"] = static_cast<int>(t.verdict.flagged.size());
    js["verdict"] = verdict_text(t.verdict);
    doc["seasons"].push_back(std::move(js));
  }
  return doc;
}

// ---- goodness-of-fit artifact ----

struct GofTableRow {
  std::string team;
  Series series = Series::goals_scored;
  double chi_sq = 0.0;
  int dof = 0;
  double p_value = 0.0;
  std::string flag;  // "", "0.10", "0.05": tightest Bonferroni level crossed
};

struct GofTable {
  std::string season;
  std::vector<GofTableRow> rows;
};

inline std::string gof_flag(double p, const BonferroniPolicy& policy) {
  if (p < bonferroni_threshold(policy, policy.strict_alpha)) return "0.05";
  if (p < bonferroni_threshold(policy, policy.loose_alpha)) return "0.10";
  return "";
}

inline std::string gof_table_csv(const GofTable& table, SmallPStyle style) {
  std::ostringstream os;
  os << "team,series,chi_sq,dof,p_value,bonferroni_flag\n";
  for (const auto& r : table.rows)
    os << r.team << ',' << series_name(r.series) << ','
       << format_fixed(r.chi_sq, 3) << ',' << r.dof << ','
       << format_p(r.p_value, style) << ',' << r.flag << '\n';
  return os.str();
}

inline nlohmann::ordered_json gof_table_json(std::span<const GofTable> tables,
                                             SmallPStyle style) {
  nlohmann::ordered_json doc;
  doc["seasons"] = nlohmann::ordered_json::array();
  for (const auto& t : tables) {
    nlohmann::ordered_json js;
    js["season"] = t.season;
    js["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
      nlohmann::ordered_json jr;
      jr["team"] = r.team;
      jr["series"] = series_name(r.series);
      jr["chi_sq"] = rounded(r.chi_sq, 3);
      jr["dof"] = r.dof;
      jr["p_value"] = format_p(r.p_value, style);
      jr["bonferroni_flag"] = r.flag;
      js["rows"].push_back(std::move(jr));
    }
    doc["seasons"].push_back(std::move(js));
  }
  return doc;
}

}  // namespace pythag
