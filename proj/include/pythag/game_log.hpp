#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pythag/translated_weibull.hpp"

namespace pythag {

struct ParseError : std::runtime_error {
  ParseError(long line, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line) + ": " + reason),
        line(line) {}
  long line;
};

struct DuplicateGameError : std::runtime_error {
  DuplicateGameError(const std::string& team, const std::string& date)
      : std::runtime_error("duplicate game for " + team + " on " + date) {}
};

struct EmptySeasonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// outcome says only whether the team won; OT/SO wins are plain wins, while
// OT/SO losses stay distinguishable from regulation losses
enum class Outcome { win, loss, ot_loss, so_loss };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::win: return "win";
    case Outcome::loss: return "loss";
    case Outcome::ot_loss: return "ot_loss";
    case Outcome::so_loss: return "so_loss";
  }
  return "";
}

inline std::optional<Outcome> outcome_from(std::string_view s) {
  if (s == "win") return Outcome::win;
  if (s == "loss") return Outcome::loss;
  if (s == "ot_loss") return Outcome::ot_loss;
  if (s == "so_loss") return Outcome::so_loss;
  return std::nullopt;
}

struct GameRecord {
  std::string date;
  std::string season;
  std::string team;
  std::string opponent;
  int goals_for = 0;
  int goals_against = 0;
  Outcome outcome = Outcome::win;

  bool operator==(const GameRecord&) const = default;
};

inline constexpr std::string_view kGameLogHeader =
    "date,season,team,opponent,goals_for,goals_against,outcome";

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

inline void strip_trailing_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline bool is_iso_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (const std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  const int month = (s[5] - '0') * 10 + (s[6] - '0');
  const int day = (s[8] - '0') * 10 + (s[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

inline std::optional<int> parse_nonneg_int(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  int v = 0;
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace detail

inline std::vector<GameRecord> parse_game_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  detail::strip_trailing_cr(line);
  if (line != kGameLogHeader)
    throw ParseError(1, "unexpected header: " + line);

  std::vector<GameRecord> records;
  std::set<std::pair<std::string, std::string>> seen;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_trailing_cr(line);
    if (line.empty()) throw ParseError(line_no, "empty row");
    const auto fields = detail::split_csv_line(line);
    if (fields.size() != 7)
      throw ParseError(line_no, "expected 7 fields, got " +
                                    std::to_string(fields.size()));
    GameRecord r;
    r.date = fields[0];
    r.season = fields[1];
    r.team = fields[2];
    r.opponent = fields[3];
    if (!detail::is_iso_date(r.date))
      throw ParseError(line_no, "date must be ISO-8601 (YYYY-MM-DD)");
    if (r.season.empty()) throw ParseError(line_no, "season must be nonempty");
    if (r.team.empty() || r.opponent.empty())
      throw ParseError(line_no, "team and opponent must be nonempty");
    if (r.team == r.opponent)
      throw ParseError(line_no, "team cannot play itself");
    const auto gf = detail::parse_nonneg_int(fields[4]);
    if (!gf)
      throw ParseError(line_no, "goals_for must be a nonnegative integer");
    const auto ga = detail::parse_nonneg_int(fields[5]);
    if (!ga)
      throw ParseError(line_no, "goals_against must be a nonnegative integer");
    r.goals_for = *gf;
    r.goals_against = *ga;
    const auto oc = outcome_from(fields[6]);
    if (!oc)
      throw ParseError(line_no,
                       "outcome must be one of win, loss, ot_loss, so_loss");
    r.outcome = *oc;
    if (!seen.emplace(r.team, r.date).second)
      throw DuplicateGameError(r.team, r.date);
    records.push_back(std::move(r));
  }
  return records;
}

inline void write_game_log(std::span<const GameRecord> records,
                           std::ostream& out) {
  out << kGameLogHeader << '\n';
  for (const auto& r : records)
    out << r.date << ',' << r.season << ',' << r.team << ',' << r.opponent
        << ',' << r.goals_for << ',' << r.goals_against << ','
        << outcome_name(r.outcome) << '\n';
}

struct TeamSeason {
  std::string team;
  std::string season;
  std::vector<GoalPair> games;  // date order
  int wins = 0;
  int losses = 0;
};

// map key: (season, team)
using SeasonKey = std::pair<std::string, std::string>;

inline std::map<SeasonKey, TeamSeason> aggregate_seasons(
    std::span<const GameRecord> records) {
  struct Row {
    std::string date;
    GoalPair goals;
    Outcome outcome;
  };
  std::map<SeasonKey, std::vector<Row>> grouped;
  for (const auto& r : records)
    grouped[{r.season, r.team}].push_back(
        {r.date, {r.goals_for, r.goals_against}, r.outcome});

  std::map<SeasonKey, TeamSeason> out;
  for (auto& [key, rows] : grouped) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    TeamSeason ts;
    ts.season = key.first;
    ts.team = key.second;
    for (const auto& row : rows) {
      ts.games.push_back(row.goals);
      if (row.outcome == Outcome::win)
        ++ts.wins;
      else
        ++ts.losses;
    }
    out.emplace(key, std::move(ts));
  }
  return out;
}

inline double actual_wl(const TeamSeason& ts) {
  if (ts.games.empty())
    throw EmptySeasonError("actual_wl: season has no games");
  return static_cast<double>(ts.wins) /
         static_cast<double>(ts.wins + ts.losses);
}

}  // namespace pythag
