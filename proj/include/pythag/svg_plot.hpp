#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pythag/fit.hpp"
#include "pythag/report.hpp"
#include "pythag/translated_weibull.hpp"

namespace pythag {

inline constexpr std::string_view kToolVersion = "pythag 0.1.0";

struct FigureArtifacts {
  std::string svg;
  std::string density_csv;  // x, gs_density, ga_density
  std::string counts_csv;   // goals, observed and expected counts per series
};

namespace detail {

struct PanelSeries {
  std::vector<std::int64_t> counts;
  const TranslatedWeibull* dist = nullptr;
  std::string label;
};

inline void render_panel(std::ostringstream& os, const PanelSeries& s,
                         double origin_x, int max_goal, double n_games,
                         double y_max) {
  constexpr double plot_w = 360.0;
  constexpr double plot_h = 260.0;
  constexpr double top = 40.0;
  const double bottom = top + plot_h;
  const double bar_w = plot_w / (max_goal + 2.0);
  const auto x_of = [&](double goal) {
    return origin_x + (goal + 0.5) * bar_w;
  };
  const auto y_of = [&](double count) {
    return bottom - plot_h * count / y_max;
  };

  os << "<g>\n";
  os << "<text x=\"" << format_fixed(origin_x + plot_w / 2.0, 1)
     << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << s.label
     << "</text>\n";
  // axes
  os << "<line x1=\"" << format_fixed(origin_x, 1) << "\" y1=\""
     << format_fixed(bottom, 1) << "\" x2=\""
     << format_fixed(origin_x + plot_w, 1) << "\" y2=\""
     << format_fixed(bottom, 1) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << format_fixed(origin_x, 1) << "\" y1=\""
     << format_fixed(top, 1) << "\" x2=\"" << format_fixed(origin_x, 1)
     << "\" y2=\"" << format_fixed(bottom, 1) << "\" stroke=\"black\"/>\n";
  // bars, one per integer goal count
  for (int v = 0; v <= max_goal; ++v) {
    const double c =
        v < static_cast<int>(s.counts.size())
            ? static_cast<double>(s.counts[static_cast<std::size_t>(v)])
            : 0.0;
    if (c == 0.0) continue;
    os << "<rect x=\"" << format_fixed(x_of(v - 0.5), 2) << "\" y=\""
       << format_fixed(y_of(c), 2) << "\" width=\"" << format_fixed(bar_w, 2)
       << "\" height=\"" << format_fixed(bottom - y_of(c), 2)
       << "\" fill=\"#8aa8c8\" stroke=\"#46648c\"/>\n";
  }
  // fitted density scaled to counts
  os << "<polyline fill=\"none\" stroke=\"#c03030\" stroke-width=\"1.5\" "
        "points=\"";
  const double x_hi = max_goal + 1.5;
  const int steps = static_cast<int>((x_hi + 0.5) / 0.02);
  for (int k = 0; k <= steps; ++k) {
    const double x = -0.5 + 0.02 * k;
    const double y = n_games * s.dist->pdf(x);
    os << format_fixed(x_of(x), 2) << ',' << format_fixed(y_of(y), 2);
    if (k < steps) os << ' ';
  }
  os << "\"/>\n";
  // tick labels
  for (int v = 0; v <= max_goal; v += 2)
    os << "<text x=\"" << format_fixed(x_of(v), 1) << "\" y=\""
       << format_fixed(bottom + 16.0, 1)
       << "\" text-anchor=\"middle\" font-size=\"11\">" << v << "</text>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double c = y_max * tick / 4.0;
    os << "<text x=\"" << format_fixed(origin_x - 6.0, 1) << "\" y=\""
       << format_fixed(y_of(c) + 4.0, 1)
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_fixed(c, 0)
       << "</text>\n";
  }
  os << "</g>\n";
}

}  // namespace detail

// Two panels per team: observed goal-count histogram (unit-width bars on
// integer centers) with the fitted density, scaled by games, overlaid.
inline FigureArtifacts render_team_figure(const std::string& team,
                                          const std::string& season,
                                          std::span<const GoalPair> games,
                                          const TeamFit& fit) {
  if (games.empty())
    throw std::invalid_argument("render_team_figure: no games");
  const TranslatedWeibull gs_dist(fit.alpha_gs, fit.shape);
  const TranslatedWeibull ga_dist(fit.alpha_ga, fit.shape);
  const auto gs_counts = detail::goal_histogram(detail::scored_column(games));
  const auto ga_counts = detail::goal_histogram(detail::allowed_column(games));
  const double n = static_cast<double>(games.size());
  const int max_goal = static_cast<int>(
      std::max(gs_counts.size(), ga_counts.size()) - 1);

  double y_max = 1.0;
  for (const auto c : gs_counts) y_max = std::max(y_max, static_cast<double>(c));
  for (const auto c : ga_counts) y_max = std::max(y_max, static_cast<double>(c));
  for (double x = -0.5; x <= max_goal + 1.5; x += 0.02) {
    y_max = std::max(y_max, n * gs_dist.pdf(x));
    y_max = std::max(y_max, n * ga_dist.pdf(x));
  }
  y_max *= 1.08;

  FigureArtifacts out;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" "
         "height=\"360\" viewBox=\"0 0 900 360\">\n";
  svg << "<!-- " << kToolVersion << " -->\n";
  svg << "<rect width=\"900\" height=\"360\" fill=\"white\"/>\n";
  svg << "<text x=\"450\" y=\"350\" text-anchor=\"middle\" font-size=\"13\">"
      << team << ' ' << season << ": observed goals and fitted density"
      << "</text>\n";
  detail::render_panel(svg, {gs_counts, &gs_dist, "Goals scored"}, 60.0,
                       max_goal, n, y_max);
  detail::render_panel(svg, {ga_counts, &ga_dist, "Goals allowed"}, 510.0,
                       max_goal, n, y_max);
  svg << "</svg>\n";
  out.svg = svg.str();

  std::ostringstream density;
  density << "x,gs_density,ga_density\n";
  const int steps = static_cast<int>((max_goal + 2.0) / 0.02);
  for (int k = 0; k <= steps; ++k) {
    const double x = -0.5 + 0.02 * k;
    density << format_fixed(x, 2) << ',' << format_fixed(gs_dist.pdf(x), 6)
            << ',' << format_fixed(ga_dist.pdf(x), 6) << '\n';
  }
  out.density_csv = density.str();

  std::ostringstream counts;
  counts << "goals,gs_observed,ga_observed,gs_expected,ga_expected\n";
  for (int v = 0; v <= max_goal; ++v) {
    const auto at = [&](const std::vector<std::int64_t>& c) {
      return v < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(v)]
                                            : std::int64_t{0};
    };
    counts << v << ',' << at(gs_counts) << ',' << at(ga_counts) << ','
           << format_fixed(n * gs_dist.bin_probability(v - 0.5, v + 0.5), 3)
           << ','
           << format_fixed(n * ga_dist.bin_probability(v - 0.5, v + 0.5), 3)
           << '\n';
  }
  out.counts_csv = counts.str();
  return out;
}

}  // namespace pythag
